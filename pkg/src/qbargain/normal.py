"""Shared standard-normal primitives.

Every module that touches the Gaussian market distribution goes through
these three functions, so the analytic formulas, the quadrature paths and
the Monte Carlo sampler all agree on the same CDF.  scipy's ndtr/ndtri are
erfc-based and accurate to full double precision, far inside the 1e-12
budget the closed forms need.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtr, ndtri

_INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)


def norm_pdf(x):
    """Standard normal density eta(x) = exp(-x^2/2) / sqrt(2*pi)."""
    x = np.asarray(x, dtype=float)
    out = _INV_SQRT_2PI * np.exp(-0.5 * x * x)
    return out if out.ndim else float(out)


def norm_cdf(x):
    """Standard normal CDF Phi(x), complementary-error-function accuracy."""
    out = ndtr(np.asarray(x, dtype=float))
    return out if out.ndim else float(out)


def norm_quantile(u):
    """Inverse of norm_cdf on (0, 1)."""
    out = ndtri(np.asarray(u, dtype=float))
    return out if out.ndim else float(out)
