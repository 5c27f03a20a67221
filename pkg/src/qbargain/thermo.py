"""Mixed polarization states and the two temperatures of the bargaining model.

A mixed polarization along a unit Bloch direction r at inverse spin
temperature beta_s is

    rho(beta_s, r) = (I + tanh(beta_s / 2) r . sigma) / 2
                   = w_plus * P_r + w_minus * P_{-r},

with convex weights w_plus = 1 / (1 + e^{-beta_s}) and w_minus = 1 - w_plus,
which are also the eigenvalues.  beta_s -> +/-inf recovers the pure
projectors; beta_s = 0 is the maximally mixed center where the direction of
r carries no information.

Separately, the market's risk temperature 1/beta ties to its log-price
dispersion through the conserved product

    sigma^2 * tanh(h_e * beta / (2 * theta)) = const,

with h_e the economic action quantum and theta the round duration.  All
three constants are model inputs; there are no canonical defaults.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .polarization import IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z, as_bloch


@dataclass(frozen=True, eq=False)
class PolarizationDensity:
    """Inverse spin temperature plus the Bloch direction of the mixture."""

    beta_s: float
    r: np.ndarray

    def __post_init__(self):
        if not math.isfinite(self.beta_s):
            raise ValueError("beta_s must be finite")
        object.__setattr__(self, "r", as_bloch(self.r))


@dataclass(frozen=True)
class RiskTempParams:
    """h_e, theta and the conserved dispersion-temperature product."""

    h_e: float
    theta: float
    const: float

    def __post_init__(self):
        for name in ("h_e", "theta", "const"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive")


def convex_weights(beta_s: float) -> tuple[float, float]:
    """Weights of P_r and P_{-r} in the mixture; they sum to 1."""
    if not math.isfinite(beta_s):
        raise ValueError("beta_s must be finite")
    return float(expit(beta_s)), float(expit(-beta_s))


def density_matrix(pd: PolarizationDensity) -> np.ndarray:
    """The 2x2 mixture (I + tanh(beta_s/2) r . sigma) / 2."""
    t = math.tanh(pd.beta_s / 2.0)
    x1, x2, x3 = pd.r
    return 0.5 * (IDENTITY + t * (x1 * SIGMA_X + x2 * SIGMA_Y + x3 * SIGMA_Z))


def canonicalize(pd: PolarizationDensity) -> tuple[PolarizationDensity, bool]:
    """Flip to beta_s >= 0 (negating r); flags the undetermined beta_s = 0 center."""
    if pd.beta_s > 0:
        return pd, False
    if pd.beta_s == 0:
        return pd, True
    return PolarizationDensity(-pd.beta_s, -pd.r), False


def shannon_entropy(beta_s: float) -> float:
    """Entropy of the mixture, ln 2 at beta_s = 0 and -> 0 for |beta_s| -> inf."""
    if not math.isfinite(beta_s):
        raise ValueError("beta_s must be finite")
    w_plus, w_minus = convex_weights(beta_s)
    # -w ln w in the overflow-safe softplus form: ln(1+e^{b})/(1+e^{b}) + (b -> -b)
    return float(w_minus * np.logaddexp(0.0, beta_s) + w_plus * np.logaddexp(0.0, -beta_s))


def risk_beta_from_sigma(sigma: float, params: RiskTempParams) -> float:
    """Invert the conserved product for beta; needs const < sigma^2 (tanh range)."""
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError("sigma must be positive")
    ratio = params.const / (sigma * sigma)
    if ratio >= 1.0:
        raise ValueError(
            "dispersion too small for given constant: const/sigma^2 = "
            f"{ratio!r} is outside the tanh range (must be < 1)"
        )
    return (2.0 * params.theta / params.h_e) * math.atanh(ratio)


def sigma_from_risk_beta(beta: float, params: RiskTempParams) -> float:
    """Dispersion at inverse risk temperature beta > 0."""
    if not (math.isfinite(beta) and beta > 0):
        raise ValueError("beta must be positive")
    return math.sqrt(params.const / math.tanh(params.h_e * beta / (2.0 * params.theta)))
