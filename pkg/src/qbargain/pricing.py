"""Transaction-price machinery for a single bargaining pair.

Alice's buying intention is the random variable q = -ln c, Bob's selling
intention is p = ln c, and a proposed deal is rational for both sides iff

    q + p <= 0.

Given intention densities f_A(q) and f_B(p), the unnormalized density of
the log transaction price x = ln c is

    |10> (Alice proposes):  F_B(x)  * f_A(-x)
    |01> (Bob proposes):    F_A(-x) * f_B(x)

where F is the cumulative distribution of the other side.  Both integrate
to the same acceptance probability, the chance that a single round closes.

Dirac intention components are kept symbolic as point masses (location,
weight) rather than sampled as narrow spikes, so the delta-strategy results
are exact.  Continuous parts are sampled on grids fine enough that the
plain trapezoid rule resolves their mass to ~1e-9; pass an explicit grid to
trade accuracy for speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .normal import norm_cdf, norm_pdf, norm_quantile

GRID_NORMALIZATION_TOL = 1e-8
GAUSSIAN_SUPPORT_SIGMAS = 8.0

# Auto grids step at 7.5e-5 of the smallest distribution scale, which keeps
# the trapezoid mass error near 1e-9 for unit-scale Gaussians (grid count is
# clamped below so degenerate scales cannot run away).
_AUTO_STEP_FACTOR = 7.5e-5
_AUTO_MIN_POINTS = 4001
_AUTO_MAX_POINTS = 2_000_001


@dataclass(frozen=True)
class Dirac:
    """Deterministic intention: all mass at one log-price location."""

    location: float

    def __post_init__(self):
        if not math.isfinite(self.location):
            raise ValueError("Dirac location must be finite")


@dataclass(frozen=True)
class Gaussian:
    """Normal intention density with the given mean and dispersion."""

    mean: float
    sigma: float

    def __post_init__(self):
        if not math.isfinite(self.mean):
            raise ValueError("Gaussian mean must be finite")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError("Gaussian sigma must be positive")


@dataclass(frozen=True, eq=False)
class GridDensity:
    """Tabulated density on an ascending grid, trapezoid-normalized to 1."""

    points: np.ndarray
    density: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        den = np.asarray(self.density, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("grid needs at least two ascending points")
        if den.shape != pts.shape:
            raise ValueError("density must match the grid point array")
        if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(den))):
            raise ValueError("grid points and densities must be finite")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("grid points must be strictly ascending")
        if np.any(den < 0):
            raise ValueError("grid densities must be non-negative")
        total = float(np.trapezoid(den, pts))
        if abs(total - 1.0) > GRID_NORMALIZATION_TOL:
            raise ValueError(f"grid density must integrate to 1 (trapezoid), got {total!r}")
        node_cdf = np.concatenate(
            [[0.0], np.cumsum(0.5 * (den[1:] + den[:-1]) * np.diff(pts))]
        )
        node_cdf /= node_cdf[-1]
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "density", den)
        object.__setattr__(self, "_node_cdf", node_cdf)


LogPriceDistribution = Dirac | Gaussian | GridDensity


@dataclass(frozen=True)
class PricingPair:
    """Alice's intention density over q and Bob's over p."""

    alice: LogPriceDistribution
    bob: LogPriceDistribution

    def __post_init__(self):
        for side, dist in (("alice", self.alice), ("bob", self.bob)):
            if not isinstance(dist, (Dirac, Gaussian, GridDensity)):
                raise TypeError(f"{side} must be a Dirac, Gaussian or GridDensity")

    def swapped(self) -> "PricingPair":
        return PricingPair(self.bob, self.alice)


def pdf(dist: LogPriceDistribution, x):
    """Density at x; undefined (raises) for a Dirac component."""
    x = np.asarray(x, dtype=float)
    if isinstance(dist, Gaussian):
        out = norm_pdf((x - dist.mean) / dist.sigma) / dist.sigma
    elif isinstance(dist, GridDensity):
        out = np.interp(x, dist.points, dist.density, left=0.0, right=0.0)
    else:
        raise TypeError("a Dirac component has no density function; use its atom explicitly")
    return out if np.ndim(out) else float(out)


def cdf(dist: LogPriceDistribution, x):
    """Cumulative distribution at x; the Dirac step includes its own location."""
    x = np.asarray(x, dtype=float)
    if isinstance(dist, Dirac):
        out = (x >= dist.location).astype(float)
    elif isinstance(dist, Gaussian):
        out = norm_cdf((x - dist.mean) / dist.sigma)
    else:
        out = np.interp(x, dist.points, dist._node_cdf, left=0.0, right=1.0)
    return out if np.ndim(out) else float(out)


def quantile(dist: LogPriceDistribution, u):
    """Inverse CDF on (0, 1); the Monte Carlo sampler draws through this."""
    u = np.asarray(u, dtype=float)
    if isinstance(dist, Dirac):
        out = np.full_like(u, dist.location)
    elif isinstance(dist, Gaussian):
        out = dist.mean + dist.sigma * norm_quantile(u)
    else:
        out = np.interp(u, dist._node_cdf, dist.points)
    return out if np.ndim(out) else float(out)


def support(dist: LogPriceDistribution) -> tuple[float, float]:
    """Interval that carries all mass we account for (Gaussian cut at 8 sigma)."""
    if isinstance(dist, Dirac):
        return dist.location, dist.location
    if isinstance(dist, Gaussian):
        half = GAUSSIAN_SUPPORT_SIGMAS * dist.sigma
        return dist.mean - half, dist.mean + half
    return float(dist.points[0]), float(dist.points[-1])


def _char_scale(dist: LogPriceDistribution) -> float | None:
    if isinstance(dist, Gaussian):
        return dist.sigma
    if isinstance(dist, GridDensity):
        lo, hi = support(dist)
        return (hi - lo) / (2.0 * GAUSSIAN_SUPPORT_SIGMAS)
    return None


def distribution_from_spec(spec: dict) -> LogPriceDistribution:
    """Parse the tagged-record distribution format shared with the CLI.

    {"type": "dirac", "a": 0.85}
    {"type": "gaussian", "mean": 0, "sigma": 1}
    {"type": "grid", "points": [...], "density": [...]}
    """
    if not isinstance(spec, dict):
        raise ValueError(f"distribution spec must be an object, got {type(spec).__name__}")
    kind = spec.get("type")
    try:
        if kind == "dirac":
            return Dirac(float(spec["a"]))
        if kind == "gaussian":
            return Gaussian(float(spec["mean"]), float(spec["sigma"]))
        if kind == "grid":
            return GridDensity(np.asarray(spec["points"], dtype=float),
                               np.asarray(spec["density"], dtype=float))
    except KeyError as missing:
        raise ValueError(f"distribution spec of type {kind!r} is missing field {missing}") from None
    raise ValueError(f"unknown distribution type {kind!r}")


def distribution_to_spec(dist: LogPriceDistribution) -> dict:
    if isinstance(dist, Dirac):
        return {"type": "dirac", "a": dist.location}
    if isinstance(dist, Gaussian):
        return {"type": "gaussian", "mean": dist.mean, "sigma": dist.sigma}
    return {"type": "grid", "points": dist.points.tolist(), "density": dist.density.tolist()}


def accepts(q: float, p: float) -> bool:
    """Rationality of the deal for both sides; the boundary q + p = 0 closes."""
    return q + p <= 0.0


def acceptance_probability(pair: PricingPair) -> float:
    """P(q + p <= 0) for independent intentions; closed form when available."""
    a, b = pair.alice, pair.bob
    if isinstance(a, Dirac) and isinstance(b, Dirac):
        return 1.0 if a.location + b.location <= 0.0 else 0.0
    if isinstance(a, Dirac):
        return float(cdf(b, -a.location))
    if isinstance(b, Dirac):
        return float(cdf(a, -b.location))
    if isinstance(a, Gaussian) and isinstance(b, Gaussian):
        return float(norm_cdf(-(a.mean + b.mean) / math.hypot(a.sigma, b.sigma)))
    # at least one tabulated side: trapezoid over its own grid
    if isinstance(a, GridDensity):
        prob = float(np.trapezoid(cdf(b, -a.points) * a.density, a.points))
    else:
        prob = float(np.trapezoid(cdf(a, -b.points) * b.density, b.points))
    return min(max(prob, 0.0), 1.0)


@dataclass(frozen=True, eq=False)
class PriceDensity:
    """Distribution of the log transaction price: a sampled part plus point masses.

    mass is the trapezoid integral of the sampled part plus the atom
    weights; it equals 1 (up to grid accuracy) once normalized.
    """

    points: np.ndarray
    density: np.ndarray
    atoms: tuple[tuple[float, float], ...]
    mass: float
    normalized: bool


def _make_density(points: np.ndarray, density: np.ndarray,
                  atoms: tuple[tuple[float, float], ...],
                  normalized: bool = False) -> PriceDensity:
    points = np.asarray(points, dtype=float)
    density = np.asarray(density, dtype=float)
    grid_mass = float(np.trapezoid(density, points)) if points.size >= 2 else 0.0
    mass = grid_mass + sum(w for _, w in atoms)
    return PriceDensity(points=points, density=density, atoms=atoms,
                        mass=mass, normalized=normalized)


def _density_factors(pair: PricingPair, polarization: str):
    """Proposing (pdf) side and deciding (cdf) side for a polarization."""
    pol = str(polarization)
    if pol == "10":
        return pair.alice, pair.bob
    if pol == "01":
        return pair.bob, pair.alice
    raise ValueError(f"polarization must be '10' or '01', got {polarization!r}")


def log_price_density_at(pair: PricingPair, polarization: str, x):
    """Pointwise continuous part of the log-price density (no atoms).

    Raises for a Dirac proposing side, whose density is purely atomic.
    """
    pdf_side, cdf_side = _density_factors(pair, polarization)
    x = np.asarray(x, dtype=float)
    if str(polarization) == "10":
        out = cdf(cdf_side, x) * pdf(pdf_side, -x)
    else:
        out = cdf(cdf_side, -x) * pdf(pdf_side, x)
    return out if np.ndim(out) else float(out)


def _auto_grid(lo: float, hi: float, scales: list[float],
               extra_points: np.ndarray | None) -> np.ndarray:
    step = _AUTO_STEP_FACTOR * min(scales)
    n = int(np.ceil((hi - lo) / step)) + 1
    n = min(max(n, _AUTO_MIN_POINTS), _AUTO_MAX_POINTS)
    pts = np.linspace(lo, hi, n)
    if extra_points is not None and extra_points.size:
        inside = extra_points[(extra_points > lo) & (extra_points < hi)]
        if inside.size:
            pts = np.union1d(pts, inside)
    return pts


def price_log_density(pair: PricingPair, polarization: str,
                      grid: np.ndarray | None = None) -> PriceDensity:
    """Unnormalized log-price distribution for one polarization.

    A Dirac proposing side yields a single point mass whose weight is the
    acceptance probability; otherwise the continuous density is sampled on
    an automatically sized grid (or the explicit ascending `grid`).
    """
    pdf_side, cdf_side = _density_factors(pair, polarization)
    pol = str(polarization)
    # x = ln c relates to the proposing side's variable by x = -q (|10>) or x = p (|01>)
    sign = -1.0 if pol == "10" else 1.0

    if isinstance(pdf_side, Dirac):
        # both polarizations weight the atom by the other side's mass below -location
        loc = sign * pdf_side.location
        weight = float(cdf(cdf_side, -pdf_side.location))
        return _make_density(np.empty(0), np.empty(0), ((loc, weight),))

    lo_q, hi_q = support(pdf_side)
    lo, hi = (min(sign * lo_q, sign * hi_q), max(sign * lo_q, sign * hi_q))
    kinks: np.ndarray | None = None
    if isinstance(cdf_side, Dirac):
        # the other side's step truncates the support instead of adding curvature
        if pol == "10":
            lo = max(lo, cdf_side.location)
        else:
            hi = min(hi, -cdf_side.location)
    elif isinstance(cdf_side, GridDensity):
        kinks = cdf_side.points if pol == "10" else -cdf_side.points
    if isinstance(pdf_side, GridDensity):
        own = sign * pdf_side.points
        kinks = own if kinks is None else np.concatenate([kinks, own])

    if lo >= hi:
        return _make_density(np.empty(0), np.empty(0), ())

    if grid is not None:
        pts = np.asarray(grid, dtype=float)
        if pts.ndim != 1 or pts.size < 2 or np.any(np.diff(pts) <= 0):
            raise ValueError("grid must be a 1-D strictly ascending array of length >= 2")
    else:
        scales = [s for s in (_char_scale(pdf_side), _char_scale(cdf_side)) if s is not None]
        pts = _auto_grid(lo, hi, scales, kinks)

    dens = log_price_density_at(pair, pol, pts)
    return _make_density(pts, dens, ())


def normalize(d: PriceDensity) -> PriceDensity:
    """Scale total mass to 1; a zero-mass density cannot close any deal."""
    if d.normalized:
        return d
    if d.mass <= 0.0:
        raise ValueError("transaction impossible: the price density carries no mass")
    scale = 1.0 / d.mass
    return PriceDensity(points=d.points, density=d.density * scale,
                        atoms=tuple((loc, w * scale) for loc, w in d.atoms),
                        mass=1.0, normalized=True)


def expected_log_price(d: PriceDensity) -> float:
    """Mean of a normalized log-price distribution."""
    if not d.normalized:
        raise ValueError("expected_log_price needs a normalized density")
    mean = sum(loc * w for loc, w in d.atoms)
    if d.points.size >= 2:
        mean += float(np.trapezoid(d.points * d.density, d.points))
    return mean
