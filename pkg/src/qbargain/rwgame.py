"""Alice against the Rest of the World: the delta-strategy profit game.

Alice buys only below the withdrawal price e^{-a}; the market's log-price
intention is standard normal (work in units of its dispersion).  A round
closes with probability Phi(-a), the expected total time per deal is
(1 + 1/Phi(-a)) * theta, and the per-deal profit intensity, in units of
1/theta, reduces to the closed form

    rho(a, p10) = (p10 * a * Phi(-a) + (1 - p10) * eta(a)) / (1 + Phi(-a)),

where p10 is the probability that Alice is the proposing side and eta is
the standard normal density.

Two reference points of the model:

* p10 = 1: the maximum profit intensity is 0.14028 at a = 0.85096.
* p10 = 0: the optimal withdrawal exponent is a = 0.27603, the unique
  root of eta(a) = a * (1 + Phi(-a)).  The first-order condition is
  algebraically the same as a = rho(a, 0), so the optimum is a fixed
  point of rho and the iteration a -> rho(a) is self-tuning.  The value
  0.27063 sometimes quoted for this optimum is a digit transposition of
  0.27603; it satisfies neither the stationarity equation (residual
  about 7.5e-3) nor the fixed-point property.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .normal import norm_cdf, norm_pdf

DEFAULT_BRACKET = (-10.0, 10.0)
_SCAN_POINTS = 4001
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

FIXED_POINT_MAX_ITER = 10_000


@dataclass(frozen=True)
class RWGameParams:
    """Withdrawal log-price a, proposing probability p10, round duration theta."""

    a: float
    p10: float
    theta: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.a):
            raise ValueError("a must be finite")
        if not 0.0 <= self.p10 <= 1.0:
            raise ValueError("p10 must lie in [0, 1]")
        if not (math.isfinite(self.theta) and self.theta > 0):
            raise ValueError("theta must be positive")


@dataclass(frozen=True)
class ProfitResult:
    rho: float            # profit intensity, units of 1/theta
    transaction_prob: float
    expected_tau: float   # time units


def transaction_probability(a):
    """Chance Phi(-a) that one bargaining round ends in a deal."""
    return norm_cdf(-np.asarray(a, dtype=float))


def expected_waiting_time(a, theta: float = 1.0):
    """Expected total time per deal, (1 + 1/Phi(-a)) * theta.

    The waiting rounds are geometric with success probability Phi(-a); the
    extra 1 accounts for the round Alice spends turning the good around.
    """
    if theta <= 0:
        raise ValueError("theta must be positive")
    return (1.0 + 1.0 / transaction_probability(a)) * theta


def profit_intensity(a, p10):
    """Closed-form rho(a, p10); vectorized over a."""
    if np.any((np.asarray(p10) < 0) | (np.asarray(p10) > 1)):
        raise ValueError("p10 must lie in [0, 1]")
    a = np.asarray(a, dtype=float)
    phi = norm_cdf(-a)
    num = p10 * a * phi + (1.0 - p10) * norm_pdf(a)
    out = num / (1.0 + phi)
    return out if out.ndim else float(out)


def evaluate_game(params: RWGameParams) -> ProfitResult:
    prob = float(transaction_probability(params.a))
    return ProfitResult(
        rho=float(profit_intensity(params.a, params.p10)),
        transaction_prob=prob,
        expected_tau=(1.0 + 1.0 / prob) * params.theta,
    )


def maximize_profit(p10: float, bracket: tuple[float, float] = DEFAULT_BRACKET,
                    tol: float = 1e-9) -> tuple[float, float]:
    """Global maximizer of rho(., p10) over the bracket.

    A coarse scan locates the best cell, then golden-section search shrinks
    it below tol; rho is smooth and the scan is dense enough that the cell
    around the global maximum is always selected.
    """
    lo, hi = bracket
    if not lo < hi:
        raise ValueError("bracket must satisfy lo < hi")
    grid = np.linspace(lo, hi, _SCAN_POINTS)
    values = profit_intensity(grid, p10)
    best = int(np.argmax(values))
    left = grid[max(best - 1, 0)]
    right = grid[min(best + 1, _SCAN_POINTS - 1)]

    x1 = right - _GOLDEN * (right - left)
    x2 = left + _GOLDEN * (right - left)
    f1 = profit_intensity(x1, p10)
    f2 = profit_intensity(x2, p10)
    while right - left > tol:
        if f1 < f2:
            left, x1, f1 = x1, x2, f2
            x2 = left + _GOLDEN * (right - left)
            f2 = profit_intensity(x2, p10)
        else:
            right, x2, f2 = x2, x1, f1
            x1 = right - _GOLDEN * (right - left)
            f1 = profit_intensity(x1, p10)
    a_star = float(0.5 * (left + right))
    return a_star, float(profit_intensity(a_star, p10))


def fixed_point(p10: float, tol: float = 1e-10, a0: float = 0.0,
                max_iter: int = FIXED_POINT_MAX_ITER) -> tuple[float, int]:
    """Iterate a <- rho(a, p10) until successive values differ by less than tol.

    rho is a contraction on the relevant range, so the iteration converges
    from any reasonable start; a0 = 0 is the canonical unbiased one.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = float(a0)
    for iteration in range(1, max_iter + 1):
        a_next = float(profit_intensity(a, p10))
        if abs(a_next - a) < tol:
            return a_next, iteration
        a = a_next
    raise RuntimeError(f"fixed-point iteration did not converge in {max_iter} steps")


def profit_surface(a_min: float = -2.5, a_max: float = 2.5,
                   a_steps: int = 101, p01_steps: int = 51) -> np.ndarray:
    """Grid of (a, p01, rho) rows in lexicographic (a, p01) order.

    p01 is the probability of the market proposing, so rho is evaluated at
    p10 = 1 - p01.  Returned shape is (a_steps * p01_steps, 3).
    """
    if not a_min < a_max:
        raise ValueError("need a_min < a_max")
    if a_steps < 2 or p01_steps < 2:
        raise ValueError("need at least 2 steps per axis")
    a_vals = np.linspace(a_min, a_max, a_steps)
    p01_vals = np.linspace(0.0, 1.0, p01_steps)
    a_grid, p01_grid = np.meshgrid(a_vals, p01_vals, indexing="ij")
    rho = profit_intensity(a_grid, 1.0 - p01_grid)
    return np.column_stack([a_grid.ravel(), p01_grid.ravel(), rho.ravel()])
