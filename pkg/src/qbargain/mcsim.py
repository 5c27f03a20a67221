"""Monte Carlo validation of the bargaining analytics.

Each round draws Alice's intention q, the market's intention p and the
round's polarization (|10> with probability p10), accepts when q + p <= 0,
and records the log price (-q when Alice proposed, p otherwise).  Every
accepted round completes a deal; the rounds spent waiting for it follow
the geometric law, and the total time per deal is (1 + rounds) * theta.

Reproducibility scheme: rounds are generated in fixed-size chunks and
chunk i uses its own Philox stream keyed by (seed, i).  Chunk contents
therefore depend only on the seed and the chunk index, never on which
worker produced them, so serial and parallel runs are bit-identical.
Gaussian deviates go through the shared inverse normal CDF, keeping the
sampler distributionally consistent with the closed forms it validates.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .normal import norm_cdf, norm_pdf
from .pricing import (
    Dirac,
    Gaussian,
    PricingPair,
    distribution_to_spec,
    quantile,
)
from .rwgame import RWGameParams, profit_intensity

CHUNK_ROUNDS = 1 << 16

_STATISTICS = (
    "acceptance_freq",
    "mean_waiting_rounds",
    "empirical_expected_tau",
    "mean_log_price_10",
    "mean_log_price_01",
    "empirical_rho",
    "deal_frac_10",
)


@dataclass(frozen=True)
class SimConfig:
    pair: PricingPair
    p10: float
    rounds: int
    seed: int
    theta: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.p10 <= 1.0:
            raise ValueError("p10 must lie in [0, 1]")
        if not (isinstance(self.rounds, int) and self.rounds >= 1):
            raise ValueError("rounds must be a positive integer")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not (math.isfinite(self.theta) and self.theta > 0):
            raise ValueError("theta must be positive")


@dataclass(frozen=True)
class SimReport:
    config: SimConfig
    rounds: int
    n_deals: int
    statistics_defined: bool
    acceptance_freq: float
    mean_waiting_rounds: float
    empirical_expected_tau: float
    mean_log_price_10: float
    mean_log_price_01: float
    empirical_rho: float
    deal_frac_10: float
    standard_errors: dict[str, float]


def _uniform_open(rng: np.random.Generator, n: int) -> np.ndarray:
    # uniforms on the open interval (0,1): half-integer lattice keeps the
    # inverse CDF finite at both ends
    return (rng.integers(0, 1 << 53, size=n).astype(np.float64) + 0.5) * 2.0**-53


def _chunk_rounds(cfg: SimConfig, chunk_index: int, n: int):
    """Per-round (accept, log_price, proposed_by_alice) arrays for one chunk."""
    key = np.array([cfg.seed, chunk_index], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    q = quantile(cfg.pair.alice, _uniform_open(rng, n))
    p = quantile(cfg.pair.bob, _uniform_open(rng, n))
    pol10 = _uniform_open(rng, n) < cfg.p10
    accept = q + p <= 0.0
    log_price = np.where(pol10, -q, p)
    return accept, log_price, pol10


def _mean_se(x: np.ndarray) -> tuple[float, float]:
    if x.size == 0:
        return math.nan, math.nan
    if x.size == 1:
        return float(x[0]), math.nan
    if x[0] == x[-1] and np.all(x == x[0]):
        # constant sample (e.g. Dirac proposer): exact mean, no rounding noise
        return float(x[0]), 0.0
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(x.size))


def run_simulation(cfg: SimConfig, workers: int = 1) -> SimReport:
    """Simulate cfg.rounds bargaining rounds; deterministic for a fixed seed.

    workers only parallelizes chunk generation; the aggregated report is
    byte-identical for any worker count.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    n_chunks = (cfg.rounds + CHUNK_ROUNDS - 1) // CHUNK_ROUNDS
    sizes = [min(CHUNK_ROUNDS, cfg.rounds - i * CHUNK_ROUNDS) for i in range(n_chunks)]

    if workers == 1 or n_chunks == 1:
        chunks = [_chunk_rounds(cfg, i, n) for i, n in enumerate(sizes)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_chunk_rounds, [cfg] * n_chunks,
                                   range(n_chunks), sizes))

    accept = np.concatenate([c[0] for c in chunks])
    log_price = np.concatenate([c[1] for c in chunks])
    pol10 = np.concatenate([c[2] for c in chunks])

    deal_idx = np.flatnonzero(accept)
    n_deals = int(deal_idx.size)
    freq = n_deals / cfg.rounds
    se = {name: math.nan for name in _STATISTICS}
    se["acceptance_freq"] = math.sqrt(freq * (1.0 - freq) / cfg.rounds)

    if n_deals == 0:
        return SimReport(
            config=cfg, rounds=cfg.rounds, n_deals=0, statistics_defined=False,
            acceptance_freq=freq, mean_waiting_rounds=math.nan,
            empirical_expected_tau=math.nan, mean_log_price_10=math.nan,
            mean_log_price_01=math.nan, empirical_rho=math.nan,
            deal_frac_10=math.nan, standard_errors=se,
        )

    # waiting rounds per completed deal, counting the successful round
    waits = np.diff(deal_idx, prepend=-1).astype(float)
    prices = log_price[deal_idx]
    proposed = pol10[deal_idx]

    mean_k, se["mean_waiting_rounds"] = _mean_se(waits)
    tau = (1.0 + mean_k) * cfg.theta
    se["empirical_expected_tau"] = se["mean_waiting_rounds"] * cfg.theta

    mean_10, se["mean_log_price_10"] = _mean_se(prices[proposed])
    mean_01, se["mean_log_price_01"] = _mean_se(prices[~proposed])

    frac_10 = float(proposed.mean())
    se["deal_frac_10"] = math.sqrt(frac_10 * (1.0 - frac_10) / n_deals)

    # rho is a ratio of per-deal means; delta-method error with covariance
    total_time = (1.0 + waits) * cfg.theta
    x_bar, y_bar = float(prices.mean()), float(total_time.mean())
    rho = -x_bar / y_bar
    if n_deals >= 2:
        var_x = float(prices.var(ddof=1)) / n_deals
        var_y = float(total_time.var(ddof=1)) / n_deals
        cov_xy = float(np.cov(prices, total_time, ddof=1)[0, 1]) / n_deals
        var_rho = (var_x / y_bar**2 + x_bar**2 * var_y / y_bar**4
                   - 2.0 * x_bar * cov_xy / y_bar**3)
        se["empirical_rho"] = math.sqrt(max(var_rho, 0.0))

    return SimReport(
        config=cfg, rounds=cfg.rounds, n_deals=n_deals, statistics_defined=True,
        acceptance_freq=freq, mean_waiting_rounds=mean_k,
        empirical_expected_tau=tau, mean_log_price_10=mean_10,
        mean_log_price_01=mean_01, empirical_rho=rho,
        deal_frac_10=frac_10, standard_errors=se,
    )


@dataclass(frozen=True)
class DeviationRow:
    statistic: str
    empirical: float
    analytic: float
    std_error: float
    z: float


def _z_score(empirical: float, analytic: float, std_error: float) -> float:
    if math.isnan(empirical) or math.isnan(std_error):
        return math.nan
    diff = empirical - analytic
    if std_error == 0.0:
        # degenerate sample (e.g. Dirac proposer): only rounding noise is a match
        if abs(diff) <= 1e-12 * max(1.0, abs(analytic)):
            return 0.0
        return math.copysign(math.inf, diff)
    return diff / std_error

def compare_with_analytic(report: SimReport, params: RWGameParams) -> dict[str, DeviationRow]:
    """z-scores of the empirical statistics against the closed forms.

    Only defined for the delta-strategy configuration the closed forms
    describe: Alice Dirac at params.a against a standard normal market.
    """
    cfg = report.config
    alice, bob = cfg.pair.alice, cfg.pair.bob
    if not (isinstance(alice, Dirac) and isinstance(bob, Gaussian)
            and bob.mean == 0.0 and bob.sigma == 1.0):
        raise ValueError("config mismatch: analytics need Alice Dirac vs standard normal market")
    if alice.location != params.a or cfg.p10 != params.p10 or cfg.theta != params.theta:
        raise ValueError("config mismatch: simulation parameters differ from game parameters")

    prob = float(norm_cdf(-params.a))
    analytic = {
        "acceptance_freq": prob,
        "mean_waiting_rounds": 1.0 / prob,
        "empirical_expected_tau": (1.0 + 1.0 / prob) * params.theta,
        "mean_log_price_10": -params.a,
        "mean_log_price_01": -float(norm_pdf(params.a)) / prob,
        "empirical_rho": float(profit_intensity(params.a, params.p10)) / params.theta,
        "deal_frac_10": params.p10,
    }
    table: dict[str, DeviationRow] = {}
    for name in _STATISTICS:
        empirical = getattr(report, name)
        std_error = report.standard_errors[name]
        table[name] = DeviationRow(
            statistic=name, empirical=empirical, analytic=analytic[name],
            std_error=std_error, z=_z_score(empirical, analytic[name], std_error),
        )
    return table


def _json_value(x: float):
    if isinstance(x, float) and (math.isnan(x) or math.isinf(x)):
        return None
    return x


def deviation_table_to_dict(table: dict[str, DeviationRow]) -> dict:
    return {
        name: {
            "empirical": _json_value(row.empirical),
            "analytic": _json_value(row.analytic),
            "std_error": _json_value(row.std_error),
            "z": _json_value(row.z),
        }
        for name, row in table.items()
    }


def report_to_dict(report: SimReport) -> dict:
    cfg = report.config
    out: dict = {
        "config": {
            "alice": distribution_to_spec(cfg.pair.alice),
            "bob": distribution_to_spec(cfg.pair.bob),
            "p10": cfg.p10,
            "rounds": cfg.rounds,
            "seed": cfg.seed,
            "theta": cfg.theta,
        },
        "rounds": report.rounds,
        "n_deals": report.n_deals,
        "statistics_defined": report.statistics_defined,
    }
    for name in _STATISTICS:
        out[name] = _json_value(getattr(report, name))
    out["standard_errors"] = {k: _json_value(v) for k, v in report.standard_errors.items()}
    return out


def report_to_json(report: SimReport) -> str:
    """Deterministic JSON rendering (fixed key order, repr floats)."""
    return json.dumps(report_to_dict(report), allow_nan=False)
