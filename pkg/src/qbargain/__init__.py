"""Quantum bargaining games end to end.

Qubit polarization algebra, the entangled two-trader role space with its
dominance relation, transaction-price distributions under the rationality
condition q + p <= 0, the delta-strategy profit-intensity game against the
market with its optimizer and self-tuning fixed point, spin and risk
temperature thermodynamics, and a Monte Carlo harness that cross-validates
the closed forms.
"""

from .entangle import (
    BargainPolarization,
    Basis,
    CycleReport,
    Dominance,
    basis_from_bloch,
    dominance_cycle,
    dominates,
    embed,
    outcome_distribution,
    p10,
    prob_zero,
    project_bargain,
    rps_witness,
    standard_basis,
)
from .mcsim import (
    DeviationRow,
    SimConfig,
    SimReport,
    compare_with_analytic,
    report_to_dict,
    report_to_json,
    run_simulation,
)
from .polarization import (
    bloch,
    inner,
    projective_equal,
    projector,
    projector_from_bloch,
    state_from_bloch,
    transition_probability,
)
from .pricing import (
    Dirac,
    Gaussian,
    GridDensity,
    PriceDensity,
    PricingPair,
    acceptance_probability,
    accepts,
    distribution_from_spec,
    distribution_to_spec,
    expected_log_price,
    normalize,
    price_log_density,
)
from .rwgame import (
    ProfitResult,
    RWGameParams,
    evaluate_game,
    expected_waiting_time,
    fixed_point,
    maximize_profit,
    profit_intensity,
    profit_surface,
    transaction_probability,
)
from .thermo import (
    PolarizationDensity,
    RiskTempParams,
    canonicalize,
    convex_weights,
    density_matrix,
    risk_beta_from_sigma,
    shannon_entropy,
    sigma_from_risk_beta,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
