import math

import numpy as np
import pytest

from qbargain import thermo as th
from qbargain.polarization import projector_from_bloch

ATANH_HALF = 0.5493061443340548
LN2 = 0.6931471805599453


def random_directions(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def test_convex_weights_examples():
    assert th.convex_weights(0.0) == (0.5, 0.5)
    w_plus, w_minus = th.convex_weights(math.log(3.0))
    assert w_plus == pytest.approx(0.75, abs=1e-15)
    assert w_minus == pytest.approx(0.25, abs=1e-15)


def test_convex_weights_sum_to_one():
    rng = np.random.default_rng(41)
    for beta in rng.uniform(-60, 60, 500):
        w_plus, w_minus = th.convex_weights(beta)
        assert w_plus + w_minus == pytest.approx(1.0, abs=1e-15)
        assert 0.0 <= w_minus <= w_plus <= 1.0 or 0.0 <= w_plus <= w_minus <= 1.0


def test_density_matrix_examples():
    z = np.array([0.0, 0.0, 1.0])
    rng = np.random.default_rng(42)
    np.testing.assert_allclose(
        th.density_matrix(th.PolarizationDensity(0.0, random_directions(rng, 1)[0])),
        np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(
        th.density_matrix(th.PolarizationDensity(math.log(3.0), z)),
        np.diag([0.75, 0.25]), atol=1e-15)


def test_large_beta_limits_are_projectors():
    rng = np.random.default_rng(43)
    for r in random_directions(rng, 50):
        pd_plus = th.PolarizationDensity(40.0, r)
        pd_minus = th.PolarizationDensity(-40.0, r)
        np.testing.assert_allclose(th.density_matrix(pd_plus), projector_from_bloch(r), atol=1e-15)
        np.testing.assert_allclose(th.density_matrix(pd_minus), projector_from_bloch(-r), atol=1e-15)


def test_convex_decomposition_identity():
    rng = np.random.default_rng(44)
    betas = rng.uniform(-30, 30, 1000)
    for beta, r in zip(betas, random_directions(rng, 1000)):
        w_plus, w_minus = th.convex_weights(beta)
        lhs = th.density_matrix(th.PolarizationDensity(beta, r))
        rhs = w_plus * projector_from_bloch(r) + w_minus * projector_from_bloch(-r)
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_eigenvalues_equal_convex_weights():
    rng = np.random.default_rng(45)
    betas = rng.uniform(-30, 30, 1000)
    for beta, r in zip(betas, random_directions(rng, 1000)):
        eigs = np.linalg.eigvalsh(th.density_matrix(th.PolarizationDensity(beta, r)))
        w_plus, w_minus = th.convex_weights(beta)
        np.testing.assert_allclose(np.sort(eigs), np.sort([w_plus, w_minus]), atol=1e-12)


def test_negating_both_beta_and_direction_is_exact():
    rng = np.random.default_rng(46)
    betas = rng.uniform(-30, 30, 200)
    for beta, r in zip(betas, random_directions(rng, 200)):
        a = th.density_matrix(th.PolarizationDensity(beta, r))
        b = th.density_matrix(th.PolarizationDensity(-beta, -r))
        assert np.array_equal(a, b)


def test_density_matrix_is_a_state():
    rng = np.random.default_rng(47)
    for beta, r in zip(rng.uniform(-10, 10, 100), random_directions(rng, 100)):
        rho = th.density_matrix(th.PolarizationDensity(beta, r))
        np.testing.assert_allclose(rho, rho.conj().T, atol=1e-15)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-15)
        assert np.all(np.linalg.eigvalsh(rho) > -1e-15)


def test_canonicalize():
    rng = np.random.default_rng(48)
    r = random_directions(rng, 1)[0]
    flipped, degenerate = th.canonicalize(th.PolarizationDensity(-2.0, r))
    assert flipped.beta_s == 2.0 and not degenerate
    np.testing.assert_allclose(flipped.r, -r)
    same, degenerate = th.canonicalize(th.PolarizationDensity(2.0, r))
    assert same.beta_s == 2.0 and not degenerate
    center, degenerate = th.canonicalize(th.PolarizationDensity(0.0, r))
    assert degenerate
    np.testing.assert_allclose(center.r, r)


def test_shannon_entropy_values():
    assert abs(th.shannon_entropy(0.0) - LN2) < 1e-12
    assert th.shannon_entropy(20.0) < 1e-7
    assert th.shannon_entropy(-20.0) < 1e-7


def test_shannon_entropy_symmetric_and_bounded():
    rng = np.random.default_rng(49)
    for beta in rng.uniform(-40, 40, 300):
        s = th.shannon_entropy(beta)
        assert s == th.shannon_entropy(-beta)
        assert 0.0 <= s <= LN2 + 1e-15


def test_shannon_entropy_strictly_decreasing_for_positive_beta():
    grid = np.linspace(0.0, 12.0, 121)
    values = [th.shannon_entropy(b) for b in grid]
    assert values[0] == pytest.approx(LN2, abs=1e-15)
    assert np.all(np.diff(values) < 0)


def test_shannon_entropy_matches_eigenvalue_form():
    rng = np.random.default_rng(50)
    for beta, r in zip(rng.uniform(-25, 25, 200), random_directions(rng, 200)):
        rho = th.density_matrix(th.PolarizationDensity(beta, r))
        eigs = np.linalg.eigvalsh(rho)
        eigs = eigs[eigs > 0]
        from_matrix = float(-(eigs * np.log(eigs)).sum())
        assert abs(th.shannon_entropy(beta) - from_matrix) < 1e-10


def test_risk_temperature_conversion():
    params = th.RiskTempParams(h_e=2.0, theta=1.0, const=1.0)
    # sigma^2 = 2 const with h_e = 2 theta: beta = atanh(1/2)
    assert th.risk_beta_from_sigma(math.sqrt(2.0), params) == pytest.approx(
        ATANH_HALF, abs=1e-15)
    assert th.sigma_from_risk_beta(ATANH_HALF, params) == pytest.approx(
        math.sqrt(2.0), abs=1e-15)
    # large beta pins sigma at sqrt(const); huge sigma sends beta to zero
    assert th.sigma_from_risk_beta(1e3, params) == pytest.approx(1.0, abs=1e-12)
    assert 0.0 < th.risk_beta_from_sigma(1e6, params) < 1e-11


def test_risk_temperature_roundtrip():
    params = th.RiskTempParams(h_e=0.7, theta=2.5, const=0.9)
    rng = np.random.default_rng(51)
    for sigma in rng.uniform(1.0, 10.0, 200):
        beta = th.risk_beta_from_sigma(sigma, params)
        assert th.sigma_from_risk_beta(beta, params) == pytest.approx(sigma, rel=1e-12)


def test_risk_temperature_errors():
    params = th.RiskTempParams(h_e=1.0, theta=1.0, const=4.0)
    with pytest.raises(ValueError, match="tanh"):
        th.risk_beta_from_sigma(2.0, params)  # const == sigma^2
    with pytest.raises(ValueError, match="tanh"):
        th.risk_beta_from_sigma(1.0, params)
    with pytest.raises(ValueError):
        th.sigma_from_risk_beta(0.0, params)
    with pytest.raises(ValueError):
        th.sigma_from_risk_beta(-1.0, params)
    with pytest.raises(ValueError):
        th.RiskTempParams(h_e=0.0, theta=1.0, const=1.0)


def test_polarization_density_validation():
    with pytest.raises(ValueError):
        th.PolarizationDensity(np.inf, np.array([0.0, 0.0, 1.0]))
    with pytest.raises(ValueError):
        th.PolarizationDensity(1.0, np.array([0.0, 0.0, 0.5]))
