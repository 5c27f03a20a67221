import numpy as np
import pytest

from qbargain import entangle as ent
from qbargain import polarization as pol


def random_states(rng, n):
    parts = rng.normal(size=(n, 2, 2))
    return parts[:, :, 0] + 1j * parts[:, :, 1]


def random_basis(rng):
    r = rng.normal(size=3)
    return ent.basis_from_bloch(r / np.linalg.norm(r))


KET_10 = np.array([0, 0, 1, 0], dtype=complex)
KET_00 = np.array([1, 0, 0, 0], dtype=complex)


def test_project_bargain_pure_10():
    bp, weight = ent.project_bargain(KET_10)
    assert bp.amp10 == 1 and bp.amp01 == 0
    assert weight == 1.0


def test_project_bargain_orthogonal_state_rejected():
    with pytest.raises(ValueError, match="orthogonal"):
        ent.project_bargain(KET_00)


def test_project_bargain_mixed_component():
    # (|10> + |01> + |11>) / sqrt(3): amplitudes 1/sqrt(3) each, weight 2/3
    psi = np.array([0, 1, 1, 1], dtype=complex) / np.sqrt(3)
    bp, weight = ent.project_bargain(psi)
    assert bp.amp10 == pytest.approx(1 / np.sqrt(3))
    assert bp.amp01 == pytest.approx(1 / np.sqrt(3))
    assert weight == pytest.approx(2 / 3, abs=1e-14)


def test_p10_examples():
    assert ent.p10(ent.BargainPolarization(1, 0)) == 1.0
    assert ent.p10(ent.BargainPolarization(0, 1)) == 0.0
    assert ent.p10(ent.BargainPolarization(1, 1)) == 0.5


def test_p10_complements():
    rng = np.random.default_rng(21)
    for re10, im10, re01, im01 in rng.normal(size=(100, 4)):
        bp = ent.BargainPolarization(complex(re10, im10), complex(re01, im01))
        swapped = ent.BargainPolarization(bp.amp01, bp.amp10)
        assert ent.p10(bp) + ent.p10(swapped) == pytest.approx(1.0, abs=1e-14)


def test_perfect_anticorrelation_in_bargain_subspace():
    # a bargaining state never puts both traders in the same role
    rng = np.random.default_rng(22)
    for re10, im10, re01, im01 in rng.normal(size=(200, 4)):
        bp = ent.BargainPolarization(complex(re10, im10), complex(re01, im01))
        probs = ent.outcome_distribution(ent.embed(bp))
        assert probs[0, 0] == 0.0 and probs[1, 1] == 0.0
        # conditional on Alice proposing, Bob decides with certainty
        if probs[1, :].sum() > 0:
            assert probs[1, 0] / probs[1, :].sum() == pytest.approx(1.0)
        if probs[0, :].sum() > 0:
            assert probs[0, 1] / probs[0, :].sum() == pytest.approx(1.0)


def test_prob_zero_examples():
    rng = np.random.default_rng(23)
    basis = random_basis(rng)
    assert ent.prob_zero(basis.b0, basis) == pytest.approx(1.0, abs=1e-14)
    assert ent.prob_zero(basis.b1, basis) == pytest.approx(0.0, abs=1e-14)
    both = (basis.b0 + basis.b1) / np.sqrt(2)
    assert ent.prob_zero(both, basis) == pytest.approx(0.5, abs=1e-14)


def test_basis_rejects_non_orthonormal():
    with pytest.raises(ValueError, match="residual"):
        ent.Basis(np.array([1, 0], dtype=complex), np.array([1, 1], dtype=complex) / np.sqrt(2))
    with pytest.raises(ValueError, match="residual"):
        ent.Basis(np.array([2, 0], dtype=complex), np.array([0, 1], dtype=complex))


def test_dominates_examples():
    basis = ent.standard_basis()
    assert ent.dominates(pol.KET_0, pol.KET_1, basis) is ent.Dominance.ALICE
    assert ent.dominates(pol.KET_1, pol.KET_0, basis) is ent.Dominance.BOB
    s = np.array([0.3 + 0.1j, 0.7], dtype=complex)
    assert ent.dominates(s, s, basis) is ent.Dominance.NEITHER


def test_dominates_matches_probability_comparison():
    rng = np.random.default_rng(24)
    alices, bobs = random_states(rng, 1000), random_states(rng, 1000)
    for a, b in zip(alices, bobs):
        basis = random_basis(rng)
        outcome = ent.dominates(a, b, basis)
        pa, pb = ent.prob_zero(a, basis), ent.prob_zero(b, basis)
        if pa > pb + 1e-12:
            expected = ent.Dominance.ALICE
        elif pb > pa + 1e-12:
            expected = ent.Dominance.BOB
        else:
            expected = ent.Dominance.NEITHER
        assert outcome is expected
        # antisymmetry
        mirror = ent.dominates(b, a, basis)
        if outcome is ent.Dominance.ALICE:
            assert mirror is ent.Dominance.BOB
        elif outcome is ent.Dominance.BOB:
            assert mirror is ent.Dominance.ALICE
        else:
            assert mirror is ent.Dominance.NEITHER


def test_shared_basis_dominance_is_transitive():
    rng = np.random.default_rng(25)
    basis = random_basis(rng)
    for triple in range(300):
        a, b, c = random_states(rng, 3)
        if (ent.dominates(a, b, basis) is ent.Dominance.ALICE
                and ent.dominates(b, c, basis) is ent.Dominance.ALICE):
            assert ent.dominates(a, c, basis) is ent.Dominance.ALICE


def test_shared_basis_no_cycle():
    rng = np.random.default_rng(26)
    basis = random_basis(rng)
    report = ent.dominance_cycle(random_states(rng, 6), basis)
    assert not report.has_cycle
    assert report.cycle is None


def test_identical_states_no_cycle():
    s = np.array([0.6, 0.8j], dtype=complex)
    report = ent.dominance_cycle([s, s, s], ent.standard_basis())
    assert not report.has_cycle
    assert all(v is ent.Dominance.NEITHER for v in report.outcomes.values())


def test_rps_witness_cycles():
    states, pair_bases = ent.rps_witness()
    # per-pair probabilities: the owner wins 1 against cos^2(60 deg) = 1/4
    assert ent.prob_zero(states[0], pair_bases[(0, 1)]) == pytest.approx(1.0, abs=1e-12)
    assert ent.prob_zero(states[1], pair_bases[(0, 1)]) == pytest.approx(0.25, abs=1e-12)
    report = ent.dominance_cycle(states, pair_bases)
    assert report.has_cycle
    assert sorted(report.cycle) == [0, 1, 2]
    assert report.outcomes[(0, 1)] is ent.Dominance.ALICE
    assert report.outcomes[(1, 2)] is ent.Dominance.ALICE
    assert report.outcomes[(0, 2)] is ent.Dominance.BOB


def test_rps_witness_acyclic_under_shared_basis():
    states, pair_bases = ent.rps_witness()
    report = ent.dominance_cycle(states, pair_bases[(0, 1)])
    assert not report.has_cycle


def test_dominance_cycle_requires_bases_for_all_pairs():
    states, pair_bases = ent.rps_witness()
    incomplete = {(0, 1): pair_bases[(0, 1)]}
    with pytest.raises(ValueError, match="no basis"):
        ent.dominance_cycle(states, incomplete)
    with pytest.raises(ValueError, match="at least 3"):
        ent.dominance_cycle(states[:2], pair_bases[(0, 1)])
