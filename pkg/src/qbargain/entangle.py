"""Two-trader bargaining polarization and the dominance relation.

Once Alice and Bob enter a bargaining round their role states live in the
two-dimensional span of |10> and |01> (first slot Alice, second Bob): one
of them proposes the price (role 1) and the other decides (role 0), never
both.  Joint vectors use the ordered product basis |00>, |01>, |10>, |11>.

Dominance compares, for a given measurement basis, each trader's chance of
landing in the deciding role |0>.  Under one shared basis the relation is a
total preorder, hence transitive; when each pair bargains in its own basis
the relation can cycle, exactly like rock, paper, scissors.  rps_witness()
builds the canonical three-state cycle from basis directions 120 degrees
apart on a Bloch great circle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .polarization import as_state, inner, norm_sq, state_from_bloch

PRODUCT_BASIS = ("00", "01", "10", "11")

DOMINANCE_TIE_TOL = 1e-12
BASIS_TOL = 1e-12


@dataclass(frozen=True)
class BargainPolarization:
    """Component pair along |10> and |01>; who proposes versus who accepts."""

    amp10: complex
    amp01: complex

    def __post_init__(self):
        a, b = complex(self.amp10), complex(self.amp01)
        if not (np.isfinite(a.real) and np.isfinite(a.imag) and np.isfinite(b.real) and np.isfinite(b.imag)):
            raise ValueError("bargain polarization has non-finite components")
        if a == 0 and b == 0:
            raise ValueError("bargain polarization cannot be the zero vector")
        object.__setattr__(self, "amp10", a)
        object.__setattr__(self, "amp01", b)


def as_two_party(psi) -> np.ndarray:
    """Coerce to a complex 4-vector over the product basis |00>,|01>,|10>,|11>."""
    v = np.asarray(psi, dtype=complex)
    if v.shape != (4,):
        raise ValueError(f"two-party state must be a complex 4-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("two-party state has non-finite components")
    if not np.any(v != 0):
        raise ValueError("the zero vector is not a two-party state")
    return v


def project_bargain(psi) -> tuple[BargainPolarization, float]:
    """Project onto span{|10>, |01>}; returns the components and the projection weight."""
    v = as_two_party(psi)
    amp01, amp10 = v[1], v[2]
    weight = (abs(amp10) ** 2 + abs(amp01) ** 2) / float(np.vdot(v, v).real)
    if weight == 0.0:
        raise ValueError("state orthogonal to bargaining subspace")
    return BargainPolarization(amp10, amp01), weight


def embed(bp: BargainPolarization) -> np.ndarray:
    """The bargain polarization as a two-party vector (zero on |00> and |11>)."""
    return np.array([0.0, bp.amp01, bp.amp10, 0.0], dtype=complex)


def p10(bp: BargainPolarization) -> float:
    """Probability that Alice proposes (the |10> share of the normalized polarization)."""
    w10 = abs(bp.amp10) ** 2
    return w10 / (w10 + abs(bp.amp01) ** 2)


def outcome_distribution(psi) -> np.ndarray:
    """Joint outcome probabilities P[a, b] of measuring both traders in the product basis."""
    v = as_two_party(psi)
    probs = (np.abs(v) ** 2) / float(np.vdot(v, v).real)
    return probs.reshape(2, 2)


@dataclass(frozen=True, eq=False)
class Basis:
    """Orthonormal measurement basis (b0, b1); b0 is the deciding role."""

    b0: np.ndarray
    b1: np.ndarray

    def __post_init__(self):
        b0, b1 = as_state(self.b0), as_state(self.b1)
        object.__setattr__(self, "b0", b0)
        object.__setattr__(self, "b1", b1)
        res = self.residual()
        if res > BASIS_TOL:
            raise ValueError(f"basis is not orthonormal, residual {res:.3e}")

    def residual(self) -> float:
        """Largest deviation from orthonormality (unit norms and orthogonality)."""
        return max(
            abs(norm_sq(self.b0) - 1.0),
            abs(norm_sq(self.b1) - 1.0),
            abs(inner(self.b0, self.b1)),
        )


def standard_basis() -> Basis:
    return Basis(np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex))


def basis_from_bloch(r) -> Basis:
    """Basis whose deciding vector b0 points along r (b1 along -r)."""
    r = np.asarray(r, dtype=float)
    return Basis(state_from_bloch(r), state_from_bloch(-r))


class Dominance(Enum):
    ALICE = "alice"
    BOB = "bob"
    NEITHER = "neither"


def prob_zero(s, basis: Basis) -> float:
    """Probability of the deciding role |0> for a state measured in the given basis."""
    return abs(inner(basis.b0, s)) ** 2 / norm_sq(s)


def dominates(alice, bob, basis: Basis, tie_tol: float = DOMINANCE_TIE_TOL) -> Dominance:
    """Who is likelier to wind up deciding; ties within tie_tol are Neither."""
    pa = prob_zero(alice, basis)
    pb = prob_zero(bob, basis)
    if pa > pb + tie_tol:
        return Dominance.ALICE
    if pb > pa + tie_tol:
        return Dominance.BOB
    return Dominance.NEITHER


@dataclass(frozen=True)
class CycleReport:
    """Pairwise dominance outcomes and one witness cycle, if any exists."""

    outcomes: dict[tuple[int, int], Dominance]
    has_cycle: bool
    cycle: tuple[int, ...] | None


def _find_directed_cycle(n: int, edges: set[tuple[int, int]]) -> tuple[int, ...] | None:
    """DFS for a directed cycle; returns the node sequence of one witness."""
    succ = {i: [j for j in range(n) if (i, j) in edges] for i in range(n)}
    color = [0] * n  # 0 unvisited, 1 on stack, 2 done
    stack: list[int] = []

    def visit(node: int) -> tuple[int, ...] | None:
        color[node] = 1
        stack.append(node)
        for nxt in succ[node]:
            if color[nxt] == 1:
                return tuple(stack[stack.index(nxt):])
            if color[nxt] == 0:
                found = visit(nxt)
                if found is not None:
                    return found
        stack.pop()
        color[node] = 2
        return None

    for start in range(n):
        if color[start] == 0:
            found = visit(start)
            if found is not None:
                return found
    return None


def dominance_cycle(
    states: Sequence,
    pair_bases: Basis | Mapping[tuple[int, int], Basis],
) -> CycleReport:
    """Evaluate dominance for every unordered pair and look for a directed cycle.

    pair_bases is either one shared Basis or a mapping keyed by (i, j) with
    i < j, one basis per pair.  Edges run from the dominating state to the
    dominated one; ties contribute no edge.
    """
    states = [as_state(s) for s in states]
    n = len(states)
    if n < 3:
        raise ValueError("dominance_cycle needs at least 3 states")

    def basis_for(i: int, j: int) -> Basis:
        if isinstance(pair_bases, Basis):
            return pair_bases
        try:
            return pair_bases[(i, j)]
        except KeyError:
            raise ValueError(f"no basis supplied for pair ({i}, {j})") from None

    outcomes: dict[tuple[int, int], Dominance] = {}
    edges: set[tuple[int, int]] = set()
    for i in range(n):
        for j in range(i + 1, n):
            result = dominates(states[i], states[j], basis_for(i, j))
            outcomes[(i, j)] = result
            if result is Dominance.ALICE:
                edges.add((i, j))
            elif result is Dominance.BOB:
                edges.add((j, i))

    cycle = _find_directed_cycle(n, edges)
    return CycleReport(outcomes=outcomes, has_cycle=cycle is not None, cycle=cycle)


def rps_witness() -> tuple[list[np.ndarray], dict[tuple[int, int], Basis]]:
    """Three states and per-pair bases realizing a dominance cycle.

    The deciding directions of the three bases sit 120 degrees apart on the
    x-z great circle; each state is the deciding vector of "its own" basis,
    and each pair bargains in the basis owned by the member that beats the
    other (0 beats 1, 1 beats 2, 2 beats 0).
    """
    angles = [0.0, 2.0 * np.pi / 3.0, 4.0 * np.pi / 3.0]
    directions = [np.array([np.sin(t), 0.0, np.cos(t)]) for t in angles]
    bases = [basis_from_bloch(r) for r in directions]
    states = [b.b0.copy() for b in bases]
    pair_bases = {(0, 1): bases[0], (1, 2): bases[1], (0, 2): bases[2]}
    return states, pair_bases
