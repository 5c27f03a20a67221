"""Single-trader polarization algebra on the Riemann sphere.

A polarization state is any nonzero complex 2-vector (xi0, xi1); vectors
that differ by a nonzero complex factor describe the same state.  Nothing
here normalizes in place: every formula divides by <xi|xi> instead, which
keeps the projective semantics explicit and the inputs untouched.

The two mutually inverse coordinate maps are

    Cayley-Klein:  r(xi) = <xi|sigma xi> / <xi|xi>        (state -> unit vector)
    Stokes:        P_r   = (I + r . sigma) / 2            (unit vector -> projector)

and the transition probability between two states is

    |<xi'|xi''>|^2 / (<xi'|xi'> <xi''|xi''>) = (1 + r' . r'') / 2 = cos^2(alpha/2).
"""

from __future__ import annotations

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

KET_0 = np.array([1, 0], dtype=complex)
KET_1 = np.array([0, 1], dtype=complex)

UNIT_TOL = 1e-12


def as_state(xi) -> np.ndarray:
    """Coerce to a complex 2-vector and reject non-states."""
    s = np.asarray(xi, dtype=complex)
    if s.shape != (2,):
        raise ValueError(f"polarization state must be a complex 2-vector, got shape {s.shape}")
    if not np.all(np.isfinite(s)):
        raise ValueError("polarization state has non-finite components")
    if s[0] == 0 and s[1] == 0:
        raise ValueError("the zero vector is not a polarization state")
    return s


def as_bloch(r) -> np.ndarray:
    """Coerce to a real 3-vector and reject non-unit input."""
    v = np.asarray(r, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"Bloch vector must be a real 3-vector, got shape {v.shape}")
    nrm2 = float(v @ v)
    if not np.isfinite(nrm2) or abs(nrm2 - 1.0) > UNIT_TOL:
        raise ValueError(f"Bloch vector must be unit length, |r|^2 = {nrm2!r}")
    return v


def inner(a, b) -> complex:
    """Hermitian scalar product conj(a0) b0 + conj(a1) b1."""
    return complex(np.vdot(as_state(a), as_state(b)))


def norm_sq(a) -> float:
    """<a|a>, always real and positive for a valid state."""
    s = as_state(a)
    return float(np.vdot(s, s).real)


def bloch(s) -> np.ndarray:
    """Cayley-Klein map: the unit Bloch vector of a (not necessarily normalized) state."""
    v = as_state(s)
    n = float(np.vdot(v, v).real)
    cross = np.conj(v[0]) * v[1]
    return np.array(
        [
            2.0 * cross.real / n,
            2.0 * cross.imag / n,
            (abs(v[0]) ** 2 - abs(v[1]) ** 2) / n,
        ]
    )


def projector_from_bloch(r) -> np.ndarray:
    """Stokes map: rank-1 projector (I + r . sigma) / 2 for a unit Bloch vector."""
    v = as_bloch(r)
    return 0.5 * (IDENTITY + v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z)


def projector(s) -> np.ndarray:
    """Rank-1 projector |s><s| / <s|s> onto a state."""
    v = as_state(s)
    return np.outer(v, np.conj(v)) / np.vdot(v, v).real


def state_from_bloch(r) -> np.ndarray:
    """Inverse Cayley-Klein map, unit-norm output.

    Phase convention: the first nonzero component is real and non-negative.
    The branch is chosen by the sign of x3 so that the construction stays
    stable near both poles (no cancellation in 1 +/- x3).
    """
    v = as_bloch(r)
    x1, x2, x3 = v
    if x3 >= 0.0:
        # eigenvector from the first projector column, xi0 already real >= 0
        xi0 = np.sqrt((1.0 + x3) / 2.0)
        xi1 = (x1 + 1j * x2) / np.sqrt(2.0 * (1.0 + x3))
        return np.array([xi0, xi1])
    # second column is stable when x3 is near -1
    xi1 = np.sqrt((1.0 - x3) / 2.0)
    xi0 = (x1 - 1j * x2) / np.sqrt(2.0 * (1.0 - x3))
    out = np.array([xi0, xi1])
    if abs(xi0) > 0.0:
        out = out * (np.conj(xi0) / abs(xi0))
    return out


def transition_probability(a, b) -> float:
    """|<a|b>|^2 / (<a|a> <b|b>), the chance of finding one state in the other."""
    va, vb = as_state(a), as_state(b)
    num = abs(np.vdot(va, vb)) ** 2
    den = float(np.vdot(va, va).real) * float(np.vdot(vb, vb).real)
    return min(num / den, 1.0)


def projective_equal(a, b, tol: float = 1e-10) -> bool:
    """True when a and b are the same projective state (equal up to a complex factor)."""
    return transition_probability(a, b) >= 1.0 - tol
