"""The parameterised 3-qubit family built from a 2⊗4 bound entangled state.

Construction chain, for ``0 <= b <= 1``::

    chi -> sigma(b) -> eta(b) (cyclic party average) -> h(b) -> rho2(b)

Each stage has a constructive route.  ``sigma``, ``rho2`` and the C-partial
transpose of ``rho2`` also have closed-form matrix routes, used to
cross-check the constructive ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import (
    CYCLE_BACKWARD,
    CYCLE_FORWARD,
    Operator,
    StateVector,
    permute_parties,
)

DIMS = (2, 2, 2)


def _check_b(b: float) -> float:
    b = float(b)
    if not 0.0 <= b <= 1.0 or math.isnan(b):
        raise ValueError(f"parameter b must lie in [0, 1], got {b}")
    return b


@dataclass(frozen=True)
class FamilyParams:
    b: float

    def __post_init__(self):
        object.__setattr__(self, "b", _check_b(self.b))

    @property
    def mu(self) -> float:
        return self.b / (3 * (1 + 7 * self.b))

    @property
    def nu(self) -> float:
        return (1 + 3 * self.b) / (6 + 42 * self.b)

    @property
    def eps(self) -> float:
        return 2 * self.b / (3 * (1 + 7 * self.b))

    @property
    def gamma(self) -> float:
        return self.b / (1 + 7 * self.b)

    @property
    def lam(self) -> float:
        return (1 + 3 * self.b) / (6 * (1 + 7 * self.b))

    @property
    def delta(self) -> float:
        return (1 + 5 * self.b) / (6 * (1 + 7 * self.b))

    @property
    def zeta(self) -> float:
        return (1 + self.b) / (2 * (1 + 7 * self.b))

    @property
    def omega(self) -> float:
        return (2 * self.b + math.sqrt(1 - self.b * self.b)) / (6 * (1 + 7 * self.b))

    @property
    def theta(self) -> float:
        return (3 + 21 * self.b) / (3 + 17 * self.b)


def _e(i: int) -> np.ndarray:
    v = np.zeros(8, dtype=complex)
    v[i] = 1.0
    return v


def _proj(v: np.ndarray) -> np.ndarray:
    return np.outer(v, v.conj())


# Fixed real 8-vectors entering the low-rank correction of eta(b).
V = {
    1: _e(1) + _e(6),
    2: _e(2) + _e(5),
    3: _e(1),
    4: _e(2),
    5: _e(6),
    6: _e(5),
}


def witness_u(b: float) -> np.ndarray:
    b = _check_b(b)
    return np.array(
        [0, 0, b / (3 + 17 * b), 0, 0, 2 * b / (3 + 17 * b),
         (2 * b + math.sqrt(1 - b * b)) / (6 + 34 * b), 0],
        dtype=complex,
    )


def psi_k(k: int) -> StateVector:
    """``psi^1``, ``psi^2``, ``psi^3``: ``(|0>|x> + |1>|y>)/sqrt(2)`` on A⊗BC."""
    pairs = {1: (0, 5), 2: (1, 6), 3: (2, 7)}
    if k not in pairs:
        raise ValueError(f"k must be 1, 2 or 3, got {k}")
    i, j = pairs[k]
    return StateVector(DIMS, (_e(i) + _e(j)) / math.sqrt(2))


def phi_b(b: float) -> StateVector:
    b = _check_b(b)
    return StateVector(DIMS, math.sqrt((1 + b) / 2) * _e(4) + math.sqrt((1 - b) / 2) * _e(7))


def chi() -> Operator:
    M = sum(_proj(psi_k(k).amplitudes) for k in (1, 2, 3)) * (2 / 7) + _proj(_e(3)) / 7
    return Operator(DIMS, M)


def sigma_b(b: float) -> Operator:
    b = _check_b(b)
    M = (7 * b / (7 * b + 1)) * chi().matrix + (1 / (7 * b + 1)) * _proj(phi_b(b).amplitudes)
    return Operator(DIMS, M)


def sigma_b_matrix(b: float) -> Operator:
    """Closed-form matrix of ``sigma(b)`` entered entry by entry."""
    b = _check_b(b)
    c = (1 + b) / 2
    s = math.sqrt(1 - b * b) / 2
    M = np.array([
        [b, 0, 0, 0, 0, b, 0, 0],
        [0, b, 0, 0, 0, 0, b, 0],
        [0, 0, b, 0, 0, 0, 0, b],
        [0, 0, 0, b, 0, 0, 0, 0],
        [0, 0, 0, 0, c, 0, 0, s],
        [b, 0, 0, 0, 0, b, 0, 0],
        [0, b, 0, 0, 0, 0, b, 0],
        [0, 0, b, 0, s, 0, 0, c],
    ], dtype=complex)
    return Operator(DIMS, M / (7 * b + 1))


def eta_b(b: float) -> Operator:
    """Average of ``sigma(b)`` over the three cyclic party relabellings."""
    s = sigma_b(b)
    M = (s.matrix + permute_parties(s, CYCLE_FORWARD).matrix + permute_parties(s, CYCLE_BACKWARD).matrix) / 3
    return Operator(DIMS, M)


def h_b(b: float) -> Operator:
    p = FamilyParams(b)
    v = V
    corr = (
        -p.mu * (np.outer(v[1], v[1]) + np.outer(v[2], v[2]))
        + p.nu * (np.outer(v[3], v[4]) + np.outer(v[4], v[3]))
        + p.eps * (np.outer(v[5], v[6]) + np.outer(v[6], v[5]))
    )
    return Operator(DIMS, eta_b(p.b).matrix + corr)


def rho2_b(b: float) -> Operator:
    p = FamilyParams(b)
    return Operator(DIMS, p.theta * h_b(p.b).matrix)


def rho2_matrix(b: float) -> Operator:
    """Closed-form matrix of ``rho2(b)``."""
    p = FamilyParams(b)
    G, L, D, Z, O = p.gamma, p.lam, p.delta, p.zeta, p.omega
    g = G / 3
    M = np.array([
        [G, 0, 0, g, 0, g, g, 0],
        [0, L, L, 0, 0, 0, 0, O],
        [0, L, L, 0, 0, 0, 0, O],
        [g, 0, 0, G, g, 0, 0, 0],
        [0, 0, 0, g, D, 0, 0, O],
        [g, 0, 0, 0, 0, 2 * g, 2 * g, 0],
        [g, 0, 0, 0, 0, 2 * g, 2 * g, 0],
        [0, O, O, 0, O, 0, 0, Z],
    ], dtype=complex)
    return Operator(DIMS, p.theta * M)


def rho2_ptC_matrix(b: float) -> Operator:
    """Closed-form matrix of the C-partial transpose of ``rho2(b)``."""
    p = FamilyParams(b)
    G, L, D, Z, O = p.gamma, p.lam, p.delta, p.zeta, p.omega
    g = G / 3
    M = np.array([
        [G, 0, 0, L, 0, 0, g, 0],
        [0, L, g, 0, g, 0, 0, O],
        [0, g, L, 0, 0, g, 0, 0],
        [L, 0, 0, G, 0, 0, O, 0],
        [0, g, 0, 0, D, 0, 0, 2 * g],
        [0, 0, g, 0, 0, 2 * g, O, 0],
        [g, 0, 0, O, 0, O, 2 * g, 0],
        [0, O, 0, 0, 2 * g, 0, 0, Z],
    ], dtype=complex)
    return Operator(DIMS, p.theta * M)


FAMILIES = {
    "sigma": sigma_b,
    "eta": eta_b,
    "rho2": rho2_b,
}
