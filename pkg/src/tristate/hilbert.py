"""Tripartite Hilbert-space bookkeeping.

Basis ordering is lexicographic with party A slowest: ``|p,q,r>`` sits at
index ``(p*d2 + q)*d3 + r``.  Named local kets are stored unnormalised,
exactly as written in the constructions that use them; call
:func:`normalize` to get the unit vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import NamedTuple, Sequence, Union

import numpy as np

from .linalg import DEFAULT_RANK_TOL, eig_hermitian, rank_tol


class Party(IntEnum):
    A = 0
    B = 1
    C = 2


PartyLike = Union[Party, int, str]


def as_party(party: PartyLike) -> Party:
    if isinstance(party, Party):
        return party
    if isinstance(party, str):
        try:
            return Party[party.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown party {party!r}; expected A, B or C") from None
    if isinstance(party, (int, np.integer)) and 0 <= int(party) <= 2:
        return Party(int(party))
    raise ValueError(f"unknown party {party!r}; expected A, B or C")


class Cut(Enum):
    """The three one-versus-two bipartitions."""

    A_BC = "A|BC"
    B_CA = "B|CA"
    C_AB = "C|AB"

    @property
    def party(self) -> Party:
        return Party[self.name[0]]

    @property
    def order(self) -> tuple[int, int, int]:
        """Party order of the flattened view, singleton first."""
        return {Cut.A_BC: (0, 1, 2), Cut.B_CA: (1, 2, 0), Cut.C_AB: (2, 0, 1)}[self]

    @classmethod
    def for_party(cls, party: PartyLike) -> "Cut":
        return {Party.A: cls.A_BC, Party.B: cls.B_CA, Party.C: cls.C_AB}[as_party(party)]


CUTS = (Cut.A_BC, Cut.B_CA, Cut.C_AB)


class PartyDims(NamedTuple):
    d1: int
    d2: int
    d3: int

    @property
    def total(self) -> int:
        return self.d1 * self.d2 * self.d3

    def validate(self) -> "PartyDims":
        if any(int(d) != d or d < 1 for d in self):
            raise ValueError(f"party dimensions must be positive integers, got {tuple(self)}")
        return self


def as_dims(dims: Sequence[int]) -> PartyDims:
    if isinstance(dims, PartyDims):
        return dims
    dims = tuple(dims)
    if len(dims) != 3:
        raise ValueError(f"expected three party dimensions, got {dims}")
    return PartyDims(*(int(d) for d in dims)).validate()


def basis_index(dims: Sequence[int], p: int, q: int, r: int) -> int:
    d1, d2, d3 = as_dims(dims)
    if not (0 <= p < d1 and 0 <= q < d2 and 0 <= r < d3):
        raise ValueError(f"basis label ({p},{q},{r}) out of range for dims {tuple(dims)}")
    return (p * d2 + q) * d3 + r


@dataclass(frozen=True)
class StateVector:
    dims: PartyDims
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = as_dims(self.dims)
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        if amps.size != dims.total:
            raise ValueError(f"expected {dims.total} amplitudes for dims {tuple(dims)}, got {amps.size}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        return StateVector(self.dims, normalize(self.amplitudes))

    def projector(self) -> "Operator":
        v = normalize(self.amplitudes)
        return Operator(self.dims, np.outer(v, v.conj()))

    def inner(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class Operator:
    dims: PartyDims
    matrix: np.ndarray

    def __post_init__(self):
        dims = as_dims(self.dims)
        M = np.asarray(self.matrix, dtype=complex)
        if M.shape != (dims.total, dims.total):
            raise ValueError(f"expected a {dims.total}x{dims.total} matrix for dims {tuple(dims)}, got {M.shape}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", M)

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def __add__(self, other: "Operator") -> "Operator":
        _same_dims(self, other)
        return Operator(self.dims, self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        _same_dims(self, other)
        return Operator(self.dims, self.matrix - other.matrix)

    def __mul__(self, k) -> "Operator":
        return Operator(self.dims, k * self.matrix)

    __rmul__ = __mul__

    def pt(self, party: PartyLike) -> "Operator":
        return partial_transpose(self, party)


def _same_dims(a: Operator, b: Operator) -> None:
    if a.dims != b.dims:
        raise ValueError(f"dimension mismatch: {tuple(a.dims)} vs {tuple(b.dims)}")


def identity(dims: Sequence[int]) -> Operator:
    dims = as_dims(dims)
    return Operator(dims, np.eye(dims.total, dtype=complex))


def maximally_mixed(dims: Sequence[int]) -> Operator:
    dims = as_dims(dims)
    return Operator(dims, np.eye(dims.total, dtype=complex) / dims.total)


# Named local kets, keyed by (name, local dimension).  Coefficients exactly
# as defined by their constructions; only |+> and |-> carry a 1/sqrt(2).
_R2 = 1.0 / math.sqrt(2.0)
NAMED_KETS: dict[tuple[str, int], tuple[complex, ...]] = {
    ("+", 2): (_R2, _R2),
    ("-", 2): (_R2, -_R2),
    ("eta0", 3): (1, 1, 0),
    ("eta1", 3): (1, -1, 0),
    ("xi0", 3): (0, 1, 1),
    ("xi1", 3): (0, 1, -1),
    ("eta0", 4): (1, 1, 1, 0),
    ("eta1", 4): (1, -1, 0, 0),
    ("eta2", 4): (1, 1, -2, 0),
    ("xi0", 4): (0, 1, 1, 1),
    ("xi1", 4): (0, 1, -1, 0),
    ("xi2", 4): (0, 1, 1, -2),
    ("phi0", 4): (0, 1, 1, 0),
    ("phi1", 4): (0, 1, -1, 0),
}


def ket(label: Union[int, str], d: int) -> np.ndarray:
    """Local ket by basis index or registered name.

    ``"S"`` is the all-ones vector in any dimension.  Integers and digit
    strings select a computational basis vector.
    """
    if isinstance(label, str) and label.isdigit():
        label = int(label)
    if isinstance(label, (int, np.integer)):
        if not 0 <= label < d:
            raise ValueError(f"basis index {label} out of range for local dimension {d}")
        v = np.zeros(d, dtype=complex)
        v[label] = 1.0
        return v
    if label == "S":
        return np.ones(d, dtype=complex)
    try:
        return np.array(NAMED_KETS[(label, d)], dtype=complex)
    except KeyError:
        known = sorted(name for name, dim in NAMED_KETS if dim == d)
        raise ValueError(f"unknown ket {label!r} for local dimension {d}; known: {known}") from None


def normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    return v / n


def tensor3(a, b, c, dims: Sequence[int] | None = None) -> StateVector:
    """Fully product vector ``a ⊗ b ⊗ c`` in lexicographic order."""
    a, b, c = (np.asarray(x, dtype=complex).ravel() for x in (a, b, c))
    if dims is None:
        dims = (a.size, b.size, c.size)
    dims = as_dims(dims)
    if (a.size, b.size, c.size) != tuple(dims):
        raise ValueError(f"factor lengths {(a.size, b.size, c.size)} do not match dims {tuple(dims)}")
    return StateVector(dims, np.kron(np.kron(a, b), c))


def _as_operator(op, dims=None) -> Operator:
    if isinstance(op, Operator):
        return op
    if dims is None:
        raise ValueError("dims are required when passing a raw matrix")
    return Operator(as_dims(dims), op)


def partial_transpose(op: Operator, party: PartyLike) -> Operator:
    """Transpose the indices of one party.

    With row ``(p,q,r)`` and column ``(p',q',r')``, transposing A swaps
    ``p <-> p'``; likewise for B and C.
    """
    op = _as_operator(op)
    k = int(as_party(party))
    d = tuple(op.dims)
    t = op.matrix.reshape(d + d)
    axes = [0, 1, 2, 3, 4, 5]
    axes[k], axes[k + 3] = axes[k + 3], axes[k]
    return Operator(op.dims, t.transpose(axes).reshape(op.matrix.shape))


def permute_parties(op: Operator, perm: Sequence[int]) -> Operator:
    """Relabel party slots: slot ``s`` of the result holds old party ``perm[s]``."""
    op = _as_operator(op)
    perm = tuple(int(as_party(p)) for p in perm)
    if sorted(perm) != [0, 1, 2]:
        raise ValueError(f"not a permutation of the three parties: {perm}")
    d = tuple(op.dims)
    new_dims = PartyDims(*(d[p] for p in perm))
    t = op.matrix.reshape(d + d).transpose(list(perm) + [p + 3 for p in perm])
    return Operator(new_dims, t.reshape(op.matrix.shape))


def permute_vector(vec: StateVector, perm: Sequence[int]) -> StateVector:
    perm = tuple(int(as_party(p)) for p in perm)
    d = tuple(vec.dims)
    t = vec.amplitudes.reshape(d).transpose(perm)
    return StateVector(PartyDims(*(d[p] for p in perm)), t.ravel())


# Cyclic relabellings A->B->C->A and A->C->B->A.
CYCLE_FORWARD = (2, 0, 1)
CYCLE_BACKWARD = (1, 2, 0)


def cut_dims(dims: Sequence[int], cut: Cut) -> tuple[int, int]:
    d = tuple(as_dims(dims))
    i, j, k = cut.order
    return d[i], d[j] * d[k]


def flatten_cut(op: Operator, cut: Cut) -> np.ndarray:
    """Matrix of ``op`` reordered so the cut's singleton party is the first factor.

    The result acts on ``C^{d_single} ⊗ C^{d_pair}``; see :func:`cut_dims`.
    """
    op = _as_operator(op)
    return permute_parties(op, cut.order).matrix


def unflatten_cut(matrix, dims: Sequence[int], cut: Cut) -> Operator:
    dims = as_dims(dims)
    order = cut.order
    inverse = tuple(order.index(s) for s in range(3))
    permuted = PartyDims(*(dims[p] for p in order))
    return permute_parties(Operator(permuted, matrix), inverse)


def coefficient_matrix(vec: StateVector, cut: Cut) -> np.ndarray:
    """Pure-state amplitudes as a ``d_single x d_pair`` matrix across ``cut``."""
    d = tuple(vec.dims)
    t = vec.amplitudes.reshape(d).transpose(cut.order)
    ds, dp = cut_dims(vec.dims, cut)
    return t.reshape(ds, dp)


def schmidt_rank(vec: StateVector, cut: Cut, tol: float = DEFAULT_RANK_TOL) -> int:
    """Schmidt rank of a pure state across ``cut`` (1 means product)."""
    M = coefficient_matrix(StateVector(vec.dims, normalize(vec.amplitudes)), cut)
    return rank_tol(M @ M.conj().T, tol)


def is_density(op: Operator, tol: float = 1e-10) -> bool:
    M = op.matrix
    if np.linalg.norm(M - M.conj().T) > tol * max(np.linalg.norm(M), 1.0):
        return False
    if abs(np.trace(M) - 1.0) > tol:
        return False
    return float(eig_hermitian(M).eigenvalues[0]) >= -tol
