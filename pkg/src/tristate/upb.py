"""Product bases, unextendible product bases and their complement states.

Catalog sets keep each member's local factors exactly as defined
(unnormalised integer or half-integer amplitudes).  Normalisation happens
only when Gram matrices or projectors are formed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .hilbert import (
    Cut,
    Operator,
    PartyDims,
    StateVector,
    as_dims,
    ket,
    normalize,
    tensor3,
)
from .linalg import DEFAULT_RANK_TOL, orthonormal_span, residual_outside_span


@dataclass(frozen=True)
class ProductMember:
    label: str
    factors: tuple[np.ndarray, np.ndarray, np.ndarray]
    vector: StateVector


@dataclass
class ProductSet:
    dims: PartyDims
    members: list[ProductMember] = field(default_factory=list)

    def __post_init__(self):
        self.dims = as_dims(self.dims)

    def add(self, label: str, a, b, c) -> None:
        a, b, c = (np.asarray(x, dtype=complex) for x in (a, b, c))
        self.members.append(ProductMember(label, (a, b, c), tensor3(a, b, c, self.dims)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def labels(self) -> list[str]:
        return [m.label for m in self.members]

    def member(self, label: str) -> ProductMember:
        for m in self.members:
            if m.label == label:
                return m
        raise KeyError(label)

    def vectors(self, normalized: bool = True) -> np.ndarray:
        """Member vectors as rows."""
        if not self.members:
            return np.zeros((0, self.dims.total), dtype=complex)
        rows = [m.vector.amplitudes for m in self.members]
        if normalized:
            rows = [normalize(r) for r in rows]
        return np.array(rows)

    def without(self, labels: Sequence[str]) -> "ProductSet":
        drop = set(labels)
        out = ProductSet(self.dims)
        out.members = [m for m in self.members if m.label not in drop]
        return out


@dataclass
class UpbVerdict:
    is_orthogonal: bool
    is_unextendible: bool
    complement_dim: int
    max_offdiag: float
    witness: Optional[dict] = None
    nodes_visited: int = 0


# --- catalog -----------------------------------------------------------------


def shifts_upb() -> ProductSet:
    """The four-member Shifts UPB in 2⊗2⊗2."""
    s = ProductSet((2, 2, 2))
    z, o, p, m = ket(0, 2), ket(1, 2), ket("+", 2), ket("-", 2)
    s.add("S1", z, o, p)
    s.add("S2", o, p, z)
    s.add("S3", p, z, o)
    s.add("S4", m, m, m)
    return s


def shifts_completion_A_BC() -> ProductSet:
    """Four states, product across A|BC, completing Shifts to a basis of C^8.

    Each returned member stores the A factor and the (entangled in general)
    BC vector; ``factors`` is ``(a, bc, None)`` for this set.
    """
    from .linalg import orth_in_2d_span

    z, o, p, m = ket(0, 2), ket(1, 2), ket("+", 2), ket("-", 2)
    a = np.kron(o, p)
    b = np.kron(p, z)
    c = np.kron(z, o)
    d = np.kron(m, m)
    pairs = [
        ("kappa1", z, orth_in_2d_span(a, b)),
        ("kappa2", o, orth_in_2d_span(b, a)),
        ("kappa3", p, orth_in_2d_span(c, d)),
        ("kappa4", m, orth_in_2d_span(d, c)),
    ]
    out = ProductSet((2, 2, 2))
    for label, left, bc in pairs:
        vec = StateVector((2, 2, 2), np.kron(left, bc))
        out.members.append(ProductMember(label, (left, bc, None), vec))
    return out


_TOPB3_PATTERNS = {
    # l: (slot contents), "e" = eta_i, "x" = xi_j, ints are basis kets
    1: (0, "e", "x"),
    2: ("e", 2, "x"),
    3: (2, "x", "e"),
    4: ("e", "x", 0),
    5: ("x", 0, "e"),
    6: ("x", "e", 2),
}

_TOPB4_PATTERNS = {
    1: (0, "e", "x"),
    2: ("e", 3, "x"),
    3: ("x", 0, "e"),
    4: ("x", "e", 3),
    5: (3, "x", "e"),
    6: ("e", "x", 0),
}


def _twisted_blocks(d: int, patterns: dict, n_index: int) -> list[tuple[str, tuple]]:
    out = []
    for l, pattern in patterns.items():
        for i in range(n_index):
            for j in range(n_index):
                slots = []
                for s in pattern:
                    if s == "e":
                        slots.append(ket(f"eta{i}", d))
                    elif s == "x":
                        slots.append(ket(f"xi{j}", d))
                    else:
                        slots.append(ket(s, d))
                out.append((f"B{l}({i},{j})", tuple(slots)))
    return out


def topb3() -> ProductSet:
    """Twisted orthogonal product basis of (C^3)^{⊗3}, 27 members.

    Labels: ``B0(k)`` for ``|k,k,k>``, ``Bl(i,j)`` for ``|psi(i,j)>_l``.
    """
    s = ProductSet((3, 3, 3))
    for k in range(3):
        s.add(f"B0({k})", ket(k, 3), ket(k, 3), ket(k, 3))
    for label, (a, b, c) in _twisted_blocks(3, _TOPB3_PATTERNS, 2):
        s.add(label, a, b, c)
    return s


def upb3() -> ProductSet:
    """The 19-member UPB of (C^3)^{⊗3}: B1..B6 without psi(0,0), plus S."""
    base = topb3()
    s = ProductSet((3, 3, 3))
    for m in base:
        if m.label.startswith("B0") or m.label.endswith("(0,0)"):
            continue
        s.members.append(m)
    S = ket("S", 3)
    s.add("S", S, S, S)
    return s


def topb4() -> ProductSet:
    """Twisted orthogonal product basis of (C^4)^{⊗3}, 64 members.

    Labels: ``B0(k)`` (k = 0, 3), ``B0'(l,m,p)`` for the phi triples and
    ``Bl(i,j)`` with ``i, j`` in 0..2.
    """
    s = ProductSet((4, 4, 4))
    for k in (0, 3):
        s.add(f"B0({k})", ket(k, 4), ket(k, 4), ket(k, 4))
    for l, m, p in itertools.product(range(2), repeat=3):
        s.add(f"B0'({l},{m},{p})", ket(f"phi{l}", 4), ket(f"phi{m}", 4), ket(f"phi{p}", 4))
    for label, (a, b, c) in _twisted_blocks(4, _TOPB4_PATTERNS, 3):
        s.add(label, a, b, c)
    return s


def upb4() -> ProductSet:
    """The 56-member UPB of (C^4)^{⊗3}."""
    base = topb4()
    s = ProductSet((4, 4, 4))
    for m in base:
        if m.label.startswith("B0(") or m.label.endswith("(0,0)") or m.label == "B0'(0,0,0)":
            continue
        s.members.append(m)
    S = ket("S", 4)
    s.add("S", S, S, S)
    return s


def biseparable_quad3() -> list[StateVector]:
    """Four states orthogonal to :func:`upb3`, each product across A|BC.

    In order: psi(0,0)_2 - psi(0,0)_4, psi(0,0)_5 - psi(0,0)_6,
    4|000> - psi(0,0)_1 and 4|222> - psi(0,0)_3.
    """
    base = topb3()

    def v(label):
        return base.member(label).vector.amplitudes

    vecs = [
        v("B2(0,0)") - v("B4(0,0)"),
        v("B5(0,0)") - v("B6(0,0)"),
        4 * v("B0(0)") - v("B1(0,0)"),
        4 * v("B0(2)") - v("B3(0,0)"),
    ]
    return [StateVector((3, 3, 3), x) for x in vecs]


# --- verification ------------------------------------------------------------


def gram_matrix(pset: ProductSet) -> np.ndarray:
    V = pset.vectors(normalized=True)
    return V.conj() @ V.T


def verify_mutual_orthogonality(pset: ProductSet, tol: float = 1e-12) -> tuple[bool, float]:
    """Compare the normalised Gram matrix with the identity.

    Returns ``(ok, max |G - I|)``.
    """
    if len(pset) == 0:
        return True, 0.0
    G = gram_matrix(pset)
    dev = float(np.max(np.abs(G - np.eye(len(pset)))))
    return dev <= tol, dev


def _distinct_directions(vectors: list[np.ndarray], tol: float) -> tuple[list[np.ndarray], list[int]]:
    reps: list[np.ndarray] = []
    ids: list[int] = []
    for v in vectors:
        u = normalize(v)
        for k, r in enumerate(reps):
            if abs(abs(np.vdot(r, u)) - 1.0) < tol:
                ids.append(k)
                break
        else:
            reps.append(u)
            ids.append(len(reps) - 1)
    return reps, ids


class _PartySpace:
    """Span of the local vectors assigned to one party, plus its closure.

    The closure is the set of distinct local directions (for this party)
    already inside the span; it identifies the span exactly and serves as
    the memo key.
    """

    def __init__(self, reps: list[np.ndarray], d: int, tol: float):
        self.reps = reps
        self.d = d
        self.tol = tol
        self._cache: dict[frozenset, frozenset] = {frozenset(): frozenset()}

    def extend(self, closure: frozenset, new_id: int) -> tuple[frozenset, int]:
        gens = closure | {new_id}
        if gens in self._cache:
            cl = self._cache[gens]
        else:
            basis = orthonormal_span([self.reps[k] for k in sorted(gens)], self.tol)
            cl = frozenset(
                k for k, r in enumerate(self.reps) if residual_outside_span(r, basis) <= self.tol
            )
            self._cache[gens] = cl
        return cl, self.dim(cl)

    def dim(self, closure: frozenset) -> int:
        if not closure:
            return 0
        return orthonormal_span([self.reps[k] for k in sorted(closure)], self.tol).shape[1]


def _complement_vector(vectors: list[np.ndarray], d: int, tol: float) -> np.ndarray:
    basis = orthonormal_span(vectors, tol) if vectors else np.zeros((d, 0), dtype=complex)
    full = orthonormal_span(list(basis.T) + list(np.eye(d)), tol)
    return full[:, basis.shape[1]]


def verify_unextendible(pset: ProductSet, tol: float = DEFAULT_RANK_TOL) -> UpbVerdict:
    """Decide whether some product vector is orthogonal to every member.

    A product vector ``x⊗y⊗z`` is orthogonal to all members iff the members
    can be split among the parties so that each party's assigned local
    factors span a proper subspace (then ``x``, ``y``, ``z`` are taken from
    the orthogonal complements).  The search assigns members in input
    order and prunes a branch once a party's span is full.  Two further
    prunings keep the tree small: a member whose local factor already lies
    in a party's span is placed there without branching (this never
    hurts), and a branch dies early if some later member fits in no
    party.  Failed states are memoised on ``(position, spans)``.
    """
    dims = pset.dims
    n = len(pset)
    orth, dev = verify_mutual_orthogonality(pset)
    vec_rank = orthonormal_span(list(pset.vectors()), tol).shape[1] if n else 0
    complement_dim = dims.total - vec_rank

    if complement_dim == 0:
        return UpbVerdict(orth, True, 0, dev)

    spaces = []
    ids = []
    for k in range(3):
        reps, id_k = _distinct_directions([m.factors[k] for m in pset.members], tol)
        spaces.append(_PartySpace(reps, dims[k], tol))
        ids.append(id_k)

    failed: set = set()
    nodes = 0
    assignment = [0] * n

    def placeable(j, closures, dimsnow):
        for k in range(3):
            if ids[k][j] in closures[k] or dimsnow[k] + 1 < dims[k]:
                return True
        return False

    def search(i, closures, dimsnow) -> bool:
        nonlocal nodes
        nodes += 1
        if i == n:
            return True
        key = (i, closures)
        if key in failed:
            return False
        for j in range(i, n):
            if not placeable(j, closures, dimsnow):
                failed.add(key)
                return False
        free = [k for k in range(3) if ids[k][i] in closures[k]]
        if free:
            assignment[i] = free[0]
            if search(i + 1, closures, dimsnow):
                return True
            failed.add(key)
            return False
        for k in range(3):
            cl, dk = spaces[k].extend(closures[k], ids[k][i])
            if dk >= dims[k]:
                continue
            new_cl = tuple(cl if kk == k else closures[kk] for kk in range(3))
            new_dims = tuple(dk if kk == k else dimsnow[kk] for kk in range(3))
            assignment[i] = k
            if search(i + 1, new_cl, new_dims):
                return True
        failed.add(key)
        return False

    found = search(0, (frozenset(),) * 3, (0, 0, 0))
    witness = None
    if found:
        local = []
        for k in range(3):
            assigned = [pset.members[j].factors[k] for j in range(n) if assignment[j] == k]
            local.append(_complement_vector(assigned, dims[k], tol))
        witness = {
            "assignment": tuple("ABC"[k] for k in assignment),
            "vector": tensor3(*local, dims=dims),
        }
    return UpbVerdict(orth, not found, complement_dim, dev, witness, nodes)


def complement_state(pset: ProductSet, tol: float = 1e-10) -> Operator:
    """Normalised projector onto the orthogonal complement of an orthogonal set."""
    ok, dev = verify_mutual_orthogonality(pset, tol)
    if not ok:
        raise ValueError(f"set is not mutually orthogonal (max |G - I| = {dev:.3e})")
    D = pset.dims.total
    n = len(pset)
    if n >= D:
        raise ValueError("set is complete; its orthogonal complement is empty")
    V = pset.vectors(normalized=True)
    P = V.T @ V.conj()
    return Operator(pset.dims, (np.eye(D) - P) / (D - n))


def rho_su() -> Operator:
    return complement_state(shifts_upb())


def rho3_8() -> Operator:
    return complement_state(upb3())


def rho4_8() -> Operator:
    return complement_state(upb4())


def is_product_across(vec: StateVector, cut: Cut, tol: float = DEFAULT_RANK_TOL) -> bool:
    from .hilbert import schmidt_rank

    return schmidt_rank(vec, cut, tol) == 1
