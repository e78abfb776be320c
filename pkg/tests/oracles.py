"""Brute-force reference implementations used only by the tests."""

import itertools

import numpy as np

from tristate.upb import ProductSet


def extendible_by_enumeration(pset, tol=1e-9):
    """Try all 3^n ways of handing members to parties.

    A product vector orthogonal to every member exists iff some assignment
    leaves each party's assigned local factors rank-deficient.
    """
    n = len(pset)
    dims = pset.dims
    factors = [[m.factors[k] for m in pset.members] for k in range(3)]
    ranks = []
    for k in range(3):
        table = {}
        for mask in range(1 << n):
            cols = [factors[k][j] for j in range(n) if mask >> j & 1]
            table[mask] = np.linalg.matrix_rank(np.array(cols).T, tol=tol) if cols else 0
        ranks.append(table)
    for assign in itertools.product(range(3), repeat=n):
        masks = [0, 0, 0]
        for j, k in enumerate(assign):
            masks[k] |= 1 << j
        if all(ranks[k][masks[k]] < dims[k] for k in range(3)):
            return True
    return False


def random_unitary(rng, d):
    X = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    Q, R = np.linalg.qr(X)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_orthogonal_product_set(rng, max_members=6, n_bases=2):
    """Greedy orthogonal product set in 2⊗2⊗2 from a few random local bases."""
    bases = [[random_unitary(rng, 2) for _ in range(n_bases)] for _ in range(3)]
    target = int(rng.integers(1, max_members + 1))
    pset = ProductSet((2, 2, 2))
    rows = []
    for _ in range(200):
        if len(pset) == target:
            break
        local = [bases[k][rng.integers(n_bases)][:, rng.integers(2)] for k in range(3)]
        v = np.kron(np.kron(local[0], local[1]), local[2])
        if all(abs(np.vdot(r, v)) < 1e-12 for r in rows):
            rows.append(v)
            pset.add(f"m{len(pset)}", *local)
    return pset


def rotated_shifts(rng, drop=()):
    """Shifts under random local unitaries, optionally with members removed."""
    from tristate.upb import shifts_upb

    U = [random_unitary(rng, 2) for _ in range(3)]
    out = ProductSet((2, 2, 2))
    for m in shifts_upb():
        if m.label in drop:
            continue
        out.add(m.label, *(U[k] @ m.factors[k] for k in range(3)))
    return out


def corpus(seed=20240611, size=200):
    rng = np.random.default_rng(seed)
    sets = []
    for i in range(size):
        r = i % 10
        if r == 0:
            sets.append(rotated_shifts(rng))
        elif r == 1:
            sets.append(rotated_shifts(rng, drop=(f"S{rng.integers(1, 5)}",)))
        else:
            sets.append(random_orthogonal_product_set(rng, n_bases=2 + (r % 3)))
    return sets
