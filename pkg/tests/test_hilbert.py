import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tristate.family import sigma_b
from tristate.hilbert import (
    CYCLE_BACKWARD,
    CYCLE_FORWARD,
    Cut,
    Operator,
    basis_index,
    coefficient_matrix,
    cut_dims,
    flatten_cut,
    ket,
    maximally_mixed,
    normalize,
    partial_transpose,
    permute_parties,
    permute_vector,
    schmidt_rank,
    tensor3,
    unflatten_cut,
)
from tristate.linalg import eigvals_hermitian
from tristate.upb import shifts_upb

DIMS = [(2, 2, 2), (2, 3, 2), (3, 2, 4), (3, 3, 3)]


def random_operator(rng, dims):
    n = int(np.prod(dims))
    return Operator(dims, rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))


def pt_by_loops(M, dims, party):
    """Reference partial transpose written out index by index."""
    out = np.zeros_like(M)
    labels = list(itertools.product(*(range(d) for d in dims)))
    for row in labels:
        for col in labels:
            r, c = list(row), list(col)
            r[party], c[party] = col[party], row[party]
            out[basis_index(dims, *r), basis_index(dims, *c)] = M[basis_index(dims, *row), basis_index(dims, *col)]
    return out


def test_named_kets():
    np.testing.assert_allclose(ket("+", 2), np.array([1, 1]) / np.sqrt(2))
    np.testing.assert_allclose(ket("eta1", 3), [1, -1, 0])
    np.testing.assert_allclose(ket("xi0", 4), [0, 1, 1, 1])
    np.testing.assert_allclose(ket("phi0", 4), [0, 1, 1, 0])
    np.testing.assert_allclose(ket("S", 3), [1, 1, 1])
    np.testing.assert_allclose(ket(2, 3), [0, 0, 1])
    with pytest.raises(ValueError):
        ket("eta2", 3)
    with pytest.raises(ValueError):
        ket(3, 3)


def test_d4_completions_are_orthogonal():
    for name in ("eta", "xi"):
        vecs = np.array([ket(f"{name}{i}", 4) for i in range(3)])
        G = vecs.conj() @ vecs.T
        assert np.max(np.abs(G - np.diag(np.diag(G)))) < 1e-12


def test_tensor3_indexing():
    v = tensor3(ket(0, 2), ket(0, 2), ket(0, 2))
    np.testing.assert_allclose(v.amplitudes, np.eye(8)[0])
    v = tensor3(ket(0, 2), ket(1, 2), ket("+", 2))
    expected = np.zeros(8)
    expected[[2, 3]] = 1 / np.sqrt(2)
    np.testing.assert_allclose(v.amplitudes, expected)
    v = tensor3(ket(2, 3), ket(2, 3), ket(2, 3))
    np.testing.assert_allclose(v.amplitudes, np.eye(27)[26])
    with pytest.raises(ValueError):
        tensor3(ket(0, 2), ket(0, 2), ket(0, 2), dims=(2, 2, 3))


@pytest.mark.parametrize("dims", DIMS)
def test_tensor3_formula(dims):
    rng = np.random.default_rng(0)
    a, b, c = (rng.normal(size=d) + 1j * rng.normal(size=d) for d in dims)
    v = tensor3(a, b, c)
    for p, q, r in itertools.product(*(range(d) for d in dims)):
        assert v.amplitudes[(p * dims[1] + q) * dims[2] + r] == pytest.approx(a[p] * b[q] * c[r])


@pytest.mark.parametrize("dims", DIMS)
@pytest.mark.parametrize("party", [0, 1, 2])
def test_partial_transpose_index_rule(dims, party):
    op = random_operator(np.random.default_rng(1), dims)
    np.testing.assert_array_equal(partial_transpose(op, party).matrix, pt_by_loops(op.matrix, dims, party))


def test_partial_transpose_of_identity():
    I = maximally_mixed((2, 3, 2))
    for p in "ABC":
        np.testing.assert_array_equal(partial_transpose(I, p).matrix, I.matrix)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(DIMS), st.integers(0, 2**32 - 1))
def test_partial_transpose_algebra(dims, seed):
    op = random_operator(np.random.default_rng(seed), dims)
    M = op.matrix
    for p in range(3):
        T = partial_transpose(op, p)
        np.testing.assert_array_equal(partial_transpose(T, p).matrix, M)
        assert T.trace == pytest.approx(op.trace)
    ab = partial_transpose(partial_transpose(op, "A"), "B").matrix
    ba = partial_transpose(partial_transpose(op, "B"), "A").matrix
    np.testing.assert_array_equal(ab, ba)
    full = partial_transpose(partial_transpose(partial_transpose(op, "A"), "B"), "C").matrix
    np.testing.assert_array_equal(full, M.T)
    H = Operator(dims, M + M.conj().T)
    for p in range(3):
        T = partial_transpose(H, p).matrix
        np.testing.assert_allclose(T, T.conj().T)


def test_permute_identity_and_spectrum():
    s = sigma_b(0.4)
    np.testing.assert_array_equal(permute_parties(s, (0, 1, 2)).matrix, s.matrix)
    w = eigvals_hermitian(s.matrix)
    for perm in (CYCLE_FORWARD, CYCLE_BACKWARD, (1, 0, 2)):
        np.testing.assert_allclose(eigvals_hermitian(permute_parties(s, perm).matrix), w, atol=1e-12)


def test_permute_relabels_basis():
    dims = (2, 3, 4)
    v = tensor3(ket(1, 2), ket(2, 3), ket(3, 4))
    out = permute_vector(v, (2, 0, 1))
    assert tuple(out.dims) == (4, 2, 3)
    np.testing.assert_allclose(out.amplitudes, tensor3(ket(3, 4), ket(1, 2), ket(2, 3)).amplitudes)
    P = v.projector()
    np.testing.assert_allclose(permute_parties(P, (2, 0, 1)).matrix, out.projector().matrix)


def test_cyclic_permutation_maps_shifts_onto_itself():
    shifts = shifts_upb()
    projs = [m.vector.projector().matrix for m in shifts]
    for perm in (CYCLE_FORWARD, CYCLE_BACKWARD):
        moved = [permute_parties(m.vector.projector(), perm).matrix for m in shifts]
        for P in moved:
            assert any(np.allclose(P, Q, atol=1e-12) for Q in projs)


def test_flatten_cut_views():
    assert cut_dims((2, 2, 2), Cut.A_BC) == (2, 4)
    assert cut_dims((3, 3, 3), Cut.C_AB) == (3, 9)
    assert cut_dims((2, 3, 4), Cut.B_CA) == (3, 8)
    # C first: |p,q,r> -> |r,p,q>
    dims = (3, 3, 3)
    v = tensor3(ket(0, 3), ket(1, 3), ket(2, 3))
    M = flatten_cut(v.projector(), Cut.C_AB)
    idx = (2 * 3 + 0) * 3 + 1
    assert M[idx, idx] == 1


@pytest.mark.parametrize("cut", list(Cut))
def test_flatten_roundtrip_and_pt_commutes(cut):
    dims = (2, 3, 4)
    op = random_operator(np.random.default_rng(5), dims)
    M = flatten_cut(op, cut)
    np.testing.assert_array_equal(unflatten_cut(M, dims, cut).matrix, op.matrix)
    ds, dp = cut_dims(dims, cut)
    view_pt = M.reshape(ds, dp, ds, dp).transpose(2, 1, 0, 3).reshape(ds * dp, ds * dp)
    np.testing.assert_array_equal(view_pt, flatten_cut(partial_transpose(op, cut.party), cut))


def test_schmidt_rank():
    prod = tensor3(ket(0, 2), ket("+", 2), ket(1, 2))
    for cut in Cut:
        assert schmidt_rank(prod, cut) == 1
    ghz = tensor3(ket(0, 2), ket(0, 2), ket(0, 2)).amplitudes + tensor3(ket(1, 2), ket(1, 2), ket(1, 2)).amplitudes
    from tristate.hilbert import StateVector

    g = StateVector((2, 2, 2), ghz)
    assert [schmidt_rank(g, c) for c in Cut] == [2, 2, 2]
    assert coefficient_matrix(g, Cut.A_BC).shape == (2, 4)


def test_normalize_zero():
    with pytest.raises(ValueError):
        normalize(np.zeros(3))
