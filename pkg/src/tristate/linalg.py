"""Dense complex linear algebra for small Hermitian problems.

Everything here works on plain ``numpy`` arrays.  The eigensolver is a
cyclic Jacobi method using round-robin (parallel) pair ordering, so each
round rotates ``n/2`` disjoint index pairs at once with vectorised numpy
operations.  Matrices in this package never exceed a few hundred rows.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

DEFAULT_RANK_TOL = 1e-9
HERMITIAN_TOL = 1e-12
OFFDIAG_TOL = 1e-14
MAX_SWEEPS = 100


class NumericalError(RuntimeError):
    """Raised when an iterative routine fails to converge."""


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_square(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def fix_phase(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude coordinate is real positive."""
    vectors = np.array(vectors, dtype=complex, copy=True)
    if vectors.size == 0:
        return vectors
    idx = np.argmax(np.abs(vectors), axis=0)
    pivots = vectors[idx, np.arange(vectors.shape[1])]
    mags = np.abs(pivots)
    phases = np.where(mags > 0, pivots / np.where(mags > 0, mags, 1.0), 1.0)
    return vectors * np.conj(phases)[None, :]


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _offdiag_norm(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.linalg.norm(off))


def eig_hermitian(M) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    The input is symmetrised as ``(M + M^H)/2`` before solving.  Eigenvalues
    are returned in ascending order; each eigenvector column has its
    largest-magnitude coordinate made real and positive.

    Raises ``ValueError`` for non-square input or when ``M`` deviates from
    Hermitian by more than ``1e-12`` relative to its Frobenius norm, and
    ``NumericalError`` if the sweeps do not converge.
    """
    M = _as_square(M)
    n = M.shape[0]
    norm = float(np.linalg.norm(M))
    asym = float(np.linalg.norm(M - M.conj().T))
    if asym > HERMITIAN_TOL * max(norm, 1e-300):
        raise ValueError(f"matrix is not Hermitian (|M - M^H|_F = {asym:.3e}, |M|_F = {norm:.3e})")

    A = 0.5 * (M + M.conj().T)
    X = np.eye(n, dtype=complex)
    if n == 0:
        return Spectrum(np.zeros(0), X)

    target = OFFDIAG_TOL * norm
    rounds = _round_robin(n)
    for _ in range(MAX_SWEEPS):
        if _offdiag_norm(A) <= target:
            break
        for p, q in rounds:
            if p.size == 0:
                continue
            apq = A[p, q]
            r = np.abs(apq)
            active = r > 0
            if not np.any(active):
                continue
            r_safe = np.where(active, r, 1.0)
            e = np.where(active, apq / r_safe, 1.0)
            app = A[p, p].real
            aqq = A[q, q].real
            theta = (aqq - app) / (2.0 * r_safe)
            sgn = np.where(theta >= 0, 1.0, -1.0)
            big = np.abs(theta) > 1e150
            theta_c = np.where(big, 1.0, theta)
            t = np.where(big, 0.5 / np.where(big, theta, 1.0),
                         sgn / (np.abs(theta_c) + np.sqrt(theta_c * theta_c + 1.0)))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            ec = np.conj(e)
            w00, w01 = c, s
            w10, w11 = -s * ec, c * ec

            Ap, Aq = A[:, p].copy(), A[:, q].copy()
            A[:, p] = Ap * w00 + Aq * w10
            A[:, q] = Ap * w01 + Aq * w11
            Ap, Aq = A[p, :].copy(), A[q, :].copy()
            A[p, :] = np.conj(w00)[:, None] * Ap + np.conj(w10)[:, None] * Aq
            A[q, :] = np.conj(w01)[:, None] * Ap + np.conj(w11)[:, None] * Aq
            A[p, q] = 0.0
            A[q, p] = 0.0
            A[p, p] = A[p, p].real
            A[q, q] = A[q, q].real

            Xp, Xq = X[:, p].copy(), X[:, q].copy()
            X[:, p] = Xp * w00 + Xq * w10
            X[:, q] = Xp * w01 + Xq * w11
    else:
        if _offdiag_norm(A) > target:
            raise NumericalError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")

    w = np.diag(A).real.copy()
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], fix_phase(X[:, order]))


def eigvals_hermitian(M) -> np.ndarray:
    return eig_hermitian(M).eigenvalues


def min_eigenvalue(M) -> float:
    return float(eig_hermitian(M).eigenvalues[0])


def rank_tol(M, tol_rel: float = DEFAULT_RANK_TOL) -> int:
    """Number of eigenvalues above ``tol_rel * max(max|lambda|, 1)``."""
    w = eig_hermitian(M).eigenvalues
    if w.size == 0:
        return 0
    scale = max(float(np.max(np.abs(w))), 1.0)
    return int(np.sum(w > tol_rel * scale))


def range_basis(M, tol_rel: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Orthonormal eigenvectors of a PSD matrix spanning its range (as columns)."""
    w, V = eig_hermitian(M)
    if w.size == 0:
        return V
    scale = max(float(np.max(np.abs(w))), 1.0)
    return V[:, w > tol_rel * scale]


def null_basis(M, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the kernel of a matrix ``M``.

    Computed from the eigenvalues of ``M^H M``; directions whose eigenvalue
    is below ``tol`` count as null.
    """
    M = np.asarray(M, dtype=complex)
    G = M.conj().T @ M
    w, V = eig_hermitian(G)
    return V[:, w < tol]


def orthonormal_span(vectors: Sequence, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Orthonormal basis for the span of ``vectors``, returned as columns.

    Modified Gram-Schmidt with a second orthogonalisation pass.  A vector
    is dropped when its remainder after projection is below ``tol`` times
    its original norm.  An empty input gives a ``(0, 0)`` array.
    """
    vecs = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    if not vecs:
        return np.zeros((0, 0), dtype=complex)
    n = vecs[0].size
    if any(v.size != n for v in vecs):
        raise ValueError("all vectors must have the same length")
    basis: list[np.ndarray] = []
    for v in vecs:
        norm0 = np.linalg.norm(v)
        if norm0 == 0:
            continue
        r = v.copy()
        for _ in range(2):
            for b in basis:
                r = r - b * np.vdot(b, r)
        nr = np.linalg.norm(r)
        if nr <= tol * norm0:
            continue
        basis.append(r / nr)
    if not basis:
        return np.zeros((n, 0), dtype=complex)
    return fix_phase(np.column_stack(basis))


def span_dim(vectors: Sequence, tol: float = DEFAULT_RANK_TOL) -> int:
    return orthonormal_span(vectors, tol).shape[1] if len(vectors) else 0


def residual_outside_span(v, basis: np.ndarray) -> float:
    """Relative norm of the part of ``v`` orthogonal to ``span(basis)``.

    ``basis`` holds orthonormal columns.  Returns 0 for the zero vector.
    """
    v = np.asarray(v, dtype=complex).ravel()
    nv = np.linalg.norm(v)
    if nv == 0:
        return 0.0
    B = np.asarray(basis, dtype=complex)
    if B.size == 0:
        return 1.0
    if B.shape[0] != v.size:
        raise ValueError(f"basis has rows of length {B.shape[0]}, vector has {v.size}")
    rem = v - B @ (B.conj().T @ v)
    return float(min(np.linalg.norm(rem) / nv, 1.0))


def orth_in_2d_span(x, y, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Unit vector in ``span{x, y}`` orthogonal to ``x``.

    The first nonzero coordinate of the result is made real positive.
    """
    x = np.asarray(x, dtype=complex).ravel()
    y = np.asarray(y, dtype=complex).ravel()
    if x.size != y.size:
        raise ValueError("x and y must have the same length")
    nx = np.linalg.norm(x)
    if nx == 0:
        raise ValueError("x is the zero vector")
    xh = x / nx
    r = y - xh * np.vdot(xh, y)
    r = r - xh * np.vdot(xh, r)
    nr = np.linalg.norm(r)
    if nr <= tol * max(np.linalg.norm(y), 1e-300):
        raise ValueError("x and y are linearly dependent")
    r = r / nr
    nz = np.flatnonzero(np.abs(r) > 1e-15)
    pivot = r[nz[0]]
    return r * (np.conj(pivot) / abs(pivot))
