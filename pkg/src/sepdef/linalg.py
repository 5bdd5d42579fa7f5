"""Exact Gaussian elimination.

Two flavours: generic routines on lists of raw domain values (any field from
:mod:`sepdef.scalars`), and numpy routines for finite fields.  Pivoting is
always leftmost-nonzero.
"""

from __future__ import annotations

import numpy as np

from .scalars import Domain, FiniteField


# ---------------------------------------------------------------------------
# generic (list-of-rows) versions

def rref(K: Domain, rows) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    rank = 0
    is_zero, mul, sub, inv = K.is_zero, K.mul, K.sub, K.inv
    for c in range(ncols):
        piv = None
        for r in range(rank, len(M)):
            if not is_zero(M[r][c]):
                piv = r
                break
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        prow = M[rank]
        if not K.is_one(prow[c]):
            ic = inv(prow[c])
            prow = M[rank] = [mul(x, ic) for x in prow]
        nz = [j for j in range(c, ncols) if not is_zero(prow[j])]
        for r in range(len(M)):
            if r != rank and not is_zero(M[r][c]):
                f = M[r][c]
                row = M[r]
                for j in nz:
                    row[j] = sub(row[j], mul(f, prow[j]))
        pivots.append(c)
        rank += 1
        if rank == len(M):
            break
    return M[:rank], pivots


def rank(K: Domain, rows) -> int:
    return len(rref(K, rows)[1])


def nullspace(K: Domain, rows, ncols: int | None = None) -> list[tuple]:
    """Basis of {v : M v = 0} (M given by rows)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    R, pivots = rref(K, rows)
    pset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pset:
            continue
        v = [K.zero] * ncols
        v[free] = K.one
        for row, pc in zip(R, pivots):
            if not K.is_zero(row[free]):
                v[pc] = K.neg(row[free])
        basis.append(tuple(v))
    return basis


def solve(K: Domain, rows, rhs) -> tuple | None:
    """One solution of M v = rhs, or None if the system is inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(K, aug)
    if pivots and pivots[-1] == ncols:
        return None
    v = [K.zero] * ncols
    for row, pc in zip(R, pivots):
        v[pc] = row[ncols]
    return tuple(v)


def transpose(rows):
    return [list(c) for c in zip(*rows)]


class EchelonBasis:
    """A subspace kept in reduced echelon form, with membership and coordinates."""

    def __init__(self, K: Domain, vectors, dim: int):
        self.K = K
        self.dim = dim
        R, piv = rref(K, vectors) if vectors else ([], [])
        self.rows = [tuple(r) for r in R]
        self.pivots = piv

    def __len__(self):
        return len(self.rows)

    def reduce(self, v) -> list:
        K = self.K
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if not K.is_zero(c):
                for j in range(pc, self.dim):
                    if not K.is_zero(row[j]):
                        v[j] = K.sub(v[j], K.mul(c, row[j]))
        return v

    def contains(self, v) -> bool:
        return all(self.K.is_zero(c) for c in self.reduce(v))

    def coordinates(self, v) -> tuple:
        """Coefficients of v in terms of ``rows``; v must lie in the span."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[pc] for pc in self.pivots)


# ---------------------------------------------------------------------------
# numpy versions over finite fields

def ff_rref(F: FiniteField, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    A = np.array(A, dtype=np.int64, copy=True)
    if A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0), []
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = F.v_mul(A[r], np.int64(F.inv(lead)))
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            A[rows] = F.v_sub(A[rows], F.v_mul(col[rows, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def ff_nullspace(F: FiniteField, A: np.ndarray, ncols: int | None = None) -> np.ndarray:
    """Rows form a basis of the right kernel of A."""
    A = np.asarray(A, dtype=np.int64)
    if ncols is None:
        ncols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = ff_rref(F, A)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fc in enumerate(free):
        out[k, fc] = 1
        if pivots:
            out[k, pivots] = F.v_neg(R[:, fc])
    return out


def ff_span(F: FiniteField, V: np.ndarray) -> np.ndarray:
    """Echelon basis (rows) of the row space of V."""
    V = np.asarray(V, dtype=np.int64)
    if V.shape[0] == 0:
        return V
    return ff_rref(F, V)[0]


def ff_intersect(F: FiniteField, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Basis of rowspace(U) ∩ rowspace(V)."""
    if U.shape[0] == 0 or V.shape[0] == 0:
        return np.zeros((0, U.shape[1]), dtype=np.int64)
    # a U = b V  <=>  [a, -b] in the left kernel of [U; V]
    stacked = np.vstack([U, V])
    K = ff_nullspace(F, stacked.T)
    if K.shape[0] == 0:
        return np.zeros((0, U.shape[1]), dtype=np.int64)
    return ff_span(F, F.matmul(K[:, : U.shape[0]], U))


def ff_reduce(F: FiniteField, R: np.ndarray, pivots: list[int], X: np.ndarray) -> np.ndarray:
    """Reduce the rows of X modulo the echelon basis (R, pivots)."""
    if not pivots:
        return X
    return F.v_sub(X, F.matmul(X[:, pivots], R))
