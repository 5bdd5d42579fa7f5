"""Independent reference computations shared by the module tests and the acceptance suite."""

from __future__ import annotations

import numpy as np

from sepdef.linalg import ff_rref, nullspace
from sepdef.upoly import Poly


def row_space(F, rows):
    """Reduced row echelon basis of the span of rows (canonical, so spans compare with ==)."""
    if len(rows) == 0:
        return []
    R, piv = ff_rref(F, np.array(rows, dtype=np.int64).reshape(len(rows), -1))
    return R[: len(piv)].tolist()


def frobenius_kernel(A):
    """Nilpotent elements of a commutative A over F_q: kernel of a -> a^(q^k), q^k >= dim."""
    F = A.field
    e = F.order
    while e < A.dim:
        e *= F.order
    cols = [A.pow(A.basis(i), e) for i in range(A.dim)]  # F_q-linear map in the commutative case
    rows = [list(r) for r in zip(*cols)]
    return nullspace(F, rows, A.dim)


def bareiss_det(R, M):
    """Fraction-free determinant over an integral domain."""
    M = [list(r) for r in M]
    n = len(M)
    if n == 0:
        return R.one
    sign, prev = R.one, R.one
    for k in range(n - 1):
        if R.is_zero(M[k][k]):
            for i in range(k + 1, n):
                if not R.is_zero(M[i][k]):
                    M[k], M[i] = M[i], M[k]
                    sign = R.neg(sign)
                    break
            else:
                return R.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = R.sub(R.mul(M[i][j], M[k][k]), R.mul(M[i][k], M[k][j]))
                M[i][j] = R.exquo(num, prev)
        prev = M[k][k]
    return R.mul(sign, M[n - 1][n - 1])


def rand_poly(K, rng, max_deg, monic=False):
    d = rng.randint(0, max_deg)
    cs = [K.random_element(rng) for _ in range(d + 1)]
    if monic:
        cs[-1] = K.one
    return Poly(K, cs)
