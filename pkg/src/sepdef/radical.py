"""Jacobson radicals over finite fields and separability certificates over F_q(t).

The radical is computed with the characteristic-p trace chain: starting from
I_{-1} = A, the ideal I_i consists of the a in I_{i-1} with g_i(a b) = 0 for
every basis element b, where

    g_i(c) = ( Tr(L~_c^(p^i)) / p^i  mod p ) ^ (1/p^i)

and L~_c is the regular representation of c lifted to the Galois ring
GR(p^(i+1), m).  g_i is F_q-linear on I_{i-1}, so it is evaluated only on a
basis of I_{i-1}.  I_l = rad(A) for l = floor(log_p dim A).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConsistencyError, PoleError, SamplingError
from .fda import QuotientAlgebra, StructAlgebra, specialize
from .linalg import ff_nullspace, ff_reduce, ff_rref, ff_span
from .scalars import GF, FiniteField, RatFuncField
from .upoly import gcd_monic


# ---------------------------------------------------------------------------
# Galois ring arithmetic on digit planes

class GaloisRing:
    """GR(p^k, m) = (Z/p^k)[g]/(lift of the field modulus).

    Arrays carry a leading axis of length m holding the coefficients of
    1, g, ..., g^(m-1).
    """

    def __init__(self, F: FiniteField, k: int):
        self.F = F
        self.p = F.p
        self.m = F.degree
        self.k = k
        self.mod = F.p ** k
        self.modulus = F.modulus

    def lift(self, A: np.ndarray) -> np.ndarray:
        return self.F.digit_planes(np.asarray(A, dtype=np.int64))

    def _reduce(self, C: np.ndarray) -> np.ndarray:
        m, q = self.m, self.mod
        C %= q
        for d in range(C.shape[0] - 1, m - 1, -1):
            top = C[d]
            if not top.any():
                continue
            for j, c in enumerate(self.modulus[:-1]):
                if c:
                    C[d - m + j] = (C[d - m + j] - c * top) % q
        return C[:m]

    def mul(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        m = self.m
        shape = np.broadcast_shapes(X.shape[1:], Y.shape[1:])
        C = np.zeros((2 * m - 1,) + shape, dtype=np.int64)
        for u in range(m):
            for v in range(m):
                C[u + v] += X[u] * Y[v]
            C %= self.mod
        return self._reduce(C)

    def matmul(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        m, q = self.m, self.mod
        inner = X.shape[-1]
        exact = (q - 1) ** 2 * inner < 2 ** 52
        C = None
        for u in range(m):
            Xu = X[u].astype(np.float64) if exact else X[u]
            for v in range(m):
                Yv = Y[v].astype(np.float64) if exact else Y[v]
                prod = Xu @ Yv
                prod = (np.rint(prod).astype(np.int64) if exact else prod) % q
                if C is None:
                    C = np.zeros((2 * m - 1,) + prod.shape, dtype=np.int64)
                C[u + v] += prod
        return self._reduce(C)

    def trace_of_power(self, M: np.ndarray, e: int) -> np.ndarray:
        """Tr(M^e) for a stack of square matrices M with planes shape (m, r, N, N)."""
        if e == 1:
            return np.trace(M, axis1=-2, axis2=-1) % self.mod
        # Tr(P M) with P = M^(e-1) is the sum of P * M^T entrywise
        P = M
        R = None
        n, base = e - 1, M
        while n:
            if n & 1:
                R = base if R is None else self.matmul(R, base)
            n >>= 1
            if n:
                base = self.matmul(base, base)
        P = R
        prod = self.mul(P, np.swapaxes(M, -1, -2))
        return prod.sum(axis=(-2, -1)) % self.mod


# ---------------------------------------------------------------------------
# the trace chain

@dataclass
class RadicalResult:
    """Echelon basis of rad(A) (rows) and the least n with rad^n = 0."""

    basis: np.ndarray
    nilpotency_exponent: int
    levels: list[int] = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def vectors(self) -> list[tuple]:
        return [tuple(int(x) for x in row) for row in self.basis]


def _g_values(F: FiniteField, T: np.ndarray, V: np.ndarray, i: int) -> np.ndarray:
    """g_i on the rows of V (all lying in I_{i-1})."""
    p = F.p
    N = T.shape[0]
    if i == 0:
        tau = F.v_sum(np.ascontiguousarray(np.diagonal(T, axis1=1, axis2=2)), axis=1)
        return F.matmul(V, tau[:, None])[:, 0]
    k = i + 1
    GR = GaloisRing(F, k)
    Tl = GR.lift(T)
    Vl = GR.lift(V)
    r = V.shape[0]
    out = np.zeros(r, dtype=np.int64)
    chunk = max(1, 2 ** 22 // (N * N * F.degree))
    pi = p ** i
    for s in range(0, r, chunk):
        Vc = Vl[:, s:s + chunk]
        # L[c][kk, l] = sum_a v_a T[a, l, kk]
        X = GR.matmul(Vc, Tl.reshape(F.degree, N, N * N)).reshape(F.degree, -1, N, N)
        L = np.swapaxes(X, -1, -2)
        tr = GR.trace_of_power(L, pi)
        if np.any(tr % pi):
            raise ConsistencyError("trace is not divisible by p^i on I_(i-1)")
        vals = F.from_planes((tr // pi) % p)
        out[s:s + chunk] = _root_array(F, vals, i)
    return out


def _root_array(F: FiniteField, vals: np.ndarray, times: int) -> np.ndarray:
    if F.degree == 1:
        return vals
    return np.array([F.root_p(int(v), times) for v in vals], dtype=np.int64)


def _chain(F: FiniteField, T: np.ndarray, record: list | None = None) -> np.ndarray:
    """Run the trace chain; returns an echelon basis of the radical."""
    N = T.shape[0]
    p = F.p
    V = np.eye(N, dtype=np.int64)
    i = 0
    while V.shape[0] and p ** i <= N:
        # V is in reduced echelon form, so λ(v_j) = g_i(v_j) fixes λ on the pivots
        pivots = [int(np.flatnonzero(row)[0]) for row in V]
        lam = np.zeros(N, dtype=np.int64)
        lam[pivots] = _g_values(F, T, V, i)
        # W[k, l] = sum_m λ_m T[k, l, m]; keep the α with (α V) W = 0
        W = F.matmul(T.reshape(N * N, N), lam[:, None]).reshape(N, N)
        alpha = ff_nullspace(F, F.matmul(V, W).T)
        V = ff_span(F, F.matmul(alpha, V)) if alpha.shape[0] else np.zeros((0, N), dtype=np.int64)
        if record is not None:
            record.append(int(V.shape[0]))
        i += 1
    return V


def _products(F: FiniteField, T: np.ndarray, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    """All products u*v (rows) for rows u of U and v of V."""
    N = T.shape[0]
    X = F.matmul(U, T.reshape(N, N * N)).reshape(U.shape[0], N, N)  # [a, j, m]
    Y = F.matmul(V, X.transpose(1, 0, 2).reshape(N, -1))  # [b, (a, m)]
    return Y.reshape(V.shape[0] * U.shape[0], N)


def _is_ideal(F, T, R) -> bool:
    N = T.shape[0]
    E, piv = ff_rref(F, R)
    I = np.eye(N, dtype=np.int64)
    left = _products(F, T, R, I)
    right = _products(F, T, I, R)
    return not ff_reduce(F, E, piv, left).any() and not ff_reduce(F, E, piv, right).any()


def _nilpotency_exponent(F, T, R) -> int:
    N = T.shape[0]
    if R.shape[0] == 0:
        return 1
    J = R
    n = 1
    while J.shape[0]:
        J = ff_span(F, _products(F, T, J, R))
        n += 1
        if n > N + 1:
            raise ConsistencyError("radical is not nilpotent")
    return n


def quotient_table(F: FiniteField, T: np.ndarray, R: np.ndarray):
    """Structure constants of A/I on the complement of the pivot coordinates of I."""
    N = T.shape[0]
    E, piv = ff_rref(F, R)
    keep = [j for j in range(N) if j not in set(piv)]
    sub = T[np.ix_(keep, keep)].reshape(-1, N)
    red = ff_reduce(F, E, piv, sub)[:, keep]
    n = len(keep)
    return red.reshape(n, n, n), keep


def radical_ff(A: StructAlgebra, verify: bool = True) -> RadicalResult:
    """Jacobson radical of an algebra over a finite field (self-verifying)."""
    F = A.field
    if not isinstance(F, FiniteField):
        raise TypeError("radical_ff needs a finite base field")
    T = A.array()
    levels: list[int] = []
    R = _chain(F, T, levels)
    if not verify:
        return RadicalResult(R, _nilpotency_exponent(F, T, R) if R.shape[0] else 1, levels)
    if R.shape[0]:
        if not _is_ideal(F, T, R):
            raise ConsistencyError("computed radical is not a two-sided ideal")
        Q, _ = quotient_table(F, T, R)
        if _chain(F, Q).shape[0]:
            raise ConsistencyError("quotient by the computed radical is not semisimple")
    n = _nilpotency_exponent(F, T, R)
    if n - 1 > A.dim:
        raise ConsistencyError("nilpotency exponent exceeds the dimension")
    return RadicalResult(R, n, levels)


def is_semisimple_ff(A: StructAlgebra) -> bool:
    return radical_ff(A).dim == 0


def center_ff(F: FiniteField, T: np.ndarray) -> np.ndarray:
    """Basis (rows) of the center of the algebra with structure constants T."""
    N = T.shape[0]
    D = F.v_sub(T, T.transpose(1, 0, 2)).reshape(N, N * N)
    return ff_nullspace(F, D.T)


def mul_ff(F: FiniteField, T: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    N = T.shape[0]
    outer = F.v_mul(a[:, None], b[None, :]).reshape(1, N * N)
    return F.matmul(outer, T.reshape(N * N, N))[0]


def component_count(A: StructAlgebra, rad: RadicalResult | None = None) -> tuple[int, int]:
    """(dim Z(A/rad), number of simple components of A/rad).

    The component count is the dimension of the Frobenius-fixed part of the
    center, since Z(A/rad) is a product of extension fields of F_q.
    """
    F = A.field
    T = A.array()
    rad = rad or radical_ff(A)
    Q, _ = quotient_table(F, T, rad.basis) if rad.dim else (T, None)
    Z = center_ff(F, Q)
    if Z.shape[0] == 0:
        return 0, 0
    # z -> z^q on Z, expressed in the basis of Z
    E, piv = ff_rref(F, Z)
    images = []
    for z in E:
        w = z
        for _ in range(F.degree):
            w = _pow_ff(F, Q, w, F.p)
        images.append(w)
    images = np.array(images, dtype=np.int64)
    # coordinates in the echelon basis E are the pivot entries
    M = F.v_sub(images[:, piv], np.eye(len(piv), dtype=np.int64))
    fixed = ff_nullspace(F, M.T)
    return int(Z.shape[0]), int(fixed.shape[0])


def _pow_ff(F, T, a, e):
    r = _one_ff(F, T)
    base = a
    while e:
        if e & 1:
            r = mul_ff(F, T, r, base)
        base = mul_ff(F, T, base, base)
        e >>= 1
    return r


def _one_ff(F, T):
    N = T.shape[0]
    # solve sum_i e_i T[i, j, :] = delta_j for all j
    Mx = T.transpose(1, 2, 0).reshape(N * N, N)
    rhs = np.eye(N, dtype=np.int64).reshape(N * N, 1)
    aug = np.hstack([Mx, rhs])
    R, piv = ff_rref(F, aug)
    e = np.zeros(N, dtype=np.int64)
    for row, c in zip(R, piv):
        if c < N:
            e[c] = row[N]
    return e


# ---------------------------------------------------------------------------
# separability certificates over F_q(t)

@dataclass
class Sample:
    ext_degree: int
    t0: str
    radical_dim: int


@dataclass
class CommutativeCheck:
    polynomial: str
    gcd: str


@dataclass
class SeparabilityCertificate:
    samples: list[Sample]
    commutative_checks: list[CommutativeCheck]
    verdict: str
    poles_skipped: int = 0

    def to_dict(self) -> dict:
        return {
            "samples": [vars(s) for s in self.samples],
            "commutative_checks": [vars(c) for c in self.commutative_checks],
            "verdict": self.verdict,
        }


def sample_points(F: FiniteField, count: int, seed: int) -> list[int]:
    """The seeded sequence of candidate t0 values (nonzero raw elements of F)."""
    rng = random.Random(seed)
    return [rng.randrange(1, F.order) for _ in range(count)]


def certify_separable(A: StructAlgebra, samples: int = 3, ext_degree: int = 12, seed: int = 0,
                      max_candidates: int | None = None) -> SeparabilityCertificate:
    """Sample specialisations t0 in F_(q^ext_degree) \\ {0} and run radical_ff.

    Verdict: "not-separable" when an exact gcd check (commutative input) is
    nontrivial, "separable" when every sampled radical is 0, and
    "inconclusive" otherwise.  The first nonzero radical triggers one extra
    sample at the next fresh point.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    K = A.field
    if not isinstance(K, RatFuncField):
        raise TypeError("certificates are for algebras over F_q(t)")
    base = K.field
    target = GF(base.p, base.degree * ext_degree)
    budget = max_candidates or (4 * samples + 32)
    candidates = sample_points(target, budget, seed)
    checks: list[CommutativeCheck] = []
    exact_ok = True
    if isinstance(A, QuotientAlgebra):
        f = A.defining_poly
        g = gcd_monic(f, f.derivative())
        checks.append(CommutativeCheck(str(f), str(g)))
        exact_ok = g.degree == 0
    taken: list[Sample] = []
    poles = 0
    wanted = samples
    for t0 in candidates:
        if len(taken) >= wanted:
            break
        try:
            At = specialize(A, t0, target)
        except PoleError:
            poles += 1
            continue
        rd = radical_ff(At).dim
        taken.append(Sample(ext_degree, target.to_text(t0), rd))
        if rd and wanted == samples:
            wanted += 1  # one fresh resample after the first nonzero radical
    if not taken:
        raise SamplingError("every sampled t0 was a pole; increase ext_degree")
    if not exact_ok:
        verdict = "not-separable"
    elif all(smp.radical_dim == 0 for smp in taken):
        verdict = "separable"
    else:
        verdict = "inconclusive"
    return SeparabilityCertificate(taken, checks, verdict, poles)
