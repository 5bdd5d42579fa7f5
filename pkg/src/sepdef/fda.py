"""Finite-dimensional associative algebras given by structure constants.

Elements are tuples of raw scalars (coordinates in the basis).  The table is
stored densely as nested tuples: ``table[i][j]`` is the coordinate vector of
``b_i * b_j``.  For finite base fields :meth:`StructAlgebra.array` exposes the
same data as an ``(N, N, N)`` numpy array.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, MixedFieldError, NotUnitalError, ParseError, ValidationError
from .linalg import EchelonBasis, ff_nullspace, nullspace, rref, solve
from .scalars import (
    Domain,
    FiniteField,
    GF,
    RatFuncField,
    field_descriptor,
    field_from_name,
)
from .upoly import Poly, specialize_poly


# ---------------------------------------------------------------------------
# groups

@dataclass
class Group:
    """A finite group by multiplication table on indices 0..n-1."""

    name: str
    labels: list[str]
    table: list[list[int]]
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.labels)

    def validate(self) -> None:
        n = self.order
        T = self.table
        if len(T) != n or any(len(r) != n for r in T):
            raise ValidationError(f"{self.name}: table is not {n}x{n}")
        for row in T:
            if sorted(row) != list(range(n)):
                raise ValidationError(f"{self.name}: a row is not a permutation")
        e = self.identity
        if any(T[e][g] != g or T[g][e] != g for g in range(n)):
            raise ValidationError(f"{self.name}: {self.labels[e]} is not an identity")
        for a in range(n):
            if e not in T[a]:
                raise ValidationError(f"{self.name}: {self.labels[a]} has no inverse")
            Ta = T[a]
            for b in range(n):
                ab = Ta[b]
                Tab, Tb = T[ab], T[b]
                for c in range(n):
                    if Tab[c] != Ta[Tb[c]]:
                        raise ValidationError(f"{self.name}: table is not associative")


def group_from_table(table, labels=None, name: str = "G") -> Group:
    n = len(table)
    G = Group(name, list(labels) if labels else [f"g{i}" for i in range(n)], [list(r) for r in table])
    ids = [e for e in range(n) if all(table[e][g] == g for g in range(n))]
    if not ids:
        raise ValidationError(f"{name}: no identity element")
    G.identity = ids[0]
    G.validate()
    return G


def _power_label(base: str, i: int) -> str:
    return "1" if i == 0 else base if i == 1 else f"{base}^{i}"


def cyclic_group(n: int) -> Group:
    """C_n = <s>, element i is s^i."""
    return Group(f"C{n}", [_power_label("s", i) for i in range(n)],
                 [[(a + b) % n for b in range(n)] for a in range(n)])


def _semidirect_cyclic(n: int, k: int, name: str) -> Group:
    """C_n ⋊ C_2 with t s t^-1 = s^k (k^2 = 1 mod n); element i + j*n is s^i t^j."""
    labels = []
    for j in range(2):
        for i in range(n):
            a = _power_label("s", i)
            labels.append(a if j == 0 else ("t" if i == 0 else f"{a}*t"))
    table = []
    for j1 in range(2):
        for i1 in range(n):
            row = []
            for j2 in range(2):
                for i2 in range(n):
                    i = (i1 + i2 * (k if j1 else 1)) % n
                    row.append(i + ((j1 + j2) % 2) * n)
            table.append(row)
    return Group(name, labels, table)


def group_Gs(s: int) -> Group:
    """G_s = C_{s^2-1} ⋊ C_2 with the involution s -> s^s on the cyclic part."""
    if s < 2:
        raise ValueError("s must be at least 2")
    return _semidirect_cyclic(s * s - 1, s % (s * s - 1), f"G_{s}")


def symmetric_group_3() -> Group:
    G = group_Gs(2)
    G.name = "S3"
    return G


def dihedral_group(n: int) -> Group:
    """Dihedral group of order 2n."""
    return _semidirect_cyclic(n, n - 1, f"D{2 * n}")


def quaternion_group() -> Group:
    # units 1, i, j, k with signs; element index = 4*sign + unit
    unit_mul = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }
    names = ["1", "i", "j", "k"]
    labels = names + ["-" + u for u in names]
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            sg, u = unit_mul[(a % 4, b % 4)]
            row.append(4 * ((sg + a // 4 + b // 4) % 2) + u)
        table.append(row)
    return Group("Q8", labels, table)


# ---------------------------------------------------------------------------
# algebras

class StructAlgebra:
    """A finite-dimensional unital associative algebra over ``field``.

    The constructor checks that ``one`` is a two-sided identity and, unless
    ``trusted`` is set, associativity on all basis triples.
    """

    def __init__(self, field: Domain, table, labels: Sequence[str] | None = None, one=None,
                 trusted: bool = False, name: str = ""):
        self.field = field
        if isinstance(table, np.ndarray):
            self._array = table.astype(np.int64)
            table = table.tolist()
        else:
            self._array = None
        self.table = tuple(tuple(tuple(v) for v in row) for row in table)
        self.dim = len(self.table)
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(self.dim)]
        self.name = name
        self.trusted = trusted
        self.one = tuple(one) if one is not None else self._find_one()
        self._validate(check_assoc=not trusted)

    # construction helpers ---------------------------------------------------
    def _find_one(self):
        K = self.field
        N = self.dim
        rows, rhs = [], []
        for j in range(N):
            for k in range(N):
                # sum_i e_i T[i][j][k] = delta_jk  and  sum_i e_i T[j][i][k] = delta_jk
                rows.append([self.table[i][j][k] for i in range(N)])
                rhs.append(K.one if j == k else K.zero)
                rows.append([self.table[j][i][k] for i in range(N)])
                rhs.append(K.one if j == k else K.zero)
        sol = solve(K, rows, rhs)
        if sol is None:
            raise ValidationError("algebra has no identity element")
        return sol

    def _validate(self, check_assoc: bool) -> None:
        N = self.dim
        if any(len(r) != N or any(len(v) != N for v in r) for r in self.table):
            raise ValidationError("structure constants must form a dim x dim x dim array")
        if len(self.one) != N:
            raise ValidationError("identity vector has the wrong length")
        for i in range(N):
            e = self.basis(i)
            if self.mul(self.one, e) != e or self.mul(e, self.one) != e:
                raise ValidationError(f"'one' is not an identity on {self.labels[i]}")
        if check_assoc:
            self.check_associative()

    def check_associative(self) -> None:
        """Raise ValidationError unless (b_i b_j) b_k = b_i (b_j b_k) for all triples."""
        N = self.dim
        if isinstance(self.field, FiniteField) and self.field.degree == 1 and N <= 96:
            F = self.field
            T = self.array()
            left = F.matmul(T.reshape(N * N, N), T.reshape(N, N * N)).reshape(N, N, N, N)
            # right[i,j,k,:] = sum_l T[j,k,l] T[i,l,:]
            right = F.matmul(T.reshape(N * N, N), T.transpose(1, 0, 2).reshape(N, N * N))
            right = right.reshape(N, N, N, N).transpose(2, 0, 1, 3)
            if not np.array_equal(left, right):
                raise ValidationError("structure constants are not associative")
            return
        for i in range(N):
            for j in range(N):
                bij = self.table[i][j]
                for k in range(N):
                    if self.mul(bij, self.basis(k)) != self.mul(self.basis(i), self.table[j][k]):
                        raise ValidationError(
                            f"not associative on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")

    # elements ---------------------------------------------------------------
    def zero(self):
        return (self.field.zero,) * self.dim

    def basis(self, i: int):
        K = self.field
        v = [K.zero] * self.dim
        v[i] = K.one
        return tuple(v)

    def element(self, coords) -> tuple:
        K = self.field
        return tuple(K.from_int(c) if isinstance(c, int) and not isinstance(K, FiniteField) else c for c in coords)

    def add(self, a, b):
        add = self.field.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sub = self.field.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.field.neg(x) for x in a)

    def scale(self, c, a):
        mul = self.field.mul
        return tuple(mul(c, x) for x in a)

    def is_zero(self, a) -> bool:
        return all(self.field.is_zero(x) for x in a)

    def combine(self, coeffs, vectors):
        """sum_i coeffs[i] * vectors[i]."""
        K = self.field
        out = [K.zero] * self.dim
        for c, v in zip(coeffs, vectors):
            if K.is_zero(c):
                continue
            for k, x in enumerate(v):
                if not K.is_zero(x):
                    out[k] = K.add(out[k], K.mul(c, x))
        return tuple(out)

    @cached_property
    def _nonzero(self):
        is_zero = self.field.is_zero
        return [[[k for k, x in enumerate(v) if not is_zero(x)] for v in row] for row in self.table]

    def mul(self, a, b):
        K = self.field
        out = [K.zero] * self.dim
        is_zero, add, mul = K.is_zero, K.add, K.mul
        bnz = [(j, y) for j, y in enumerate(b) if not is_zero(y)]
        nzt = self._nonzero
        for i, x in enumerate(a):
            if is_zero(x):
                continue
            Ti, nzi = self.table[i], nzt[i]
            for j, y in bnz:
                c = mul(x, y)
                row = Ti[j]
                for k in nzi[j]:
                    out[k] = add(out[k], mul(c, row[k]))
        return tuple(out)

    def mul_basis_left(self, i: int, v):
        """b_i * v."""
        return self.mul(self.basis(i), v)

    def basis_product(self, i: int, j: int):
        return self.table[i][j]

    def pow(self, a, n: int):
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def left_matrix(self, a) -> list[list]:
        """Matrix (rows) of b -> a*b."""
        cols = [self.mul(a, self.basis(l)) for l in range(self.dim)]
        return [list(r) for r in zip(*cols)]

    def right_matrix(self, a) -> list[list]:
        cols = [self.mul(self.basis(l), a) for l in range(self.dim)]
        return [list(r) for r in zip(*cols)]

    def is_commutative(self) -> bool:
        N = self.dim
        return all(self.table[i][j] == self.table[j][i] for i in range(N) for j in range(i + 1, N))

    def array(self) -> np.ndarray:
        if not isinstance(self.field, FiniteField):
            raise TypeError("numpy tables exist only over finite fields")
        if self._array is None:
            self._array = np.array(self.table, dtype=np.int64).reshape(self.dim, self.dim, self.dim)
        return self._array

    def to_text(self, a) -> str:
        K = self.field
        parts = []
        for c, lab in zip(a, self.labels):
            if K.is_zero(c):
                continue
            ct = K.to_text(c)
            if lab == "1":
                parts.append(ct)
            elif K.is_one(c):
                parts.append(lab)
            else:
                parts.append(f"({ct})*{lab}" if "+" in ct or "/" in ct else f"{ct}*{lab}")
        return "+".join(parts) if parts else "0"

    def same_table(self, other: "StructAlgebra") -> bool:
        return self.field == other.field and self.dim == other.dim and self.table == other.table

    def __repr__(self):
        return f"StructAlgebra({self.name or 'A'}, dim={self.dim}, over {self.field})"


class QuotientAlgebra(StructAlgebra):
    """F[x]/<f> with basis 1, x̄, ..., x̄^(n-1).

    Products use polynomial multiplication and reduction, so nothing of size
    n^3 is ever built unless ``table`` is accessed.
    """

    def __init__(self, f: Poly, name: str = ""):
        K = f.domain
        if not K.is_field:
            raise TypeError("quotient algebras need a coefficient field")
        if f.degree < 1:
            raise ValueError("quotient by a zero or constant polynomial")
        self.field = K
        self.defining_poly = f
        self.dim = n = f.degree
        self.labels = ["1", "x"] + [f"x^{i}" for i in range(2, n)]
        self.labels = self.labels[:n]
        self.name = name or f"{K}[x]/<{f}>"
        self.trusted = True
        self._array = None
        self.one = self.basis(0)
        inv = K.inv(f.lc)
        # x^n = -sum_{i<n} (f_i / lc) x^i
        self._tail = [(i, K.neg(K.mul(c, inv))) for i, c in enumerate(f.coeffs[:-1]) if not K.is_zero(c)]
        self._powers = [self.basis(0)]

    def shift(self, v):
        """x̄ * v."""
        K = self.field
        n = self.dim
        top = v[-1]
        out = [K.zero] + list(v[:-1])
        if not K.is_zero(top):
            for i, c in self._tail:
                out[i] = K.add(out[i], K.mul(top, c))
        return tuple(out)

    def reduce(self, coeffs) -> tuple:
        """Reduce an arbitrary coefficient list (low first) modulo f."""
        K = self.field
        n = self.dim
        cs = list(coeffs)
        for d in range(len(cs) - 1, n - 1, -1):
            top = cs[d]
            if K.is_zero(top):
                continue
            cs[d] = K.zero
            for i, c in self._tail:
                k = d - n + i
                cs[k] = K.add(cs[k], K.mul(top, c))
        cs = cs[:n] + [K.zero] * max(0, n - len(cs))
        return tuple(cs)

    def mul(self, a, b):
        K = self.field
        if len(a) != self.dim or len(b) != self.dim:
            raise MixedFieldError("element of a different algebra")
        is_zero, add, mul = K.is_zero, K.add, K.mul
        bnz = [(j, y) for j, y in enumerate(b) if not is_zero(y)]
        out = [K.zero] * (2 * self.dim - 1)
        for i, x in enumerate(a):
            if is_zero(x):
                continue
            for j, y in bnz:
                out[i + j] = add(out[i + j], mul(x, y))
        return self.reduce(out)

    def power_of_x(self, k: int):
        while len(self._powers) <= k:
            self._powers.append(self.shift(self._powers[-1]))
        return self._powers[k]

    def mul_basis_left(self, i: int, v):
        for _ in range(i):
            v = self.shift(v)
        return v

    def basis_product(self, i: int, j: int):
        return self.power_of_x(i + j)

    @cached_property
    def table(self):
        n = self.dim
        return tuple(tuple(self.power_of_x(i + j) for j in range(n)) for i in range(n))

    def element_of_poly(self, g: Poly):
        if g.domain != self.field:
            raise MixedFieldError("polynomial over a different field")
        return self.reduce(g.coeffs) if g.coeffs else self.zero()

    def poly_of_element(self, a) -> Poly:
        return Poly(self.field, a)

    def is_commutative(self) -> bool:
        return True


def quotient_algebra(f: Poly) -> QuotientAlgebra:
    return QuotientAlgebra(f)


def group_algebra(G: Group, F: Domain) -> StructAlgebra:
    """F G with basis the group elements (permutation-like structure constants)."""
    G.validate()
    n = G.order
    if isinstance(F, FiniteField):
        T = np.zeros((n, n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                T[a, b, G.table[a][b]] = 1
        return StructAlgebra(F, T, G.labels, one=_unit(F, n, G.identity), trusted=True, name=f"{F}{G.name}")
    rows = [[_unit(F, n, G.table[a][b]) for b in range(n)] for a in range(n)]
    return StructAlgebra(F, rows, G.labels, one=_unit(F, n, G.identity), trusted=True, name=f"{F}{G.name}")


def _unit(F: Domain, n: int, k: int):
    v = [F.zero] * n
    v[k] = F.one
    return tuple(v)


def matrix_algebra(n: int, F: Domain) -> StructAlgebra:
    """M_n(F) with basis the matrix units E_ij (index i*n + j)."""
    N = n * n
    rows = []
    for a in range(N):
        i, j = divmod(a, n)
        row = []
        for b in range(N):
            k, l = divmod(b, n)
            row.append(_unit(F, N, i * n + l) if j == k else (F.zero,) * N)
        rows.append(row)
    one = [F.zero] * N
    for i in range(n):
        one[i * n + i] = F.one
    return StructAlgebra(F, rows, [f"E{i}{j}" for i in range(n) for j in range(n)], one=one, name=f"M{n}({F})")


def commutative_from_polys(F: FiniteField, polys: Sequence[Poly]) -> StructAlgebra:
    """Product of quotient algebras F[x]/<f_k>, as one block-diagonal algebra."""
    blocks = [QuotientAlgebra(f) for f in polys]
    return direct_sum(blocks)


def direct_sum(blocks: Sequence[StructAlgebra]) -> StructAlgebra:
    F = blocks[0].field
    N = sum(b.dim for b in blocks)
    zero = (F.zero,) * N
    rows = [[zero] * N for _ in range(N)]
    one = []
    off = 0
    labels = []
    for idx, B in enumerate(blocks):
        n = B.dim
        for i in range(n):
            for j in range(n):
                v = [F.zero] * N
                v[off:off + n] = B.basis_product(i, j)
                rows[off + i][off + j] = tuple(v)
        one.extend(B.one)
        labels.extend(f"{lab}[{idx}]" for lab in B.labels)
        off += n
    return StructAlgebra(F, rows, labels, one=one, trusted=all(b.trusted for b in blocks))


# ---------------------------------------------------------------------------
# maps

class AlgebraMap:
    """A linear map stored by the images of the domain basis (columns)."""

    def __init__(self, domain: StructAlgebra, codomain: StructAlgebra, columns, name: str = ""):
        self.domain = domain
        self.codomain = codomain
        self.columns = [tuple(c) for c in columns]
        self.name = name
        if len(self.columns) != domain.dim or any(len(c) != codomain.dim for c in self.columns):
            raise ValidationError("map matrix has the wrong shape")

    @property
    def matrix(self) -> list[list]:
        return [list(r) for r in zip(*self.columns)]

    def __call__(self, v):
        return self.codomain.combine(v, self.columns)

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        """self ∘ other."""
        return AlgebraMap(other.domain, self.codomain, [self(c) for c in other.columns])

    def is_identity(self) -> bool:
        return self.domain is self.codomain or self.domain.dim == self.codomain.dim and all(
            c == self.codomain.basis(i) for i, c in enumerate(self.columns))

    def is_unital(self) -> bool:
        return self(self.domain.one) == self.codomain.one

    def is_multiplicative(self, pairs=None) -> bool:
        """η(b_i b_j) = η(b_i) η(b_j), on all basis pairs or the given index pairs."""
        A, B = self.domain, self.codomain
        if pairs is None:
            pairs = ((i, j) for i in range(A.dim) for j in range(A.dim))
        for i, j in pairs:
            if self(A.basis_product(i, j)) != B.mul(self.columns[i], self.columns[j]):
                return False
        return True

    def is_bijective(self) -> bool:
        K = self.domain.field
        return len(rref(K, self.matrix)[1]) == self.domain.dim == self.codomain.dim

    def is_automorphism(self) -> bool:
        return self.domain.dim == self.codomain.dim and self.is_unital() and self.is_multiplicative() \
            and self.is_bijective()

    def __eq__(self, other):
        return isinstance(other, AlgebraMap) and self.columns == other.columns

    def __hash__(self):
        return hash(tuple(self.columns))


def map_from_generator_image(B: QuotientAlgebra, image) -> AlgebraMap:
    """The algebra endomorphism of F[x]/<f> with x̄ -> image (columns image^i)."""
    cols = [B.one]
    for _ in range(B.dim - 1):
        cols.append(B.mul(cols[-1], image))
    return AlgebraMap(B, B, cols)


# ---------------------------------------------------------------------------
# skew polynomials

class SkewPoly:
    """An element sum_i a_i y^i of B[y; η] with y a = η(a) y."""

    def __init__(self, twist: AlgebraMap, coeffs):
        self.twist = twist
        B = twist.domain
        cs = [tuple(c) for c in coeffs]
        while cs and B.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = cs

    @property
    def algebra(self) -> StructAlgebra:
        return self.twist.domain

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -float("inf")

    def _check(self, other):
        if other.twist is not self.twist and other.twist != self.twist:
            raise MixedFieldError("skew polynomials with different twists")

    def __add__(self, other):
        self._check(other)
        B = self.algebra
        n = max(len(self.coeffs), len(other.coeffs))
        z = B.zero()
        a = self.coeffs + [z] * (n - len(self.coeffs))
        b = other.coeffs + [z] * (n - len(other.coeffs))
        return SkewPoly(self.twist, [B.add(x, y) for x, y in zip(a, b)])

    def __mul__(self, other):
        return skew_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, SkewPoly) and self.coeffs == other.coeffs and self.twist == other.twist

    def __repr__(self):
        B = self.algebra
        terms = []
        for i, c in enumerate(self.coeffs):
            if B.is_zero(c):
                continue
            y = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            terms.append(f"({B.to_text(c)})" + (f"*{y}" if y else ""))
        return "+".join(terms) or "0"


def skew_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """(sum a_i y^i)(sum b_j y^j) = sum a_i η^i(b_j) y^(i+j)."""
    f._check(g)
    B = f.algebra
    eta = f.twist
    if not f.coeffs or not g.coeffs:
        return SkewPoly(eta, [])
    out = [B.zero()] * (len(f.coeffs) + len(g.coeffs) - 1)
    twisted = [list(g.coeffs)]
    for i in range(1, len(f.coeffs)):
        twisted.append([eta(b) for b in twisted[-1]])
    for i, a in enumerate(f.coeffs):
        if B.is_zero(a):
            continue
        for j, b in enumerate(twisted[i]):
            out[i + j] = B.add(out[i + j], B.mul(a, b))
    return SkewPoly(eta, out)


# ---------------------------------------------------------------------------
# crossed products

FULL_CHECK_DIM = 16


def check_relation_data(B: StructAlgebra, eta: AlgebraMap, c0, c1) -> None:
    """Raise ValidationError unless <y^2 - c1 y - c0> is two-sided in B[y; η], η^2 = id.

    Two-sidedness of the left ideal generated by f = y^2 - c1 y - c0 holds iff
    f b ∈ B[y;η] f for all b and f y ∈ B[y;η] f, which reduces to
    η(c0) = c0, η(c1) = c1, c1 η(b) = η²(b) c1 and c0 b = η²(b) c0.
    """
    if eta(c0) != tuple(c0) or eta(c1) != tuple(c1):
        raise ValidationError("relation coefficients are not η-invariant")
    for i in range(B.dim):
        b = B.basis(i)
        eb = eta.columns[i]
        eeb = eta(eb)
        if B.mul(c1, eb) != B.mul(eeb, c1) or B.mul(c0, b) != B.mul(eeb, c0):
            raise ValidationError(f"relation ideal is not two-sided (fails at {B.labels[i]})")


def check_order2_automorphism(B: StructAlgebra, eta: AlgebraMap) -> None:
    if eta.domain is not B or eta.codomain is not B:
        raise ValidationError("twist must be an endomorphism of B")
    if not eta.is_unital():
        raise ValidationError("twist does not fix 1")
    if any(eta(c) != B.basis(i) for i, c in enumerate(eta.columns)):
        raise ValidationError("twist does not have order dividing 2")
    if isinstance(B, QuotientAlgebra):
        # a linear map with columns x̄^i -> g^i is multiplicative iff f(g) = 0
        g = eta.columns[1] if B.dim > 1 else B.one
        for i, c in enumerate(eta.columns):
            if c != B.pow(g, i):
                raise ValidationError("twist is not the power map of its image of x̄")
        acc = B.zero()
        gi = B.one
        for k, c in enumerate(B.defining_poly.coeffs):
            acc = B.add(acc, B.scale(c, gi))
            gi = B.mul(gi, g)
        if not B.is_zero(acc):
            raise ValidationError("twist is not well defined on the quotient")
    elif not eta.is_multiplicative():
        raise ValidationError("twist is not multiplicative")


def crossed_product_C2(B: StructAlgebra, eta: AlgebraMap, c0, c1, check: str = "auto",
                       name: str = "") -> StructAlgebra:
    """B[y; η]/<y^2 - c1 y - c0> on the basis b_i (index i) and b_i y (index n + i).

    ``check`` is "full" (all basis triples), "relations" (automorphism and
    two-sidedness criteria, which imply associativity) or "auto" (full when the
    result has dimension at most FULL_CHECK_DIM).
    """
    K = B.field
    n = B.dim
    c0, c1 = tuple(c0), tuple(c1)
    check_order2_automorphism(B, eta)
    check_relation_data(B, eta, c0, c1)
    zero = (K.zero,) * n
    eta_c0 = [B.mul(eta.columns[j], c0) for j in range(n)]
    eta_c1 = [B.mul(eta.columns[j], c1) for j in range(n)]
    rows = [[None] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            bb = B.basis_product(i, j)
            # b_i b_j, b_i (b_j y), (b_i y) b_j = b_i η(b_j) y, (b_i y)(b_j y) = b_i η(b_j) y^2
            rows[i][j] = bb + zero
            rows[i][n + j] = zero + bb
            rows[n + i][j] = zero + B.mul_basis_left(i, eta.columns[j])
            rows[n + i][n + j] = B.mul_basis_left(i, eta_c0[j]) + B.mul_basis_left(i, eta_c1[j])
    labels = list(B.labels) + [("y" if lab == "1" else f"{lab}*y") for lab in B.labels]
    one = tuple(B.one) + zero
    full = check == "full" or (check == "auto" and 2 * n <= FULL_CHECK_DIM)
    A = StructAlgebra(K, rows, labels, one=one, trusted=not full, name=name)
    return A


# ---------------------------------------------------------------------------
# subspaces, ideals, idempotents

def _stack_generic(A: StructAlgebra, basis, generators, both_sides: bool):
    """Products u*g (and g*u) for u in basis, g in generators."""
    out = []
    for g in generators:
        out.append([A.mul(u, g) for u in basis])
        if both_sides:
            out.append([A.mul(g, u) for u in basis])
    return out


def center(A: StructAlgebra, generators=None) -> list[tuple]:
    """Basis of {z : z g = g z for all generators g} (default: the whole basis)."""
    K = A.field
    N = A.dim
    gens = [A.basis(j) for j in range(N)] if generators is None else [tuple(g) for g in generators]
    rows = []
    for g in gens:
        # column i: b_i g - g b_i
        cols = [A.sub(A.mul(A.basis(i), g), A.mul(g, A.basis(i))) for i in range(N)]
        rows.extend(list(r) for r in zip(*cols))
    return nullspace(K, rows, N)


def fixed_subspace(eta: AlgebraMap) -> list[tuple]:
    """Basis of ker(η - id)."""
    A = eta.domain
    K = A.field
    cols = [A.sub(c, A.basis(i)) for i, c in enumerate(eta.columns)]
    rows = [list(r) for r in zip(*cols)]
    return nullspace(K, rows, A.dim)


def largest_ideal_in(S, A: StructAlgebra, generators=None) -> list[tuple]:
    """The largest two-sided ideal of A contained in span(S).

    ``generators`` may name a set generating A as an algebra (for a quotient
    algebra, x̄ suffices); closure under them is closure under all of A.
    """
    K = A.field
    gens = [A.basis(j) for j in range(A.dim)] if generators is None else [tuple(g) for g in generators]
    commutative = A.is_commutative()
    current = EchelonBasis(K, [list(v) for v in S], A.dim).rows
    while current:
        E = EchelonBasis(K, current, A.dim)
        cond = []
        for prods in _stack_generic(A, current, gens, not commutative):
            reduced = [E.reduce(p) for p in prods]
            cond.extend(list(r) for r in zip(*reduced))
        alphas = nullspace(K, cond, len(current)) if cond else [
            tuple(K.one if i == j else K.zero for i in range(len(current))) for j in range(len(current))]
        if len(alphas) == len(current):
            return [tuple(v) for v in current]
        new = [A.combine(a, current) for a in alphas]
        current = EchelonBasis(K, new, A.dim).rows if new else []
    return []


def unit_of_ideal(I, A: StructAlgebra):
    """The identity element e of the ring I (e v = v e = v for v in I)."""
    K = A.field
    I = [tuple(v) for v in I]
    if not I:
        return A.zero()
    r = len(I)
    rows, rhs = [], []
    for ub in I:
        left = [A.mul(ua, ub) for ua in I]
        right = [A.mul(ub, ua) for ua in I]
        for k in range(A.dim):
            rows.append([left[a][k] for a in range(r)])
            rhs.append(ub[k])
            rows.append([right[a][k] for a in range(r)])
            rhs.append(ub[k])
    beta = solve(K, rows, rhs)
    if beta is None:
        raise NotUnitalError("the ideal has no identity element")
    e = A.combine(beta, I)
    if A.mul(e, e) != e:
        raise ConsistencyError("unit of ideal is not idempotent")
    return e


# ---------------------------------------------------------------------------
# specialisation

def specialize(A: StructAlgebra, t0, target: FiniteField | None = None) -> StructAlgebra:
    """Evaluate all structure constants at t = t0 (raw value of ``target``).

    For a QuotientAlgebra the defining polynomial is specialised instead.
    Raises PoleError if some structure constant has a pole at t0.
    """
    from .scalars import FieldElement

    if isinstance(t0, FieldElement):
        target = t0.parent
        t0 = t0.value
    K = A.field
    if target is None:
        target = K.field
    if isinstance(A, QuotientAlgebra):
        f = specialize_poly(A.defining_poly, target, t0)
        if f.degree != A.dim:
            from .errors import PoleError

            raise PoleError("leading coefficient vanishes at t0")
        return QuotientAlgebra(f)
    ev = K.evaluator(target, t0)
    N = A.dim
    T = np.zeros((N, N, N), dtype=np.int64)
    zero = K.zero
    for i, row in enumerate(A.table):
        for j, v in enumerate(row):
            for k, c in enumerate(v):
                if c != zero:
                    T[i, j, k] = ev(c)
    one = [ev(c) for c in A.one]
    return StructAlgebra(target, T, A.labels, one=one, trusted=True, name=f"{A.name}@t0")


def iso_check_crossed_vs_group(s: int, F: Domain | None = None, twist: int | None = None) -> bool:
    """Is σ^i τ^j -> x̄^i y^j an isomorphism F G_s -> F C_n[y; η]/<y^2 - 1>?

    η is σ -> σ^twist (default: σ^s), n = s^2 - 1.
    """
    F = F or GF(2)
    n = s * s - 1
    k = s if twist is None else twist
    B = group_algebra(cyclic_group(n), F)
    cols = [B.basis((i * k) % n) for i in range(n)]
    eta = AlgebraMap(B, B, cols)
    try:
        X = crossed_product_C2(B, eta, B.one, B.zero(), check="relations")
    except ValidationError:
        return False
    G = group_algebra(group_Gs(s), F)
    return X.table == G.table


# ---------------------------------------------------------------------------
# algebra files

def algebra_to_json(A: StructAlgebra) -> str:
    """Serialise A; one table row per line so files diff well."""
    K = A.field
    q = json.dumps

    def vec(v):
        return "[" + ", ".join(q(K.to_text(c)) for c in v) + "]"

    head = {"dim": A.dim, **field_descriptor(K)}
    lines = ["{"]
    for key, val in head.items():
        lines.append(f"  {q(key)}: {q(val)},")
    lines.append(f'  "labels": [{", ".join(q(lab) for lab in A.labels)}],')
    lines.append(f'  "one": {vec(A.one)},')
    lines.append('  "table": [')
    N = A.dim
    for i in range(N):
        row = ", ".join(vec(A.table[i][j]) for j in range(N))
        lines.append(f"    [{row}]" + ("," if i < N - 1 else ""))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def algebra_from_json(text: str, trusted: bool = False) -> StructAlgebra:
    """Parse an algebra file; errors carry line and column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, text, e.pos) from None
    locator = _Locator(text)
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", text, 0)
    for key in ("dim", "base_field", "one", "table"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}", text, len(text.rstrip()))
    try:
        K = field_from_name(doc["base_field"], doc.get("modulus"))
    except ParseError as e:
        raise ParseError(f"bad base_field: {e}", text, locator.find(json.dumps(doc["base_field"]))) from None
    if not K.is_field:
        raise ParseError("base_field must be a field", text, locator.find(json.dumps(doc["base_field"])))
    N = doc["dim"]
    if not isinstance(N, int) or N < 1:
        raise ParseError("dim must be a positive integer", text, locator.find('"dim"'))

    def entry(s):
        pos = locator.find(json.dumps(s))
        if not isinstance(s, str):
            raise ParseError("entries must be strings", text, pos)
        try:
            return K.parse(s)
        except ParseError as e:
            raise ParseError(str(e).rsplit(" at line", 1)[0], text, pos + 1 + e.pos) from None

    def vector(v, what):
        if not isinstance(v, list) or len(v) != N:
            raise ParseError(f"{what} must be a list of {N} entries", text, locator.pos)
        return tuple(entry(s) for s in v)

    locator.find('"one"')
    one = vector(doc["one"], "one")
    locator.find('"table"')
    table = doc["table"]
    if not isinstance(table, list) or len(table) != N:
        raise ParseError(f"table must have {N} rows", text, locator.pos)
    rows = []
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != N:
            raise ParseError(f"table row {i} must have {N} entries", text, locator.pos)
        rows.append([vector(v, f"table[{i}][{j}]") for j, v in enumerate(row)])
    labels = doc.get("labels")
    try:
        return StructAlgebra(K, rows, labels, one=one, trusted=trusted)
    except ValidationError as e:
        raise ParseError(f"invalid algebra: {e}", text, 0) from None


class _Locator:
    """Finds successive tokens in the source text to attach positions to errors."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def find(self, token: str) -> int:
        k = self.text.find(token, self.pos)
        if k < 0:
            k = self.text.find(token)
        if k >= 0:
            self.pos = k + len(token)
            return k
        return self.pos


def random_commutative_algebra(F: FiniteField, max_dim: int, rng: random.Random) -> StructAlgebra:
    """A random product of quotients F[x]/<f_k> of total dimension <= max_dim."""
    polys = []
    total = 0
    while True:
        d = rng.randint(1, max(1, min(4, max_dim - total)))
        if total + d > max_dim:
            break
        cs = [F.random_element(rng) for _ in range(d)] + [F.one]
        polys.append(Poly(F, cs))
        total += d
        if total >= max_dim or rng.random() < 0.4:
            break
    return commutative_from_polys(F, polys)
