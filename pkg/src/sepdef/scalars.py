"""Exact scalar domains: prime fields, extension fields, F_q[t] and F_q(t).

Every domain object works on *raw* element representations (ints, tuples,
pairs) through methods such as ``K.add(a, b)``; this keeps the inner loops of
the polynomial and linear-algebra code free of wrapper objects.  Calling a
domain, ``K(3)``, returns a :class:`FieldElement` wrapper with the usual
operators for interactive use and tests.

Raw representations
-------------------
GF(p)        int in [0, p)
GF(p^m)      int whose base-p digits are the coefficients of the element as a
             polynomial in the generator ``g`` (for p = 2: a bitmask)
GF(2)[t]     int bitmask, bit i = coefficient of t^i
GF(q)[t]     tuple of raw field elements, lowest degree first, no trailing zeros
GF(q)(t)     pair (numerator, denominator), denominator monic, gcd 1
"""

from __future__ import annotations

import math
import random
from functools import lru_cache

import numpy as np

from .errors import InexactDivisionError, MixedFieldError, ParseError, PoleError
from .textfmt import Cursor, format_terms

INF = math.inf

# q below this bound gets log/antilog tables
_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomials over GF(p) as lists (only used to build extension fields)

def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_trim(out)


def _fp_rem(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for k, y in enumerate(b):
            a[shift + k] = (a[shift + k] - c * y) % p
        _fp_trim(a)
    return a


def _fp_gcd(a, b, p):
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_rem(a, b, p)
    return a


def _fp_is_irreducible(f, p) -> bool:
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    xp = [0, 1]
    for _ in range(m // 2):
        # xp <- xp^p mod f
        r, base, e = [1], xp, p
        while e:
            if e & 1:
                r = _fp_rem(_fp_mul(r, base, p), f, p)
            base = _fp_rem(_fp_mul(base, base, p), f, p)
            e >>= 1
        xp = r
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _fp_gcd(f, _fp_trim(diff), p)
        if len(g) > 1:
            return False
    return True


def _digits(n: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        n, d = divmod(n, p)
        out.append(d)
    return out


def _undigits(ds, p: int) -> int:
    n = 0
    for d in reversed(ds):
        n = n * p + d
    return n


# ---------------------------------------------------------------------------
# finite fields

class FieldElement:
    """An element of a field-like domain, carrying its parent."""

    __slots__ = ("parent", "value")

    def __init__(self, parent, value):
        self.parent = parent
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.parent != self.parent:
                raise MixedFieldError(f"cannot combine {self.parent} and {other.parent}")
            return other.value
        if isinstance(other, int):
            return self.parent.from_int(other)
        return NotImplemented

    def _wrap(self, v):
        return type(self)(self.parent, v)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.parent.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.parent.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.parent.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.parent.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.parent.mul(self.value, self.parent.inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.parent.mul(o, self.parent.inv(self.value)))

    def __neg__(self):
        return self._wrap(self.parent.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.parent.pow(self.value, n))

    def inverse(self):
        return self._wrap(self.parent.inv(self.value))

    def is_zero(self) -> bool:
        return self.parent.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.parent == other.parent and self.parent.eq(self.value, other.value)
        if isinstance(other, int):
            return self.parent.eq(self.value, self.parent.from_int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.parent, self.value))

    def __str__(self):
        return self.parent.to_text(self.value)

    def __repr__(self):
        return f"{self.parent}({self.parent.to_text(self.value)!r})"


class Domain:
    """Shared behaviour of all scalar domains."""

    element_class = FieldElement
    is_field = True
    is_finite = False

    def __call__(self, x=0):
        if isinstance(x, FieldElement):
            if x.parent != self:
                raise MixedFieldError(f"{x} is not an element of {self}")
            return x
        if isinstance(x, str):
            return self.element_class(self, self.parse(x))
        return self.element_class(self, self.convert(x))

    def convert(self, x):
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot convert {x!r} into {self}")

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_one(self, a) -> bool:
        return a == self.one

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def sum(self, items):
        r = self.zero
        for x in items:
            r = self.add(r, x)
        return r

    def exquo(self, a, b):
        """Exact quotient; in a field this is ordinary division."""
        return self.div(a, b)

    def as_int(self, a):
        """Integer text form if ``a`` lies in the prime subfield, else None."""
        return None

    def __repr__(self):
        return self.name

    def __str__(self):
        return self.name


class FiniteField(Domain):
    """Common machinery of GF(p) and GF(p^m)."""

    is_finite = True
    zero = 0
    one = 1

    p: int
    degree: int
    order: int

    @property
    def characteristic(self) -> int:
        return self.p

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def elements(self):
        return range(self.order)

    def random_element(self, rng: random.Random, nonzero: bool = False):
        return rng.randrange(1 if nonzero else 0, self.order)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def root_p(self, a, times: int = 1):
        """Inverse Frobenius applied ``times`` times (p^times-th root)."""
        e = pow(self.p, (self.degree - times % self.degree) % self.degree)
        return self.pow(a, e) if e != 1 else a

    # numpy vectorised arithmetic on arrays of raw elements ------------------

    def array(self, data) -> np.ndarray:
        return np.asarray(data, dtype=np.int64)

    def digit_planes(self, A: np.ndarray) -> np.ndarray:
        """Base-p digits of every entry: shape (degree, *A.shape)."""
        p, m = self.p, self.degree
        out = np.empty((m,) + A.shape, dtype=np.int64)
        if p == 2:
            for u in range(m):
                out[u] = (A >> u) & 1
        else:
            rest = A.copy()
            for u in range(m):
                out[u] = rest % p
                rest //= p
        return out

    def from_planes(self, P: np.ndarray) -> np.ndarray:
        p = self.p
        out = np.zeros(P.shape[1:], dtype=np.int64)
        for u in reversed(range(P.shape[0])):
            out = out * p + P[u]
        return out

    def v_add(self, A, B):
        if self.p == 2:
            return np.bitwise_xor(A, B)
        if self.degree == 1:
            return (A + B) % self.p
        return self.from_planes((self.digit_planes(A) + self.digit_planes(B)) % self.p)

    def v_neg(self, A):
        if self.p == 2:
            return A
        if self.degree == 1:
            return (-A) % self.p
        return self.from_planes((-self.digit_planes(A)) % self.p)

    def v_sub(self, A, B):
        return self.v_add(A, self.v_neg(B))

    def v_sum(self, A, axis):
        """Sum along an axis."""
        if self.p == 2:
            return np.bitwise_xor.reduce(A, axis=axis)
        if self.degree == 1:
            return A.sum(axis=axis) % self.p
        P = self.digit_planes(A)
        return self.from_planes(P.sum(axis=axis + 1 if axis >= 0 else axis) % self.p)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Matrix product over the field of 2-d (or stacked) raw arrays."""
        p, m = self.p, self.degree
        inner = A.shape[-1]
        if m == 1:
            return _matmul_mod(A, B, p, inner)
        PA, PB = self.digit_planes(A), self.digit_planes(B)
        C = None
        for u in range(m):
            for v in range(m):
                prod = _matmul_mod(PA[u], PB[v], p, inner)
                if C is None:
                    C = np.zeros((2 * m - 1,) + prod.shape, dtype=np.int64)
                C[u + v] += prod
        return self.from_planes(self._reduce_planes(C % p))

    def _reduce_planes(self, C: np.ndarray) -> np.ndarray:
        """Reduce coefficient planes of degree < 2m-1 modulo the defining polynomial."""
        m, p = self.degree, self.p
        mod = self.modulus
        for d in range(C.shape[0] - 1, m - 1, -1):
            top = C[d]
            if not top.any():
                continue
            for k in range(m):
                if mod[k]:
                    C[d - m + k] = (C[d - m + k] - mod[k] * top) % p
        return C[:m]


def _matmul_mod(A, B, p, inner):
    # exact in float64 while the accumulated sum stays below 2^53
    if (p - 1) ** 2 * inner < 2 ** 52:
        return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) % p
    if (p - 1) ** 2 * inner < 2 ** 62:
        return (A @ B) % p
    return np.array((A.astype(object) @ B.astype(object)) % p, dtype=np.int64)


class PrimeField(FiniteField):
    """The prime field GF(p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.degree = 1
        self.order = p
        self.modulus = (0, 1)
        self.name = f"GF({p})"
        self.prime_field = self

    def key(self):
        return (self.p, 1, (0, 1))

    def from_int(self, n: int) -> int:
        return n % self.p

    def as_int(self, a):
        return a

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.name}")
        return pow(a, -1, self.p)

    def pow(self, a, n: int):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def frobenius(self, a):
        return a

    def root_p(self, a, times: int = 1):
        return a

    @property
    def gen(self):
        return 1

    def v_mul(self, A, B):
        return (A * B) % self.p

    def v_inv(self, A):
        if np.any(A == 0):
            raise ZeroDivisionError("inverse of 0")
        if self.p <= _TABLE_LIMIT:
            table = np.array([0] + [pow(a, -1, self.p) for a in range(1, self.p)], dtype=np.int64)
            return table[A]
        return np.vectorize(lambda a: pow(int(a), -1, self.p), otypes=[np.int64])(A)

    def v_pow(self, A, e: int):
        return np.vectorize(lambda a: pow(int(a), e, self.p), otypes=[np.int64])(A)

    def to_text(self, a) -> str:
        return str(a)

    def parse_coeff(self, cur: Cursor) -> int:
        return cur.natural() % self.p

    def parse(self, text: str):
        cur = Cursor(text)
        neg = cur.accept("-")
        v = self.parse_coeff(cur)
        cur.expect_end()
        return self.neg(v) if neg else v


class ExtField(FiniteField):
    """GF(p^m) = GF(p)[g]/(modulus), modulus monic irreducible of degree m."""

    def __init__(self, base: PrimeField, modulus):
        modulus = tuple(int(c) % base.p for c in modulus)
        m = len(modulus) - 1
        if m < 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        if not _fp_is_irreducible(list(modulus), base.p):
            raise ValueError(f"modulus {modulus} is reducible over {base}")
        self.base = self.prime_field = base
        self.p = base.p
        self.degree = m
        self.order = base.p ** m
        self.modulus = modulus
        self.name = f"GF({self.p}^{m})" if m > 1 else f"GF({self.p})"
        self._modmask = _undigits(modulus, 2) if self.p == 2 else None
        self._exp = self._log = None
        if self.order <= _TABLE_LIMIT:
            self._build_tables()

    def key(self):
        return (self.p, self.degree, self.modulus)

    @property
    def gen(self):
        return self.p if self.degree > 1 else self._slow_reduce([0, 1])

    def from_int(self, n: int) -> int:
        return n % self.p

    def as_int(self, a):
        return a if a < self.p else None

    def modulus_text(self) -> str:
        return format_terms([(str(c), i) for i, c in reversed(list(enumerate(self.modulus))) if c], "g")

    # slow arithmetic, used to build tables and for very large fields
    def _slow_reduce(self, ds):
        ds = _fp_rem(_fp_trim(list(ds)), list(self.modulus), self.p)
        return _undigits(ds, self.p)

    def _slow_mul(self, a, b):
        if self.p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> self.degree & 1:
                    a ^= self._modmask
            return r
        da = _fp_trim(_digits(a, self.p, self.degree))
        db = _fp_trim(_digits(b, self.p, self.degree))
        return self._slow_reduce(_fp_mul(da, db, self.p))

    def _slow_pow(self, a, n):
        r = 1
        while n:
            if n & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return r

    def _build_tables(self):
        q1 = self.order - 1
        factors = prime_factors(q1)
        for g in range(2, self.order):
            if all(self._slow_pow(g, q1 // r) != 1 for r in factors):
                break
        else:  # pragma: no cover - GF(2) only, excluded above since degree >= 1 and q > 2
            g = 1
        exp = [0] * (2 * q1)
        log = [0] * self.order
        x = 1
        for i in range(q1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        exp[q1:] = exp[:q1]
        self.primitive = g
        self._exp, self._log = exp, log
        self._exp_np = np.array(exp, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        r, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            r += ((x + y) % p) * scale
            scale *= p
        return r

    def neg(self, a):
        if self.p == 2:
            return a
        p = self.p
        r, scale = 0, 1
        while a:
            a, x = divmod(a, p)
            r += ((-x) % p) * scale
            scale *= p
        return r

    def sub(self, a, b):
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._slow_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.name}")
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self._slow_pow(a, self.order - 2)

    def pow(self, a, n: int):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError(f"inverse of 0 in {self.name}")
            return 1 if n == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        return self._slow_pow(a, n % (self.order - 1))

    def v_mul(self, A, B):
        if self._exp is None:
            PA, PB = self.digit_planes(A), self.digit_planes(B)
            m = self.degree
            C = np.zeros((2 * m - 1,) + np.broadcast(A, B).shape, dtype=np.int64)
            for u in range(m):
                for v in range(m):
                    C[u + v] += PA[u] * PB[v]
            return self.from_planes(self._reduce_planes(C % self.p))
        prod = self._exp_np[self._log_np[A] + self._log_np[B]]
        return np.where((A == 0) | (B == 0), 0, prod)

    def v_pow(self, A, e: int):
        if self._exp is None:
            return np.vectorize(lambda a: self.pow(int(a), e), otypes=[np.int64])(A)
        q1 = self.order - 1
        out = self._exp_np[(self._log_np[A] * (e % q1)) % q1]
        return np.where(A == 0, 0, out)

    def v_inv(self, A):
        if np.any(A == 0):
            raise ZeroDivisionError("inverse of 0")
        return self.v_pow(A, -1 % (self.order - 1))

    # text -----------------------------------------------------------------
    def to_text(self, a) -> str:
        if a < self.p:
            return str(a)
        ds = _digits(a, self.p, self.degree)
        return "[" + format_terms([(str(c), i) for i, c in reversed(list(enumerate(ds))) if c], "g") + "]"

    def parse_coeff(self, cur: Cursor) -> int:
        if cur.accept("["):
            v = _parse_gpoly(self, cur)
            cur.expect("]")
            return v
        return cur.natural() % self.p

    def parse(self, text: str):
        cur = Cursor(text)
        neg = cur.accept("-")
        v = self.parse_coeff(cur)
        cur.expect_end()
        return self.neg(v) if neg else v

    # embeddings -----------------------------------------------------------
    def embedding_of(self, sub: FiniteField):
        """Return a function mapping raw elements of ``sub`` into this field."""
        if sub == self:
            return lambda a: a
        if sub.p != self.p or self.degree % sub.degree:
            raise MixedFieldError(f"{sub} does not embed in {self}")
        if sub.degree == 1:
            return lambda a: a
        return _embedding(self, sub)


@lru_cache(maxsize=None)
def _embedding(big: ExtField, sub: ExtField):
    from .upoly import find_root_ff  # local import: upoly depends on this module

    root = find_root_ff(big, list(sub.modulus), random.Random(0))
    powers = [1]
    for _ in range(sub.degree - 1):
        powers.append(big.mul(powers[-1], root))
    cache = {}

    def embed(a):
        r = cache.get(a)
        if r is None:
            r = 0
            for i, d in enumerate(_digits(a, sub.p, sub.degree)):
                if d:
                    r = big.add(r, big.mul(big.from_int(d), powers[i]))
            cache[a] = r
        return r

    return embed


def _parse_gpoly(F: ExtField, cur: Cursor) -> int:
    p, m = F.p, F.degree
    coeffs = {}
    first = True
    while True:
        sign = 1
        if cur.accept("-"):
            sign = -1
        elif not first and not cur.accept("+"):
            break
        first = False
        c, e = 1, 0
        if cur.peek().isdigit():
            c = cur.natural()
            if cur.accept("*"):
                e = _parse_mono(cur, "g")
        elif cur.peek() == "g":
            e = _parse_mono(cur, "g")
        else:
            cur.fail("expected a term in g")
        coeffs[e] = coeffs.get(e, 0) + sign * c
        if cur.peek() not in "+-":
            break
    ds = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        ds[e] = c % p
    if len(ds) > m:
        return F._slow_reduce(ds)
    return _undigits(ds + [0] * (m - len(ds)), p)


def _parse_mono(cur: Cursor, var: str) -> int:
    cur.expect(var)
    if cur.accept("^"):
        return cur.natural()
    return 1


@lru_cache(maxsize=None)
def GF(p: int, m: int = 1, modulus: tuple | None = None) -> FiniteField:
    """GF(p) or GF(p^m).

    Without an explicit modulus the lexicographically least monic irreducible
    polynomial of degree m is used (coefficients compared from g^(m-1) down).
    """
    if m == 1 and modulus is None:
        return _prime(p)
    if modulus is None:
        modulus = least_irreducible(p, m)
    return ExtField(_prime(p), tuple(modulus))


@lru_cache(maxsize=None)
def _prime(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def least_irreducible(p: int, m: int) -> tuple:
    for code in range(p ** m):
        f = _digits(code, p, m) + [1]
        if _fp_is_irreducible(f, p):
            return tuple(f)
    raise ValueError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


# ---------------------------------------------------------------------------
# polynomial rings in t

class _TPolyRing(Domain):
    """Univariate polynomials in t over a finite field (an integral domain)."""

    is_field = False
    var = "t"

    def __init__(self, field: FiniteField):
        self.field = field
        self.name = f"{field.name}[t]"

    @property
    def characteristic(self):
        return self.field.p

    def __eq__(self, other):
        return isinstance(other, _TPolyRing) and self.field == other.field

    def __hash__(self):
        return hash(("tpoly", self.field))

    def is_unit(self, a) -> bool:
        return self.degree(a) == 0

    def inv(self, a):
        if not self.is_unit(a):
            raise InexactDivisionError(f"{self.to_text(a)} is not a unit in {self.name}")
        return self.from_coeffs([self.field.inv(self.coeffs(a)[0])])

    def exquo(self, a, b):
        q, r = self.divmod(a, b)
        if not self.is_zero(r):
            raise InexactDivisionError(f"{self.to_text(b)} does not divide {self.to_text(a)}")
        return q

    def rem(self, a, b):
        return self.divmod(a, b)[1]

    def gcd(self, a, b):
        while not self.is_zero(b):
            a, b = b, self.rem(a, b)
        return self.monic(a)

    def monic(self, a):
        if self.is_zero(a):
            return a
        c = self.lc(a)
        if self.field.is_one(c):
            return a
        return self.scale(a, self.field.inv(c))

    def from_int(self, n: int):
        return self.from_coeffs([self.field.from_int(n)])

    def as_int(self, a):
        if self.degree(a) <= 0:
            return self.field.as_int(self.coeffs(a)[0] if not self.is_zero(a) else 0)
        return None

    def evaluator(self, target: FiniteField, t0, embed=None):
        """Return a function evaluating raw polynomials at ``t0`` in ``target``."""
        if embed is None:
            embed = _embedder(target, self.field)
        powers = [target.one]
        cache = {}

        def ev(a):
            r = cache.get(a)
            if r is not None:
                return r
            cs = self.coeffs(a)
            while len(powers) < len(cs):
                powers.append(target.mul(powers[-1], t0))
            r = target.zero
            for i, c in enumerate(cs):
                if c:
                    r = target.add(r, target.mul(embed(c), powers[i]))
            cache[a] = r
            return r

        return ev

    def random_element(self, rng: random.Random, max_degree: int = 3):
        return self.from_coeffs([self.field.random_element(rng) for _ in range(rng.randint(0, max_degree) + 1)])

    def to_text(self, a) -> str:
        F = self.field
        cs = self.coeffs(a)
        return format_terms([(F.to_text(c), i) for i, c in reversed(list(enumerate(cs))) if c], "t")

    def parse_poly(self, cur: Cursor):
        """Parse a signed sum of terms ``c*t^k``."""
        F = self.field
        coeffs: dict[int, int] = {}
        first = True
        while True:
            neg = False
            if cur.accept("-"):
                neg = True
            elif not first and not cur.accept("+"):
                break
            first = False
            ch = cur.peek()
            if ch == "t":
                c, e = F.one, _parse_mono(cur, "t")
            elif ch.isdigit() or ch == "[":
                c = F.parse_coeff(cur)
                e = _parse_mono(cur, "t") if cur.accept("*") else 0
            else:
                cur.fail("expected a term in t")
            if neg:
                c = F.neg(c)
            coeffs[e] = F.add(coeffs.get(e, F.zero), c)
            if cur.peek() not in "+-":
                break
        cs = [F.zero] * (max(coeffs) + 1)
        for e, c in coeffs.items():
            cs[e] = c
        return self.from_coeffs(cs)

    def parse(self, text: str):
        cur = Cursor(text)
        if cur.accept("("):
            v = self.parse_poly(cur)
            cur.expect(")")
        else:
            v = self.parse_poly(cur)
        cur.expect_end()
        return v


def _embedder(target: FiniteField, sub: FiniteField):
    if target == sub or sub.degree == 1:
        if target.p != sub.p:
            raise MixedFieldError(f"{sub} does not embed in {target}")
        return lambda c: c
    return target.embedding_of(sub)


class GF2PolyRing(_TPolyRing):
    """GF(2)[t] with bitmask elements."""

    zero = 0
    one = 1
    gen = 2

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        if a.bit_count() > b.bit_count():
            a, b = b, a
        r = 0
        while a:
            low = a & -a
            r ^= b << (low.bit_length() - 1)
            a ^= low
        return r

    def divmod(self, a, b):
        if b == 0:
            raise ZeroDivisionError("polynomial division by zero")
        db = b.bit_length()
        q = 0
        while a.bit_length() >= db:
            shift = a.bit_length() - db
            q |= 1 << shift
            a ^= b << shift
        return q, a

    def rem(self, a, b):
        if b == 0:
            raise ZeroDivisionError("polynomial division by zero")
        db = b.bit_length()
        while a.bit_length() >= db:
            a ^= b << (a.bit_length() - db)
        return a

    def gcd(self, a, b):
        while b:
            a, b = b, self.rem(a, b)
        return a

    def degree(self, a) -> int:
        return a.bit_length() - 1

    def lc(self, a):
        return 1 if a else 0

    def monic(self, a):
        return a

    def scale(self, a, c):
        return a if c else 0

    def valuation(self, a):
        return INF if a == 0 else (a & -a).bit_length() - 1

    def is_unit(self, a):
        return a == 1

    def inv(self, a):
        if a != 1:
            raise InexactDivisionError(f"{self.to_text(a)} is not a unit in {self.name}")
        return 1

    def from_int(self, n: int):
        return n & 1

    def from_coeffs(self, cs):
        r = 0
        for i, c in enumerate(cs):
            if c:
                r |= 1 << i
        return r

    def coeffs(self, a):
        return [(a >> i) & 1 for i in range(a.bit_length())]

    def shift(self, a, k: int):
        return a << k

    def evaluator(self, target: FiniteField, t0, embed=None):
        powers = [target.one]
        cache = {}
        add, mul = target.add, target.mul

        def ev(a):
            r = cache.get(a)
            if r is not None:
                return r
            while len(powers) < a.bit_length():
                powers.append(mul(powers[-1], t0))
            r = 0
            rest, i = a, 0
            while rest:
                if rest & 1:
                    r = add(r, powers[i])
                rest >>= 1
                i += 1
            cache[a] = r
            return r

        return ev

    def random_element(self, rng: random.Random, max_degree: int = 3):
        return rng.getrandbits(rng.randint(0, max_degree) + 1)


class FqPolyRing(_TPolyRing):
    """GF(q)[t] with tuple elements (low degree first)."""

    zero = ()

    def __init__(self, field: FiniteField):
        super().__init__(field)
        self.one = (field.one,)
        self.gen = (field.zero, field.one)

    def _trim(self, cs):
        while cs and cs[-1] == 0:
            cs.pop()
        return tuple(cs)

    def add(self, a, b):
        F = self.field
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] = F.add(cs[i], c)
        return self._trim(cs)

    def neg(self, a):
        return tuple(self.field.neg(c) for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        F = self.field
        cs = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        cs[i + j] = F.add(cs[i + j], F.mul(x, y))
        return self._trim(cs)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        inv = F.inv(b[-1])
        r = list(a)
        db = len(b) - 1
        q = [0] * max(0, len(a) - db)
        while len(r) - 1 >= db and r:
            c = F.mul(r[-1], inv)
            k = len(r) - 1 - db
            q[k] = c
            for i, y in enumerate(b):
                r[k + i] = F.sub(r[k + i], F.mul(c, y))
            while r and r[-1] == 0:
                r.pop()
        return self._trim(q), tuple(r)

    def degree(self, a) -> int:
        return len(a) - 1

    def lc(self, a):
        return a[-1] if a else 0

    def scale(self, a, c):
        if not c:
            return ()
        F = self.field
        return tuple(F.mul(x, c) for x in a)

    def valuation(self, a):
        if not a:
            return INF
        for i, c in enumerate(a):
            if c:
                return i

    def from_coeffs(self, cs):
        return self._trim([int(c) for c in cs])

    def coeffs(self, a):
        return list(a)

    def shift(self, a, k: int):
        return (0,) * k + a if a else ()


@lru_cache(maxsize=None)
def poly_ring(field: FiniteField) -> _TPolyRing:
    """The ring field[t]."""
    if field.order == 2:
        return GF2PolyRing(field)
    return FqPolyRing(field)


# ---------------------------------------------------------------------------
# rational functions

class RatFunc(FieldElement):
    """An element of GF(q)(t) in canonical reduced form."""

    __slots__ = ()

    @property
    def numerator(self):
        return RatFunc(self.parent, (self.value[0], self.parent.ring.one))

    @property
    def denominator(self):
        return RatFunc(self.parent, (self.value[1], self.parent.ring.one))

    def valuation(self):
        return self.parent.valuation(self.value)

    def __call__(self, t0: FieldElement) -> FieldElement:
        return eval_at_t(self, t0)


class RatFuncField(Domain):
    """GF(q)(t), the computable stand-in for a Laurent series field."""

    element_class = RatFunc

    def __init__(self, ring: _TPolyRing):
        self.ring = ring
        self.field = ring.field
        self.name = f"{ring.field.name}(t)"
        self.zero = (ring.zero, ring.one)
        self.one = (ring.one, ring.one)
        self.gen = (ring.gen, ring.one)

    @property
    def characteristic(self):
        return self.field.p

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and self.ring == other.ring

    def __hash__(self):
        return hash(("ratfunc", self.field))

    def make(self, num, den):
        R = self.ring
        if R.is_zero(den):
            raise ZeroDivisionError("zero denominator")
        if R.is_zero(num):
            return self.zero
        g = R.gcd(num, den)
        if not R.is_one(g):
            num, den = R.exquo(num, g), R.exquo(den, g)
        c = R.lc(den)
        if not self.field.is_one(c):
            ci = self.field.inv(c)
            num, den = R.scale(num, ci), R.scale(den, ci)
        return (num, den)

    def from_poly(self, a):
        return (a, self.ring.one)

    def from_int(self, n: int):
        return (self.ring.from_int(n), self.ring.one)

    def convert(self, x):
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, FieldElement) and x.parent == self.field:
            return (self.ring.from_coeffs([x.value]), self.ring.one)
        raise TypeError(f"cannot convert {x!r} into {self}")

    def as_int(self, a):
        if a[1] == self.ring.one:
            return self.ring.as_int(a[0])
        return None

    def add(self, a, b):
        R = self.ring
        (an, ad), (bn, bd) = a, b
        one = R.one
        if ad == one and bd == one:
            return (R.add(an, bn), one)
        if ad == bd:
            return self.make(R.add(an, bn), ad)
        return self.make(R.add(R.mul(an, bd), R.mul(bn, ad)), R.mul(ad, bd))

    def neg(self, a):
        return (self.ring.neg(a[0]), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        R = self.ring
        (an, ad), (bn, bd) = a, b
        one = R.one
        if ad == one and bd == one:
            return (R.mul(an, bn), one)
        if R.is_zero(an) or R.is_zero(bn):
            return self.zero
        # cross-cancel before multiplying
        g1 = R.gcd(an, bd)
        g2 = R.gcd(bn, ad)
        if not R.is_one(g1):
            an, bd = R.exquo(an, g1), R.exquo(bd, g1)
        if not R.is_one(g2):
            bn, ad = R.exquo(bn, g2), R.exquo(ad, g2)
        num, den = R.mul(an, bn), R.mul(ad, bd)
        c = R.lc(den)
        if not self.field.is_one(c):
            ci = self.field.inv(c)
            num, den = R.scale(num, ci), R.scale(den, ci)
        return (num, den)

    def inv(self, a):
        if self.ring.is_zero(a[0]):
            raise ZeroDivisionError("inverse of zero rational function")
        return self.make(a[1], a[0])

    def is_zero(self, a):
        return self.ring.is_zero(a[0])

    def valuation(self, a):
        R = self.ring
        if R.is_zero(a[0]):
            return INF
        return R.valuation(a[0]) - R.valuation(a[1])

    def evaluator(self, target: FiniteField, t0, embed=None):
        """Return a function a -> a(t0) on raw elements; raises PoleError at poles."""
        ev = self.ring.evaluator(target, t0, embed)

        def f(a):
            d = ev(a[1])
            if d == 0:
                raise PoleError(f"pole of {self.to_text(a)} at t = {target.to_text(t0)}")
            n = ev(a[0])
            return n if d == 1 else target.mul(n, target.inv(d))

        return f

    def random_element(self, rng: random.Random, max_degree: int = 3, polynomial: bool = False):
        R = self.ring
        num = R.random_element(rng, max_degree)
        if polynomial:
            return (num, R.one)
        den = R.zero
        while R.is_zero(den):
            den = R.random_element(rng, max_degree)
        return self.make(num, den)

    def to_text(self, a) -> str:
        R = self.ring
        num, den = a
        if den == R.one:
            return R.to_text(num)
        return f"({R.to_text(num)})/({R.to_text(den)})"

    def parse_ratfunc(self, cur: Cursor):
        R = self.ring

        def part():
            if cur.accept("("):
                v = R.parse_poly(cur)
                cur.expect(")")
                return v
            return R.parse_poly(cur)

        num = part()
        den = part() if cur.accept("/") else R.one
        pos = cur.pos
        try:
            return self.make(num, den)
        except ZeroDivisionError:
            raise ParseError("zero denominator", cur.text, pos) from None

    def parse(self, text: str):
        cur = Cursor(text)
        v = self.parse_ratfunc(cur)
        cur.expect_end()
        return v


@lru_cache(maxsize=None)
def rational_function_field(field: FiniteField) -> RatFuncField:
    return RatFuncField(poly_ring(field))


def t_valuation(r) -> float | int:
    """Order of vanishing at t = 0 (negative for a pole, +inf for 0)."""
    if isinstance(r, FieldElement):
        return r.parent.valuation(r.value)
    raise TypeError("t_valuation expects a rational function or polynomial in t")


def eval_at_t(r: FieldElement, t0: FieldElement) -> FieldElement:
    """Specialise a rational function at t = t0 (t0 in the coefficient field or an extension)."""
    K = t0.parent
    ev = r.parent.evaluator(K, t0.value)
    return FieldElement(K, ev(r.value))


def field_from_name(name: str, modulus_text: str | None = None) -> Domain:
    """Parse ``GF(p)``, ``GF(p^m)``, ``GF(q)(t)`` or ``GF(q)[t]``."""
    cur = Cursor(name)
    for ch in "GF(":
        cur.expect(ch)
    p = cur.natural()
    m = cur.natural() if cur.accept("^") else 1
    cur.expect(")")
    if not is_prime(p):
        raise ParseError(f"{p} is not prime", name, 3)
    if modulus_text:
        mod_field = GF(p, 1)
        mc = Cursor(modulus_text)
        R = poly_ring(mod_field)
        coeffs = R.coeffs(_parse_in_var(R, mc, "g"))
        F = GF(p, len(coeffs) - 1, tuple(coeffs))
    else:
        F = GF(p, m)
    if cur.accept("("):
        cur.expect("t")
        cur.expect(")")
        cur.expect_end()
        return rational_function_field(F)
    if cur.accept("["):
        cur.expect("t")
        cur.expect("]")
        cur.expect_end()
        return poly_ring(F)
    cur.expect_end()
    return F


def _parse_in_var(R: _TPolyRing, cur: Cursor, var: str):
    text = cur.text.replace(var, "t")
    c2 = Cursor(text)
    v = R.parse_poly(c2)
    c2.expect_end()
    return v


def field_descriptor(K: Domain) -> dict:
    """JSON-friendly description of a domain (inverse of :func:`field_from_name`)."""
    base = K.field if isinstance(K, (RatFuncField, _TPolyRing)) else K
    out = {"base_field": K.name}
    if base.degree > 1:
        out["modulus"] = base.modulus_text()
    return out
