"""Dense univariate polynomials in x over a scalar domain.

The coefficient domain is any object from :mod:`sepdef.scalars`: a finite field,
F_q[t] or F_q(t).  Coefficients are stored as raw domain values.
"""

from __future__ import annotations

import math
import random

from .errors import InexactDivisionError, ParseError, PoleError
from .scalars import (
    Domain,
    FieldElement,
    FiniteField,
    GF,
    RatFuncField,
    _TPolyRing,
    poly_ring,
    rational_function_field,
)
from .textfmt import Cursor, format_terms

NEG_INF = -math.inf


class Poly:
    """An immutable dense polynomial; ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("domain", "coeffs")

    def __init__(self, domain: Domain, coeffs=()):
        cs = list(coeffs)
        is_zero = domain.is_zero
        while cs and is_zero(cs[-1]):
            cs.pop()
        self.domain = domain
        self.coeffs = tuple(cs)

    # construction -----------------------------------------------------------
    @classmethod
    def from_elements(cls, domain: Domain, elems) -> "Poly":
        return cls(domain, [domain(e).value if not isinstance(e, int) else domain.from_int(e) for e in elems])

    @classmethod
    def x(cls, domain: Domain) -> "Poly":
        return cls(domain, [domain.zero, domain.one])

    @classmethod
    def monomial(cls, domain: Domain, k: int, c=None) -> "Poly":
        return cls(domain, [domain.zero] * k + [domain.one if c is None else c])

    @classmethod
    def const(cls, domain: Domain, c) -> "Poly":
        return cls(domain, [c])

    @classmethod
    def parse(cls, domain: Domain, text: str) -> "Poly":
        cur = Cursor(text)
        p = _parse_poly(domain, cur)
        cur.expect_end()
        return p

    # basic queries ----------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.domain.zero

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.domain.zero

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        if self.domain != other.domain or len(self.coeffs) != len(other.coeffs):
            return False
        eq = self.domain.eq
        return all(eq(a, b) for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.domain, self.coeffs))

    def _check(self, other: "Poly"):
        if self.domain != other.domain:
            from .errors import MixedFieldError

            raise MixedFieldError(f"polynomials over {self.domain} and {other.domain}")

    # arithmetic -------------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        K = self.domain
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] = K.add(cs[i], c)
        return Poly(K, cs)

    def __neg__(self) -> "Poly":
        K = self.domain
        return Poly(K, [K.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        K = self.domain
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(K)
        add, mul, is_zero = K.add, K.mul, K.is_zero
        out = [K.zero] * (len(a) + len(b) - 1)
        bnz = [(j, y) for j, y in enumerate(b) if not is_zero(y)]
        for i, x in enumerate(a):
            if is_zero(x):
                continue
            for j, y in bnz:
                out[i + j] = add(out[i + j], mul(x, y))
        return Poly(K, out)

    def __pow__(self, n: int) -> "Poly":
        r = Poly.const(self.domain, self.domain.one)
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def scale(self, c) -> "Poly":
        K = self.domain
        return Poly(K, [K.mul(x, c) for x in self.coeffs])

    def shift(self, k: int) -> "Poly":
        return Poly(self.domain, [self.domain.zero] * k + list(self.coeffs)) if self.coeffs else self

    def divrem(self, g: "Poly") -> tuple["Poly", "Poly"]:
        """Division with remainder; the leading coefficient of g must be a unit."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        K = self.domain
        inv = K.inv(g.lc)
        r = list(self.coeffs)
        db = len(g.coeffs) - 1
        q = [K.zero] * max(0, len(r) - db)
        gc = g.coeffs
        gnz = [(i, y) for i, y in enumerate(gc[:-1]) if not K.is_zero(y)]
        for k in range(len(r) - 1 - db, -1, -1):
            top = r[k + db]
            if K.is_zero(top):
                continue
            c = K.mul(top, inv)
            q[k] = c
            r[k + db] = K.zero
            for i, y in gnz:
                r[k + i] = K.sub(r[k + i], K.mul(c, y))
        return Poly(K, q), Poly(K, r[:db])

    def __mod__(self, g: "Poly") -> "Poly":
        return self.divrem(g)[1]

    def __floordiv__(self, g: "Poly") -> "Poly":
        return self.divrem(g)[0]

    def exact_div(self, g: "Poly") -> "Poly":
        """Quotient f/g, raising InexactDivisionError when g does not divide f."""
        if self.domain.is_field:
            q, r = self.divrem(g)
            if not r.is_zero():
                raise InexactDivisionError(f"{g} does not divide {self}")
            return q
        K = self.domain
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = len(g.coeffs) - 1
        q = [K.zero] * max(0, len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            top = r[k + db]
            if K.is_zero(top):
                continue
            try:
                c = K.exquo(top, g.lc)
            except InexactDivisionError:
                raise InexactDivisionError(f"{g} does not divide {self}") from None
            q[k] = c
            for i, y in enumerate(g.coeffs):
                r[k + i] = K.sub(r[k + i], K.mul(c, y))
        if any(not K.is_zero(c) for c in r):
            raise InexactDivisionError(f"{g} does not divide {self}")
        return Poly(K, q)

    def prem(self, g: "Poly") -> "Poly":
        """Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f mod g, fraction free."""
        self._check(g)
        K = self.domain
        df, dg = self.degree, g.degree
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if df < dg:
            return self
        r = list(self.coeffs)
        lc = g.lc
        gc = g.coeffs
        for k in range(df - dg, -1, -1):
            top = r[k + dg]
            r = [K.mul(c, lc) for c in r]
            if not K.is_zero(top):
                for i, y in enumerate(gc):
                    r[k + i] = K.sub(r[k + i], K.mul(top, y))
        return Poly(K, r[:dg])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        K = self.domain
        if K.is_one(self.lc):
            return self
        return self.scale(K.inv(self.lc))

    def derivative(self) -> "Poly":
        K = self.domain
        p = K.characteristic
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            out.append(K.zero if i % p == 0 else K.mul(K.from_int(i), c))
        return Poly(K, out)

    def compose(self, g: "Poly") -> "Poly":
        """f(g(x)) by Horner's rule."""
        self._check(g)
        K = self.domain
        r = Poly(K)
        for c in reversed(self.coeffs):
            r = r * g + Poly.const(K, c)
        return r

    def __call__(self, a):
        """Evaluate at a raw domain value (or a wrapped element)."""
        K = self.domain
        wrap = isinstance(a, FieldElement)
        v = a.value if wrap else a
        r = K.zero
        for c in reversed(self.coeffs):
            r = K.add(K.mul(r, v), c)
        return K(r) if wrap else r

    def map_coeffs(self, fn, domain: Domain) -> "Poly":
        return Poly(domain, [fn(c) for c in self.coeffs])

    # text -------------------------------------------------------------------
    def __str__(self):
        K = self.domain
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if K.is_zero(c):
                continue
            n = K.as_int(c)
            terms.append((str(n) if n is not None else f"({K.to_text(c)})", i))
        return format_terms(terms, "x")

    def __repr__(self):
        return f"Poly[{self.domain}]({self})"


def _parse_coeff_text(K: Domain, cur: Cursor):
    if isinstance(K, RatFuncField):
        return K.parse_ratfunc(cur)
    if isinstance(K, _TPolyRing):
        return K.parse_poly(cur)
    neg = cur.accept("-")
    v = K.parse_coeff(cur)
    return K.neg(v) if neg else v


def _parse_poly(K: Domain, cur: Cursor) -> Poly:
    terms: dict[int, object] = {}
    first = True
    while True:
        neg = False
        if cur.accept("-"):
            neg = True
        elif not first and not cur.accept("+"):
            break
        first = False
        ch = cur.peek()
        c, e = K.one, 0
        if ch == "(":
            cur.accept("(")
            c = _parse_coeff_text(K, cur)
            cur.expect(")")
            if cur.accept("*"):
                e = _parse_x(cur)
        elif ch.isdigit():
            c = K.from_int(cur.natural())
            if cur.accept("*"):
                e = _parse_x(cur)
        elif ch == "x":
            e = _parse_x(cur)
        else:
            cur.fail("expected a term in x")
        if neg:
            c = K.neg(c)
        terms[e] = K.add(terms.get(e, K.zero), c)
        if cur.peek() not in "+-" or cur.at_end():
            break
    cs = [K.zero] * (max(terms) + 1)
    for e, c in terms.items():
        cs[e] = c
    return Poly(K, cs)


def _parse_x(cur: Cursor) -> int:
    cur.expect("x")
    return cur.natural() if cur.accept("^") else 1


# ---------------------------------------------------------------------------
# subresultants, gcd, resultant, discriminant

def subresultant_prs(f: Poly, g: Poly):
    """Subresultant PRS of f, g (deg f >= deg g) over an integral domain.

    Returns (R, S): the remainder sequence and the principal subresultant
    coefficients; S[-1] is the resultant when R[-1] is a constant.
    """
    K = f.domain
    n, m = f.degree, g.degree
    if f.is_zero():
        return [], []
    if g.is_zero():
        return [f], [K.one]
    R = [f, g]
    d = n - m
    b = K.pow(K.neg(K.one), d + 1)
    h = f.prem(g).scale(b)
    lc = g.lc
    c = K.pow(lc, d)
    S = [K.one, c]
    c = K.neg(c)
    while not h.is_zero():
        k = h.degree
        R.append(h)
        f, g, m, d = g, h, k, m - k
        b = K.mul(K.neg(lc), K.pow(c, d))
        h = _exquo_poly(f.prem(g), b)
        lc = g.lc
        if d > 1:
            q = K.pow(c, d - 1)
            c = K.exquo(K.pow(K.neg(lc), d), q)
        else:
            c = K.neg(lc)
        S.append(K.neg(c))
    return R, S


def _exquo_poly(f: Poly, b) -> Poly:
    K = f.domain
    return Poly(K, [K.exquo(c, b) for c in f.coeffs])


def resultant(f: Poly, g: Poly):
    """Res(f, g) with the Sylvester-matrix convention (f's rows first)."""
    f._check(g)
    K = f.domain
    if f.is_zero() or g.is_zero():
        return K.zero
    n, m = f.degree, g.degree
    if n < m:
        r = resultant(g, f)
        return K.neg(r) if (n * m) % 2 and K.characteristic != 2 else r
    R, S = subresultant_prs(f, g)
    if R[-1].degree > 0:
        return K.zero
    return S[-1]


def discriminant(f: Poly):
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f), with the formal degree n-1 for f'."""
    K = f.domain
    n = f.degree
    if n < 1:
        raise ValueError("discriminant of a constant polynomial")
    if n == 1:
        return K.one
    df = f.derivative()
    if df.is_zero():
        return K.zero
    k = df.degree
    r = K.mul(resultant(f, df), K.pow(f.lc, n - 1 - k))
    r = K.exquo(r, f.lc)
    if (n * (n - 1) // 2) % 2:
        r = K.neg(r)
    return r


def sylvester_matrix(f: Poly, g: Poly) -> list[list]:
    K = f.domain
    n, m = f.degree, g.degree
    size = n + m
    rows = []
    for i in range(m):
        row = [K.zero] * size
        for j, c in enumerate(reversed(f.coeffs)):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [K.zero] * size
        for j, c in enumerate(reversed(g.coeffs)):
            row[i + j] = c
        rows.append(row)
    return rows


def clear_denominators(f: Poly) -> Poly:
    """Scale f over F_q(t) to a primitive-ish polynomial over F_q[t]."""
    K = f.domain
    if not isinstance(K, RatFuncField):
        raise TypeError("clear_denominators expects coefficients in F_q(t)")
    R = K.ring
    l = R.one
    for num, den in f.coeffs:
        if den != R.one:
            l = R.exquo(R.mul(l, den), R.gcd(l, den))
    cs = [R.mul(num, R.exquo(l, den)) for num, den in f.coeffs]
    g = R.zero
    for c in cs:
        g = R.gcd(g, c)
        if R.is_one(g):
            break
    if not R.is_zero(g) and not R.is_one(g):
        cs = [R.exquo(c, g) for c in cs]
    return Poly(R, cs)


def _to_fraction_field(f: Poly) -> Poly:
    R = f.domain
    K = rational_function_field(R.field)
    return Poly(K, [K.make(c, R.one) for c in f.coeffs])


def gcd_monic(f: Poly, g: Poly) -> Poly:
    """Monic gcd over the coefficient field (over F_q[t]: over its fraction field).

    gcd(0, 0) = 0.
    """
    f._check(g)
    K = f.domain
    if f.is_zero() and g.is_zero():
        return f
    if isinstance(K, FiniteField):
        a, b = f, g
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()
    if isinstance(K, RatFuncField):
        if f.is_zero():
            return g.monic()
        if g.is_zero():
            return f.monic()
        r = _ring_gcd(clear_denominators(f), clear_denominators(g))
        return _to_fraction_field(r).monic()
    if isinstance(K, _TPolyRing):
        return gcd_monic(_to_fraction_field(f), _to_fraction_field(g))
    raise TypeError(f"gcd over {K} is not supported")


def _ring_gcd(f: Poly, g: Poly) -> Poly:
    if f.degree < g.degree:
        f, g = g, f
    if g.is_zero():
        return f
    R, _ = subresultant_prs(f, g)
    return R[-1]


def _field_of(K: Domain) -> FiniteField:
    return K if isinstance(K, FiniteField) else K.field


def specialize_poly(f: Poly, target: FiniteField, t0) -> Poly:
    """Evaluate every coefficient (over F_q[t] or F_q(t)) at t = t0 in ``target``."""
    ev = f.domain.evaluator(target, t0)
    return Poly(target, [ev(c) for c in f.coeffs])


def separability_by_specialization(f: Poly, max_points: int = 12):
    """Try to certify gcd(f, f') = 1 over F_q(t) from one good specialisation.

    If f(t0, x) keeps its degree and is separable, Res(f, f') does not vanish
    at t0, so it is a nonzero element of F_q(t).  Returns the witness point as
    (field, t0) or None when no point among the first ``max_points`` works.
    """
    K = f.domain
    if isinstance(K, RatFuncField):
        f = clear_denominators(f)
        K = f.domain
    if not isinstance(K, _TPolyRing):
        return None
    base = K.field
    candidates = [(base, t0) for t0 in range(min(base.order, 64))]
    k = 2
    while len(candidates) < max_points:
        F = GF(base.p, base.degree * k)
        candidates += [(F, t0) for t0 in _sample_points(F, 4)]
        k += 1
    for F, t0 in candidates[:max_points]:
        f0 = specialize_poly(f, F, t0)
        if f0.degree == f.degree and gcd_monic(f0, f0.derivative()).degree == 0:
            return F, t0
    return None


def _sample_points(F: FiniteField, n: int):
    rng = random.Random(F.order)
    return [rng.randrange(F.p, F.order) for _ in range(n)]


def is_separable(f: Poly, exact: bool = False) -> bool:
    """True iff gcd(f, f') = 1 over the coefficient field."""
    K = f.domain
    if f.degree < 1:
        return f.degree == 0
    if isinstance(K, FiniteField):
        return gcd_monic(f, f.derivative()).degree == 0
    if not exact and separability_by_specialization(f) is not None:
        return True
    return gcd_monic(f, f.derivative()).degree == 0


def reduce_mod_t(f: Poly) -> Poly:
    """Coefficient-wise t = 0 over F_q[t] or F_q(t); PoleError on a t-pole."""
    K = f.domain
    F = _field_of(K)
    for c in f.coeffs:
        if K.valuation(c) < 0:
            raise PoleError(f"coefficient {K.to_text(c)} has a pole at t = 0")
    return specialize_poly(f, F, F.zero)


def lift_to_ratfunc(f: Poly) -> Poly:
    """View a polynomial over F_q[t] (or F_q) as one over F_q(t)."""
    K = f.domain
    if isinstance(K, RatFuncField):
        return f
    if isinstance(K, _TPolyRing):
        return _to_fraction_field(f)
    L = rational_function_field(K)
    R = L.ring
    return Poly(L, [(R.from_coeffs([c]), R.one) for c in f.coeffs])


# ---------------------------------------------------------------------------
# roots over finite fields

def _powmod_x(K: FiniteField, e: int, f: Poly) -> Poly:
    r = Poly.const(K, K.one)
    base = Poly.x(K) % f
    while e:
        if e & 1:
            r = (r * base) % f
        base = (base * base) % f
        e >>= 1
    return r


def _roots_part(f: Poly) -> Poly:
    """gcd(f, x^q - x): the product of the distinct linear factors of f."""
    K = f.domain
    xq = _powmod_x(K, K.order, f)
    return gcd_monic(f, xq - Poly.x(K))


def _split(g: Poly, rng: random.Random) -> Poly:
    """A proper monic factor of a squarefree product of distinct linear factors."""
    K = g.domain
    x = Poly.x(K)
    while True:
        a = K.random_element(rng, nonzero=True)
        if K.p == 2:
            # trace map: sum of (a x)^(2^i), i < degree of K over GF(2)
            u = (x.scale(a)) % g
            acc = u
            for _ in range(K.degree - 1):
                u = (u * u) % g
                acc = acc + u
            d = gcd_monic(g, acc)
        else:
            b = K.random_element(rng)
            base = (x.scale(a) + Poly.const(K, b)) % g
            w = _powmod_poly(base, (K.order - 1) // 2, g)
            d = gcd_monic(g, w - Poly.const(K, K.one))
        if 0 < d.degree < g.degree:
            return d


def _powmod_poly(b: Poly, e: int, f: Poly) -> Poly:
    r = Poly.const(b.domain, b.domain.one)
    while e:
        if e & 1:
            r = (r * b) % f
        b = (b * b) % f
        e >>= 1
    return r


def roots_ff(f: Poly, rng: random.Random | None = None) -> list:
    """All distinct roots in the coefficient field (raw values, sorted)."""
    rng = rng or random.Random(0)
    K = f.domain
    if f.is_zero():
        raise ValueError("zero polynomial has every element as root")
    g = _roots_part(f.monic())
    out = []
    stack = [g]
    while stack:
        h = stack.pop()
        if h.degree < 1:
            continue
        if h.degree == 1:
            out.append(K.neg(h.coeffs[0]))
            continue
        d = _split(h, rng)
        stack.extend([d, h.exact_div(d)])
    return sorted(out)


def find_root_ff(K: FiniteField, coeffs, rng: random.Random | None = None):
    """One root in K of the polynomial with raw coefficients ``coeffs`` (low first)."""
    f = Poly(K, [int(c) for c in coeffs])
    rs = roots_ff(f, rng)
    if not rs:
        raise ValueError(f"{f} has no root in {K}")
    return rs[0]
