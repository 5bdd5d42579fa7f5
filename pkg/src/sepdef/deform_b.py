"""The deformation h_t, π_t, η_t of the cyclic group algebra k C_{s^2-1} (char 2).

h_{t,s}(x) = x^s + t x^2 (variant "s5fix": x^5 + t(x^3 + x^2)),
π_{t,s}(x) = h(h(x))/x - 1, B = F(t)[x]/<π>, and η_t(x̄) = h(x̄).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .errors import ConsistencyError, PoleError
from .fda import AlgebraMap, QuotientAlgebra
from .scalars import GF, FiniteField, poly_ring, rational_function_field
from .upoly import (
    Poly,
    gcd_monic,
    lift_to_ratfunc,
    reduce_mod_t,
    separability_by_specialization,
)

VARIANTS = ("default", "s5fix")


def resolve_variant(s: int, variant: str | None = None, force_default: bool = False) -> str:
    """Pick the variant: s5fix is selected automatically for s = 5 unless forced off."""
    if variant is not None:
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        if variant == "s5fix" and s != 5:
            raise ValueError("variant s5fix exists only for s = 5")
        return variant
    return "s5fix" if s == 5 and not force_default else "default"


def build_h(s: int, variant: str = "default", field: FiniteField | None = None) -> Poly:
    """h_{t,s} over F[t]."""
    if s < 2:
        raise ValueError("s must be at least 2")
    variant = resolve_variant(s, variant)
    F = field or GF(2)
    if F.p != 2:
        raise ValueError("the construction needs a field of characteristic 2")
    R = poly_ring(F)
    h = Poly.monomial(R, s) + Poly.monomial(R, 2, R.gen)
    if variant == "s5fix":
        h = h + Poly.monomial(R, 3, R.gen)
    return h


def build_pi(s: int, variant: str = "default", field: FiniteField | None = None) -> Poly:
    """π_{t,s} = h(h(x))/x - 1 over F[t]."""
    h = build_h(s, variant, field)
    R = h.domain
    return h.compose(h).exact_div(Poly.x(R)) - Poly.const(R, R.one)


@dataclass
class DeformationSpec:
    s: int
    field: FiniteField
    variant: str
    h: Poly
    pi: Poly

    @property
    def n(self) -> int:
        return self.s * self.s - 1

    def ratfunc_field(self):
        return rational_function_field(self.field)

    def algebra(self) -> QuotientAlgebra:
        """B = F(t)[x]/<π_t> (cached)."""
        B = self.__dict__.get("_B")
        if B is None:
            B = QuotientAlgebra(lift_to_ratfunc(self.pi), name=f"B_{self.s}")
            self.__dict__["_B"] = B
        return B


def make_spec(s: int, variant: str | None = None, field: FiniteField | None = None,
              force_default: bool = False) -> DeformationSpec:
    F = field or GF(2)
    v = resolve_variant(s, variant, force_default)
    return DeformationSpec(s, F, v, build_h(s, v, F), build_pi(s, v, F))


def check_pi_separable(s, variant: str | None = None) -> bool:
    """gcd(π, π') = 1 over F_2(t)."""
    spec = s if isinstance(s, DeformationSpec) else make_spec(s, variant or "default")
    return pi_separability(spec)["separable"]


def pi_separability(spec: DeformationSpec) -> dict:
    """Separability of π with its certificate.

    A separable specialisation π(t0, x) of full degree proves Res(π, π') ≠ 0;
    otherwise the exact gcd over F_2(t) is computed and reported.
    """
    witness = separability_by_specialization(spec.pi)
    if witness is not None:
        F, t0 = witness
        return {"separable": True, "method": "specialization", "t0": F.to_text(t0), "field": F.name}
    g = gcd_monic(spec.pi, spec.pi.derivative())
    return {"separable": g.degree == 0, "method": "exact-gcd", "gcd": str(g)}


def check_degree_and_reduction(spec: DeformationSpec) -> bool:
    """deg π = s^2 - 1 and π mod t = x^(s^2-1) + 1."""
    n = spec.n
    F = spec.field
    target = Poly.monomial(F, n) + Poly.const(F, F.one)
    return spec.pi.degree == n and reduce_mod_t(spec.pi) == target


def check_hh_identity(spec: DeformationSpec) -> bool:
    """h(h(x)) = x (π(x) + 1) as polynomials over F[t]."""
    R = spec.pi.domain
    return spec.h.compose(spec.h) == Poly.x(R) * (spec.pi + Poly.const(R, R.one))


# ---------------------------------------------------------------------------
# η_t

def _mul_poly(B: QuotientAlgebra, g: Poly, v) -> tuple:
    """ḡ * v in B for a (sparse) polynomial g over B's field."""
    K = B.field
    out = [K.zero] * (B.dim + max(0, g.degree))
    vnz = [(i, c) for i, c in enumerate(v) if not K.is_zero(c)]
    for k, a in enumerate(g.coeffs):
        if K.is_zero(a):
            continue
        for i, c in vnz:
            out[i + k] = K.add(out[i + k], K.mul(a, c))
    return B.reduce(out)


@dataclass
class EtaMap:
    """η_t on B, x̄^i -> h(x̄)^i, with the checks run at construction."""

    spec: DeformationSpec
    map: AlgebraMap
    well_defined: bool = False
    order2: bool = False
    spot_checks: int = 0
    checks: dict = dc_field(default_factory=dict)

    @property
    def algebra(self) -> QuotientAlgebra:
        return self.map.domain

    @property
    def columns(self):
        return self.map.columns

    def __call__(self, v):
        return self.map(v)


def build_eta(spec: DeformationSpec, spot_checks: int = 2, seed: int = 0) -> EtaMap:
    """Materialise η_t column by column and verify it.

    Multiplicativity: the columns are h̄^i by construction, so the linear map
    is the algebra endomorphism x̄ -> h̄ exactly when π(h̄) = 0 in B; this is
    checked, together with random product spot checks and M^2 = I.
    """
    B = spec.algebra()
    K = B.field
    h = lift_to_ratfunc(spec.h)
    cols = [B.one]
    for _ in range(1, B.dim):
        cols.append(_mul_poly(B, h, cols[-1]))
    # π(h̄) = sum_i π_i h̄^i with h̄^n = h̄ * h̄^(n-1)
    top = _mul_poly(B, h, cols[-1])
    pi = B.defining_poly
    acc = [K.zero] * B.dim
    for i, c in enumerate(pi.coeffs):
        if K.is_zero(c):
            continue
        col = cols[i] if i < B.dim else top
        for k, x in enumerate(col):
            if not K.is_zero(x):
                acc[k] = K.add(acc[k], K.mul(c, x))
    well_defined = all(K.is_zero(x) for x in acc)
    if not well_defined:
        raise ConsistencyError("π(h(x̄)) is not zero in B: η_t is not well defined")
    amap = AlgebraMap(B, B, cols, name=f"eta_{spec.s}")
    eta = EtaMap(spec, amap, well_defined=True)
    eta.order2 = matrix_squares_to_identity(amap)
    if not eta.order2:
        raise ConsistencyError("η_t does not have order 2")
    rng = random.Random(seed)
    Kf = K.field
    for _ in range(spot_checks):
        a = tuple(K.from_poly(K.ring.from_coeffs([Kf.random_element(rng)])) if rng.random() < 0.3 else K.zero
                  for _ in range(B.dim))
        b = tuple(K.from_poly(K.ring.from_coeffs([Kf.random_element(rng)])) if rng.random() < 0.3 else K.zero
                  for _ in range(B.dim))
        if amap(B.mul(a, b)) != B.mul(amap(a), amap(b)):
            raise ConsistencyError("η_t fails a multiplicativity spot check")
        eta.spot_checks += 1
    eta.checks = {"well_defined": True, "order2": True, "unital": amap.is_unital()}
    return eta


def matrix_squares_to_identity(amap: AlgebraMap) -> bool:
    """M^2 = I by sparse column combination."""
    B = amap.domain
    return all(amap(c) == B.basis(i) for i, c in enumerate(amap.columns))


def check_eta_deforms(spec: DeformationSpec, eta) -> bool:
    """η_t(x̄) - x̄^s = (h - x^s)(x̄) ∈ t[B], entries t-integral, η_t mod t = (x̄ -> x̄^s)."""
    amap = eta.map if isinstance(eta, EtaMap) else eta
    B = amap.domain
    K = B.field
    n = B.dim
    s = spec.s
    # the perturbation h - x^s has all coefficients divisible by t
    pert = lift_to_ratfunc(spec.h - Poly.monomial(spec.h.domain, s))
    if any(K.valuation(c) < 1 for c in pert.coeffs if not K.is_zero(c)):
        return False
    if B.sub(amap.columns[1], B.power_of_x(s)) != _mul_poly(B, pert, B.one):
        return False
    F = K.field
    ev = K.ring.evaluator(F, F.zero)
    for i, col in enumerate(amap.columns):
        want = (i * s) % n
        for k, c in enumerate(col):
            if K.is_zero(c):
                if k == want:
                    return False
                continue
            if K.valuation(c) < 0:
                return False
            num, den = c
            v = F.mul(ev(num), F.inv(ev(den)))
            if v != (F.one if k == want else F.zero):
                return False
    return True


def inverse_witness(spec: DeformationSpec):
    """w = sum_k h_k x̄^(k-2) u^(k-1) with u = h(x̄)/x̄, so that h(x̄) w = h(h(x̄))/x̄ = 1.

    For the default h this is x̄^(s-2) (x̄^(s-1) + t x̄)^(s-1) + t (x̄^(s-1) + t x̄).
    """
    B = spec.algebra()
    K = B.field
    h = lift_to_ratfunc(spec.h)
    u = Poly(K, h.coeffs[1:])  # h / x
    w = B.zero()
    upow = B.one  # u^(k-1), built incrementally
    for k in range(2, len(h.coeffs)):
        upow = _mul_poly(B, u, upow)
        c = h.coeffs[k]
        if K.is_zero(c):
            continue
        w = B.add(w, B.scale(c, B.mul_basis_left(k - 2, upow)))
    return w


def check_inverse_witness(spec: DeformationSpec, w=None) -> bool:
    B = spec.algebra()
    w = inverse_witness(spec) if w is None else w
    return _mul_poly(B, lift_to_ratfunc(spec.h), w) == B.one


def novelty(s: int) -> str:
    """Classification of G_s: even s, s+1 a power of 2, or otherwise novel."""
    if s % 2 == 0:
        return "even-s"
    if (s + 1) & s == 0:
        return "s+1-power-of-2"
    return "novel"
