"""Synthesis of the perturbation q_t(y) for B[y; η_t]/<y^p - u + q_t(y)>.

Automatic mode covers p = 2 with B commutative étale: B splits as e₂B, where
η_t is the identity (Type 2), and e₁B with e₁ = 1 - e₂, on which η_t has no
fixed nonzero ideal (Type 1, pairs of swapped components or fields on which
C_2 acts faithfully).  Only e₂ receives a perturbation, q_t = -t^m e₂ y.

Formula mode assembles q_t = -t^m sum_{Type 2} e q_e^(1-p) y from caller data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .errors import ConsistencyError, ValidationError
from .fda import AlgebraMap, QuotientAlgebra, StructAlgebra, fixed_subspace, largest_ideal_in, unit_of_ideal
from .linalg import solve
from .scalars import RatFuncField


@dataclass
class ComponentReport:
    kind: str  # "type1" or "type2"
    idempotent: tuple
    dim: int
    q_e: tuple
    u_e: tuple
    n_e: int = 0

    def to_dict(self, B: StructAlgebra) -> dict:
        return {"kind": self.kind, "dim": self.dim, "n_e": self.n_e, "idempotent": B.to_text(self.idempotent)}


@dataclass
class QtResult:
    """The relation y^2 = c0 + c1 y (char 2: y^p - u + q_t(y) with q_t = -c1 y)."""

    m: int
    c1: tuple
    c0: tuple
    components: list[ComponentReport] = dc_field(default_factory=list)
    p: int = 2

    @property
    def qt_degree(self):
        return -math.inf if all_zero(self.c1) else 1


def all_zero(v) -> bool:
    return all((c[0] == 0 or c[0] == ()) if isinstance(c, tuple) else c == 0 for c in v)


def _as_map(eta) -> AlgebraMap:
    return eta.map if hasattr(eta, "map") and isinstance(eta.map, AlgebraMap) else eta


def _generators(B: StructAlgebra):
    if isinstance(B, QuotientAlgebra) and B.dim > 1:
        return [B.basis(1)]
    return None


def pole_bound(B: StructAlgebra, v) -> int:
    """Least n >= 0 with t^n v in the lattice spanned by the basis over F_q[t]."""
    K = B.field
    worst = 0
    for c in v:
        if not K.is_zero(c):
            worst = max(worst, -K.valuation(c))
    return int(worst)


def classify_components_comm_p2(B: StructAlgebra, eta) -> list[ComponentReport]:
    """Type 2 block (η trivial) and Type 1 block of a commutative étale B."""
    amap = _as_map(eta)
    K = B.field
    if K.characteristic != 2:
        raise ValueError("automatic classification is for characteristic 2")
    if not B.is_commutative():
        raise ValueError("automatic classification needs a commutative B")
    gens = _generators(B)
    fix = fixed_subspace(amap)
    I2 = largest_ideal_in(fix, B, gens)
    e2 = unit_of_ideal(I2, B)
    e1 = B.sub(B.one, e2)
    if B.mul(e1, e2) != B.zero() or amap(e1) != e1 or amap(e2) != e2:
        raise ConsistencyError("component idempotents are not orthogonal η-fixed idempotents")
    comps = []
    if I2:
        comps.append(ComponentReport("type2", e2, len(I2), q_e=e2, u_e=e2, n_e=pole_bound(B, e2)))
    if B.dim - len(I2):
        comps.append(ComponentReport("type1", e1, B.dim - len(I2), q_e=e1, u_e=e1, n_e=0))
    return comps


def choose_m(components: list[ComponentReport]) -> int:
    """The least m with m > n_e for every Type 2 component."""
    return 1 + max([0] + [c.n_e for c in components if c.kind == "type2"])


def synthesize_qt(B: StructAlgebra, eta, u=None, m: int | None = None) -> QtResult:
    """Relation data (c0, c1) = (u, t^m e₂) for the crossed product.

    In characteristic other than 2 the undeformed relation already works and
    q_t = 0 is returned.  ``m`` may only raise the minimal admissible value.
    """
    K = B.field
    u = tuple(B.one if u is None else u)
    if K.characteristic != 2:
        return QtResult(m=1, c1=B.zero(), c0=u, components=[], p=2)
    if u != tuple(B.one):
        raise ValueError("automatic synthesis covers u = 1 only")
    comps = classify_components_comm_p2(B, eta)
    m_min = choose_m(comps)
    if m is None:
        m = m_min
    if m < m_min:
        raise ValidationError(f"m = {m} does not exceed every n_e (need m >= {m_min})")
    type2 = [c for c in comps if c.kind == "type2"]
    if not isinstance(K, RatFuncField):
        raise TypeError("synthesis needs coefficients in F_q(t)")
    tm = K.pow(K.gen, m)
    c1 = B.zero()
    for c in type2:
        # e q_e^(1-p) = e for q_e = e in the commutative case
        c1 = B.add(c1, B.scale(tm, c.idempotent))
    res = QtResult(m=m, c1=c1, c0=u, components=comps, p=2)
    _assert_contract(B, res)
    return res


def _assert_contract(B: StructAlgebra, res: QtResult) -> None:
    K = B.field
    for c in res.components:
        if c.kind == "type2" and not res.m > c.n_e:
            raise ConsistencyError("m does not exceed n_e")
    if any(not K.is_zero(c) and K.valuation(c) < 1 for c in res.c1):
        raise ConsistencyError("a coefficient of q_t is not divisible by t")


def qt_valuations(B: StructAlgebra, res: QtResult) -> list:
    K = B.field
    return [K.valuation(c) for c in res.c1]


# ---------------------------------------------------------------------------
# formula mode

@dataclass
class FormulaRelation:
    """y^p - u + c y, where q_t(y) = c y."""

    p: int
    m: int
    u: tuple
    y_coeff: tuple
    text: str


def qt_formula_mode(B: StructAlgebra, components: list[ComponentReport], p: int, m: int,
                    u=None) -> FormulaRelation:
    """q_t = -t^m sum_{e Type 2} e q_e^(1-p) y (Type 1 components contribute 0)."""
    K = B.field
    for c in components:
        if not m > c.n_e:
            raise ValidationError(f"m = {m} must exceed n_e = {c.n_e}")
    u = tuple(B.one if u is None else u)
    tm = K.neg(K.pow(K.gen, m))
    coeff = B.zero()
    for c in components:
        if c.kind == "type1":
            continue
        if c.kind != "type2":
            raise ValueError(f"unknown component kind {c.kind!r}")
        qinv = _inverse_in_component(B, c.q_e, c.idempotent)
        coeff = B.add(coeff, B.scale(tm, B.mul(c.idempotent, B.pow(qinv, p - 1))))
    if B.is_zero(coeff):
        text = f"y^{p} - ({B.to_text(u)})"
    else:
        text = f"y^{p} - ({B.to_text(u)}) + ({B.to_text(coeff)})*y"
    return FormulaRelation(p, m, u, coeff, text)


def _inverse_in_component(B: StructAlgebra, q, e):
    """z with q z = e and z = e z (the inverse of q in the ring eB)."""
    rows = B.left_matrix(q)
    z = solve(B.field, rows, list(e))
    if z is None:
        raise ValidationError("q_e is not invertible in its component")
    z = B.mul(e, z)
    if B.mul(q, z) != tuple(e):
        raise ValidationError("q_e is not invertible in its component")
    return z
