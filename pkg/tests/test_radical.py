from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from sepdef.errors import SamplingError
from sepdef.fda import (
    cyclic_group,
    dihedral_group,
    group_algebra,
    group_Gs,
    matrix_algebra,
    quaternion_group,
    quotient_algebra,
    random_commutative_algebra,
    specialize,
    symmetric_group_3,
)
from sepdef.radical import (
    GaloisRing,
    certify_separable,
    component_count,
    is_semisimple_ff,
    radical_ff,
)
from sepdef.scalars import GF, rational_function_field
from sepdef.upoly import Poly, discriminant, specialize_poly

from oracles import frobenius_kernel, row_space

F2 = GF(2)
F2t = rational_function_field(F2)


def brute_force_radical_f2(A):
    """{a : a b is nilpotent for every b}, enumerated over all of F_2^dim."""
    N = A.dim
    elems = [tuple(v) for v in itertools.product([0, 1], repeat=N)]
    zero = A.zero()

    def nilpotent(v):
        w = v
        for _ in range(N + 1):
            if w == zero:
                return True
            w = A.mul(w, v)
        return w == zero

    return [a for a in elems if all(nilpotent(A.mul(a, b)) for b in elems)]


# -- examples ---------------------------------------------------------------

def test_f2c2_radical_is_augmentation():
    A = group_algebra(cyclic_group(2), F2)
    r = radical_ff(A)
    assert r.dim == 1 and r.vectors() == [(1, 1)]
    assert r.nilpotency_exponent == 2


def test_f3c2_is_semisimple():
    assert radical_ff(group_algebra(cyclic_group(2), GF(3))).dim == 0


def test_f2s3_radical_matches_brute_force():
    A = group_algebra(symmetric_group_3(), F2)
    r = radical_ff(A)
    brute = brute_force_radical_f2(A)
    assert r.dim == 1 and len(brute) == 2
    assert row_space(F2, r.vectors()) == row_space(F2, [v for v in brute if any(v)])
    assert component_count(A, r) == (2, 2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fpcp_radical_dimension(p):
    A = group_algebra(cyclic_group(p), GF(p))
    r = radical_ff(A)
    assert r.dim == p - 1
    assert r.nilpotency_exponent == p
    assert not is_semisimple_ff(A)


def test_m2_f2_is_simple():
    A = matrix_algebra(2, F2)
    assert is_semisimple_ff(A)
    assert component_count(A) == (1, 1)


def test_extension_field_group_algebra():
    F4 = GF(2, 2)
    A = group_algebra(cyclic_group(3), F4)  # splits into three copies of F_4
    assert radical_ff(A).dim == 0
    assert component_count(A) == (3, 3)


@pytest.mark.parametrize("G,dim", [(dihedral_group(4), 7), (quaternion_group(), 7), (group_Gs(3), 15),
                                   (cyclic_group(6), 3), (cyclic_group(8), 7)])
def test_radical_dims_of_2_groups_and_friends(G, dim):
    assert radical_ff(group_algebra(G, F2)).dim == dim


def test_galois_ring_lift_reduces_back():
    F = GF(2, 3)
    R = GaloisRing(F, 3)
    rng = np.random.default_rng(0)
    a = rng.integers(0, F.order, size=(3, 3))
    b = rng.integers(0, F.order, size=(3, 3))
    # products of lifts reduce mod p to products in the field
    la, lb = R.lift(a), R.lift(b)
    prod = R.matmul(la, lb)
    assert np.array_equal(F.from_planes(prod % 2), F.matmul(a, b))


# -- oracles ---------------------------------------------------------------

@pytest.mark.parametrize("F", [GF(2), GF(2, 2)], ids=str)
def test_commutative_radical_matches_frobenius_kernel(F):
    rng = random.Random(11)
    for _ in range(25):
        A = random_commutative_algebra(F, 8, rng)
        r = radical_ff(A)
        want = row_space(F, frobenius_kernel(A))
        assert row_space(F, r.vectors()) == want


MASCHKE_GROUPS = [cyclic_group(n) for n in range(1, 9)] + [
    symmetric_group_3(), dihedral_group(4), quaternion_group(), group_Gs(2), group_Gs(3)]


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("G", MASCHKE_GROUPS, ids=lambda G: f"{G.name}")
def test_maschke(G, p):
    order = len(G.labels)
    assert (radical_ff(group_algebra(G, GF(p))).dim == 0) == (order % p != 0)


def test_radical_self_verification_properties():
    A = group_algebra(group_Gs(2), GF(2, 2))
    r = radical_ff(A)
    vs = r.vectors()
    # two-sided ideal
    span = row_space(A.field, vs)
    for v in vs:
        for i in range(A.dim):
            for w in (A.mul(v, A.basis(i)), A.mul(A.basis(i), v)):
                assert row_space(A.field, vs + [list(w)]) == span
    assert r.nilpotency_exponent <= A.dim


# -- certificates -----------------------------------------------------------

def test_certificate_pi2_separable():
    A = quotient_algebra(Poly.parse(F2t, "(t^3+t^2+t+1)*x^3+1"))
    c = certify_separable(A, samples=3, ext_degree=12, seed=0)
    assert c.verdict == "separable"
    assert [s.radical_dim for s in c.samples] == [0, 0, 0]
    assert c.commutative_checks[0].gcd == "1"


def test_certificate_x_squared_not_separable():
    A = quotient_algebra(Poly.parse(F2t, "x^2"))
    c = certify_separable(A, samples=3, seed=0)
    assert c.verdict == "not-separable"
    # (x^2)' = 0 in characteristic 2, so the gcd is x^2 itself
    assert c.commutative_checks[0].gcd == "x^2"
    assert len(c.samples) == 4  # one resample after the first nonzero radical


def test_certificate_type2_quadratic():
    A = quotient_algebra(Poly.parse(F2t, "x^2+(t)*x+1"))
    assert certify_separable(A, seed=3).verdict == "separable"


def test_certificate_is_deterministic():
    A = quotient_algebra(Poly.parse(F2t, "x^3+(t)*x+1"))
    a = certify_separable(A, seed=9).to_dict()
    b = certify_separable(A, seed=9).to_dict()
    assert a == b


def test_certificate_all_poles():
    A = quotient_algebra(Poly.parse(F2t, "x^2+(1/(t+1))*x+1"))
    with pytest.raises(SamplingError):
        certify_separable(A, samples=1, ext_degree=1)


def test_certificate_rejects_zero_samples():
    A = quotient_algebra(Poly.parse(F2t, "x^2+(t)*x+1"))
    with pytest.raises(ValueError):
        certify_separable(A, samples=0)


def test_exact_and_sampled_checks_agree():
    f = Poly.parse(F2t, "x^4+(t)*x^3+(t^2+1)*x+(t)")
    A = quotient_algebra(f)
    target = GF(2, 6)
    rng = random.Random(2)
    for _ in range(20):
        t0 = rng.randrange(1, target.order)
        fs = specialize_poly(f, target, t0)
        if fs.degree != 4 or discriminant(fs) == 0:
            continue
        assert radical_ff(specialize(A, t0, target)).dim == 0
