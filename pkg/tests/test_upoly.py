from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from sepdef.errors import InexactDivisionError, ParseError, PoleError
from sepdef.scalars import GF, poly_ring, rational_function_field
from sepdef.upoly import (
    Poly,
    discriminant,
    gcd_monic,
    is_separable,
    reduce_mod_t,
    resultant,
    roots_ff,
    sylvester_matrix,
)

from oracles import bareiss_det, rand_poly

F2 = GF(2)
F2t = rational_function_field(F2)
F4t = rational_function_field(GF(2, 2))
R2 = poly_ring(F2)


def P(K, text):
    return Poly.parse(K, text)


def rand_ring_poly(R, rng, max_deg, tdeg=2):
    d = rng.randint(0, max_deg)
    return Poly(R, [R.random_element(rng, tdeg) for _ in range(d + 1)])


# -- examples ---------------------------------------------------------------

def test_char2_square():
    assert P(F2, "x+1") * P(F2, "x+1") == P(F2, "x^2+1")


def test_exact_div_examples():
    F3 = GF(3)
    assert P(F3, "x^3+2*x").exact_div(P(F3, "x")) == P(F3, "x^2+2")
    with pytest.raises(InexactDivisionError):
        P(F2t, "x^2+1").exact_div(P(F2t, "x+(t)"))


def test_compose_examples():
    f = P(R2, "(t+1)*x^2")
    assert f.compose(f) == P(R2, "(t^3+t^2+t+1)*x^4")
    x = Poly.x(R2)
    assert f.compose(x) == f
    assert x.compose(f) == f


def test_derivative_examples():
    assert P(F2, "x^4").derivative().is_zero()
    assert P(F2, "x^3+x").derivative() == P(F2, "x^2+1")
    assert P(F2t, "(t^3)*x^3").derivative() == P(F2t, "(t^3)*x^2")


def test_gcd_examples():
    assert gcd_monic(P(F2, "x^2+1"), P(F2, "x+1")) == P(F2, "x+1")
    f = P(F2t, "(t)*x^2+1")
    assert gcd_monic(f, Poly(F2t, [])) == f.monic()
    assert gcd_monic(Poly(F2t, []), Poly(F2t, [])).is_zero()
    pi2 = P(F2t, "(t^3+t^2+t+1)*x^3+1")
    assert gcd_monic(pi2, pi2.derivative()) == P(F2t, "1")


def test_discriminant_examples():
    assert discriminant(P(F2, "x^3+1")) == 1
    assert discriminant(P(F2, "x^2+1")) == 0


def test_is_separable_examples():
    for v in ["1", "(t)", "(t^2+1)/(t)"]:
        assert is_separable(P(F2t, f"x^2+(t)*x+({v})"))
    assert not is_separable(P(F2t, "x^4+(t^2)*x^2"))
    assert is_separable(P(F2, "x^3+1"))


def test_reduce_mod_t_examples():
    assert reduce_mod_t(P(R2, "(t^3+t^2+t+1)*x^3+1")) == P(F2, "x^3+1")
    assert reduce_mod_t(P(R2, "x^5+(t)*x^2")) == P(F2, "x^5")
    with pytest.raises(PoleError):
        reduce_mod_t(P(F2t, "(1/(t))*x"))


def test_degree_of_zero():
    z = Poly(F2, [])
    assert z.degree < 0 and z.degree == float("-inf")
    assert Poly(F2, [1, 0, 0]).coeffs == (1,)  # trailing zeros dropped


@pytest.mark.parametrize("K,text", [
    (F2, "x^3+x+1"),
    (GF(5), "3*x^4+4*x+2"),
    (F2t, "((t^2+1)/(t))*x^2+(t)*x+1"),
    (F4t, "(([g+1]*t+1)/(t^2+[g]))*x^3+([g])*x"),
    (R2, "(t^2+t)*x^3+x+(t)"),
])
def test_text_round_trip(K, text):
    f = P(K, text)
    assert P(K, str(f)) == f
    assert str(P(K, str(f))) == str(f)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        P(F2t, "x^2+(t+)*x")
    assert info.value.col >= 7


def test_roots_over_extension():
    F = GF(2, 4)
    f = P(F, "x^4+x")  # roots are F_4 inside F_16
    assert len(roots_ff(f, random.Random(0))) == 4


# -- properties -------------------------------------------------------------

DOMAINS = [F2, GF(3), GF(2, 3), F2t]


@pytest.mark.parametrize("K", DOMAINS, ids=str)
@given(st.integers(0, 2**32))
def test_divrem_contract(K, seed):
    rng = random.Random(seed)
    f, g = rand_poly(K, rng, 7), rand_poly(K, rng, 4)
    if g.is_zero():
        with pytest.raises(ZeroDivisionError):
            f.divrem(g)
        return
    q, r = f.divrem(g)
    assert q * g + r == f
    assert r.degree < g.degree


@pytest.mark.parametrize("K", [F2, GF(3), F2t], ids=str)
@given(st.integers(0, 2**32))
def test_compose_is_associative(K, seed):
    rng = random.Random(seed)
    f, g, h = (rand_poly(K, rng, 3) for _ in range(3))
    assert f.compose(g).compose(h) == f.compose(g.compose(h))
    if K.characteristic != 0:
        a = K.random_element(rng)
        assert f.compose(g)(a) == f(g(a))


@pytest.mark.parametrize("K", [F2, F2t], ids=str)
@given(st.integers(0, 2**32))
def test_gcd_scales_by_common_factor(K, seed):
    rng = random.Random(seed)
    f, g = rand_poly(K, rng, 4), rand_poly(K, rng, 4)
    h = rand_poly(K, rng, 3)
    if h.is_zero():
        return
    lhs = gcd_monic(f * h, g * h)
    rhs = h.monic() * gcd_monic(f, g) if not (f.is_zero() and g.is_zero()) else Poly(K, [])
    assert lhs == rhs


@pytest.mark.parametrize("K", [F2, GF(3), F2t], ids=str)
@given(st.integers(0, 2**32))
def test_gcd_divides_both(K, seed):
    rng = random.Random(seed)
    f, g = rand_poly(K, rng, 6), rand_poly(K, rng, 5)
    d = gcd_monic(f, g)
    if d.is_zero():
        assert f.is_zero() and g.is_zero()
        return
    assert d.lc == K.one
    assert (f % d).is_zero() and (g % d).is_zero()


@pytest.mark.parametrize("K", [F2, GF(5)], ids=str)
@given(st.integers(0, 2**32))
def test_resultant_matches_sylvester_over_fields(K, seed):
    rng = random.Random(seed)
    f, g = rand_poly(K, rng, 6), rand_poly(K, rng, 6)
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == bareiss_det(K, sylvester_matrix(f, g))


@given(st.integers(0, 2**32))
def test_resultant_matches_sylvester_over_f2t_ring(seed):
    rng = random.Random(seed)
    f, g = rand_ring_poly(R2, rng, 6), rand_ring_poly(R2, rng, 6)
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == bareiss_det(R2, sylvester_matrix(f, g))


@pytest.mark.parametrize("K", [GF(5), GF(2, 3)], ids=str)
@given(st.integers(0, 2**32))
def test_resultant_matches_root_product(K, seed):
    # f = c prod (x - a_i) gives Res(f, g) = c^deg(g) prod g(a_i)
    rng = random.Random(seed)
    roots = [K.random_element(rng) for _ in range(rng.randint(1, 5))]
    c = K.random_element(rng, nonzero=True)
    f = Poly(K, [c])
    for a in roots:
        f = f * Poly(K, [K.neg(a), K.one])
    g = rand_poly(K, rng, 5)
    if g.degree < 1:
        return
    want = K.pow(c, g.degree)
    for a in roots:
        want = K.mul(want, g(a))
    assert resultant(f, g) == want


def test_discriminant_vanishes_iff_inseparable_over_f2():
    for d in range(1, 5):
        for low in itertools.product([0, 1], repeat=d):
            f = Poly(F2, list(low) + [1])
            assert (discriminant(f) == 0) == (not is_separable(f)), str(f)


@given(st.integers(0, 2**32))
def test_exact_and_specialised_separability_agree(seed):
    rng = random.Random(seed)
    f = rand_ring_poly(R2, rng, 5, tdeg=3)
    if f.degree < 1:
        return
    g = Poly(F2t, [F2t.from_poly(c) for c in f.coeffs])
    assert is_separable(g) == is_separable(g, exact=True)
