import pytest
from hypothesis import given, strategies as st

from thickcech.fields import GF, QQ
from thickcech.polynomials import (
    DEGREVLEX, LEX, Inhomogeneous, InhomogeneousError, Monomial, Polynomial, format_polynomial,
    md_add, minors, monomial_order_cmp, monomials_of_multidegree, multidegree_of,
    parse_polynomial, poly_add, poly_mul,
)
from thickcech.scenario import phi

D1, D2, D3 = minors(QQ)


def P(text, field=QQ):
    return parse_polynomial(text, field)


def test_addition_examples():
    assert poly_add(D1, P("wy")) == P("vz")
    assert D3 + (-D3) == 0
    assert D1 + Polynomial.zero() == D1


def test_multiplication_examples():
    assert poly_mul(D3, Polynomial.constant(1)) == D3
    assert P("u") * P("v") == Polynomial.monomial("uv")
    x, y = P("x"), P("y")
    assert (x - y) * phi(2, x, y) == P("x^2 - y^2")


def test_multidegrees():
    assert multidegree_of(D3) == (1, 1, 0, 1)
    assert multidegree_of(D1) == (0, 1, 1, 1)
    assert multidegree_of(D2) == (1, 0, 1, 1)
    rep = multidegree_of(P("u + x"))
    assert isinstance(rep, Inhomogeneous)
    with pytest.raises(InhomogeneousError):
        P("u + x").multidegree


def test_orders():
    u, v = Monomial.parse("u"), Monomial.parse("v")
    assert monomial_order_cmp(u, v, LEX) == 1
    assert monomial_order_cmp(Monomial.parse("u^2"), Monomial.parse("uv"), DEGREVLEX) == 1
    assert monomial_order_cmp(u, u, DEGREVLEX) == 0
    # same degree: the smaller power of the last variable wins
    assert monomial_order_cmp(Monomial.parse("vy"), Monomial.parse("uz"), DEGREVLEX) == 1


def test_minor_leading_terms():
    assert [Monomial(D.leading_exponent()) for D in (D1, D2, D3)] == [
        Monomial.parse("wy"), Monomial.parse("wx"), Monomial.parse("vx")]


def test_minors_in_char_two():
    assert minors(GF(2))[0] == P("vz + wy", GF(2))


def test_text_round_trip_examples():
    for text in ["3uv^2z - 1/2wy", "vz - wy", "-u^3 + 2", "0"]:
        f = P(text)
        assert P(str(f)) == f
        assert str(P(str(f))) == str(f)
    assert str(P("-1/2wy + 3uv^2z")) == "3uv^2z - 1/2wy"


def test_monomials_of_multidegree_complete():
    md = (2, 1, 1, 2)
    found = set(monomials_of_multidegree(md))
    brute = {e for e in _all_exponents(4) if Monomial(e).multidegree == md}
    assert found == brute
    assert monomials_of_multidegree((-1, 0, 0, 0)) == []


def _all_exponents(deg):
    from itertools import combinations_with_replacement
    out = []
    for combo in combinations_with_replacement(range(6), deg):
        e = [0] * 6
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


exps = st.tuples(*[st.integers(0, 3)] * 6)
coeffs = st.integers(-5, 5)
polys = st.dictionaries(exps, coeffs, max_size=5).map(lambda d: Polynomial(d, QQ))


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == 0


@given(polys)
def test_print_parse_round_trip(f):
    assert P(format_polynomial(f)) == f


@given(exps, exps, exps)
def test_degrevlex_is_a_monomial_order(a, b, c):
    one = (0,) * 6
    assert monomial_order_cmp(a, one) >= 0
    if monomial_order_cmp(a, b) < 0:
        ac = tuple(x + y for x, y in zip(a, c))
        bc = tuple(x + y for x, y in zip(b, c))
        assert monomial_order_cmp(ac, bc) < 0


@given(exps, exps, coeffs.filter(bool), coeffs.filter(bool))
def test_multidegree_is_additive(a, b, c1, c2):
    f = Polynomial({a: c1}, QQ) * D1
    g = Polynomial({b: c2}, QQ) * D3
    assert multidegree_of(f * g) == md_add(multidegree_of(f), multidegree_of(g))


def test_total_degree_matches_multidegree():
    for e in _all_exponents(3):
        md = Monomial(e).multidegree
        assert md[0] + md[1] + md[2] == sum(e) == 3
