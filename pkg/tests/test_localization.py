import pytest
from hypothesis import given, strategies as st

from thickcech.localization import (
    CutoffTooSmall, NotAUnit, format_localized, graded_piece, loc_is_zero, parse_localized,
    restrict, stabilization_report, thickening,
)


@pytest.fixture(scope="module")
def R2():
    return thickening(2, 0)


def test_minor_power_vanishes(R2):
    site = R2.site("vz")
    D1 = R2.minors[0]
    assert loc_is_zero(site.fraction(D1 ** 2, "v2z2"))
    assert not loc_is_zero(site.fraction(D1, "vz"))
    assert loc_is_zero(site.zero())


def test_sum_of_opposites(R2):
    site = R2.site("uy")
    D3 = R2.minors[2]
    assert (site.fraction(D3, "uy") + site.fraction(-D3, "uy")).is_zero()


def test_one_minus_alpha(R2):
    site = R2.site("uy")
    alpha = site.fraction("vx", "uy")
    assert site.one() - alpha == site.fraction(R2.minors[2], "uy")


def test_restriction_rewrites_over_larger_product(R2):
    e = R2.site("wy").fraction(R2.minors[0], "wy")
    r = restrict(e, "wxy")
    assert r == R2.site("wxy").fraction(R2.minors[0] * R2.poly("x"), "wxy")
    assert restrict(e, "wy") == e
    assert restrict(R2.site("wy").zero(), "uwxy").is_zero()


def test_restriction_needs_containment(R2):
    with pytest.raises(ValueError):
        R2.site("wy").one().restrict("uvw")


def test_unit_inverse_of_outside_variable(R2):
    # at {v,z}, Δ₁ is nilpotent so w·y = v·z − Δ₁ is a unit
    site = R2.site("vz")
    inv = site.fraction("1", "wy")
    assert inv * site.element("wy") == site.one()


def test_non_unit_rejected(R2):
    with pytest.raises(NotAUnit):
        R2.site("vz").fraction("1", "u")


def test_text_roundtrip(R2):
    e = R2.site("uxy").fraction("u^2y - uvx", "uxy")
    again = parse_localized(format_localized(e), R2)
    assert again == e
    assert again.site is e.site


def test_scalar_piece_at_uv(R2):
    assert graded_piece(R2.site("uv"), (0, 0, 0, 0), 1).rank == 1
    assert graded_piece(R2.site("vx"), (0, 0, 0, 0), 0).rank == 1


def test_no_elements_of_positive_last_degree_at_xz(R2):
    assert graded_piece(R2.site("xz"), (0, 0, 0, 1), 2).rank == 0


def test_stabilization_examples(R2):
    rep = stabilization_report(R2.site("uv"), (0, 0, 0, 0), 3)
    assert rep.stable and rep.ranks == (1, 1, 1)
    assert stabilization_report(thickening(1, 0).site("xyz"), (0, 0, 0, 0), 3).stable
    empty = stabilization_report(R2.site("vz"), (-1, 0, 0, 0), 3)
    assert empty.stable and empty.ranks == (0, 0, 0)


def test_coordinates_need_enough_level(R2):
    site = R2.site("uy")
    e = site.fraction("vx", "uy") ** 3
    with pytest.raises(CutoffTooSmall):
        site.coordinates(e, (0, 0, 0, 0), 0)
    vec = site.coordinates(e, (0, 0, 0, 0), 4)
    assert site.element_from_coordinates(vec, (0, 0, 0, 0), 4) == e


# property checks ----------------------------------------------------------

SITES = ["uv", "xz", "uxy", "vwz", "uvwx", "uvwxyz"]
MONOS = ["u", "v", "w", "x", "y", "z", "vz", "wy", "uy", "vx"]


def _poly(terms):
    from thickcech.polynomials import parse_polynomial
    f = parse_polynomial("0")
    for m, c in terms:
        f = f + parse_polynomial(m) * c
    return f


small_poly = st.lists(st.tuples(st.sampled_from(MONOS), st.integers(-3, 3)),
                      min_size=1, max_size=4).map(_poly)


@given(st.sampled_from(SITES), small_poly, small_poly, st.integers(0, 2), st.integers(0, 2))
def test_representation_independent(S, f, g, a, b):
    # f/P^a == (f·P^b)/P^(a+b) for P the product over the site
    R2 = thickening(2, 0)
    site = R2.site(S)
    prod = "".join(S)
    lhs = site.element(f, a) + site.element(g, 0)
    rhs = site.element(f * R2.poly(prod) ** b, a + b) + site.element(g, 0)
    assert lhs == rhs


@given(small_poly, small_poly, st.integers(0, 2))
def test_restriction_is_a_ring_map(f, g, k):
    R2 = thickening(2, 0)
    src = R2.site("xy")
    a, b = src.element(f, k), src.element(g, 1)
    for target in ("uxy", "vwxyz"):
        assert restrict(a * b, target) == restrict(a, target) * restrict(b, target)
        assert restrict(a + b, target) == restrict(a, target) + restrict(b, target)


@given(small_poly, small_poly, small_poly)
def test_ring_axioms_hold(f, g, h):
    site = thickening(3, 2).site("uvz")
    a, b, c = (site.element(p.to_field(site.field), 1) for p in (f, g, h))
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a * site.one() == a
