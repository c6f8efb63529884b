from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thickcech.fields import (
    GF, QQ, CharacteristicObstruction, FieldElement, FieldMismatch, field_add,
    field_for, field_inv, field_mul, is_prime, parse_scalar,
)

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
primes = st.sampled_from([2, 3, 5, 7, 11])


def test_rational_examples():
    assert field_add(QQ.element("1/2"), QQ.element("1/3")) == QQ.element("5/6")
    assert field_mul(QQ.element("2/3"), QQ.element("3/2")) == 1
    assert field_inv(QQ.element("1/3")) == 3


def test_prime_field_examples():
    F5, F7 = GF(5), GF(7)
    assert field_add(F5.element(3), F5.element(4)) == F5.element(2)
    assert field_mul(F7.element(2), F7.element(4)) == F7.element(1)
    assert field_inv(F5.element(2)) == F5.element(3)
    with pytest.raises(CharacteristicObstruction):
        field_inv(GF(2).element(4))


def test_identities():
    a = QQ.element("7/9")
    assert a + 0 == a and a * 1 == a
    b = GF(3).element(2)
    assert b + 0 == b and b * 1 == b


def test_mixing_fields_is_refused():
    with pytest.raises(FieldMismatch):
        QQ.element(1) + GF(2).element(1)
    with pytest.raises(FieldMismatch):
        GF(3).element(1) * GF(5).element(1)


def test_rationals_normalized():
    a = QQ.element(Fraction(6, -4))
    assert a.value.denominator == 2 and a.value.numerator == -3
    assert str(a) == "-3/2"


def test_prime_checks():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(ValueError):
        field_for(4)


def test_parse_scalar():
    assert parse_scalar("3/4", QQ) == QQ.element(Fraction(3, 4))
    assert parse_scalar("1/2", GF(5)) == GF(5).element(3)
    assert parse_scalar("12", GF(5)) == GF(5).element(2)


@given(fractions, fractions, fractions)
def test_rational_axioms(a, b, c):
    x, y, z = (QQ.element(v) for v in (a, b, c))
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if a != 0:
        assert x * x.inverse() == 1


@given(primes, st.integers(), st.integers(), st.integers())
def test_prime_field_axioms(p, a, b, c):
    F = GF(p)
    x, y, z = F.element(a), F.element(b), F.element(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert 0 <= x.value < p
    if a % p:
        assert x * x.inverse() == 1


@given(primes, st.integers(min_value=1, max_value=30))
def test_small_integers_invert_unless_divisible(p, m):
    F = GF(p)
    if m % p:
        assert F.mul(m % p, F.inv_int(m)) == 1
    else:
        with pytest.raises(CharacteristicObstruction):
            F.inv_int(m)
    assert QQ.inv_int(m) * m == 1


def test_field_element_hashable():
    assert len({GF(3).element(4), GF(3).element(1)}) == 1
    assert FieldElement(2, QQ) != FieldElement(2, GF(3))
