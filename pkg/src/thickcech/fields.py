"""Exact coefficient fields: the rationals and prime fields F_p.

Polynomial code works with *raw* coefficients (``Fraction`` for the
rationals, ``int`` residues for F_p) and asks a :class:`Field` object to do
the arithmetic.  :class:`FieldElement` is the tagged scalar used at the public
surface, where mixing fields must be caught.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class FieldMismatch(ValueError):
    """Operands live in different fields."""


class CharacteristicObstruction(ZeroDivisionError):
    """An integer divisible by p was inverted in characteristic p."""

    def __init__(self, value, p):
        super().__init__(f"{value} is not invertible in characteristic {p}")
        self.value = value
        self.p = p


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Base class; subclasses define the raw arithmetic."""

    characteristic = 0

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash(("field", self.characteristic))

    def __reduce__(self):
        return (field_for, (self.characteristic,))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def element(self, value):
        return FieldElement(self.coerce(value), self)

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        return a ** n if self.characteristic == 0 else pow(a, n, self.characteristic)


class RationalField(Field):
    characteristic = 0
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def inv_int(self, m):
        return self.inv(Fraction(m))

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        return Fraction(text.strip())

    def format(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def is_negative(self, a):
        return a < 0


class PrimeField(Field):

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self.mul(value.numerator % self.characteristic,
                            self.inv_int(value.denominator))
        return int(value) % self.characteristic

    def add(self, a, b):
        return (a + b) % self.characteristic

    def neg(self, a):
        return -a % self.characteristic

    def mul(self, a, b):
        return a * b % self.characteristic

    def inv(self, a):
        a %= self.characteristic
        if a == 0:
            raise CharacteristicObstruction(a, self.characteristic)
        return pow(a, -1, self.characteristic)

    def inv_int(self, m):
        if m % self.characteristic == 0:
            raise CharacteristicObstruction(m, self.characteristic)
        return pow(m % self.characteristic, -1, self.characteristic)

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.mul(int(num) % self.characteristic, self.inv_int(int(den)))
        return int(text) % self.characteristic

    def format(self, a):
        return str(a)

    def is_negative(self, a):
        return False


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def field_for(characteristic):
    """Field descriptor for characteristic 0 (rationals) or a prime p."""
    if characteristic == 0:
        return QQ
    return GF(characteristic)


@dataclass(frozen=True)
class FieldElement:
    """A scalar tagged with its field; arithmetic refuses to mix fields."""

    value: object
    field: Field

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.coerce(self.value))

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return FieldElement(other, self.field)
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field.add(self.value, other.value), self.field)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.field.mul(self.value, other.value), self.field)

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.coerce(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field))

    def __str__(self):
        return self.field.format(self.value)


def field_add(a, b):
    return a + b


def field_mul(a, b):
    return a * b


def field_inv(a):
    return a.inverse()


def parse_scalar(text, field):
    """Parse ``a/b`` (rationals) or a decimal residue (prime fields)."""
    return FieldElement(field.parse(text), field)
