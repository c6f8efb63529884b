"""Sparse polynomials in the six variables u, v, w, x, y, z.

The variables are the entries of the generic 2x3 matrix::

    [u v w]
    [x y z]

Besides the total degree, every monomial carries a Z^4 multidegree with
deg(u) = (1,0,0,0), deg(v) = (0,1,0,0), deg(w) = (0,0,1,0) and
deg(x) = (1,0,0,1), deg(y) = (0,1,0,1), deg(z) = (0,0,1,1).  The 2x2 minors
are homogeneous for this grading.

Exponent vectors are plain tuples; :class:`Monomial` is a tuple subclass with
monomial (not sequence) multiplication.
"""

import re
from functools import partial
from dataclasses import dataclass

from .fields import QQ, FieldMismatch

VARIABLES = ("u", "v", "w", "x", "y", "z")
NVARS = 6
VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}

VARIABLE_MULTIDEGREES = (
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (1, 0, 0, 1),
    (0, 1, 0, 1),
    (0, 0, 1, 1),
)

ZERO_DEGREE = (0, 0, 0, 0)


def multidegree_of_exponents(exp):
    a, b, c, d, e, f = exp
    return (a + d, b + e, c + f, d + e + f)


def md_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def md_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def md_scale(a, k):
    return tuple(k * x for x in a)


def monomials_of_multidegree(md):
    """All exponent vectors of the given multidegree (a finite set)."""
    a, b, c, d = md
    if min(a, b, c) < 0 or d < 0 or d > a + b + c:
        return []
    out = []
    for ex in range(min(a, d) + 1):
        for ey in range(min(b, d - ex) + 1):
            ez = d - ex - ey
            if ez <= c:
                out.append((a - ex, b - ey, c - ez, ex, ey, ez))
    return out


class Monomial(tuple):
    """Exponent vector over (u, v, w, x, y, z)."""

    def __new__(cls, exponents=(0,) * NVARS):
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != NVARS or min(exponents) < 0:
            raise ValueError(f"bad exponent vector {exponents}")
        return super().__new__(cls, exponents)

    @classmethod
    def parse(cls, text):
        exps = [0] * NVARS
        for name, power in re.findall(r"([uvwxyz])(?:\^(\d+))?", text.replace(" ", "")):
            exps[VAR_INDEX[name]] += int(power) if power else 1
        return cls(exps)

    @classmethod
    def of_variables(cls, names):
        return cls.parse("".join(names))

    @property
    def degree(self):
        return sum(self)

    @property
    def multidegree(self):
        return multidegree_of_exponents(self)

    def __mul__(self, other):
        return Monomial(a + b for a, b in zip(self, other))

    def __truediv__(self, other):
        return Monomial(a - b for a, b in zip(self, other))

    def __pow__(self, k):
        return Monomial(k * a for a in self)

    def divides(self, other):
        return all(a <= b for a, b in zip(self, other))

    def lcm(self, other):
        return Monomial(max(a, b) for a, b in zip(self, other))

    def support(self):
        return tuple(i for i, e in enumerate(self) if e)

    def __str__(self):
        return format_monomial(self) or "1"

    def __repr__(self):
        return f"Monomial({str(self)!r})"


def format_monomial(exp, names=VARIABLES):
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "".join(parts)


# --- monomial orders -------------------------------------------------------

class MonomialOrder:
    """A term order given by a rank function: smaller rank = larger monomial.

    Ranks make heaps and sorts pop the leading term first.
    """

    def __init__(self, name, rank):
        self.name = name
        self.rank = rank

    def __repr__(self):
        return f"<order {self.name}>"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __reduce__(self):
        return (order_named, (self.name,))

    def compare(self, a, b):
        """1 if a > b, -1 if a < b, 0 if equal."""
        ra, rb = self.rank(a), self.rank(b)
        return (ra < rb) - (ra > rb)

    def leading(self, exps):
        return min(exps, key=self.rank)

    def sort(self, exps):
        return sorted(exps, key=self.rank)


def _degrevlex_rank(e):
    return (-sum(e),) + e[::-1]


def _lex_rank(e):
    return tuple(-a for a in e)


def _elimination_rank(e):
    # first coordinate is the auxiliary variable, eliminated first;
    # ties broken by degrevlex on the rest
    rest = e[1:]
    return (-e[0], -sum(rest)) + rest[::-1]


DEGREVLEX = MonomialOrder("degrevlex", _degrevlex_rank)
LEX = MonomialOrder("lex", _lex_rank)
ELIMINATE_FIRST = MonomialOrder("elim1", _elimination_rank)

_ORDERS = {o.name: o for o in (DEGREVLEX, LEX, ELIMINATE_FIRST)}


def _last_rank(i, e):
    return (-sum(e), e[i]) + tuple(e[j] for j in range(len(e) - 1, -1, -1) if j != i)


def degrevlex_last(i):
    """degrevlex with variable ``i`` moved to the bottom of the variable order."""
    name = f"degrevlex-{VARIABLES[i]}-last"
    if name not in _ORDERS:
        _ORDERS[name] = MonomialOrder(name, partial(_last_rank, i))
    return _ORDERS[name]


def order_named(name):
    return _ORDERS[name]


def monomial_order_cmp(a, b, order=DEGREVLEX):
    return order.compare(tuple(a), tuple(b))


# --- polynomials -----------------------------------------------------------

class InhomogeneousError(ValueError):

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


@dataclass(frozen=True)
class Inhomogeneous:
    """Two terms of a polynomial with different multidegrees."""

    first: Monomial
    second: Monomial

    def __str__(self):
        return (f"inhomogeneous: {self.first} has degree {self.first.multidegree}, "
                f"{self.second} has degree {self.second.multidegree}")


class Polynomial:
    """Immutable sparse polynomial: map from exponent tuples to nonzero raw coefficients."""

    __slots__ = ("terms", "field", "_hash")

    def __init__(self, terms=None, field=QQ, _trusted=False):
        self.field = field
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        clean = {}
        for exp, c in (terms or {}).items():
            c = field.coerce(c)
            if c != 0:
                exp = tuple(exp)
                if len(exp) != NVARS:
                    raise ValueError(f"expected {NVARS} exponents, got {exp}")
                clean[exp] = field.add(clean[exp], c) if exp in clean else c
        self.terms = {e: c for e, c in clean.items() if c != 0}

    # constructors
    @classmethod
    def zero(cls, field=QQ):
        return cls({}, field, _trusted=True)

    @classmethod
    def constant(cls, c, field=QQ):
        return cls({(0,) * NVARS: c}, field)

    @classmethod
    def monomial(cls, exp, coeff=1, field=QQ):
        if isinstance(exp, str):
            exp = Monomial.parse(exp)
        return cls({tuple(exp): coeff}, field)

    @classmethod
    def var(cls, name, field=QQ):
        exp = [0] * NVARS
        exp[VAR_INDEX[name]] = 1
        return cls({tuple(exp): 1}, field)

    @classmethod
    def parse(cls, text, field=QQ):
        return parse_polynomial(text, field)

    # basic protocol
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {self.field!r})"

    def __str__(self):
        return format_polynomial(self)

    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        return Polynomial.constant(other, self.field)

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                s = F.add(terms[e], c)
                if s == 0:
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c
        return Polynomial(terms, F, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial({e: F.neg(c) for e, c in self.terms.items()}, F, _trusted=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(self.field.coerce(other))
        other = self._lift(other)
        F = self.field
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = F.mul(c1, c2)
                if e in terms:
                    terms[e] = F.add(terms[e], c)
                else:
                    terms[e] = c
        return Polynomial({e: c for e, c in terms.items() if c != 0}, F, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        F = self.field
        if c == 0:
            return Polynomial.zero(F)
        return Polynomial({e: F.mul(v, c) for e, v in self.terms.items()}, F, _trusted=True)

    def mul_monomial(self, exp, c=None):
        F = self.field
        if c is None:
            return Polynomial({tuple(a + b for a, b in zip(e, exp)): v
                               for e, v in self.terms.items()}, F, _trusted=True)
        return Polynomial({tuple(a + b for a, b in zip(e, exp)): F.mul(v, c)
                           for e, v in self.terms.items()}, F, _trusted=True)

    def divide_monomial(self, exp):
        """Exact division by a monomial; raises if some term is not divisible."""
        out = {}
        for e, c in self.terms.items():
            q = tuple(a - b for a, b in zip(e, exp))
            if min(q) < 0:
                raise ValueError(f"{format_monomial(e)} not divisible by {format_monomial(exp)}")
            out[q] = c
        return Polynomial(out, self.field, _trusted=True)

    def divisible_by_monomial(self, exp):
        return all(all(a >= b for a, b in zip(e, exp)) for e in self.terms)

    def monomial_content(self):
        """Largest monomial dividing every term."""
        if not self.terms:
            return (0,) * NVARS
        return tuple(min(col) for col in zip(*self.terms))

    def to_field(self, field):
        return Polynomial({e: field.coerce(c) for e, c in self.terms.items()}, field)

    # inspection
    def monomials(self, order=None):
        from_ = self.terms if order is None else order.sort(self.terms)
        return [Monomial(e) for e in from_]

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), self.field.zero)

    def sorted_terms(self, order=DEGREVLEX):
        return [(e, self.terms[e]) for e in order.sort(self.terms)]

    def leading_exponent(self, order=DEGREVLEX):
        return order.leading(self.terms)

    def leading_coefficient(self, order=DEGREVLEX):
        return self.terms[self.leading_exponent(order)]

    @property
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_homogeneous(self):
        return not isinstance(multidegree_of(self), Inhomogeneous)

    @property
    def multidegree(self):
        md = multidegree_of(self)
        if isinstance(md, Inhomogeneous):
            raise InhomogeneousError(md)
        return md

    def evaluate(self, point):
        F = self.field
        total = F.zero
        for e, c in self.terms.items():
            term = c
            for xi, k in zip(point, e):
                if k:
                    term = F.mul(term, F.pow(F.coerce(xi), k))
            total = F.add(total, term)
        return total


def multidegree_of(f):
    """Common multidegree of all terms of ``f``, or an :class:`Inhomogeneous` report."""
    if not f.terms:
        raise ValueError("the zero polynomial has no multidegree")
    exps = DEGREVLEX.sort(f.terms)
    first = exps[0]
    md = multidegree_of_exponents(first)
    for e in exps[1:]:
        if multidegree_of_exponents(e) != md:
            return Inhomogeneous(Monomial(first), Monomial(e))
    return md


def poly_add(f, g):
    return f + g


def poly_mul(f, g):
    return f * g


# --- text syntax -----------------------------------------------------------

_TERM_RE = re.compile(r"(\d+(?:/\d+)?)?((?:[uvwxyz](?:\^\d+)?)*)$")


def parse_polynomial(text, field=QQ):
    """Parse e.g. ``3uv^2z - 1/2wy``; ``*`` between factors is allowed."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    chunks = re.findall(r"[+-][^+-]*", s)
    if "".join(chunks) != s:
        raise ValueError(f"cannot parse {text!r}")
    result = {}
    for chunk in chunks:
        sign, body = chunk[0], chunk[1:]
        m = _TERM_RE.match(body)
        if not body or not m:
            raise ValueError(f"bad term {chunk!r} in {text!r}")
        coeff = field.parse(m.group(1)) if m.group(1) else field.one
        if sign == "-":
            coeff = field.neg(coeff)
        exp = tuple(Monomial.parse(m.group(2)))
        result[exp] = field.add(result.get(exp, field.zero), coeff)
    return Polynomial(result, field)


def format_polynomial(f, order=DEGREVLEX):
    if not f.terms:
        return "0"
    F = f.field
    out = []
    for exp, c in f.sorted_terms(order):
        neg = F.is_negative(c)
        mag = F.neg(c) if neg else c
        mono = format_monomial(exp)
        coeff = F.format(mag)
        if mono and coeff == "1":
            body = mono
        else:
            body = coeff + mono
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# --- the determinantal data ------------------------------------------------

def minors(field=QQ):
    """The 2x2 minors (vz - wy, wx - uz, uy - vx) of the generic 2x3 matrix."""
    return (
        parse_polynomial("vz - wy", field),
        parse_polynomial("wx - uz", field),
        parse_polynomial("uy - vx", field),
    )
