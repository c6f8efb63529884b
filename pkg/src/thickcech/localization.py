"""Localizations (R/I^t)_S of the thickenings at products of variables.

An element of (R/I^t)_S is stored as ``numerator / (prod S)^k``.  Equality is
decided in R/(I^t : (prod S)^inf), so every site carries the saturated
Gröbner basis; numerators are kept in normal form with respect to it.

Multigraded pieces are computed at a finite denominator level N: the level-N
piece of multidegree d is (R/J_S) in multidegree d + N*deg(prod S), with the
standard monomials of the saturated basis as its basis.  Multiplication by
prod S embeds level N-1 into level N; the union over N is the graded piece of
the localization.
"""

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .fields import QQ, FieldMismatch
from .ideals import IdealPresentation, buchberger, ideal_power, saturate, saturation_chain
from .linalg import ExactMatrix
from .polynomials import (
    DEGREVLEX, NVARS, VARIABLES, VAR_INDEX, Polynomial, md_add, md_scale, md_sub,
    minors, monomials_of_multidegree, multidegree_of_exponents, parse_polynomial,
)


class CutoffTooSmall(ValueError):
    """An element needs a larger denominator level than the one requested."""


class NotAUnit(ValueError):
    """A denominator variable is not invertible at this site."""


def subset_key(S):
    """Normalize 'uxy', ('u','x','y') or (0, 3, 4) to a sorted index tuple."""
    if isinstance(S, str):
        idx = [VAR_INDEX[c] for c in S]
    else:
        idx = [VAR_INDEX[s] if isinstance(s, str) else int(s) for s in S]
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated variable in {S!r}")
    return tuple(sorted(idx))


def subset_name(S):
    return "".join(VARIABLES[i] for i in S)


def _indicator(S, power=1):
    exp = [0] * NVARS
    for i in S:
        exp[i] = power
    return tuple(exp)


class Thickening:
    """The ring R/I^t over a field, with cached Gröbner data and sites."""

    def __init__(self, t, field=QQ, order=DEGREVLEX):
        if t < 1:
            raise ValueError("thickening exponent must be >= 1")
        self.t = t
        self.field = field
        self.order = order
        self.minors = minors(field)
        self.ideal = IdealPresentation(self.minors, field)
        self.power = ideal_power(self.ideal, t)
        self._gb = None
        self._sites = {}

    def __repr__(self):
        return f"Thickening(t={self.t}, {self.field})"

    @property
    def characteristic(self):
        return self.field.characteristic

    @property
    def gb(self):
        if self._gb is None:
            self._gb = buchberger(self.power, self.order)
        return self._gb

    def site(self, S):
        key = subset_key(S)
        site = self._sites.get(key)
        if site is None:
            site = self._sites[key] = LocalizationSite(self, key)
        return site

    def poly(self, text):
        return parse_polynomial(text, self.field)


@lru_cache(maxsize=None)
def thickening(t, characteristic=0):
    """Shared :class:`Thickening` instance (caches are reused across callers)."""
    from .fields import field_for
    return Thickening(t, field_for(characteristic))


@dataclass
class GradedPiece:
    site: object
    multidegree: tuple
    level: int
    basis: list
    transition: object = None  # ExactMatrix from level-1 basis, or None at level 0
    index: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.index = {e: i for i, e in enumerate(self.basis)}

    @property
    def rank(self):
        return len(self.basis)


@dataclass
class StabilizationReport:
    site: str
    multidegree: tuple
    level: int
    ranks: tuple
    isomorphisms: tuple

    @property
    def stable(self):
        return all(self.isomorphisms)

    def as_dict(self):
        return {
            "site": self.site,
            "multidegree": list(self.multidegree),
            "level": self.level,
            "ranks": list(self.ranks),
            "stable": self.stable,
        }


class LocalizationSite:
    """(R/I^t)_S for one subset S of the variables."""

    def __init__(self, ring, S):
        self.ring = ring
        self.S = S
        self.name = subset_name(S)
        self.product = _indicator(S)
        self.product_degree = multidegree_of_exponents(self.product)
        self._saturated = None
        self._chain = None
        self._pieces = {}
        self._inverses = None

    def __repr__(self):
        return f"<site {self.name or '1'} of {self.ring!r}>"

    @property
    def t(self):
        return self.ring.t

    @property
    def field(self):
        return self.ring.field

    @property
    def saturated(self):
        """Gröbner basis of (I^t : (prod S)^inf)."""
        if self._saturated is None:
            self._saturated = saturate(self.ring.gb, self.product)
        return self._saturated

    @property
    def saturation_steps(self):
        """Number of proper steps in J, (J : P), (J : P^2), ..."""
        if self._chain is None:
            self._chain = saturation_chain(self.ring.gb, self.product)
        return len(self._chain) - 1

    def normal_form(self, f):
        return self.saturated.reduce(f)

    # element construction
    def element(self, numerator, k=0):
        if isinstance(numerator, str):
            numerator = parse_polynomial(numerator, self.field)
        elif not isinstance(numerator, Polynomial):
            numerator = Polynomial.constant(numerator, self.field)
        return LocalizedElement(self, numerator, k)

    def zero(self):
        return LocalizedElement(self, Polynomial.zero(self.field), 0, _canonical=True)

    def one(self):
        return self.element(1)

    def contains_site(self, other):
        return set(other.S) <= set(self.S)

    def _unit_inverses(self):
        """Inverses of every variable that is a unit in (R/I^t)_S.

        Besides S itself, when some minor reads A - B with A a unit monomial,
        B is a unit too: 1/B = (1/A) * sum_{j<t} (Delta/A)^j because Delta^t
        lies in I^t. Every variable dividing B is then invertible.
        """
        if self._inverses is not None:
            return self._inverses
        inv = {i: LocalizedElement(self, Polynomial.monomial(
            tuple(1 if (j in self.S and j != i) else 0 for j in range(NVARS)), 1, self.field), 1)
            for i in self.S}
        terms = []
        for delta in self.ring.minors:
            (a, ca), (b, cb) = sorted(delta.terms.items())
            # orient as plus - minus
            if ca == self.field.one:
                terms.append((delta, a, b))
            else:
                terms.append((delta, b, a))
        changed = True
        while changed:
            changed = False
            for delta, plus, minus in terms:
                for known, other, sign in ((plus, minus, 1), (minus, plus, -1)):
                    known_vars = [i for i, e in enumerate(known) if e]
                    other_vars = [i for i, e in enumerate(other) if e]
                    new = [i for i in other_vars if i not in inv]
                    if not new or any(i not in inv for i in known_vars):
                        continue
                    inv_known = self.one()
                    for i in known_vars:
                        inv_known = inv_known * inv[i] ** known[i]
                    # other = known - sign*delta, 1/other = (1/known) sum (sign*delta/known)^j
                    ratio = inv_known * self.element(delta.scale(self.field.coerce(sign)))
                    series = self.one()
                    power = self.one()
                    for _ in range(1, self.t):
                        power = power * ratio
                        series = series + power
                    inv_other = inv_known * series
                    # 1/x = (other/x) * (1/other) for every variable x dividing other
                    for x in new:
                        cofactor = tuple(e - (i == x) for i, e in enumerate(other))
                        inv[x] = inv_other * self.element(
                            Polynomial.monomial(cofactor, 1, self.field))
                    changed = True
        self._inverses = inv
        return inv

    def fraction(self, numerator, denominator):
        """numerator / denominator for a monomial denominator (text or exponents)."""
        if isinstance(numerator, str):
            numerator = parse_polynomial(numerator, self.field)
        if isinstance(denominator, str):
            from .polynomials import Monomial
            denominator = Monomial.parse(denominator)
        inv = None
        k = max((denominator[i] for i in self.S), default=0)
        inside = [k - denominator[i] if i in self.S else 0 for i in range(NVARS)]
        result = LocalizedElement(self, numerator.mul_monomial(tuple(inside)), k)
        for i, e in enumerate(denominator):
            if e and i not in self.S:
                if inv is None:
                    inv = self._unit_inverses()
                if i not in inv:
                    raise NotAUnit(f"{VARIABLES[i]} is not a unit at site {self.name}")
                result = result * inv[i] ** e
        return result

    def parse(self, text):
        return parse_localized(text, self.ring)

    # graded pieces
    def graded_piece(self, d, N):
        if N < 0:
            raise ValueError("level must be >= 0")
        key = (tuple(d), N)
        piece = self._pieces.get(key)
        if piece is not None:
            return piece
        target = md_add(d, md_scale(self.product_degree, N))
        sat = self.saturated
        basis = [e for e in sorted(monomials_of_multidegree(target), key=DEGREVLEX.rank)
                 if sat.is_standard(e)]
        piece = GradedPiece(self, tuple(d), N, basis)
        if N > 0:
            prev = self.graded_piece(d, N - 1)
            F = self.field
            cols = []
            for b in prev.basis:
                shifted = tuple(x + y for x, y in zip(b, self.product))
                cols.append(self._coordinates_of(sat.reduce(
                    Polynomial({shifted: F.one}, F, _trusted=True)), piece))
            piece.transition = ExactMatrix.from_columns(cols, len(basis), F)
        self._pieces[key] = piece
        return piece

    def _coordinates_of(self, reduced, piece):
        vec = [self.field.zero] * piece.rank
        for e, c in reduced.terms.items():
            vec[piece.index[e]] = c
        return vec

    def coordinates(self, elem, d, N):
        """Coordinate vector of ``elem`` in the level-N piece of multidegree d."""
        piece = self.graded_piece(d, N)
        if elem.is_zero():
            return [self.field.zero] * piece.rank
        if elem.k > N:
            raise CutoffTooSmall(f"{elem} needs level {elem.k} > {N} at site {self.name}")
        if elem.multidegree != tuple(d):
            raise ValueError(f"element of degree {elem.multidegree} is not in degree {d}")
        num = elem.numerator.mul_monomial(_indicator(self.S, N - elem.k))
        return self._coordinates_of(self.saturated.reduce(num), piece)

    def element_from_coordinates(self, vec, d, N):
        piece = self.graded_piece(d, N)
        terms = {e: c for e, c in zip(piece.basis, vec) if c != 0}
        return LocalizedElement(self, Polynomial(terms, self.field, _trusted=True), N)

    def stabilization_report(self, d, N):
        if N < 2:
            raise ValueError("stabilization needs level >= 2")
        pieces = [self.graded_piece(d, n) for n in (N - 2, N - 1, N)]
        ranks = tuple(p.rank for p in pieces)
        isos = []
        for lower, upper in zip(pieces, pieces[1:]):
            m = upper.transition
            full = m.rank() if (lower.rank and upper.rank) else 0
            isos.append(lower.rank == upper.rank == full)
        return StabilizationReport(self.name, tuple(d), N, ranks, tuple(isos))


class LocalizedElement:
    """numerator / (prod S)^k in (R/I^t)_S, numerator kept in normal form."""

    __slots__ = ("site", "numerator", "k")

    def __init__(self, site, numerator, k=0, _canonical=False):
        if k < 0:
            raise ValueError("denominator exponent must be >= 0")
        if numerator.field != site.field:
            raise FieldMismatch(f"{numerator.field} vs {site.field}")
        self.site = site
        if not _canonical:
            numerator = site.normal_form(numerator)
            if numerator.is_zero():
                k = 0
            else:
                while k > 0 and numerator.divisible_by_monomial(site.product):
                    numerator = numerator.divide_monomial(site.product)
                    k -= 1
        self.numerator = numerator
        self.k = k

    @property
    def field(self):
        return self.site.field

    def _peer(self, other):
        if isinstance(other, LocalizedElement):
            if other.site is not self.site:
                raise ValueError(f"site mismatch: {self.site.name} vs {other.site.name}")
            return other
        if isinstance(other, Polynomial):
            return LocalizedElement(self.site, other, 0)
        return LocalizedElement(self.site, Polynomial.constant(other, self.field), 0)

    def __add__(self, other):
        other = self._peer(other)
        k = max(self.k, other.k)
        P = self.site.product
        a = self.numerator.mul_monomial(tuple(p * (k - self.k) for p in P))
        b = other.numerator.mul_monomial(tuple(p * (k - other.k) for p in P))
        return LocalizedElement(self.site, a + b, k)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedElement(self.site, -self.numerator, self.k, _canonical=True)

    def __sub__(self, other):
        return self + (-self._peer(other))

    def __rsub__(self, other):
        return self._peer(other) - self

    def __mul__(self, other):
        if isinstance(other, LocalizedElement) or isinstance(other, Polynomial):
            other = self._peer(other)
            return LocalizedElement(self.site, self.numerator * other.numerator, self.k + other.k)
        c = self.field.coerce(other)
        return LocalizedElement(self.site, self.numerator.scale(c), self.k, _canonical=c != 0)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = self.site.one()
        for _ in range(n):
            result = result * self
        return result

    def is_zero(self):
        return self.numerator.is_zero()

    def __eq__(self, other):
        if isinstance(other, LocalizedElement) and other.site is not self.site:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("LocalizedElement is not hashable")

    @property
    def multidegree(self):
        md = self.numerator.multidegree
        return md_sub(md, md_scale(self.site.product_degree, self.k))

    def restrict(self, target):
        """The same fraction in the localization at a larger subset."""
        if not isinstance(target, LocalizationSite):
            target = self.site.ring.site(target)
        if target.ring is not self.site.ring:
            raise ValueError("restriction between different thickenings")
        if not set(self.site.S) <= set(target.S):
            raise ValueError(f"{self.site.name} is not contained in {target.name}")
        extra = tuple(self.k if (i in target.S and i not in self.site.S) else 0
                      for i in range(NVARS))
        return LocalizedElement(target, self.numerator.mul_monomial(extra), self.k)

    def __str__(self):
        return format_localized(self)

    def __repr__(self):
        return f"LocalizedElement({str(self)!r})"


def loc_is_zero(e):
    return e.is_zero()


def loc_add(e1, e2):
    return e1 + e2


def loc_mul(e1, e2):
    return e1 * e2


def restrict(e, target):
    return e.restrict(target)


def graded_piece(site, d, N):
    return site.graded_piece(d, N)


def stabilization_report(site, d, N):
    return site.stabilization_report(d, N)


# --- fraction text syntax: "<poly> / (uvxy)^3" ---------------------------------

def format_localized(e):
    num = str(e.numerator)
    if len(e.numerator) > 1:
        num = f"({num})"
    return f"{num} / ({e.site.name})^{e.k}"


def parse_localized(text, ring):
    head, sep, tail = text.rpartition("/")
    tail = tail.strip()
    if not sep or not tail.startswith("("):
        raise ValueError(f"expected '<poly> / (site)^k', got {text!r}")
    close = tail.index(")")
    name = tail[1:close]
    rest = tail[close + 1:].strip()
    k = int(rest[1:]) if rest.startswith("^") else 1 if not rest else None
    if k is None:
        raise ValueError(f"bad denominator in {text!r}")
    head = head.strip()
    if head.startswith("(") and head.endswith(")"):
        head = head[1:-1]
    site = ring.site(name)
    return LocalizedElement(site, parse_polynomial(head, ring.field), k)
