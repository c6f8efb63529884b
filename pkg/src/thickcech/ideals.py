"""Ideals of F[u..z]: Buchberger, normal forms, powers, colons, saturation.

The reduction and Buchberger cores work on raw ``{exponent tuple: coeff}``
dicts of any arity, so the colon computation can borrow one auxiliary
variable.  Everything exported works with six-variable :class:`Polynomial`
values.

:func:`graded_membership_oracle` decides membership with plain linear algebra
in a single multidegree and shares no code with the Gröbner path.
"""

import heapq
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .fields import FieldMismatch
from .linalg import ExactMatrix
from .polynomials import (
    DEGREVLEX, ELIMINATE_FIRST, Inhomogeneous, degrevlex_last, Monomial, Polynomial,
    format_polynomial, md_sub, monomials_of_multidegree, multidegree_of,
)


# --- raw cores -------------------------------------------------------------

def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _reduce(terms, basis, F, rank):
    """Full normal form of ``terms`` by ``basis`` = [(lead, monic terms)]."""
    if not terms or not basis:
        return dict(terms)
    p = dict(terms)
    heap = [(rank(e), e) for e in p]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = p.pop(e, None)
        if c is None:
            continue
        for lead, g in basis:
            if _divides(lead, e):
                break
        else:
            rem[e] = c
            continue
        shift = tuple(a - b for a, b in zip(e, lead))
        coef = F.neg(c)
        for ge, gc in g.items():
            if ge == lead:
                continue
            ne = tuple(a + b for a, b in zip(ge, shift))
            nc = F.mul(gc, coef)
            old = p.get(ne)
            if old is None:
                p[ne] = nc
                heapq.heappush(heap, (rank(ne), ne))
            else:
                s = F.add(old, nc)
                if s == 0:
                    del p[ne]
                else:
                    p[ne] = s
    return rem


def _monic(terms, F, rank):
    lead = min(terms, key=rank)
    c = terms[lead]
    if c != F.one:
        inv = F.inv(c)
        terms = {e: F.mul(v, inv) for e, v in terms.items()}
    return lead, terms


def _spoly(f, g, F):
    (lf, tf), (lg, tg) = f, g
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    out = {tuple(a + b for a, b in zip(e, sf)): c for e, c in tf.items()}
    for e, c in tg.items():
        ne = tuple(a + b for a, b in zip(e, sg))
        s = F.sub(out.get(ne, F.zero), c)
        if s == 0:
            out.pop(ne, None)
        else:
            out[ne] = s
    return out


def _groebner(gens, F, rank):
    """Reduced Gröbner basis of raw generators (list of dicts)."""
    G = []
    for f in gens:
        f = _reduce(f, G, F, rank)
        if f:
            G.append(_monic(f, F, rank))
    pairs = set()
    queue = []

    def add_pair(i, j):
        lcm = tuple(max(a, b) for a, b in zip(G[i][0], G[j][0]))
        pairs.add((i, j))
        heapq.heappush(queue, (rank(lcm), i, j, lcm))

    for j in range(len(G)):
        for i in range(j):
            add_pair(i, j)
    while queue:
        # normal selection: smallest lcm first
        _, i, j, lcm = heapq.heappop(queue)
        pairs.discard((i, j))
        li, lj = G[i][0], G[j][0]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # product criterion
        if _chain_criterion(i, j, lcm, G, pairs):
            continue
        r = _reduce(_spoly(G[i], G[j], F), G, F, rank)
        if r:
            G.append(_monic(r, F, rank))
            k = len(G) - 1
            for a in range(k):
                add_pair(a, k)
    return _interreduce(G, F, rank)


def _chain_criterion(i, j, lcm, G, pairs):
    for k in range(len(G)):
        if k in (i, j):
            continue
        if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
            continue
        if _divides(G[k][0], lcm):
            return True
    return False


def _interreduce(G, F, rank):
    leads = [lead for lead, _ in G]
    keep = []
    for idx, (lead, g) in enumerate(G):
        dominated = False
        for jdx, other in enumerate(leads):
            if jdx == idx:
                continue
            if _divides(other, lead) and (other != lead or jdx < idx):
                dominated = True
                break
        if not dominated:
            keep.append((lead, g))
    out = []
    for idx, (lead, g) in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        tail = {e: c for e, c in g.items() if e != lead}
        tail = _reduce(tail, others, F, rank)
        tail[lead] = F.one
        out.append((lead, tail))
    out.sort(key=lambda lg: rank(lg[0]))
    return out


# --- public types ------------------------------------------------------------

@dataclass(frozen=True)
class IdealPresentation:
    generators: tuple
    field: object

    def __init__(self, generators, field=None):
        gens = tuple(g for g in generators if not g.is_zero())
        if field is None:
            field = gens[0].field if gens else None
        for g in gens:
            if g.field != field:
                raise FieldMismatch(f"{g.field} vs {field}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "field", field)

    @property
    def is_homogeneous(self):
        return all(not isinstance(multidegree_of(g), Inhomogeneous) for g in self.generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


class GroebnerBasis:
    """Reduced, monic Gröbner basis; immutable, comparable and hashable."""

    def __init__(self, core, field, order=DEGREVLEX, source=None):
        self._core = list(core)
        self.field = field
        self.order = order
        self.source = source
        self.elements = tuple(Polynomial(g, field, _trusted=True) for _, g in self._core)
        self.leads = tuple(Monomial(lead) for lead, _ in self._core)
        self._key = tuple(tuple(sorted(g.items())) for _, g in self._core)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.field == other.field
                and self.order == other.order and self._key == other._key)

    def __hash__(self):
        return hash((self.field, self.order, self._key))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({len(self)} elements over {self.field}, {self.order.name})"

    def __str__(self):
        return "\n".join(format_polynomial(g, self.order) for g in self.elements)

    def reduce(self, f):
        if f.field != self.field:
            raise FieldMismatch(f"{f.field} vs {self.field}")
        r = _reduce(f.terms, self._core, self.field, self.order.rank)
        return Polynomial(r, self.field, _trusted=True)

    def contains(self, f):
        return self.reduce(f).is_zero()

    def is_standard(self, exp):
        """True if no lead term divides the monomial ``exp``."""
        return not any(_divides(lead, exp) for lead in self.leads)

    @property
    def is_homogeneous(self):
        return all(not isinstance(multidegree_of(g), Inhomogeneous) for g in self.elements)

    def is_unit_ideal(self):
        return any(sum(lead) == 0 for lead in self.leads)


def buchberger(ideal, order=DEGREVLEX):
    """Reduced Gröbner basis of ``ideal`` (an :class:`IdealPresentation` or polynomials)."""
    if not isinstance(ideal, IdealPresentation):
        ideal = IdealPresentation(ideal)
    F = ideal.field
    core = _groebner([g.terms for g in ideal.generators], F, order.rank)
    return GroebnerBasis(core, F, order, source=ideal)


def normal_form(f, gb):
    return gb.reduce(f)


def membership(f, gb):
    return gb.contains(f)


def ideal_power(ideal, t):
    """Generators of I^t: all products of t generators, deduplicated."""
    if t < 1:
        raise ValueError("ideal power needs t >= 1")
    out = []
    seen = set()
    for combo in combinations_with_replacement(ideal.generators, t):
        p = combo[0]
        for g in combo[1:]:
            p = p * g
        if p not in seen:
            seen.add(p)
            out.append(p)
    return IdealPresentation(out, ideal.field)


# --- colon and saturation ----------------------------------------------------

_COLON_CACHE = {}
_SATURATION_CACHE = {}


def exact_divide(f, g, order=DEGREVLEX):
    """Quotient f / g, raising ValueError if g does not divide f."""
    F = f.field
    if g.is_monomial():
        (exp, c), = g.terms.items()
        return f.divide_monomial(exp).scale(F.inv(c))
    rank = order.rank
    lead, monic = _monic(g.terms, F, rank)
    inv_lc = F.inv(g.terms[lead])
    p = dict(f.terms)
    quotient = {}
    while p:
        e = min(p, key=rank)
        if not _divides(lead, e):
            raise ValueError(f"{format_polynomial(g)} does not divide {format_polynomial(f)}")
        shift = tuple(a - b for a, b in zip(e, lead))
        c = p[e]
        quotient[shift] = F.add(quotient.get(shift, F.zero), F.mul(c, inv_lc))
        for ge, gc in monic.items():
            ne = tuple(a + b for a, b in zip(ge, shift))
            s = F.sub(p.get(ne, F.zero), F.mul(c, gc))
            if s == 0:
                p.pop(ne, None)
            else:
                p[ne] = s
    return Polynomial(quotient, F)


def intersect_principal(gb, g):
    """Generators of J ∩ <g> via <aux*J, (1 - aux)*g> and elimination of aux."""
    F = gb.field
    gens = [{(1,) + e: c for e, c in h.terms.items()} for h in gb.elements]
    one_minus = {}
    for e, c in g.terms.items():
        one_minus[(0,) + e] = c
        one_minus[(1,) + e] = F.neg(c)
    gens.append(one_minus)
    core = _groebner(gens, F, ELIMINATE_FIRST.rank)
    return [Polynomial({e[1:]: c for e, c in terms.items()}, F, _trusted=True)
            for lead, terms in core if lead[0] == 0]


def _colon_single(gb, g):
    key = (gb, g)
    hit = _COLON_CACHE.get(key)
    if hit is not None:
        return hit
    if g.is_zero():
        raise ValueError("colon by zero")
    if len(g.terms) == 1 and sum(next(iter(g.terms))) == 0:
        result = gb
    elif _is_variable(g) and gb.is_homogeneous:
        result = _variable_quotient(gb, _is_variable(g)[0], saturate=False)
    else:
        quotients = [exact_divide(h, g, gb.order) for h in intersect_principal(gb, g)]
        result = buchberger(IdealPresentation(quotients, gb.field), gb.order)
    _COLON_CACHE[key] = result
    return result


def _is_variable(g):
    if len(g.terms) != 1:
        return None
    (exp, c), = g.terms.items()
    if sum(exp) != 1:
        return None
    return (exp.index(1), c)


def _variable_quotient(gb, i, saturate):
    """(J : x_i) or (J : x_i^inf) for homogeneous J.

    With x_i last in a degrevlex order, a Gröbner basis of J yields the
    quotient by stripping powers of x_i from each element.
    """
    last = degrevlex_last(i)
    G = _groebner([h.terms for h in gb.elements], gb.field, last.rank)
    gens = []
    for _, h in G:
        k = min(e[i] for e in h)
        if not saturate:
            k = min(k, 1)
        shift = tuple(k if j == i else 0 for j in range(len(next(iter(h)))))
        gens.append(Polynomial(h, gb.field, _trusted=True).divide_monomial(shift))
    return buchberger(IdealPresentation(gens, gb.field), gb.order)


def colon(gb, g):
    """Gröbner basis of (J : g).

    A monomial g is peeled one variable at a time, using
    (J : ab) = ((J : a) : b); each step is an elimination computation.
    """
    if g.is_monomial():
        (exp, _), = g.terms.items()
        result = gb
        for i, e in enumerate(exp):
            var = [0] * len(exp)
            var[i] = 1
            var_poly = Polynomial({tuple(var): 1}, gb.field, _trusted=True)
            for _ in range(e):
                result = _colon_single(result, var_poly)
        return result
    return _colon_single(gb, g)


def saturation_chain(gb, m):
    """[J, (J : m), (J : m^2), ...] up to the first repeat (last entry is the saturation)."""
    if isinstance(m, Polynomial):
        m_poly = m
    else:
        m_poly = Polynomial.monomial(tuple(m), 1, gb.field)
    chain = [gb]
    if sum(m_poly.leading_exponent()) == 0 and m_poly.is_monomial():
        return chain
    while True:
        nxt = colon(chain[-1], m_poly)
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def saturate(gb, m):
    """(J : m^inf) for a monomial (or polynomial) m."""
    if not isinstance(m, Polynomial):
        m = Polynomial.monomial(tuple(m), 1, gb.field)
    if m.is_monomial() and gb.is_homogeneous:
        (exp, _), = m.terms.items()
        result = gb
        for i, e in enumerate(exp):
            if e:
                key = (result, i)
                if key not in _SATURATION_CACHE:
                    _SATURATION_CACHE[key] = _variable_quotient(result, i, saturate=True)
                result = _SATURATION_CACHE[key]
        return result
    return saturation_chain(gb, m)[-1]


# --- independent oracle ------------------------------------------------------

def graded_membership_oracle(f, ideal):
    """Membership by linear algebra in the single multidegree of ``f``.

    Spans all products (monomial * generator) of f's multidegree and tests
    whether f lies in the span.
    """
    if not isinstance(ideal, IdealPresentation):
        ideal = IdealPresentation(ideal)
    if f.is_zero():
        return True
    md = multidegree_of(f)
    if isinstance(md, Inhomogeneous):
        raise ValueError(f"oracle needs a homogeneous element ({md})")
    F = f.field
    columns = []
    for g in ideal.generators:
        gmd = multidegree_of(g)
        if isinstance(gmd, Inhomogeneous):
            raise ValueError(f"oracle needs homogeneous generators ({gmd})")
        for mono in monomials_of_multidegree(md_sub(md, gmd)):
            columns.append(g.mul_monomial(mono).terms)
    if not columns:
        return False
    monos = sorted({e for col in columns for e in col} | set(f.terms))
    index = {e: i for i, e in enumerate(monos)}
    rows = [[F.zero] * len(columns) for _ in monos]
    for j, col in enumerate(columns):
        for e, c in col.items():
            rows[index[e]][j] = c
    target = [F.zero] * len(monos)
    for e, c in f.terms.items():
        target[index[e]] = c
    return ExactMatrix(rows, F, len(columns)).contains_column(target)
