"""The Čech complex of R/I^t on the six variables.

Orientation: for a (k+1)-subset T sorted u<v<w<x<y<z,

    (dc)_T = sum_j (-1)^j restrict(c[T minus T_j]).

Cohomology is computed one multidegree at a time at a finite denominator
level N (the cutoff).  A result counts as certified only when every graded
piece of the two relevant cochain groups has the same rank at levels N-2,
N-1 and N with isomorphic transition maps; otherwise the outcome is
:data:`INCONCLUSIVE`.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .linalg import ExactMatrix
from .localization import (
    LocalizedElement, Thickening, subset_key, subset_name, thickening,
)
from .polynomials import NVARS, InhomogeneousError, Polynomial


class _Inconclusive:
    """Third outcome of certified tests; refuses to act as a boolean."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        raise TypeError("an inconclusive outcome has no truth value")

    def __repr__(self):
        return "INCONCLUSIVE"

    __str__ = __repr__


INCONCLUSIVE = _Inconclusive()


class NotACocycle(ValueError):
    pass


def subsets(k):
    return list(combinations(range(NVARS), k))


def _as_ring(ring, characteristic=0):
    if isinstance(ring, Thickening):
        return ring
    return thickening(int(ring), characteristic)


class Cochain:
    """A k-cochain: map from k-subsets to elements of the matching localization."""

    def __init__(self, ring, k, components=None):
        if not 0 <= k <= NVARS:
            raise ValueError("cochain degree must lie in 0..6")
        self.ring = ring
        self.k = k
        comps = {}
        for S, value in (components or {}).items():
            key = subset_key(S)
            if len(key) != k:
                raise ValueError(f"subset {subset_name(key)!r} is not a {k}-subset")
            site = ring.site(key)
            if isinstance(value, LocalizedElement):
                if value.site is not site:
                    raise ValueError(f"component at {subset_name(key)} lives at {value.site.name}")
            elif isinstance(value, str):
                value = site.parse(value) if "/" in value else site.element(value)
                if value.site is not site:
                    raise ValueError(f"component at {subset_name(key)} lives at {value.site.name}")
            else:
                value = site.element(value)
            if key in comps:
                value = comps[key] + value
            comps[key] = value
        self.components = {S: e for S, e in sorted(comps.items()) if not e.is_zero()}

    @property
    def t(self):
        return self.ring.t

    @property
    def field(self):
        return self.ring.field

    def __getitem__(self, S):
        key = subset_key(S)
        e = self.components.get(key)
        return e if e is not None else self.ring.site(key).zero()

    def _check(self, other):
        if not isinstance(other, Cochain) or other.ring is not self.ring or other.k != self.k:
            raise ValueError("cochains must share ring and degree")

    def __add__(self, other):
        self._check(other)
        comps = dict(self.components)
        for S, e in other.components.items():
            comps[S] = comps[S] + e if S in comps else e
        return Cochain(self.ring, self.k, comps)

    def __neg__(self):
        return Cochain(self.ring, self.k, {S: -e for S, e in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return Cochain(self.ring, self.k, {S: e * c for S, e in self.components.items()})

    __rmul__ = __mul__

    def is_zero(self):
        return not self.components

    def __eq__(self, other):
        return isinstance(other, Cochain) and other.ring is self.ring and other.k == self.k \
            and (self - other).is_zero()

    __hash__ = None

    @property
    def max_level(self):
        return max((e.k for e in self.components.values()), default=0)

    @property
    def multidegree(self):
        """Shared multidegree of the nonzero components; None for the zero cochain."""
        md = None
        for S, e in self.components.items():
            here = e.multidegree
            if md is None:
                md, first = here, S
            elif here != md:
                raise InhomogeneousError(f"inhomogeneous cochain: {subset_name(first)} has degree {md}, "
                                         f"{subset_name(S)} has degree {here}")
        return md

    def is_homogeneous(self):
        try:
            self.multidegree
        except InhomogeneousError:
            return False
        return True

    def restricted_to(self, subsets_):
        keep = {subset_key(S) for S in subsets_}
        return Cochain(self.ring, self.k, {S: e for S, e in self.components.items() if S in keep})

    def as_text(self):
        return {subset_name(S): str(e) for S, e in self.components.items()}

    def __str__(self):
        if not self.components:
            return f"0 (C^{self.k}, t={self.t})"
        return "\n".join(f"{name}: {text}" for name, text in self.as_text().items())

    def __repr__(self):
        return f"<Cochain k={self.k} t={self.t} {len(self.components)} components>"


def zero_cochain(ring, k):
    return Cochain(ring, k)


def _sign(s, T):
    return -1 if T.index(s) % 2 else 1


def differential_component(c, T):
    """Component of d(c) at the (k+1)-subset T."""
    T = subset_key(T)
    site = c.ring.site(T)
    total = site.zero()
    for s in T:
        face = tuple(i for i in T if i != s)
        e = c.components.get(face)
        if e is not None:
            r = e.restrict(site)
            total = total + r if _sign(s, T) > 0 else total - r
    return total


def _touched(c):
    out = set()
    for S in c.components:
        for s in range(NVARS):
            if s not in S:
                out.add(tuple(sorted(S + (s,))))
    return sorted(out)


def _map(fn, items, jobs):
    if jobs and jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def differential(c, jobs=1):
    if c.k >= NVARS:
        raise ValueError("no differential out of C^6")
    targets = _touched(c)
    values = _map(lambda T: differential_component(c, T), targets, jobs)
    return Cochain(c.ring, c.k + 1, dict(zip(targets, values)))


@dataclass
class CocycleCheck:
    ok: bool
    witness: tuple = None
    witness_value: object = None
    checked: list = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok

    @property
    def witness_name(self):
        return subset_name(self.witness) if self.witness is not None else None


def is_cocycle(c, jobs=1):
    """Check every component of d(c); the witness is the first nonzero one."""
    if c.k >= NVARS:
        raise ValueError("no differential out of C^6")
    targets = subsets(c.k + 1)
    values = _map(lambda T: differential_component(c, T), targets, jobs)
    checked = [(T, v.is_zero()) for T, v in zip(targets, values)]
    for T, v in zip(targets, values):
        if not v.is_zero():
            return CocycleCheck(False, T, v, checked)
    return CocycleCheck(True, checked=checked)


# --- graded slices ------------------------------------------------------------

@dataclass
class Slice:
    """Level-N graded pieces of C^k in one multidegree, concatenated."""
    ring: object
    k: int
    multidegree: tuple
    level: int
    pieces: list
    offsets: dict

    @property
    def dim(self):
        return sum(p.rank for p in self.pieces)

    def piece_at(self, S):
        return self.pieces[subsets(self.k).index(S)]

    def vector(self, c):
        F = self.ring.field
        vec = []
        for S, piece in zip(subsets(self.k), self.pieces):
            e = c.components.get(S)
            if e is None:
                vec.extend([F.zero] * piece.rank)
            else:
                vec.extend(piece.site.coordinates(e, self.multidegree, self.level))
        return vec

    def cochain(self, vec):
        comps = {}
        for S, piece in zip(subsets(self.k), self.pieces):
            o = self.offsets[S]
            part = vec[o:o + piece.rank]
            if any(x != 0 for x in part):
                comps[S] = piece.site.element_from_coordinates(part, self.multidegree, self.level)
        return Cochain(self.ring, self.k, comps)

    def stabilization(self):
        return [p.site.stabilization_report(self.multidegree, self.level) for p in self.pieces]


def graded_slice(ring, k, d, N):
    pieces = []
    offsets = {}
    o = 0
    for S in subsets(k):
        piece = ring.site(S).graded_piece(tuple(d), N)
        offsets[S] = o
        o += piece.rank
        pieces.append(piece)
    return Slice(ring, k, tuple(d), N, pieces, offsets)


def differential_matrix(ring, k, d, N, jobs=1):
    """Matrix of d_k : C^k -> C^{k+1} on the level-N pieces of multidegree d."""
    src = graded_slice(ring, k, d, N)
    dst = graded_slice(ring, k + 1, d, N)
    F = ring.field

    def columns_for(S):
        piece = src.piece_at(S)
        cols = []
        for b in piece.basis:
            col = [F.zero] * dst.dim
            for s in range(NVARS):
                if s in S:
                    continue
                T = tuple(sorted(S + (s,)))
                tsite = ring.site(T)
                shift = tuple(N if i == s else 0 for i in range(NVARS))
                mono = Polynomial({tuple(a + b_ for a, b_ in zip(b, shift)): F.one}, F, _trusted=True)
                red = tsite.saturated.reduce(mono)
                tpiece = dst.piece_at(T)
                o = dst.offsets[T]
                sgn = _sign(s, T)
                for e, c in red.terms.items():
                    j = o + tpiece.index[e]
                    col[j] = F.add(col[j], c if sgn > 0 else F.neg(c))
            cols.append(col)
        return cols

    blocks = _map(columns_for, subsets(k), jobs)
    cols = [col for block in blocks for col in block]
    return ExactMatrix.from_columns(cols, dst.dim, F), src, dst


def coboundary_image(k, t, d, cutoff, characteristic=0, jobs=1):
    """Columns spanning d_{k-1}(C^{k-1}) in multidegree d at level ``cutoff``.

    Returns (matrix, stabilization reports of the C^{k-1} and C^k pieces).
    """
    if k < 1:
        raise ValueError("coboundary image needs k >= 1")
    ring = _as_ring(t, characteristic)
    m, src, dst = differential_matrix(ring, k - 1, d, cutoff, jobs)
    return m, src.stabilization() + dst.stabilization()


@dataclass
class CoboundaryResult:
    outcome: object
    multidegree: tuple
    cutoff: int
    stabilization: list = dc_field(default_factory=list)
    attempts: list = dc_field(default_factory=list)

    @property
    def unstable(self):
        return [r for r in self.stabilization if not r.stable]

    def as_dict(self):
        return {
            "outcome": str(self.outcome) if self.outcome is INCONCLUSIVE else self.outcome,
            "multidegree": list(self.multidegree) if self.multidegree is not None else None,
            "cutoff": self.cutoff,
            "cutoffs_tried": list(self.attempts),
            "unstable_pieces": [r.site for r in self.unstable],
        }


def _levels(cutoff, max_cutoff, floor):
    start = max(cutoff, floor, 2)
    stop = max(start, max_cutoff or start)
    return range(start, stop + 1)


def coboundary_test(c, cutoff=4, max_cutoff=None, jobs=1):
    """Certified coboundary test; escalates the cutoff up to ``max_cutoff``."""
    md = c.multidegree
    if md is None:
        return CoboundaryResult(True, None, cutoff)
    if c.k < 1:
        return CoboundaryResult(False, md, cutoff)
    attempts = []
    for N in _levels(cutoff, max_cutoff, c.max_level):
        attempts.append(N)
        m, src, dst = differential_matrix(c.ring, c.k - 1, md, N, jobs)
        reports = src.stabilization() + dst.stabilization()
        if not all(r.stable for r in reports):
            result = CoboundaryResult(INCONCLUSIVE, md, N, reports, attempts)
            continue
        target = dst.vector(c)
        inside = m.contains_column(target) if m.ncols else not any(x != 0 for x in target)
        return CoboundaryResult(inside, md, N, reports, attempts)
    return result


def is_coboundary(c, cutoff=4, max_cutoff=None, jobs=1):
    """True, False, or INCONCLUSIVE when some graded piece has not stabilized."""
    return coboundary_test(c, cutoff, max_cutoff, jobs).outcome


@dataclass
class CohomologyReport:
    k: int
    t: int
    characteristic: int
    multidegree: tuple
    cutoff: int
    rank: int
    stable: bool
    generators: list
    kernel_dim: int = 0
    image_dim: int = 0
    unstable_pieces: list = dc_field(default_factory=list)

    def as_dict(self):
        return {
            "k": self.k,
            "t": self.t,
            "characteristic": self.characteristic,
            "multidegree": list(self.multidegree),
            "cutoff": self.cutoff,
            "rank": self.rank,
            "stable": self.stable,
            "generators": [g.as_text() for g in self.generators],
        }


def cohomology_rank(k, t, d, cutoff=4, characteristic=0, jobs=1, max_cutoff=None):
    """Rank of H^k in multidegree d; raises the cutoff up to ``max_cutoff`` until stable."""
    if not 0 <= k <= NVARS:
        raise ValueError("k must lie in 0..6")
    ring = _as_ring(t, characteristic)
    for N in _levels(cutoff, max_cutoff, 2):
        report = _cohomology_at(ring, k, tuple(d), N, jobs)
        if report.stable:
            break
    return report


def _cohomology_at(ring, k, d, N, jobs):
    here = graded_slice(ring, k, d, N)
    F = ring.field
    if k < NVARS:
        dk, _, _ = differential_matrix(ring, k, d, N, jobs)
        kernel = dk.nullspace() if here.dim else []
    else:
        kernel = [[F.one if i == j else F.zero for i in range(here.dim)] for j in range(here.dim)]
    reports = here.stabilization()
    image_cols = []
    if k >= 1:
        dprev, prev, _ = differential_matrix(ring, k - 1, d, N, jobs)
        image_cols = dprev.columns()
        reports = prev.stabilization() + reports
    image_rank = ExactMatrix.from_columns(image_cols, here.dim, F).rank() if image_cols else 0
    generators = []
    span = list(image_cols)
    current = image_rank
    for v in kernel:
        trial = ExactMatrix.from_columns(span + [v], here.dim, F).rank()
        if trial > current:
            span.append(v)
            current = trial
            generators.append(here.cochain(v))
    unstable = [r.site for r in reports if not r.stable]
    return CohomologyReport(k, ring.t, ring.characteristic, d, N, len(kernel) - image_rank,
                            not unstable, generators, len(kernel), image_rank, unstable)


@dataclass
class IndependenceReport:
    count: int
    total: int
    outcome: object
    by_multidegree: dict
    cutoffs: dict

    @property
    def independent(self):
        return self.outcome


def independence_report(cs, cutoff=4, max_cutoff=None, jobs=1):
    """Number of independent classes among cocycles, one multidegree at a time."""
    cs = list(cs)
    if not cs:
        return IndependenceReport(0, 0, True, {}, {})
    ring, k = cs[0].ring, cs[0].k
    groups = {}
    for c in cs:
        if c.ring is not ring or c.k != k:
            raise ValueError("classes must share ring and degree")
        if not is_cocycle(c, jobs):
            raise NotACocycle("input is not a cocycle")
        md = c.multidegree
        if md is None:
            groups.setdefault(None, []).append(c)
        else:
            groups.setdefault(md, []).append(c)
    count = 0
    per, cutoffs = {}, {}
    inconclusive = False
    for md, group in groups.items():
        if md is None:
            per[md] = 0
            continue
        floor = max(c.max_level for c in group)
        found = None
        for N in _levels(cutoff, max_cutoff, floor):
            m, src, dst = differential_matrix(ring, k - 1, md, N, jobs) if k >= 1 else (None, None, graded_slice(ring, k, md, N))
            reports = (src.stabilization() if src else []) + dst.stabilization()
            if all(r.stable for r in reports):
                image = m.columns() if m is not None else []
                base = ExactMatrix.from_columns(image, dst.dim, ring.field).rank() if image else 0
                vecs = [dst.vector(c) for c in group]
                full = ExactMatrix.from_columns(image + vecs, dst.dim, ring.field).rank()
                found = (full - base, N)
                break
        if found is None:
            inconclusive = True
            per[md] = None
            continue
        per[md], cutoffs[md] = found
        count += found[0]
    if inconclusive:
        outcome = INCONCLUSIVE
    else:
        outcome = count == len(cs)
    return IndependenceReport(count, len(cs), outcome, per, cutoffs)


def classes_independent(cs, cutoff=4, max_cutoff=None, jobs=1):
    return independence_report(cs, cutoff, max_cutoff, jobs).outcome
