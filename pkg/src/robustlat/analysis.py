"""Finite transition systems, their analyses, and best robust approximations.

State sets are ``frozenset``s. Analyses map subsets of a finite metric
space into a codomain lattice ordered by information: for powersets that
is reverse inclusion (a smaller set says more), so joins are intersections.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .lattice import FiniteLattice, MonotoneMap, ResourceError, right_adjoint
from .seqspace import Q, fmt_q, to_q

BOTTOM, TOP = "bottom", "top"


class SystemInputError(ValueError):
    """Transition system or metric literal is malformed."""


class ScheduleError(ValueError):
    """A fattening schedule that does not reach below the metric's resolution."""


# ---------------------------------------------------------------- systems

@dataclass(frozen=True)
class TransitionSystem:
    n: int
    rel: frozenset

    def __post_init__(self):
        rel = frozenset((int(a), int(b)) for a, b in self.rel)
        if any(not (0 <= a < self.n and 0 <= b < self.n) for a, b in rel):
            raise SystemInputError("transition references an unknown state")
        object.__setattr__(self, "rel", rel)

    @property
    def states(self) -> frozenset:
        return frozenset(range(self.n))

    def succ(self, s: int) -> frozenset:
        return frozenset(b for a, b in self.rel if a == s)


def _check_subset(T: TransitionSystem, S: Iterable[int]) -> frozenset:
    S = frozenset(S)
    if not S <= T.states:
        raise SystemInputError("state set is not a subset of the states")
    return S


def post(T: TransitionSystem, S: Iterable[int]) -> frozenset:
    """Relational image ``{s' | exists s in S. (s, s') in T}``."""
    S = _check_subset(T, S)
    return frozenset(b for a, b in T.rel if a in S)


def reach(T: TransitionSystem, I: Iterable[int]) -> frozenset:
    """Least fixed point of ``S -> I u post(S)``; zero steps count."""
    cur = _check_subset(T, I)
    while True:
        nxt = cur | post(T, cur)
        if nxt == cur:
            return cur
        cur = nxt


def safety(T: TransitionSystem, I: Iterable[int], E: Iterable[int]) -> str:
    """``top`` iff no error state is reachable from ``I``."""
    E = _check_subset(T, E)
    return TOP if not (reach(T, I) & E) else BOTTOM


def wp(T: TransitionSystem, S: Iterable[int]) -> frozenset:
    """Weakest precondition: states all of whose successors lie in ``S``."""
    S = _check_subset(T, S)
    return frozenset(s for s in range(T.n) if T.succ(s) <= S)


@lru_cache(maxsize=32)
def powerset_lattice(n: int) -> FiniteLattice:
    return FiniteLattice.powerset(n)


def post_map(T: TransitionSystem) -> MonotoneMap:
    """``post`` as a monotone map on the inclusion-ordered powerset (ids are bitmasks)."""
    lat = powerset_lattice(T.n)

    def img(mask: int) -> int:
        out = 0
        for a, b in T.rel:
            if mask >> a & 1:
                out |= 1 << b
        return out

    return MonotoneMap(lat.poset, lat.poset, tuple(img(m) for m in range(1 << T.n)))


def wp_via_adjoint(T: TransitionSystem, S: Iterable[int]) -> frozenset:
    """``wp`` recovered as the right adjoint of ``post`` in the lattice core."""
    f = post_map(T)
    g = right_adjoint(f, powerset_lattice(T.n))
    assert g is not None, "post preserves unions"
    mask = sum(1 << s for s in _check_subset(T, S))
    m = g.table[mask]
    return frozenset(i for i in range(T.n) if m >> i & 1)


def paths_reach(T: TransitionSystem, I: Iterable[int]) -> frozenset:
    """Reachability by explicit path enumeration up to length ``n`` (test oracle)."""
    I = _check_subset(T, I)
    out = set(I)
    frontier = [(s,) for s in I]
    for _ in range(T.n):
        nxt = []
        for path in frontier:
            for b in T.succ(path[-1]):
                out.add(b)
                nxt.append(path + (b,))
        frontier = nxt
    return frozenset(out)


# ---------------------------------------------------------------- metrics

@dataclass(frozen=True)
class FiniteMetric:
    d: tuple

    def __post_init__(self):
        d = tuple(tuple(to_q(v) for v in row) for row in self.d)
        n = len(d)
        if any(len(row) != n for row in d):
            raise SystemInputError("distance matrix must be square")
        for i in range(n):
            if d[i][i] != 0:
                raise SystemInputError("d(x, x) must be 0")
            for j in range(n):
                if i != j and d[i][j] <= 0:
                    raise SystemInputError("distinct points need positive distance")
                if d[i][j] != d[j][i]:
                    raise SystemInputError("distance must be symmetric")
                for k in range(n):
                    if d[i][k] > d[i][j] + d[j][k]:
                        raise SystemInputError("triangle inequality fails")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "_balls", {})
        object.__setattr__(self, "_spectrum", sorted({v for row in d for v in row if v > 0}))

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def points(self) -> frozenset:
        return frozenset(range(self.n))

    def spectrum(self) -> list:
        """Distinct positive distances, ascending."""
        return list(self._spectrum)

    def resolution(self):
        """Smallest positive distance (``None`` for a single point)."""
        s = self.spectrum()
        return s[0] if s else None

    def fatten(self, S: Iterable[int], delta) -> frozenset:
        """Closed ``delta``-neighbourhood ``{x | exists c in S. d(x, c) <= delta}``."""
        S = frozenset(S)
        key = (S, delta)
        out = self._balls.get(key)
        if out is None:
            rows = self._balls.get(delta)
            if rows is None:
                rows = tuple(frozenset(x for x in range(len(self.d)) if row[x] <= delta) for row in self.d)
                self._balls[delta] = rows
            out = self._balls[key] = frozenset().union(*(rows[c] for c in S))
        return out

    def subsets(self) -> list[frozenset]:
        return [frozenset(c) for k in range(self.n + 1) for c in combinations(range(self.n), k)]

    def to_json(self):
        return [[fmt_q(v) for v in row] for row in self.d]

    @classmethod
    def line(cls, n: int, step=1) -> FiniteMetric:
        step = to_q(step)
        return cls(tuple(tuple(abs(i - j) * step for j in range(n)) for i in range(n)))

    @classmethod
    def discrete(cls, n: int, dist=1) -> FiniteMetric:
        return cls(tuple(tuple(Q(0) if i == j else to_q(dist) for j in range(n)) for i in range(n)))


# ---------------------------------------------------------------- codomains

class PowersetCodomain:
    """Subsets of a finite metric space under reverse inclusion."""

    def __init__(self, metric: FiniteMetric):
        self.metric = metric

    def leq(self, a: frozenset, b: frozenset) -> bool:
        return a >= b

    def join(self, xs: Iterable[frozenset]) -> frozenset:
        out = self.metric.points
        for x in xs:
            out = out & x
        return out

    def fatten(self, a: frozenset, eps) -> frozenset:
        return self.metric.fatten(a, eps)

    def spectrum(self) -> list:
        return self.metric.spectrum()

    def __eq__(self, other):
        return isinstance(other, PowersetCodomain) and other.metric == self.metric

    def __hash__(self):
        return hash(self.metric)

    def __repr__(self):
        return f"PowersetCodomain(n={self.metric.n})"


class LatticeCodomain:
    """A finite chain of named values (default: ``bottom < top``) with no metric."""

    def __init__(self, values: Sequence[str] = (BOTTOM, TOP)):
        self.values = tuple(values)
        self._rank = {v: i for i, v in enumerate(self.values)}

    def leq(self, a, b) -> bool:
        return self._rank[a] <= self._rank[b]

    def join(self, xs) -> str:
        xs = list(xs)
        return max(xs, key=self._rank.__getitem__) if xs else self.values[0]

    def fatten(self, a, eps):
        return a

    def spectrum(self) -> list:
        return []

    def __eq__(self, other):
        return isinstance(other, LatticeCodomain) and other.values == self.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"LatticeCodomain({self.values})"


SIGMA = LatticeCodomain()


@dataclass(frozen=True)
class Analysis:
    """``A: P(points) -> codomain``, monotone from reverse inclusion to the codomain order."""

    fn: Callable[[frozenset], object] = field(compare=False)
    codomain: object = field(compare=False)
    name: str = "A"

    def __call__(self, S: Iterable[int]):
        return self.fn(frozenset(S))

    def table(self, metric: FiniteMetric) -> dict:
        return {S: self(S) for S in metric.subsets()}

    def is_monotone(self, metric: FiniteMetric) -> bool:
        t = self.table(metric)
        return all(self.codomain.leq(t[a], t[b]) for a in t for b in t if a >= b)


def _schedule_ok(metric: FiniteMetric, schedule: Sequence) -> list:
    sched = [to_q(s) for s in schedule]
    if not sched or any(s <= 0 for s in sched):
        raise ScheduleError("schedule must be a nonempty list of positive radii")
    if any(b >= a for a, b in zip(sched, sched[1:])):
        raise ScheduleError("schedule must be strictly decreasing")
    return sched


def fattened_join(A: Analysis, C: Iterable[int], metric: FiniteMetric, schedule: Sequence):
    """Join of ``A(C_delta)`` over the given radii, with no resolution check."""
    sched = _schedule_ok(metric, schedule)
    C = frozenset(C)
    return A.codomain.join(A(metric.fatten(C, d)) for d in sched)


def box_robust(A: Analysis, C: Iterable[int], metric: FiniteMetric, schedule: Sequence):
    """``[]_R(A)(C)``: join of ``A(C_delta)`` as ``delta`` decreases to 0.

    The schedule must end below the smallest positive distance, after which
    fattening is the identity and the join is exact.
    """
    sched = _schedule_ok(metric, schedule)
    res = metric.resolution()
    if res is not None and sched[-1] >= res:
        raise ScheduleError(f"schedule stops at {fmt_q(sched[-1])}, resolution is {fmt_q(res)}")
    return fattened_join(A, C, metric, sched)


def default_schedule(metric: FiniteMetric) -> list:
    """Descending spectrum followed by half the resolution."""
    spec = metric.spectrum()
    tail = [spec[0] / 2] if spec else [Q(1)]
    return sorted(spec, reverse=True) + tail


def delta_representatives(metric: FiniteMetric) -> list:
    """One radius from every interval on which closed fattening is constant."""
    spec = metric.spectrum()
    if not spec:
        return [Q(1)]
    reps = [spec[0] / 2] + spec + [(a + b) / 2 for a, b in zip(spec, spec[1:])] + [spec[-1] + 1]
    return sorted(set(reps))


def brute_box(A: Analysis, C: Iterable[int], metric: FiniteMetric):
    """Join of ``A(C_delta)`` over representatives of every ``delta > 0`` (test oracle)."""
    C = frozenset(C)
    return A.codomain.join(A(metric.fatten(C, d)) for d in delta_representatives(metric))


def box_analysis(A: Analysis, metric: FiniteMetric, schedule: Sequence | None = None) -> Analysis:
    sched = list(schedule) if schedule is not None else default_schedule(metric)
    box_robust(A, frozenset(), metric, sched)  # validates the schedule once
    sched = [to_q(v) for v in sched]
    tab = {S: A.codomain.join(A(metric.fatten(S, d)) for d in sched) for S in metric.subsets()}
    return Analysis(lambda S: tab[frozenset(S)], A.codomain, f"box({A.name})")


MAX_ROBUST_POINTS = 12


def robustness_violation(A: Analysis, metric: FiniteMetric, resolution: bool = False):
    """First ``(S, eps)`` with no admissible ``delta``, or ``None``.

    By default ``eps`` and ``delta`` range over representatives of all
    positive radii. With ``resolution`` set both are restricted to the
    positive distance spectra, so fattening always moves.
    """
    if metric.n > MAX_ROBUST_POINTS:
        raise ResourceError(f"{metric.n} points exceed the exhaustive bound {MAX_ROBUST_POINTS}")
    cod = A.codomain
    cspec = cod.spectrum()
    if resolution:
        eps_values = cspec or [Q(1)]
        deltas = metric.spectrum() or [Q(1)]
    else:
        eps_values = ([cspec[0] / 2] if cspec else [Q(1)]) + cspec
        deltas = delta_representatives(metric)
    table = A.table(metric)
    for S in metric.subsets():
        outs = [table[metric.fatten(S, d)] for d in deltas]
        for eps in eps_values:
            ball = cod.fatten(table[S], eps)
            if not any(cod.leq(ball, o) for o in outs):
                return S, eps
    return None


def is_robust(A: Analysis, metric: FiniteMetric, resolution: bool = False) -> bool:
    """``forall S, eps > 0. exists delta > 0. B(A(S), eps) <= A(B(S, delta))``, exhaustively."""
    return robustness_violation(A, metric, resolution) is None


@dataclass
class BoxReport:
    robust: bool
    below: bool
    maximal: bool
    idempotent: bool
    equals_input: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.robust and self.below and self.maximal and self.idempotent


def box_robust_eq_fixpoint_property(A: Analysis, metric: FiniteMetric, family: Sequence[Analysis] = ()) -> BoxReport:
    """``[]_R(A)`` is robust, below ``A``, idempotent and above every sampled robust map below ``A``."""
    B = box_analysis(A, metric)
    BB = box_analysis(B, metric)
    subs = metric.subsets()
    cod = A.codomain
    fails = []
    below = all(cod.leq(B(S), A(S)) for S in subs)
    idem = all(BB(S) == B(S) for S in subs)
    robust = is_robust(B, metric)
    maximal = True
    for F in family:
        if F.codomain != cod:
            continue
        if all(cod.leq(F(S), A(S)) for S in subs) and is_robust(F, metric):
            if not all(cod.leq(F(S), B(S)) for S in subs):
                maximal = False
                fails.append(f"{F.name} is robust below {A.name} but not below its box")
    eq = all(B(S) == A(S) for S in subs)
    return BoxReport(robust, below, maximal, idem, eq, fails)


# ---------------------------------------------------------------- generators

def identity_analysis(metric: FiniteMetric) -> Analysis:
    return Analysis(lambda S: S, PowersetCodomain(metric), "id")


def constant_analysis(metric: FiniteMetric, K: Iterable[int]) -> Analysis:
    K = frozenset(K)
    return Analysis(lambda S: K, PowersetCodomain(metric), f"const{sorted(K)}")


def interior_analysis(metric: FiniteMetric, r) -> Analysis:
    """``{x in S | B(x, r) <= S}``: a strict shrink of its input."""
    r = to_q(r)
    return Analysis(lambda S: frozenset(x for x in S if metric.fatten({x}, r) <= S), PowersetCodomain(metric),
                    f"int{fmt_q(r)}")


def post_analysis(metric: FiniteMetric, T: TransitionSystem) -> Analysis:
    return Analysis(lambda S: post(T, S), PowersetCodomain(metric), "post")


def reach_analysis(metric: FiniteMetric, T: TransitionSystem) -> Analysis:
    return Analysis(lambda S: reach(T, S), PowersetCodomain(metric), "reach")


def fatten_analysis(metric: FiniteMetric, r) -> Analysis:
    r = to_q(r)
    return Analysis(lambda S: metric.fatten(S, r), PowersetCodomain(metric), f"fat{fmt_q(r)}")


def singleton_test(metric: FiniteMetric, x: int) -> Analysis:
    """``top`` iff ``S`` is contained in ``{x}``."""
    return Analysis(lambda S: TOP if S <= {x} else BOTTOM, SIGMA, f"only{x}")


def safety_analysis(F: Analysis, E: Iterable[int]) -> Analysis:
    E = frozenset(E)
    return Analysis(lambda S: TOP if not (F(S) & E) else BOTTOM, SIGMA, f"safe({F.name})")


def compose(outer: Analysis, inner: Analysis) -> Analysis:
    return Analysis(lambda S: outer(inner(S)), outer.codomain, f"{outer.name}.{inner.name}")


def meet_union(a: Analysis, b: Analysis) -> Analysis:
    """Pointwise union (a meet under reverse inclusion)."""
    return Analysis(lambda S: a(S) | b(S), a.codomain, f"({a.name}|{b.name})")


def join_inter(a: Analysis, b: Analysis) -> Analysis:
    """Pointwise intersection (a join under reverse inclusion)."""
    return Analysis(lambda S: a(S) & b(S), a.codomain, f"({a.name}&{b.name})")


def random_system(rng: random.Random, n: int, density: float = 0.3) -> TransitionSystem:
    return TransitionSystem(n, frozenset((a, b) for a in range(n) for b in range(n) if rng.random() < density))


def analysis_family(metric: FiniteMetric, rng: random.Random, size: int = 50) -> list[Analysis]:
    """Monotone analyses built from post, reach, fattening, interior, constants,
    pointwise union/intersection, and safety tests into the two-point lattice."""
    n = metric.n
    prims = [identity_analysis(metric)]
    prims += [interior_analysis(metric, r) for r in metric.spectrum()]
    prims += [fatten_analysis(metric, r) for r in metric.spectrum()]
    prims += [constant_analysis(metric, K) for K in (frozenset(), metric.points)]
    prims += [singleton_test(metric, x) for x in range(n)]
    out = list(prims)
    pw = [a for a in prims if isinstance(a.codomain, PowersetCodomain)]
    while len(out) < size:
        kind = rng.randrange(6)
        if kind == 0:
            out.append(post_analysis(metric, random_system(rng, n)))
        elif kind == 1:
            out.append(reach_analysis(metric, random_system(rng, n)))
        elif kind == 2:
            out.append(compose(rng.choice(pw), rng.choice(pw)))
        elif kind == 3:
            out.append(meet_union(rng.choice(pw), rng.choice(pw)))
        elif kind == 4:
            out.append(join_inter(rng.choice(pw), rng.choice(pw)))
        else:
            E = frozenset(x for x in range(n) if rng.random() < 0.5)
            out.append(safety_analysis(rng.choice(pw), E))
    return out


def metrics_up_to(max_points: int, palette: Sequence = (1, Q(3, 2), 2)) -> list[FiniteMetric]:
    """All metrics on ``1..max_points`` points with distances from ``palette``, up to isomorphism."""
    from itertools import permutations, product

    palette = [to_q(v) for v in palette]
    out = []
    for n in range(1, max_points + 1):
        pairs = list(combinations(range(n), 2))
        seen = set()
        for vals in product(palette, repeat=len(pairs)):
            d = [[Q(0)] * n for _ in range(n)]
            for (i, j), v in zip(pairs, vals):
                d[i][j] = d[j][i] = v
            if any(d[i][k] > d[i][j] + d[j][k] for i in range(n) for j in range(n) for k in range(n)):
                continue
            key = min(tuple(d[p[i]][p[j]] for i in range(n) for j in range(n)) for p in permutations(range(n)))
            if key in seen:
                continue
            seen.add(key)
            out.append(FiniteMetric(tuple(tuple(r) for r in d)))
    return out


__all__ = [
    "Analysis", "BOTTOM", "BoxReport", "FiniteMetric", "LatticeCodomain", "PowersetCodomain", "SIGMA",
    "ScheduleError", "SystemInputError", "TOP", "TransitionSystem", "analysis_family", "box_analysis", "box_robust",
    "box_robust_eq_fixpoint_property", "brute_box", "compose", "constant_analysis", "default_schedule",
    "delta_representatives", "fatten_analysis", "fattened_join", "identity_analysis", "interior_analysis",
    "is_robust", "join_inter", "meet_union", "metrics_up_to", "paths_reach", "post", "post_analysis",
    "post_map", "reach", "reach_analysis", "random_system", "robustness_violation", "safety",
    "safety_analysis", "singleton_test", "wp", "wp_via_adjoint",
]
