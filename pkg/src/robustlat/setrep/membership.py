"""Certified membership: exact containment, prefix gaps and weak-* closure.

A point ``x`` is in the weak-* closure of a bounded set ``C`` iff for every
prefix length ``n`` the prefix gap

    gap(C, x, n) = inf { max_{i<n} |x_i - y_i| : y in C }

is zero. Every solver below returns a bracket ``[lo, hi]`` on that infimum;
``hi`` is ``None`` when no upper bound was certified. For all supported
classes the infimum is attained, so ``lo >= delta`` rules out every ``y``
with prefix distance ``< delta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

from ..seqspace import (
    DEFAULT_TOL, INF, Q, SeqVec, _bits_for, _dist_from_terms, exact_power, fmt_p, fmt_q, norm, root_bracket,
)
from .expr import (
    Ball, Fatten, Intersection, Interval, KernelSlice, Points, SetExpr, SetExprError, Sphere, TruncImage, Union,
    UnitVectors, expr_length,
)

IN, OUT, UNKNOWN = "In", "Out", "Unknown"


@dataclass(frozen=True)
class Cert:
    """No ``y`` in the set has ``max_{i<n} |x_i - y_i| < delta``; ``bound`` is the certified gap."""

    n: int
    delta: object
    bound: object

    def to_json(self):
        return {"n": self.n, "delta": fmt_q(self.delta), "bound": fmt_q(self.bound)}


@dataclass(frozen=True)
class TriState:
    verdict: str
    witness: str | None = None
    cert: Cert | None = None
    lo: object = None
    hi: object = None
    note: str = ""

    def __post_init__(self):
        if self.verdict not in (IN, OUT, UNKNOWN):
            raise ValueError(f"bad verdict {self.verdict}")
        if self.cert is not None and self.cert.bound < self.cert.delta:
            raise ValueError("certificate bound below its delta")

    @property
    def is_in(self) -> bool:
        return self.verdict == IN

    @property
    def is_out(self) -> bool:
        return self.verdict == OUT

    def to_json(self) -> dict:
        out = {"verdict": self.verdict}
        if self.witness:
            out["witness"] = self.witness
        if self.cert:
            out["cert"] = self.cert.to_json()
        if self.verdict == UNKNOWN:
            out["bounds"] = [None if self.lo is None else fmt_q(self.lo), None if self.hi is None else fmt_q(self.hi)]
        if self.note:
            out["note"] = self.note
        return out


_IN = TriState(IN)
_OUT = TriState(OUT)


def _tri(b: bool | None, note: str = "") -> TriState:
    if b is None:
        return TriState(UNKNOWN, note=note)
    return _IN if b else _OUT


_ZERO = Q(0)
_MPQ = type(_ZERO)


def _max_bits(tol) -> int:
    return max(256, 2 * _bits_for(tol))


# ---------------------------------------------------------------- contains

def _ball_le(diffs: Iterable, r, p, tol) -> bool | None:
    """``||diffs||_p <= r`` decided exactly where possible."""
    if p == 2:
        return sum((d * d for d in diffs), Q(0)) <= r * r
    if p == INF:
        return max((abs(d) for d in diffs), default=Q(0)) <= r
    if p == 1:
        return sum((abs(d) for d in diffs), Q(0)) <= r
    return _dist_from_terms(list(diffs), p, tol).le(r, _max_bits(tol))


def _diffs(x: SeqVec, c: SeqVec) -> list:
    xc, cc = x._c, c._c
    if not cc:
        return list(xc.values())
    z = Q(0)
    return [xc.get(i, z) - cc.get(i, z) for i in xc.keys() | cc.keys()]


def _ball_contains(b: Ball, x: SeqVec, tol) -> bool | None:
    if b.p == 2:
        # one pass over both supports; the hot path of the grid checks
        xc, cc = x._c, b.center._c
        s = _ZERO
        for i, c in cc.items():
            d = xc.get(i, _ZERO) - c
            s += d * d
        for i, v in xc.items():
            if i not in cc:
                s += v * v
        return s <= b.r2
    return _ball_le(_diffs(x, b.center), b.r, b.p, tol)


def _interval_contains(iv: Interval, x: SeqVec) -> bool:
    b, xc = iv.bounds, x._c
    if not xc.keys() <= b.keys():
        return False  # nonzero where both bounds vanish
    z = _ZERO
    for i, (lo, hi) in b.items():
        v = xc.get(i, z)
        if v < lo or v > hi:
            return False
    return True


def _unit_index(x: SeqVec) -> int | None:
    items = list(x.items())
    if len(items) == 1 and items[0][1] == 1:
        return items[0][0]
    return None


def _dist_le(e: SetExpr, x: SeqVec, delta, p, tol) -> bool | None:
    """Is the ``p``-distance from ``x`` to ``e`` at most ``delta``?"""
    if isinstance(e, Ball):
        if e.p == p:
            return _ball_contains(Ball(e.center, e.r + delta, p), x, tol)
        return True if _ball_contains(e, x, tol) else None
    if isinstance(e, Points):
        res = [_ball_le(_diffs(x, y), delta, p, tol) for y in e.pts]
        return True if any(res) else (None if None in res else False)
    if isinstance(e, UnitVectors):
        cand = [SeqVec.unit(i) for i in x.support() if e.count is None or i < e.count]
        free = next(i for i in range(x.length() + 1) if x[i] == 0)
        if e.count is None or free < e.count:
            cand.append(SeqVec.unit(free))
        res = [_ball_le(_diffs(x, y), delta, p, tol) for y in cand]
        return True if any(res) else (None if None in res else False)
    if isinstance(e, Interval):
        exc = []
        for i in set(x.support()) | set(e.lo.support()) | set(e.hi.support()):
            v = x[i]
            exc.append(max(Q(0), e.lo[i] - v, v - e.hi[i]))
        return _ball_le(exc, delta, p, tol)
    if isinstance(e, Sphere) and e.p == p:
        d = norm(x, p, tol)
        hi = d.le(e.r + delta, _max_bits(tol))
        lo = True if e.r <= delta else d.lt(e.r - delta, _max_bits(tol))
        if hi is None or lo is None:
            return None
        return hi and not lo
    if isinstance(e, Union):
        res = [_dist_le(c, x, delta, p, tol) for c in e.items]
        return True if any(res) else (None if None in res else False)
    if isinstance(e, Fatten) and e.p == p:
        return _dist_le(e.child, x, delta + e.delta, p, tol)
    c = contains(e, x, tol)
    return True if c.is_in else None


def _c_union(e, x, tol):
    unknown = False
    for c in e.items:
        t = contains(c, x, tol)
        if t.verdict == IN:
            return _IN
        unknown |= t.verdict == UNKNOWN
    return TriState(UNKNOWN) if unknown else _OUT


def _c_intersection(e, x, tol):
    unknown = False
    for c in e.items:
        t = contains(c, x, tol)
        if t.verdict == OUT:
            return _OUT
        unknown |= t.verdict == UNKNOWN
    return TriState(UNKNOWN) if unknown else _IN


def _c_kernel(e, x, tol):
    if e.phi(x) != e.level:
        return _OUT
    return contains(e.within, x, tol)


def _c_units(e, x, tol):
    i = _unit_index(x)
    return _tri(i is not None and (e.count is None or i < e.count))


_CONTAINS = {
    Ball: lambda e, x, tol: _tri(_ball_contains(e, x, tol)),
    Interval: lambda e, x, tol: _tri(_interval_contains(e, x)),
    Points: lambda e, x, tol: _tri(x in e.pts),
    UnitVectors: _c_units,
    Sphere: lambda e, x, tol: _tri(norm(x, e.p, tol).eq(e.r, _max_bits(tol))),
    KernelSlice: _c_kernel,
    Union: _c_union,
    Intersection: _c_intersection,
    Fatten: lambda e, x, tol: _tri(_dist_le(e.child, x, e.delta, e.p, tol)),
}


def contains(e: SetExpr, x: SeqVec, tol=DEFAULT_TOL) -> TriState:
    """Exact membership ``x in e``; ``Unknown`` only when a root comparison
    cannot be settled or the node has no decision procedure."""
    f = _CONTAINS.get(type(e))
    if f is None:
        raise SetExprError(f"unsupported node {type(e).__name__}")
    return f(e, x, tol)


def _trunc_contains(e: TruncImage, x: SeqVec, tol) -> TriState:
    n = e.n
    if any(i >= n or abs(v) > n for i, v in x.items()):
        return _OUT
    if n == 0:
        return _IN if contains_any(e.child, tol) else TriState(UNKNOWN)
    if any(abs(v) == n for _, v in x.items()):
        return TriState(UNKNOWN, note="clamp boundary")
    lo, hi = prefix_gap(e.child, x, n, tol)
    if hi == 0:
        return _IN
    if lo > 0:
        return _OUT
    return TriState(UNKNOWN, lo=lo, hi=hi)


_CONTAINS[TruncImage] = lambda e, x, tol: _trunc_contains(e, x, tol)


def contains_any(e: SetExpr, tol=DEFAULT_TOL) -> bool:
    """Cheap nonemptiness witness search (see :func:`sample_member`)."""
    return sample_member(e, tol) is not None


# ---------------------------------------------------------------- gap solvers

def ball_gap(a: list, R, p, tol=DEFAULT_TOL) -> tuple:
    """Least ``t >= 0`` with ``sum_i max(0, a_i - t)**p <= R**p`` (``a_i >= 0``).

    Exact for ``p`` in {1, inf}; for ``p = 2`` the active-set quadratic is
    solved in closed form with a bracketed square root; other ``p`` bisect.
    """
    a = sorted((v if type(v) is _MPQ else Q(v) for v in a if v), reverse=True)
    R = Q(R)
    if not a:
        return Q(0), Q(0)
    if p == INF:
        t = max(Q(0), a[0] - R)
        return t, t
    if _ball_le(a, R, p, tol):
        return Q(0), Q(0)
    m = len(a)
    if p == 1:
        s = Q(0)
        for k in range(1, m + 1):
            s += a[k - 1]
            t = (s - R) / k
            nxt = a[k] if k < m else Q(0)
            if t >= nxt:
                return t, t
        raise AssertionError("unreachable")
    if p == 2:
        s1 = s2 = Q(0)
        for k in range(1, m + 1):
            s1 += a[k - 1]
            s2 += a[k - 1] ** 2
            nxt = a[k] if k < m else Q(0)
            # value of the objective at the next breakpoint with k active terms
            f = s2 - 2 * nxt * s1 + k * nxt * nxt
            if f > R * R or k == m:
                disc = s1 * s1 - k * (s2 - R * R)
                lo, hi = root_bracket(disc, 2, _bits_for(tol) + 2)
                return (s1 - hi) / k, (s1 - lo) / k
        raise AssertionError("unreachable")
    lo, hi = Q(0), a[0]
    bits = _max_bits(tol)
    while hi - lo > Q(tol):
        mid = (lo + hi) / 2
        ok = _dist_from_terms([max(Q(0), v - mid) for v in a], p, tol).le(R, bits)
        if ok is None:
            break
        if ok:
            hi = mid
        else:
            lo = mid
    return lo, hi


def _min_bracket(brs: list) -> tuple:
    lo = min(b[0] for b in brs)
    his = [b[1] for b in brs if b[1] is not None]
    return lo, (min(his) if his else None)


def _points_gap(pts: Iterable[SeqVec], x: SeqVec, n: int):
    best = None
    for y in pts:
        g = max((abs(x[i] - y[i]) for i in range(n)), default=Q(0))
        if best is None or g < best:
            best = g
    return best


_EARLY_GAP = Q(1, 16)


def _g_ball(e, x, n, tol, upper):
    xc, cc, z = x._c, e.center._c, Q(0)
    return ball_gap([abs(xc.get(i, z) - cc.get(i, z)) for i in range(n)], e.r, e.p, tol)


def _g_sphere(e, x, n, tol, upper):
    # the tail can absorb any missing mass, so the prefix sees the whole ball
    return ball_gap([abs(v) for i, v in x.items() if i < n], e.r, e.p, tol)


def _g_interval(e, x, n, tol, upper):
    b, xc, z = e.bounds, x._c, _ZERO
    g = z
    for i, (lo, hi) in b.items():
        if i < n:
            v = xc.get(i, z)
            if v < lo:
                g = max(g, lo - v)
            elif v > hi:
                g = max(g, v - hi)
    for i, v in xc.items():
        if i < n and i not in b:
            g = max(g, abs(v))
    return g, g


def _g_points(e, x, n, tol, upper):
    g = _points_gap(e.pts, x, n)
    return g, g


def _g_units(e, x, n, tol, upper):
    k = n if e.count is None else min(n, e.count)
    cands = [SeqVec.unit(j) for j in range(k)]
    if e.count is None or e.count > n:
        cands.append(SeqVec())  # prefix of any e_j with j >= n
    g = _points_gap(cands, x, n)
    return g, g


def _g_kernel(e, x, n, tol, upper):
    if e.is_ones_l1:
        half = e.within.r / 2
        pos = [v for i, v in x.items() if i < n and v > 0]
        neg = [-v for i, v in x.items() if i < n and v < 0]
        lp, hp = ball_gap(pos, half, 1, tol)
        ln, hn = ball_gap(neg, half, 1, tol)
        return max(lp, ln), max(hp, hn)
    lo, _ = prefix_gap(e.within, x, n, tol, upper)
    return lo, None


def _g_union(e, x, n, tol, upper):
    brs = []
    for c in e.items:
        br = prefix_gap(c, x, n, tol, upper)
        if not upper and br[0] == 0:
            return br[0], None  # the minimum is already known
        brs.append(br)
    return _min_bracket(brs)


def _g_intersection(e, x, n, tol, upper):
    lo = Q(0)
    for c in e.items:
        lo = max(lo, prefix_gap(c, x, n, tol, upper)[0])
        if not upper and lo >= _EARLY_GAP:
            return lo, None  # large enough for any certificate we issue by default
    return lo, (_intersection_upper(e, x, n, tol) if upper else None)


def _g_trunc(e, x, n, tol, upper):
    lo = max((abs(v) for i, v in x.items() if e.n <= i < n), default=Q(0))
    return lo, None


def prefix_gap(e: SetExpr, x: SeqVec, n: int, tol=DEFAULT_TOL, upper: bool = True) -> tuple:
    """Bracket ``[lo, hi]`` on ``inf_{y in e} max_{i<n} |x_i - y_i|``.

    With ``upper=False`` the (costly) alternating-projection upper bound for
    intersections is skipped and ``hi`` may be ``None``.
    """
    if n < 1:
        raise ValueError("prefix length must be >= 1")
    f = _GAP.get(type(e))
    if f is None:
        raise SetExprError(f"unsupported node {type(e).__name__}")
    return f(e, x, n, tol, upper)


def _fatten_gap(e: Fatten, x: SeqVec, n: int, tol, upper: bool = True):
    c, d, p = e.child, e.delta, e.p
    if isinstance(c, Ball) and c.p == p:
        return prefix_gap(Ball(c.center, c.r + d, p), x, n, tol)
    if isinstance(c, Interval):
        a = [max(Q(0), c.lo[i] - x[i], x[i] - c.hi[i]) for i in range(n)]
        return ball_gap(a, d, p, tol)
    if isinstance(c, Points):
        return _min_bracket([prefix_gap(Ball(y, d, p), x, n, tol) for y in c.pts])
    if isinstance(c, Union):
        return _min_bracket([prefix_gap(Fatten(k, d, p), x, n, tol, upper) for k in c.items])
    lo, hi = prefix_gap(c, x, n, tol, upper)
    # |y_i - c_i| <= ||y - c||_p <= d
    return max(Q(0), lo - d), hi


_GAP = {
    Ball: _g_ball, Sphere: _g_sphere, Interval: _g_interval, Points: _g_points, UnitVectors: _g_units,
    KernelSlice: _g_kernel, Union: _g_union, Intersection: _g_intersection, Fatten: _fatten_gap,
    TruncImage: _g_trunc,
}


# ---------------------------------------------------------------- candidates

def _floatvec(x: SeqVec, dim: int) -> list[float]:
    return [float(x[i]) for i in range(dim)]


def _project(e: SetExpr, y: list[float]) -> list[float] | None:
    """Point of ``e`` near ``y`` (a heuristic projection, float arithmetic)."""
    dim = len(y)
    if isinstance(e, Ball):
        c = _floatvec(e.center, dim)
        d = [a - b for a, b in zip(y, c)]
        r = float(e.r)
        if e.p == INF:
            return [ci + max(-r, min(r, di)) for ci, di in zip(c, d)]
        pf = float(e.p)
        nrm = sum(abs(v) ** pf for v in d) ** (1 / pf)
        if nrm <= r:
            return y
        return [ci + di * r / nrm for ci, di in zip(c, d)]
    if isinstance(e, Interval):
        return [max(float(e.lo[i]), min(float(e.hi[i]), y[i])) for i in range(dim)]
    if isinstance(e, Points):
        best = min(e.pts, key=lambda q: sum((float(q[i]) - y[i]) ** 2 for i in range(dim)))
        return _floatvec(best, dim)
    if isinstance(e, Union):
        opts = [_project(c, y) for c in e.items]
        opts = [o for o in opts if o is not None]
        if not opts:
            return None
        return min(opts, key=lambda o: sum((a - b) ** 2 for a, b in zip(o, y)))
    if isinstance(e, Intersection):
        for _ in range(50):
            for c in e.items:
                y = _project(c, y)
                if y is None:
                    return None
        return y
    return None


def _rationalize(y: list[float], bits: int = 30) -> SeqVec:
    return SeqVec({i: Q(round(v * (1 << bits)), 1 << bits) for i, v in enumerate(y)})


def _intersection_upper(e: Intersection, x: SeqVec, n: int, tol, rounds: int = 200):
    """Upper bound from alternating projections, verified exactly."""
    dim = max(n, x.length(), expr_length(e))
    if dim == 0 or dim > 64:
        return None
    y = _floatvec(x, dim)
    for _ in range(max(1, rounds // max(1, len(e.items)))):
        for c in e.items:
            y2 = _project(c, y)
            if y2 is None:
                return None
            y = y2
    for bits in (40, 20, 10):
        cand = _rationalize(y, bits)
        if contains(e, cand, tol).is_in:
            return max((abs(x[i] - cand[i]) for i in range(n)), default=Q(0))
        # pull slightly towards the centre of the first ball, if any
        cen = next((c.center for c in e.items if isinstance(c, Ball)), None)
        if cen is not None:
            shrink = [(1 - 2.0 ** -bits) * v + 2.0 ** -bits * float(cen[i]) for i, v in enumerate(y)]
            cand = _rationalize(shrink, bits + 4)
            if contains(e, cand, tol).is_in:
                return max((abs(x[i] - cand[i]) for i in range(n)), default=Q(0))
    return None


def sample_member(e: SetExpr, tol=DEFAULT_TOL) -> SeqVec | None:
    """Some point certified to lie in ``e``, or ``None``."""
    cands: list[SeqVec] = []

    def seeds(s: SetExpr):
        if isinstance(s, Ball):
            cands.append(s.center)
        elif isinstance(s, Interval):
            cands.append(SeqVec({i: (s.lo[i] + s.hi[i]) / 2 for i in s.indices()}))
            cands.append(s.lo)
        elif isinstance(s, Points):
            cands.extend(s.pts)
        elif isinstance(s, UnitVectors):
            cands.append(SeqVec.unit(0))
        elif isinstance(s, Sphere):
            cands.append(SeqVec.unit(0, s.r))
        elif isinstance(s, KernelSlice):
            cands.append(SeqVec())
            seeds(s.within)
        elif isinstance(s, (Union, Intersection)):
            for c in s.items:
                seeds(c)
        elif isinstance(s, Fatten):
            seeds(s.child)
        elif isinstance(s, TruncImage):
            seeds(s.child)

    seeds(e)
    if not isinstance(e, (Points, UnitVectors)):
        dim = max(1, expr_length(e))
        for c in list(cands):
            y = _project(e, _floatvec(c, dim))
            if y is not None:
                cands.extend(_rationalize(y, b) for b in (40, 16, 8))
    for c in cands:
        if contains(e, c, tol).is_in:
            return c
    return None


# ---------------------------------------------------------------- witnesses

@dataclass(frozen=True)
class PaddedVec:
    """``prefix`` plus a single coordinate at ``pad_index`` whose
    ``|.|**p`` equals ``pad_power`` (the coordinate itself may be irrational)."""

    prefix: SeqVec
    pad_index: int
    pad_power: object
    p: object

    def power_sum(self):
        """Exact ``||y||_p**p`` or ``None`` if a prefix term is irrational."""
        terms = [exact_power(v, self.p) for _, v in self.prefix.items()]
        if any(t is None for t in terms):
            return None
        return sum(terms, Q(0)) + self.pad_power

    def pad_value(self):
        """The pad coordinate when it is rational."""
        if self.p == INF:
            return self.pad_power
        a, b = int(Q(self.p).numerator), int(Q(self.p).denominator)
        from ..seqspace import exact_root

        r = exact_root(Q(self.pad_power) ** b, a)
        return r

    def as_seqvec(self) -> SeqVec | None:
        v = self.pad_value()
        if v is None:
            return None
        c = self.prefix.coords
        c[self.pad_index] = v
        return SeqVec(c)


@dataclass(frozen=True)
class Witness:
    """Recipe producing, for each prefix length, a point of the set agreeing with ``x`` there."""

    name: str
    build: Callable[[int], object] = field(compare=False)


def _sphere_pad(e: SetExpr, x: SeqVec, tol):
    if not isinstance(e, Sphere):
        return None
    if not _ball_contains(Ball(SeqVec(), e.r, e.p), x, tol):
        return None
    r, p = e.r, e.p

    def build(n: int):
        pre = x.prefix(n)
        if p == INF:
            return PaddedVec(pre, n, r, p)
        rp = exact_power(r, p)
        terms = [exact_power(v, p) for _, v in pre.items()]
        if rp is None or any(t is None for t in terms):
            return PaddedVec(pre, n, None, p)
        return PaddedVec(pre, n, rp - sum(terms, Q(0)), p)

    return Witness("sphere-pad", build)


def _unit_tail(e: SetExpr, x: SeqVec, tol):
    if isinstance(e, UnitVectors) and e.count is None and not x.support():
        return Witness("unit-vector-tail", lambda n: SeqVec.unit(n))
    return None


def _mirror(e: SetExpr, x: SeqVec, tol):
    if not (isinstance(e, KernelSlice) and e.is_ones_l1):
        return None
    if sum((abs(v) for _, v in x.items()), Q(0)) > e.within.r / 2:
        return None

    def build(n: int):
        c = {i: v for i, v in x.items() if i < n}
        for i, v in list(c.items()):
            c[n + i] = -v
        return SeqVec(c)

    return Witness("mirror", build)


def _balance_pad(e: SetExpr, x: SeqVec, tol):
    if not (isinstance(e, KernelSlice) and e.is_ones_l1):
        return None
    half = e.within.r / 2
    pos = sum((v for _, v in x.items() if v > 0), Q(0))
    neg = sum((-v for _, v in x.items() if v < 0), Q(0))
    if pos > half or neg > half:
        return None

    def build(n: int):
        c = {i: v for i, v in x.items() if i < n}
        s = sum(c.values(), Q(0))
        if s:
            c[n] = -s
        return SeqVec(c)

    return Witness("balance-pad", build)


WITNESSES: list[Callable] = [_sphere_pad, _unit_tail, _mirror, _balance_pad]


def check_witness(e: SetExpr, x: SeqVec, w: Witness, n: int, tol=DEFAULT_TOL) -> bool:
    """The point built for prefix length ``n`` lies in ``e`` and matches ``x`` below ``n``."""
    y = w.build(n)
    if isinstance(y, PaddedVec):
        if y.pad_index < n or any(i >= n for i in y.prefix.support()):
            return False
        if any(y.prefix[i] != x[i] for i in range(n)):
            return False
        if y.p == INF:
            return max((abs(v) for _, v in y.prefix.items()), default=Q(0)) <= y.pad_power == e.r
        if y.pad_power is None:
            # pad exists since ||x_<n||_p <= ||x||_p <= r; not exactly representable
            return bool(_ball_contains(Ball(SeqVec(), e.r, e.p), y.prefix, tol))
        return y.pad_power >= 0 and y.power_sum() == exact_power(e.r, e.p)
    return all(y[i] == x[i] for i in range(n)) and contains(e, y, tol).is_in


def find_witness(e: SetExpr, x: SeqVec, n_max: int, tol=DEFAULT_TOL) -> Witness | None:
    for make in WITNESSES:
        w = make(e, x, tol)
        if w is not None and all(check_witness(e, x, w, n, tol) for n in range(1, n_max + 1)):
            return w
    return None


# ---------------------------------------------------------------- closure membership

def in_closure(e: SetExpr, x: SeqVec, n_max: int = 8, delta_min=Q(1, 1024), tol=DEFAULT_TOL) -> TriState:
    """Three-valued weak-* closure membership.

    ``In`` needs an exact member or a registered witness recipe; ``Out``
    carries ``(n, delta, bound)`` with the certified gap ``bound >= delta
    >= delta_min``; everything else is ``Unknown`` with the last bracket.
    """
    if n_max < 1 or Q(delta_min) <= 0:
        raise ValueError("n_max >= 1 and delta_min > 0 required")
    delta_min = Q(delta_min)
    t = contains(e, x, tol)
    if t.is_in:
        return TriState(IN, witness="member")
    w = _closure_witness(e, x, n_max, tol)
    if w is not None:
        return TriState(IN, witness=w)
    cover = min(max(1, x.length(), expr_length(e)), n_max)
    for n in [cover] + [k for k in range(1, n_max + 1) if k != cover]:
        lo, _ = prefix_gap(e, x, n, tol, upper=False)
        if lo > 0 and lo >= delta_min:
            return TriState(OUT, cert=Cert(n, lo, lo))
    lo, hi = prefix_gap(e, x, n_max, tol)
    return TriState(UNKNOWN, lo=lo, hi=hi, note=f"no certificate up to n={n_max}")


def _closure_witness(e: SetExpr, x: SeqVec, n_max: int, tol) -> str | None:
    w = find_witness(e, x, n_max, tol)
    if w is not None:
        return w.name
    if isinstance(e, Union):
        for c in e.items:
            if contains(c, x, tol).is_in:
                return "member"
            name = _closure_witness(c, x, n_max, tol)
            if name is not None:
                return name
    return None


__all__ = [
    "Cert", "IN", "OUT", "PaddedVec", "TriState", "UNKNOWN", "WITNESSES", "Witness", "ball_gap", "check_witness",
    "contains", "find_witness", "in_closure", "prefix_gap", "sample_member",
]
