"""Symbolic closed subsets of sequence spaces and their JSON form."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union as _U

from ..seqspace import INF, Q, SeqVec, fmt_p, fmt_q, parse_p, to_q


class SetExprError(ValueError):
    """Malformed set expression."""


class SetExpr:
    """Base class of the AST; every node is an immutable dataclass."""

    def to_json(self) -> dict:  # pragma: no cover - overridden
        raise NotImplementedError

    def __or__(self, other: SetExpr) -> Union:
        return Union((self, other))

    def __and__(self, other: SetExpr) -> Intersection:
        return Intersection((self, other))


def _q_pos(v, what: str):
    q = to_q(v)
    if q <= 0:
        raise SetExprError(f"{what} must be positive")
    return q


@dataclass(frozen=True)
class Ball(SetExpr):
    center: SeqVec
    r: object
    p: object = Q(2)

    def __post_init__(self):
        object.__setattr__(self, "r", _q_pos(self.r, "radius"))
        object.__setattr__(self, "p", parse_p(self.p))

    @cached_property
    def r2(self):
        return self.r * self.r

    def to_json(self):
        return {"ball": {"center": self.center.to_json(), "r": fmt_q(self.r), "p": fmt_p(self.p)}}


def omega(p=2, r=1) -> Ball:
    """Closed ball of radius ``r`` about the origin."""
    return Ball(SeqVec(), r, p)


@dataclass(frozen=True)
class Interval(SetExpr):
    """``{u | lo_i <= u_i <= hi_i for all i}``; zero outside the joint support."""

    lo: SeqVec
    hi: SeqVec

    def __post_init__(self):
        for i in set(self.lo.support()) | set(self.hi.support()):
            if self.lo[i] > self.hi[i]:
                raise SetExprError(f"interval bounds cross at coordinate {i}")

    def indices(self) -> list[int]:
        return sorted(set(self.lo.support()) | set(self.hi.support()))

    @cached_property
    def bounds(self) -> dict:
        """``i -> (lo_i, hi_i)`` over the joint support."""
        return {i: (self.lo[i], self.hi[i]) for i in self.indices()}

    def to_json(self):
        return {"interval": {"lo": self.lo.to_json(), "hi": self.hi.to_json()}}


@dataclass(frozen=True)
class Points(SetExpr):
    pts: tuple

    def __post_init__(self):
        object.__setattr__(self, "pts", tuple(self.pts))
        if not self.pts:
            raise SetExprError("Points needs at least one point")

    def to_json(self):
        return {"points": [x.to_json() for x in self.pts]}


@dataclass(frozen=True)
class UnitVectors(SetExpr):
    """``{e_i | i < count}``; ``count=None`` is the whole infinite family."""

    count: int | None = None

    def __post_init__(self):
        if self.count is not None and self.count < 1:
            raise SetExprError("count must be >= 1")

    def to_json(self):
        return {"unit_vectors": {"count": self.count}}


@dataclass(frozen=True)
class Sphere(SetExpr):
    """``{x | ||x||_p = r}`` about the origin."""

    r: object
    p: object = Q(2)

    def __post_init__(self):
        object.__setattr__(self, "r", _q_pos(self.r, "radius"))
        object.__setattr__(self, "p", parse_p(self.p))

    def to_json(self):
        return {"sphere": {"r": fmt_q(self.r), "p": fmt_p(self.p)}}


@dataclass(frozen=True)
class KernelSlice(SetExpr):
    """``{x in within | phi(x) = level}``.

    ``functional`` is ``"ones"`` (``phi(x) = sum x_i``) or a finite
    coefficient vector.
    """

    functional: object
    level: object
    within: Ball

    def __post_init__(self):
        if not (self.functional == "ones" or isinstance(self.functional, SeqVec)):
            raise SetExprError("functional must be 'ones' or a coefficient vector")
        object.__setattr__(self, "level", to_q(self.level))
        if not isinstance(self.within, Ball):
            raise SetExprError("kernel slices live inside a ball")

    @property
    def is_ones_l1(self) -> bool:
        """The worked case: all-ones functional, level 0, centred l1 ball."""
        w = self.within
        return self.functional == "ones" and self.level == 0 and w.p == 1 and not w.center.support()

    def phi(self, x: SeqVec):
        if self.functional == "ones":
            return sum((v for _, v in x.items()), Q(0))
        return sum((c * x[i] for i, c in self.functional.items()), Q(0))

    def to_json(self):
        f = "ones" if self.functional == "ones" else self.functional.to_json()
        return {"kernel": {"functional": f, "level": fmt_q(self.level), "within": self.within.to_json()}}


@dataclass(frozen=True)
class Union(SetExpr):
    items: tuple

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if not self.items:
            raise SetExprError("empty union")

    def to_json(self):
        return {"union": [c.to_json() for c in self.items]}


@dataclass(frozen=True)
class Intersection(SetExpr):
    items: tuple

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if not self.items:
            raise SetExprError("empty intersection")

    def to_json(self):
        return {"intersection": [c.to_json() for c in self.items]}


@dataclass(frozen=True)
class Fatten(SetExpr):
    """Closed ``delta``-neighbourhood of ``child`` in the ``p``-norm."""

    child: SetExpr
    delta: object
    p: object = Q(2)

    def __post_init__(self):
        object.__setattr__(self, "delta", _q_pos(self.delta, "delta"))
        object.__setattr__(self, "p", parse_p(self.p))

    def to_json(self):
        return {"fatten": {"set": self.child.to_json(), "delta": fmt_q(self.delta), "p": fmt_p(self.p)}}


@dataclass(frozen=True)
class TruncImage(SetExpr):
    """Image of ``child`` under the truncation ``g_n``."""

    child: SetExpr
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise SetExprError("truncation index must be >= 0")

    def to_json(self):
        return {"trunc": {"set": self.child.to_json(), "n": self.n}}


Expr = _U[Ball, Interval, Points, UnitVectors, Sphere, KernelSlice, Union, Intersection, Fatten, TruncImage]


def fatten(e: SetExpr, delta, p=None) -> SetExpr:
    """Symbolic ``delta``-fattening; balls stay balls when the norms agree."""
    delta = _q_pos(delta, "delta")
    if isinstance(e, Ball) and (p is None or parse_p(p) == e.p):
        return Ball(e.center, e.r + delta, e.p)
    p = Q(2) if p is None else parse_p(p)
    if isinstance(e, Points):
        balls = tuple(Ball(x, delta, p) for x in e.pts)
        return balls[0] if len(balls) == 1 else Union(balls)
    if isinstance(e, Union):
        return Union(tuple(fatten(c, delta, p) for c in e.items))
    if isinstance(e, Fatten) and e.p == p:
        return Fatten(e.child, e.delta + delta, p)
    return Fatten(e, delta, p)


def expr_length(e: SetExpr) -> int:
    """One past the last coordinate any parameter of ``e`` touches (memoized on the node)."""
    n = e.__dict__.get("_length")
    if n is None:
        n = _expr_length(e)
        object.__setattr__(e, "_length", n)
    return n


def _expr_length(e: SetExpr) -> int:
    if isinstance(e, Ball):
        return e.center.length()
    if isinstance(e, Interval):
        return max(e.lo.length(), e.hi.length())
    if isinstance(e, Points):
        return max(x.length() for x in e.pts)
    if isinstance(e, UnitVectors):
        return e.count or 0
    if isinstance(e, KernelSlice):
        f = 0 if e.functional == "ones" else e.functional.length()
        return max(f, expr_length(e.within))
    if isinstance(e, (Union, Intersection)):
        return max(expr_length(c) for c in e.items)
    if isinstance(e, Fatten):
        return expr_length(e.child)
    if isinstance(e, TruncImage):
        return min(e.n, expr_length(e.child))
    return 0


def from_json(obj) -> SetExpr:
    """Parse the JSON AST (see the README for the schema)."""
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SetExprError(f"set node must be a single-key object, got {obj!r}")
    (kind, body), = obj.items()
    try:
        if kind == "ball":
            return Ball(SeqVec.from_json(body.get("center", {"coords": {}})), body["r"], body.get("p", "2"))
        if kind == "interval":
            return Interval(SeqVec.from_json(body["lo"]), SeqVec.from_json(body["hi"]))
        if kind == "points":
            return Points(tuple(SeqVec.from_json(x) for x in body))
        if kind == "unit_vectors":
            return UnitVectors(body.get("count") if isinstance(body, dict) else None)
        if kind == "sphere":
            return Sphere(body["r"], body.get("p", "2"))
        if kind == "kernel":
            f = body.get("functional", "ones")
            f = f if f == "ones" else SeqVec.from_json(f)
            return KernelSlice(f, body.get("level", "0"), from_json(body["within"]))
        if kind == "union":
            return Union(tuple(from_json(c) for c in body))
        if kind == "intersection":
            return Intersection(tuple(from_json(c) for c in body))
        if kind == "fatten":
            return Fatten(from_json(body["set"]), body["delta"], body.get("p", "2"))
        if kind == "trunc":
            return TruncImage(from_json(body["set"]), int(body["n"]))
    except (KeyError, TypeError, AttributeError) as exc:
        raise SetExprError(f"bad {kind} node: {exc}") from exc
    raise SetExprError(f"unknown set node {kind!r}")


__all__ = [
    "Ball", "Expr", "Fatten", "INF", "Intersection", "Interval", "KernelSlice", "Points", "SetExpr",
    "SetExprError", "Sphere", "TruncImage", "Union", "UnitVectors", "expr_length", "fatten", "from_json", "omega",
]
