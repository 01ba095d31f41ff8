"""Closure brackets and the no-loss-of-precision classifier."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..seqspace import DEFAULT_TOL, INF, Q, SeqVec, fmt_p, norm, parse_p
from .expr import (
    Ball, Fatten, Intersection, Interval, KernelSlice, Points, SetExpr, Sphere, TruncImage, Union, UnitVectors,
)
from .membership import contains, sample_member


class EmptinessUndecided(ValueError):
    """No point of the set could be exhibited, so nonemptiness is open."""


@dataclass(frozen=True)
class ClosureBracket:
    """``inner <= closure(e) <= outer``; ``outer=None`` means no bound was found."""

    inner: SetExpr
    outer: SetExpr | None
    exact: bool = False
    note: str = ""

    def to_json(self) -> dict:
        return {
            "inner": self.inner.to_json(),
            "outer": None if self.outer is None else self.outer.to_json(),
            "exact": self.exact,
            "note": self.note,
        }


def _exact(e: SetExpr, closed: SetExpr | None = None, note: str = "") -> ClosureBracket:
    c = e if closed is None else closed
    return ClosureBracket(c, c, True, note)


def norm_bound(e: SetExpr, p) -> object | None:
    """Rational upper bound on ``||y||_p`` over ``y`` in ``e``, or ``None``."""
    p = parse_p(p)
    if isinstance(e, Ball):
        if e.p > p or (e.p == INF and p != INF):
            return None  # an l_q ball with q > p is unbounded in the p-norm
        return norm(e.center, p).hi + e.r
    if isinstance(e, Sphere):
        return e.r if e.p <= p else None
    if isinstance(e, Interval):
        corner = SeqVec({i: max(abs(e.lo[i]), abs(e.hi[i])) for i in e.indices()})
        return norm(corner, p).hi
    if isinstance(e, Points):
        return max(norm(x, p).hi for x in e.pts)
    if isinstance(e, UnitVectors):
        return Q(1)
    if isinstance(e, KernelSlice):
        return norm_bound(e.within, p)
    if isinstance(e, Union):
        bs = [norm_bound(c, p) for c in e.items]
        return None if None in bs else max(bs)
    if isinstance(e, Intersection):
        bs = [b for b in (norm_bound(c, p) for c in e.items) if b is not None]
        return min(bs) if bs else None
    if isinstance(e, Fatten):
        b = norm_bound(e.child, p)
        if b is None or e.p > p:
            return None
        return b + e.delta
    if isinstance(e, TruncImage):
        b = norm_bound(e.child, p)
        return b
    return None


def _enclosing(e: SetExpr, p) -> SetExpr | None:
    b = norm_bound(e, p)
    return None if b is None else Ball(SeqVec(), b, p)


def closure(e: SetExpr, p=2) -> ClosureBracket:
    """Sound bracket on the weak-* closure of ``e`` inside the ``p``-space."""
    p = parse_p(p)
    if isinstance(e, (Ball, Interval, Points)):
        return _exact(e, note="weak-* closed")
    if isinstance(e, UnitVectors):
        if e.count is not None:
            return _exact(e, note="finite set")
        return _exact(e, Union((e, Points((SeqVec(),)))), "only limit point is 0")
    if isinstance(e, Sphere):
        return _exact(e, Ball(SeqVec(), e.r, e.p), "sphere is dense in its ball")
    if isinstance(e, KernelSlice):
        if e.functional != "ones":
            return _exact(e, note="finite functional is weak-* continuous")
        if e.is_ones_l1:
            inner = Union((Ball(SeqVec(), e.within.r / 2, 1), e))
            return ClosureBracket(inner, e.within, False, "both inclusions strict")
        return ClosureBracket(e, e.within, False, "functional not weak-* continuous")
    if isinstance(e, Union):
        bs = [closure(c, p) for c in e.items]
        outer = None if any(b.outer is None for b in bs) else Union(tuple(b.outer for b in bs))
        exact = all(b.exact for b in bs)
        return ClosureBracket(Union(tuple(b.inner for b in bs)), outer, exact)
    if isinstance(e, Intersection):
        bs = [closure(c, p) for c in e.items]
        if all(b.exact for b in bs):
            return _exact(Intersection(tuple(b.inner for b in bs)), note="intersection of closed sets")
        outs = [b.outer for b in bs if b.outer is not None]
        return ClosureBracket(e, Intersection(tuple(outs)) if outs else _enclosing(e, p))
    if isinstance(e, Fatten):
        b = closure(e.child, p)
        bounded = norm_bound(e.child, e.p) is not None
        if b.exact and bounded:
            return _exact(Fatten(b.inner, e.delta, e.p), note="compact plus closed ball")
        if b.outer is not None and bounded:
            return ClosureBracket(e, Fatten(b.outer, e.delta, e.p))
        return ClosureBracket(e, _enclosing(e, p))
    if isinstance(e, TruncImage):
        b = closure(e.child, p)
        bounded = norm_bound(e.child, p) is not None
        if b.exact and bounded:
            return _exact(TruncImage(b.inner, e.n), note="continuous image of a compact set")
        outer = TruncImage(b.outer, e.n) if (b.outer is not None and bounded) else None
        return ClosureBracket(e, outer)
    return ClosureBracket(e, _enclosing(e, p))


# ---------------------------------------------------------------- no loss

def _convex_primitive(e: SetExpr) -> bool:
    if isinstance(e, (Ball, Interval)):
        return True
    if isinstance(e, Points):
        return len(e.pts) == 1
    if isinstance(e, KernelSlice):
        return True
    if isinstance(e, Fatten):
        return _convex_primitive(e.child)
    if isinstance(e, Intersection):
        return all(_convex_primitive(c) for c in e.items)
    return False


def to_cnf(e: SetExpr, max_clauses: int = 4096) -> list[list[SetExpr]] | None:
    """Intersection-of-unions normal form over convex primitives, or ``None``."""
    if _convex_primitive(e):
        return [[e]]
    if isinstance(e, Points):
        return [[Points((x,)) for x in e.pts]]
    if isinstance(e, UnitVectors) and e.count is not None:
        return [[Points((SeqVec.unit(i),)) for i in range(e.count)]]
    if isinstance(e, Intersection):
        out = []
        for c in e.items:
            sub = to_cnf(c, max_clauses)
            if sub is None:
                return None
            out.extend(sub)
        return out
    if isinstance(e, Union):
        subs = [to_cnf(c, max_clauses) for c in e.items]
        if any(s is None for s in subs):
            return None
        total = 1
        for s in subs:
            total *= len(s)
        if total > max_clauses:
            return None
        return [[lit for clause in combo for lit in clause] for combo in product(*subs)]
    return None


def explain_no_loss(e: SetExpr, p=2, tol=DEFAULT_TOL) -> tuple[bool, str]:
    p = parse_p(p)
    if p == 1 or p == INF:
        return False, f"p={fmt_p(p)}: bounded closed convex sets can lose precision (kernel slices of l1 and l_inf)"
    cnf = to_cnf(e)
    if cnf is None:
        return False, "not an intersection of finite unions of bounded closed convex sets"
    pt = sample_member(e, tol)
    if pt is None:
        raise EmptinessUndecided("could not exhibit a point of the set")
    return True, f"{len(cnf)} clause(s) over convex primitives; nonempty (contains {pt})"


def no_loss(e: SetExpr, p=2, tol=DEFAULT_TOL) -> bool:
    """Syntactic classifier for sets that equal the pullback of their closure."""
    return explain_no_loss(e, p, tol)[0]


__all__ = ["ClosureBracket", "EmptinessUndecided", "closure", "explain_no_loss", "no_loss", "norm_bound", "to_cnf"]
