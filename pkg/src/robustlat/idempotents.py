"""Idempotents, embedding-projection pairs, splittings and their chains.

Maps are plain callables wrapped in :class:`Fn`. A finite map also carries
its domain, which makes equalities decidable by enumeration; for infinite
carriers every law is checked on an explicit sample.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Hashable, Iterable, Sequence

from .lattice import ResourceError


class IdempotentError(ValueError):
    """A map that must be idempotent is not."""


class ChainOrderError(ValueError):
    """A chain violates ``g_n <= g_{n+1}`` in the idempotent order."""


@dataclass(frozen=True)
class Fn:
    """A map given by a callable; ``dom`` is its finite domain when known."""

    apply: Callable[[Any], Any]
    dom: tuple | None = None
    name: str = "f"
    table: dict | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_dict(cls, mapping: dict, name: str = "f") -> Fn:
        m = dict(mapping)
        return cls(m.__getitem__, tuple(m), name, m)

    @classmethod
    def from_table(cls, table: Sequence[int], name: str = "g") -> Fn:
        """Endomap of ``range(len(table))``."""
        return cls.from_dict(dict(enumerate(table)), name)

    @classmethod
    def identity(cls, dom: Iterable | None = None, name: str = "id") -> Fn:
        if dom is None:
            return cls(lambda x: x, None, name)
        return cls.from_dict({x: x for x in dom}, name)

    def __call__(self, x):
        return self.apply(x)

    def renamed(self, name: str) -> Fn:
        return Fn(self.apply, self.dom, name, self.table)

    def after(self, inner: Fn) -> Fn:
        """``self . inner``, tabulated when ``inner`` has a finite domain."""
        name = f"{self.name}.{inner.name}"
        if inner.dom is not None:
            return Fn.from_dict({x: self.apply(inner.apply(x)) for x in inner.dom}, name)
        return Fn(lambda x: self.apply(inner.apply(x)), None, name)

    def restrict(self, dom: Iterable[Hashable], name: str | None = None) -> Fn:
        return Fn.from_dict({x: self.apply(x) for x in dom}, name or self.name)

    def image(self) -> tuple:
        if self.dom is None:
            raise ResourceError("image of a map without a finite domain")
        return tuple(sorted(set(self.apply(x) for x in self.dom), key=_sort_key))


def _sort_key(x):
    return (0, x) if isinstance(x, (int,)) else (1, repr(x))


def _points(g: Fn, sample: Iterable | None) -> list:
    if sample is not None:
        pts = list(sample)
    elif g.dom is not None:
        pts = list(g.dom)
    else:
        raise ValueError("a sample is required for maps on infinite carriers")
    if not pts:
        raise ValueError("sample must be nonempty")
    return pts


def agree(f: Fn, g: Fn, sample: Iterable | None = None) -> bool:
    return all(f(x) == g(x) for x in _points(f, sample))


def is_idempotent(g: Fn, sample: Iterable | None = None) -> bool:
    """``g(g(x)) == g(x)`` on the sample (the whole carrier when finite)."""
    return all(g(g(x)) == g(x) for x in _points(g, sample))


def idem_leq(g1: Fn, g2: Fn, sample: Iterable | None = None) -> bool:
    """``g1 <= g2`` iff ``g1.g2 = g1 = g2.g1`` on the sample."""
    pts = _points(g1, sample)
    for g in (g1, g2):
        if not is_idempotent(g, pts):
            raise IdempotentError(f"{g.name} is not idempotent")
    return all(g1(g2(x)) == g1(x) and g2(g1(x)) == g1(x) for x in pts)


@dataclass(frozen=True)
class EpPair:
    """``e: X -> Y`` and ``p: Y -> X`` with ``p.e = id_X``."""

    e: Fn
    p: Fn

    def holds(self, sample: Iterable | None = None) -> bool:
        return all(self.p(self.e(x)) == x for x in _points(self.e, sample))

    def compose(self, inner: EpPair) -> EpPair:
        """``(e, p) . (e', p') = (e.e', p'.p)``."""
        return EpPair(self.e.after(inner.e), inner.p.after(self.p))


def split(g: Fn) -> tuple[tuple, EpPair]:
    """Image splitting of a finite idempotent: inclusion and corestriction."""
    if g.dom is None:
        raise ResourceError("split needs a finite carrier")
    if not is_idempotent(g):
        raise IdempotentError(f"{g.name} is not idempotent")
    img = g.image()
    f = Fn.from_dict({x: x for x in img}, "f")
    q = g.renamed("q")
    return img, EpPair(f, q)


@dataclass(frozen=True)
class Stage:
    g: Fn
    carrier: Any
    f: Fn
    q: Fn


def _carrier_points(carrier) -> tuple | None:
    return carrier if isinstance(carrier, tuple) else None


@dataclass
class SplitChain:
    """``g_0 <= g_1 <= ...`` with splittings ``(f_n, q_n)`` through ``X_n``.

    ``ambient`` is the finite carrier when there is one; otherwise
    ``sample`` holds the points on which laws are checked.
    """

    stages: list[Stage]
    ambient: tuple | None = None
    sample: tuple | None = None

    @classmethod
    def from_idempotents(cls, gs: Sequence[Fn], ambient: Iterable | None = None) -> SplitChain:
        gs = list(gs)
        amb = tuple(ambient) if ambient is not None else gs[0].dom
        stages = []
        for n, g in enumerate(gs):
            img, ep = split(g.restrict(amb, f"g_{n}"))
            stages.append(Stage(g.restrict(amb, f"g_{n}"), img, ep.e.renamed(f"f_{n}"), ep.p.renamed(f"q_{n}")))
        chain = cls(stages, amb)
        chain.check_order()
        return chain

    def __len__(self):
        return len(self.stages)

    def points(self) -> list:
        if self.ambient is not None:
            return list(self.ambient)
        if self.sample is None:
            raise ValueError("chain on an infinite carrier needs a sample")
        return list(self.sample)

    def stage_points(self, n: int) -> list:
        pts = _carrier_points(self.stages[n].carrier)
        if pts is not None:
            return list(pts)
        return sorted({self.stages[n].q(x) for x in self.points()}, key=_sort_key)

    def check_order(self) -> None:
        pts = self.points()
        for n in range(len(self.stages) - 1):
            if not idem_leq(self.stages[n].g, self.stages[n + 1].g, pts):
                raise ChainOrderError(f"g_{n} is not below g_{n + 1}")


def connecting_ep(chain: SplitChain) -> list[EpPair]:
    """``e_n = q_{n+1}.f_n`` and ``p_n = q_n.f_{n+1}``."""
    chain.check_order()
    out = []
    for n in range(len(chain) - 1):
        a, b = chain.stages[n], chain.stages[n + 1]
        xa, xb = _carrier_points(a.carrier), _carrier_points(b.carrier)
        e = Fn(lambda x, q=b.q, f=a.f: q(f(x)), xa, f"e_{n}")
        p = Fn(lambda y, q=a.q, f=b.f: q(f(y)), xb, f"p_{n}")
        if xa is not None:
            e = e.restrict(xa)
        if xb is not None:
            p = p.restrict(xb)
        out.append(EpPair(e, p))
    return out


def h_family(chain: SplitChain, i: int, j: int, eps: list[EpPair] | None = None) -> Fn:
    """``h_{i,j}: X_i -> X_j``; identity on the diagonal, composites of
    ``e``'s going up and of ``p``'s going down."""
    k = len(chain)
    if not (0 <= i < k and 0 <= j < k):
        raise IndexError(f"h_{{{i},{j}}} outside a chain of length {k}")
    eps = eps if eps is not None else connecting_ep(chain)
    dom = _carrier_points(chain.stages[i].carrier)
    h = Fn.identity(dom, f"h_{i}{i}")
    if i < j:
        for n in range(i, j):
            h = eps[n].e.after(h)
    elif i > j:
        for n in range(i - 1, j - 1, -1):
            h = eps[n].p.after(h)
    return h.renamed(f"h_{i},{j}")


def check_chain_laws(chain: SplitChain) -> list[str]:
    """Every law expected of a split chain; returns the violated ones."""
    bad = []
    pts = chain.points()
    eps = connecting_ep(chain)
    for n, st in enumerate(chain.stages):
        if not all(st.f(st.q(x)) == st.g(x) for x in pts):
            bad.append(f"g_{n} != f_{n}.q_{n}")
        xs = chain.stage_points(n)
        if not all(st.q(st.f(x)) == x for x in xs):
            bad.append(f"q_{n}.f_{n} != id")
    for n, ep in enumerate(eps):
        xa, xb = chain.stage_points(n), chain.stage_points(n + 1)
        a, b = chain.stages[n], chain.stages[n + 1]
        if not all(ep.p(ep.e(x)) == x for x in xa):
            bad.append(f"p_{n}.e_{n} != id")
        if not all(b.f(ep.e(x)) == a.f(x) for x in xa):
            bad.append(f"f_{n} != f_{n + 1}.e_{n}")
        if not all(ep.p(b.q(x)) == a.q(x) for x in pts):
            bad.append(f"q_{n} != p_{n}.q_{n + 1}")
    k = len(chain)
    hs = {(i, j): h_family(chain, i, j, eps) for i in range(k) for j in range(k)}
    for i in range(k):
        xi = chain.stage_points(i)
        if not all(hs[i, i](x) == x for x in xi):
            bad.append(f"h_{i},{i} != id")
        for j in range(k):
            if i + 1 < k and not all(hs[i + 1, j](eps[i].e(x)) == hs[i, j](x) for x in xi):
                bad.append(f"h_{i + 1},{j}.e_{i} != h_{i},{j}")
            if j + 1 < k and not all(eps[j].p(hs[i, j + 1](x)) == hs[i, j](x) for x in xi):
                bad.append(f"p_{j}.h_{i},{j + 1} != h_{i},{j}")
    return bad


def factorizing_pairs(chain: SplitChain, n: int) -> list[tuple[dict, dict]]:
    """All ``(e, p)`` with ``p.e = id``, ``f_n = f_{n+1}.e`` and ``q_n = p.q_{n+1}``.

    Exhaustive over every ``e: X_n -> X_{n+1}`` and ``p: X_{n+1} -> X_n``.
    The constraints are pointwise, so each table entry is searched over the
    whole codomain independently and the survivors are combined.
    """
    a, b = chain.stages[n], chain.stages[n + 1]
    xa, xb = chain.stage_points(n), chain.stage_points(n + 1)
    pts = chain.points()
    e_opts = [[y for y in xb if b.f(y) == a.f(x)] for x in xa]
    fibres = {y: [s for s in pts if b.q(s) == y] for y in xb}
    p_opts = [[x for x in xa if all(a.q(s) == x for s in fibres[y])] for y in xb]
    out = []
    for e_vals in product(*e_opts):
        e = dict(zip(xa, e_vals))
        for p_vals in product(*p_opts):
            p = dict(zip(xb, p_vals))
            if all(p[e[x]] == x for x in xa):
                out.append((e, p))
    return out


def naive_factorizing_pairs(chain: SplitChain, n: int, limit: int = 200_000) -> list[tuple[dict, dict]]:
    """Same as :func:`factorizing_pairs` by enumerating whole tables; small carriers only."""
    a, b = chain.stages[n], chain.stages[n + 1]
    xa, xb = chain.stage_points(n), chain.stage_points(n + 1)
    if len(xb) ** len(xa) * len(xa) ** len(xb) > limit:
        raise ResourceError("table space too large for the naive search")
    pts = chain.points()
    out = []
    for e_vals in product(xb, repeat=len(xa)):
        e = dict(zip(xa, e_vals))
        if not all(b.f(e[x]) == a.f(x) for x in xa):
            continue
        for p_vals in product(xa, repeat=len(xb)):
            p = dict(zip(xb, p_vals))
            if all(p[e[x]] == x for x in xa) and all(p[b.q(s)] == a.q(s) for s in pts):
                out.append((e, p))
    return out


@dataclass
class TruncatedLimit:
    """Compatible tuples ``(x_0, ..., x_N)`` with ``x_i = p_i(x_{i+1})``."""

    chain: SplitChain
    depth: int
    elements: tuple
    eps: list[EpPair]

    def project(self, n: int, t: tuple):
        return t[n]

    def embed(self, n: int, x) -> tuple:
        """``f̄_n(x) = (h_{n,0}(x), ..., h_{n,N}(x))``."""
        return tuple(h_family(self.chain, n, j, self.eps)(x) for j in range(self.depth + 1))

    def gbar(self, n: int) -> Fn:
        return Fn.from_dict({t: self.embed(n, t[n]) for t in self.elements}, f"gbar_{n}")

    def iota(self, s) -> tuple:
        """Canonical map from the ambient carrier: ``s -> (q_0(s), ..., q_N(s))``."""
        return tuple(self.chain.stages[n].q(s) for n in range(self.depth + 1))

    def is_compatible(self, t: tuple) -> bool:
        return all(self.eps[i].p(t[i + 1]) == t[i] for i in range(self.depth))

    def jointly_mono(self) -> bool:
        """Distinct limit elements are separated by some ``gbar_n``."""
        gs = [self.gbar(n) for n in range(self.depth + 1)]
        seen = {}
        for t in self.elements:
            key = tuple(g(t) for g in gs)
            if key in seen:
                return False
            seen[key] = t
        return True


def truncated_limit(chain: SplitChain, depth: int | None = None, max_size: int = 100_000) -> TruncatedLimit:
    """Finite-depth stand-in for the limit of the projection chain.

    A compatible tuple is determined by its last entry, so the enumeration
    ranges over ``X_N`` and then every stored tuple is re-checked.
    """
    depth = len(chain) - 1 if depth is None else depth
    if not 0 <= depth < len(chain):
        raise IndexError("depth outside the chain")
    if _carrier_points(chain.stages[depth].carrier) is None and chain.ambient is None:
        raise ResourceError("truncated limits need enumerable carriers")
    top = chain.stage_points(depth)
    if len(top) > max_size:
        raise ResourceError("carrier too large to enumerate")
    eps = connecting_ep(chain)
    elems = []
    for x in top:
        t = [x]
        for i in range(depth - 1, -1, -1):
            t.append(eps[i].p(t[-1]))
        elems.append(tuple(reversed(t)))
    lim = TruncatedLimit(chain, depth, tuple(elems), eps)
    assert all(lim.is_compatible(t) for t in lim.elements)
    return lim


# ---------------------------------------------------------------- generators

def random_retraction(rng: random.Random, src: Sequence, onto: Sequence) -> dict:
    """Random map ``src -> onto`` fixing every point of ``onto``."""
    fixed = set(onto)
    return {x: (x if x in fixed else rng.choice(list(onto))) for x in src}


def random_split_chain(rng: random.Random, max_len: int = 5, max_carrier: int = 8) -> SplitChain:
    """Random increasing chain of idempotents on ``range(k)``.

    Nested images ``A_0 <= ... <= A_L`` are drawn first; ``g_L`` retracts
    the carrier onto ``A_L`` and ``g_n = r_n . g_{n+1}`` with ``r_n`` a
    retraction of ``A_{n+1}`` onto ``A_n``.
    """
    k = rng.randint(1, max_carrier)
    length = rng.randint(1, max_len)
    pts = list(range(k))
    sizes = sorted(rng.randint(1, k) for _ in range(length))
    order = pts[:]
    rng.shuffle(order)
    images = [sorted(order[:s]) for s in sizes]
    g = random_retraction(rng, pts, images[-1])
    gs = [g]
    for n in range(length - 2, -1, -1):
        r = random_retraction(rng, images[n + 1], images[n])
        g = {x: r[g[x]] for x in pts}
        gs.append(g)
    gs.reverse()
    return SplitChain.from_idempotents([Fn.from_dict(m, f"g_{n}") for n, m in enumerate(gs)], pts)


def all_idempotents(k: int) -> list[Fn]:
    return [Fn.from_table(t) for t in product(range(k), repeat=k) if all(t[t[x]] == t[x] for x in range(k))]


def random_ep_pair(rng: random.Random, max_carrier: int = 6) -> EpPair:
    """Injective ``e: X -> Y`` with a left inverse ``p``."""
    ny = rng.randint(1, max_carrier)
    nx = rng.randint(1, ny)
    ys = list(range(ny))
    img = rng.sample(ys, nx)
    e = {x: img[x] for x in range(nx)}
    inv = {y: x for x, y in e.items()}
    p = {y: inv.get(y, rng.randrange(nx)) for y in ys}
    return EpPair(Fn.from_dict(e, "e"), Fn.from_dict(p, "p"))


__all__ = [
    "ChainOrderError", "EpPair", "Fn", "IdempotentError", "SplitChain", "Stage", "TruncatedLimit", "agree",
    "all_idempotents", "check_chain_laws", "connecting_ep", "factorizing_pairs", "h_family", "idem_leq",
    "is_idempotent", "naive_factorizing_pairs", "random_ep_pair", "random_split_chain", "split",
    "truncated_limit",
]
