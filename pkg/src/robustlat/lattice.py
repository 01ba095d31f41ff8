"""Finite posets, lattices, monotone maps, adjunctions and finite topologies.

Elements are integer ids ``0..n-1`` with optional display labels; orders are
dense boolean matrices. Subsets of a carrier are handled as int bitmasks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

from . import kernels


class OrderError(ValueError):
    """Malformed order-theoretic input (not a poset, not total, ...)."""


class ResourceError(RuntimeError):
    """Requested exhaustive search exceeds its configured bound."""


def _bits(mask: int) -> list[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _mask(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class FinitePoset:
    leq: tuple[tuple[bool, ...], ...]
    labels: tuple = ()

    def __post_init__(self):
        n = len(self.leq)
        if any(len(row) != n for row in self.leq):
            raise OrderError("leq must be a square matrix")
        if self.labels and len(self.labels) != n:
            raise OrderError("labels do not match carrier size")
        for a in range(n):
            if not self.leq[a][a]:
                raise OrderError(f"not reflexive at {a}")
            for b in range(n):
                if a != b and self.leq[a][b] and self.leq[b][a]:
                    raise OrderError(f"not antisymmetric at ({a}, {b})")
                if self.leq[a][b]:
                    for c in range(n):
                        if self.leq[b][c] and not self.leq[a][c]:
                            raise OrderError(f"not transitive at ({a}, {b}, {c})")

    @classmethod
    def from_relation(cls, n: int, pairs: Iterable[tuple[int, int]], labels: Sequence = ()) -> FinitePoset:
        """Reflexive-transitive closure of ``pairs`` on ``range(n)``."""
        m = [[a == b for b in range(n)] for a in range(n)]
        for a, b in pairs:
            m[a][b] = True
        for k in range(n):
            for a in range(n):
                if m[a][k]:
                    for b in range(n):
                        if m[k][b]:
                            m[a][b] = True
        return cls(tuple(tuple(r) for r in m), tuple(labels))

    @classmethod
    def chain(cls, n: int) -> FinitePoset:
        return cls(tuple(tuple(a <= b for b in range(n)) for a in range(n)))

    @classmethod
    def antichain(cls, n: int) -> FinitePoset:
        return cls(tuple(tuple(a == b for b in range(n)) for a in range(n)))

    @property
    def n(self) -> int:
        return len(self.leq)

    @cached_property
    def up_rows(self) -> tuple[int, ...]:
        """``up_rows[a]`` is the bitmask of the principal up-set of ``a``."""
        return tuple(_mask(b for b in range(self.n) if self.leq[a][b]) for a in range(self.n))

    @cached_property
    def down_rows(self) -> tuple[int, ...]:
        return tuple(_mask(b for b in range(self.n) if self.leq[b][a]) for a in range(self.n))

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def is_upset(self, mask: int) -> bool:
        return all(self.up_rows[a] & ~mask == 0 for a in _bits(mask))

    def upper_bounds(self, mask: int) -> int:
        ub = (1 << self.n) - 1
        for a in _bits(mask):
            ub &= self.up_rows[a]
        return ub

    def lower_bounds(self, mask: int) -> int:
        lb = (1 << self.n) - 1
        for a in _bits(mask):
            lb &= self.down_rows[a]
        return lb

    def sup(self, mask: int) -> int | None:
        """Least upper bound of a subset (bitmask), or ``None`` if absent."""
        ub = self.upper_bounds(mask)
        for c in _bits(ub):
            if self.up_rows[c] & ub == ub:
                return c
        return None

    def inf(self, mask: int) -> int | None:
        lb = self.lower_bounds(mask)
        for c in _bits(lb):
            if self.down_rows[c] & lb == lb:
                return c
        return None

    def relabel(self, perm: Sequence[int]) -> FinitePoset:
        """Poset transported along ``perm`` (old id ``a`` becomes ``perm[a]``)."""
        n = self.n
        m = [[False] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                m[perm[a]][perm[b]] = self.leq[a][b]
        return FinitePoset(tuple(tuple(r) for r in m))

    def canonical_key(self) -> tuple:
        """Isomorphism invariant key: least relabelled matrix among the labellings
        that sort elements by (down-set size, up-set size)."""
        n, leq = self.n, self.leq
        sig = [(bin(self.down_rows[a]).count("1"), bin(self.up_rows[a]).count("1")) for a in range(n)]
        groups: dict[tuple, list[int]] = {}
        for a in sorted(range(n), key=sig.__getitem__):
            groups.setdefault(sig[a], []).append(a)
        best = None
        for parts in product(*(permutations(g) for g in groups.values())):
            q = [a for part in parts for a in part]
            key = tuple(sum(leq[q[i]][q[j]] << (n - 1 - j) for j in range(n)) for i in range(n))
            if best is None or key < best[0]:
                best = (key, q)
        q = best[1]
        return tuple(tuple(leq[q[i]][q[j]] for j in range(n)) for i in range(n))

    def to_json(self) -> dict:
        return {
            "elements": list(self.labels) if self.labels else list(range(self.n)),
            "leq": [list(r) for r in self.leq],
        }

    @classmethod
    def from_json(cls, obj: dict) -> FinitePoset:
        try:
            leq = tuple(tuple(bool(v) for v in row) for row in obj["leq"])
            labels = tuple(obj.get("elements", ()))
        except (KeyError, TypeError) as exc:
            raise OrderError(f"bad poset literal: {exc}") from exc
        return cls(leq, labels)


class FiniteLattice:
    """A finite poset in which every subset has a sup and an inf."""

    def __init__(self, poset: FinitePoset):
        n = poset.n
        if n == 0:
            raise OrderError("the empty poset is not a lattice")
        self.poset = poset
        self.join_table = [[0] * n for _ in range(n)]
        self.meet_table = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                j = poset.sup(1 << a | 1 << b)
                m = poset.inf(1 << a | 1 << b)
                if j is None or m is None:
                    raise OrderError(f"elements {a}, {b} lack a join or meet")
                self.join_table[a][b] = j
                self.meet_table[a][b] = m
        bottom, top = poset.sup(0), poset.inf(0)
        if bottom is None or top is None:
            raise OrderError("missing top or bottom")
        self.bottom, self.top = bottom, top

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def leq(self):
        return self.poset.leq

    def sup(self, mask: int) -> int:
        s = self.bottom
        for a in _bits(mask):
            s = self.join_table[s][a]
        return s

    def inf(self, mask: int) -> int:
        s = self.top
        for a in _bits(mask):
            s = self.meet_table[s][a]
        return s

    def __eq__(self, other):
        return isinstance(other, FiniteLattice) and self.poset == other.poset

    def __hash__(self):
        return hash(self.poset)

    def __repr__(self):
        return f"FiniteLattice(n={self.n})"

    @classmethod
    def chain(cls, n: int) -> FiniteLattice:
        return cls(FinitePoset.chain(n))

    @classmethod
    def diamond(cls) -> FiniteLattice:
        """``0 < 1, 2 < 3`` with ``1`` and ``2`` incomparable."""
        return cls(FinitePoset.from_relation(4, [(0, 1), (0, 2), (1, 3), (2, 3)], ("bot", "a", "b", "top")))

    @classmethod
    def powerset(cls, k: int, reverse: bool = False) -> FiniteLattice:
        """Subsets of ``range(k)`` (element id = bitmask) under inclusion, or
        reverse inclusion when ``reverse`` is set."""
        n = 1 << k
        rows = tuple(
            tuple(((a & ~b) == 0) if not reverse else ((b & ~a) == 0) for b in range(n)) for a in range(n)
        )
        return cls(FinitePoset(rows))

    @classmethod
    def downsets(cls, poset: FinitePoset) -> FiniteLattice:
        """Lattice of down-closed subsets of ``poset`` under inclusion.

        Complete by construction; used to generate random lattices.
        """
        full = (1 << poset.n) - 1
        ds = [m for m in range(full + 1) if all(poset.down_rows[a] & ~m == 0 for a in _bits(m))]
        rows = tuple(tuple((a & ~b) == 0 for b in ds) for a in ds)
        return cls(FinitePoset(rows, tuple(ds)))


@dataclass(frozen=True)
class MonotoneMap:
    dom: FinitePoset
    cod: FinitePoset
    table: tuple[int, ...]

    def __post_init__(self):
        if not is_monotone(self.dom, self.cod, self.table):
            raise OrderError("map is not monotone")

    def __call__(self, a: int) -> int:
        return self.table[a]

    def compose(self, inner: MonotoneMap) -> MonotoneMap:
        """``self . inner``."""
        if inner.cod != self.dom:
            raise OrderError("composition mismatch")
        return MonotoneMap(inner.dom, self.cod, tuple(self.table[b] for b in inner.table))

    @classmethod
    def identity(cls, p: FinitePoset) -> MonotoneMap:
        return cls(p, p, tuple(range(p.n)))

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)


def _poset(x) -> FinitePoset:
    return x.poset if isinstance(x, FiniteLattice) else x


def is_monotone(dom, cod, table: Sequence[int]) -> bool:
    """True iff ``table`` is a total order-preserving map ``dom -> cod``."""
    dom, cod = _poset(dom), _poset(cod)
    if len(table) != dom.n or any(not isinstance(v, int) or not 0 <= v < cod.n for v in table):
        raise OrderError("table is not a total map between the carriers")
    return all(
        cod.leq[table[a]][table[b]] for a in range(dom.n) for b in range(dom.n) if dom.leq[a][b]
    )


def preserves_sups(f: MonotoneMap) -> bool:
    """Sup preservation over every subset of the domain, the empty one included."""
    for mask in range(1 << f.dom.n):
        s = f.dom.sup(mask)
        if s is None:
            continue
        if f.cod.sup(_mask(f.table[a] for a in _bits(mask))) != f.table[s]:
            return False
    return True


def preserves_joins(f: MonotoneMap, dom_lattice: FiniteLattice | None = None) -> bool:
    """Same answer as :func:`preserves_sups` on a lattice domain, from the
    empty sup and binary joins only (every finite sup is built from these)."""
    lat = dom_lattice or FiniteLattice(f.dom)
    t, cod = f.table, f.cod
    if cod.sup(0) != t[lat.bottom]:
        return False
    n = lat.n
    return all(
        cod.sup(1 << t[a] | 1 << t[b]) == t[lat.join_table[a][b]] for a in range(n) for b in range(a + 1, n)
    )


def check_adjunction(f: MonotoneMap, g: MonotoneMap) -> bool:
    """``f -| g``: ``f.g <= id`` on the codomain and ``g.f >= id`` on the domain."""
    if f.dom != g.cod or f.cod != g.dom:
        raise OrderError("f: X -> Y and g: Y -> X required")
    x, y = f.dom, f.cod
    return all(y.leq[f.table[g.table[b]]][b] for b in range(y.n)) and all(
        x.leq[a][g.table[f.table[a]]] for a in range(x.n)
    )


def check_adjunction_galois(f: MonotoneMap, g: MonotoneMap) -> bool:
    """Equivalent form: ``x <= g(y)`` iff ``f(x) <= y`` for all pairs."""
    x, y = f.dom, f.cod
    return all(x.leq[a][g.table[b]] == y.leq[f.table[a]][b] for a in range(x.n) for b in range(y.n))


def right_adjoint(f: MonotoneMap, dom_lattice: FiniteLattice | None = None) -> MonotoneMap | None:
    """``g(y) = sup {x | f(x) <= y}`` when ``f`` preserves all sups, else ``None``."""
    lat = dom_lattice or FiniteLattice(f.dom)
    if not preserves_joins(f, lat):
        return None
    y = f.cod
    table = tuple(lat.sup(_mask(a for a in range(f.dom.n) if y.leq[f.table[a]][b])) for b in range(y.n))
    g = MonotoneMap(y, f.dom, table)
    assert check_adjunction(f, g)
    return g


def brute_force_right_adjoints(f: MonotoneMap) -> list[MonotoneMap]:
    """Every monotone ``g`` with ``f -| g``, by exhaustive search over all tables."""
    tables = kernels.adjoint_candidates(list(f.dom.up_rows), list(f.cod.up_rows), list(f.table))
    return [MonotoneMap(f.cod, f.dom, tuple(t)) for t in tables]


def all_monotone_maps(dom, cod) -> list[MonotoneMap]:
    dom, cod = _poset(dom), _poset(cod)
    return [MonotoneMap(dom, cod, tuple(t)) for t in kernels.monotone_maps(list(dom.up_rows), list(cod.up_rows))]


@dataclass(frozen=True)
class FiniteTopology:
    n: int
    opens: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        full = (1 << self.n) - 1
        if 0 not in self.opens or full not in self.opens:
            raise OrderError("a topology contains the empty set and the carrier")
        if any(not 0 <= o <= full for o in self.opens):
            raise OrderError("open set outside the carrier")
        for a in self.opens:
            for b in self.opens:
                if a | b not in self.opens or a & b not in self.opens:
                    raise OrderError("opens not closed under union/intersection")

    @classmethod
    def from_family_code(cls, n: int, code: int) -> FiniteTopology:
        return cls(n, frozenset(_bits(code)))

    def family_code(self) -> int:
        return _mask(self.opens)

    def as_sets(self) -> list[list[int]]:
        return sorted((_bits(o) for o in self.opens), key=lambda s: (len(s), s))


def _close_opens(n: int, generators: Iterable[int]) -> frozenset[int]:
    full = (1 << n) - 1
    opens = {0, full, *generators}
    changed = True
    while changed:
        changed = False
        cur = list(opens)
        for a in cur:
            for b in cur:
                for c in (a | b, a & b):
                    if c not in opens:
                        opens.add(c)
                        changed = True
    return frozenset(opens)


def alexandrov(poset: FinitePoset) -> FiniteTopology:
    """All up-closed subsets."""
    return FiniteTopology(poset.n, frozenset(m for m in range(1 << poset.n) if poset.is_upset(m)))


def tau_top(poset: FinitePoset) -> FiniteTopology:
    """Topology generated by the complements of principal down-sets."""
    full = (1 << poset.n) - 1
    return FiniteTopology(poset.n, _close_opens(poset.n, (full & ~poset.down_rows[y] for y in range(poset.n))))


def specialization_order(t: FiniteTopology) -> FinitePoset:
    """``x <= y`` iff every open containing ``x`` contains ``y``."""
    full = (1 << t.n) - 1
    nbhd = []
    for x in range(t.n):
        m = full
        for o in t.opens:
            if o >> x & 1:
                m &= o
        nbhd.append(m)
    if len(set(nbhd)) != t.n:
        raise OrderError("topology is not T0: two points share their neighbourhoods")
    return FinitePoset(tuple(tuple(bool(nbhd[x] >> y & 1) for y in range(t.n)) for x in range(t.n)))


def enumerate_T0_topologies(poset: FinitePoset, bound: int = 4) -> list[FiniteTopology]:
    """Every topology on the carrier whose specialization order is ``poset``.

    Exhaustive over all families of subsets; ``bound`` caps the carrier size.
    """
    if poset.n > bound or poset.n > 4:
        raise ResourceError(f"carrier of size {poset.n} exceeds the enumeration bound")
    codes = kernels.topology_families(poset.n, list(poset.up_rows))
    return [FiniteTopology.from_family_code(poset.n, c) for c in codes]


def directed_subsets(poset: FinitePoset) -> list[int]:
    """Nonempty subsets in which every pair has an upper bound inside the subset."""
    out = []
    for mask in range(1, 1 << poset.n):
        members = _bits(mask)
        if all(poset.up_rows[a] & poset.up_rows[b] & mask for a in members for b in members):
            out.append(mask)
    return out


def scott_opens(lattice: FiniteLattice) -> FiniteTopology:
    """Up-sets inaccessible by directed sups, found by checking every directed subset."""
    p = lattice.poset
    directed = directed_subsets(p)
    opens = []
    for m in range(1 << p.n):
        if not p.is_upset(m):
            continue
        if all(not (m >> lattice.sup(d) & 1) or (d & m) for d in directed):
            opens.append(m)
    return FiniteTopology(p.n, frozenset(opens))


def all_posets(n: int) -> list[FinitePoset]:
    """All partial orders on ``range(n)`` up to isomorphism.

    Every finite order has a linear extension, so it suffices to try each
    set of pairs ``a < b`` compatible with the index order; valid orders are
    kept and deduplicated by canonical key.
    """
    return list(_all_posets(n))


@lru_cache(maxsize=None)
def _all_posets(n: int) -> tuple[FinitePoset, ...]:
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    seen: dict[tuple, FinitePoset] = {}
    for code in range(1 << len(pairs)):
        m = [[a == b for b in range(n)] for a in range(n)]
        for k, (a, b) in enumerate(pairs):
            if code >> k & 1:
                m[a][b] = True
        try:
            p = FinitePoset(tuple(tuple(r) for r in m))
        except OrderError:
            continue
        key = p.canonical_key()
        if key not in seen:
            seen[key] = FinitePoset(key)
    return tuple(seen[k] for k in sorted(seen))


def all_lattices(max_n: int) -> list[FiniteLattice]:
    """All lattices with ``1..max_n`` elements up to isomorphism."""
    out = []
    for n in range(1, max_n + 1):
        for p in all_posets(n):
            try:
                out.append(FiniteLattice(p))
            except OrderError:
                pass
    return out
