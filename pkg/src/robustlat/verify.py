"""Invariant suites behind ``robustlat verify``.

Every case gets its own RNG derived from the run seed and the case id, so
suites can run in any order (or in parallel) and still replay exactly.
"""
from __future__ import annotations

import json
from collections import Counter
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Callable

from . import analysis as an
from . import idempotents as idm
from . import lattice as lat
from . import seqspace as sq
from . import setrep as sr
from .seqspace import Q, SeqVec, fmt_q


@dataclass(frozen=True)
class Config:
    tol: object = sq.DEFAULT_TOL
    n_max: int = 8
    delta_min: object = Q(1, 1024)
    depth: int = 4
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        object.__setattr__(self, "tol", sq.to_q(self.tol))
        object.__setattr__(self, "delta_min", sq.to_q(self.delta_min))
        if self.tol <= 0 or self.delta_min <= 0:
            raise ValueError("tol and delta_min must be positive")
        if self.n_max < 1 or self.depth < 1:
            raise ValueError("n_max and depth must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if not -(2**63) <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


@dataclass
class CaseResult:
    suite: str
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    counterexample: object = None
    seed: int = 0

    def to_json(self) -> dict:
        out = {"suite": self.suite, "case": self.name, "status": "pass" if self.ok else "fail",
               "seed": self.seed, "detail": self.detail}
        if not self.ok:
            out["counterexample"] = self.counterexample
        return out

    def line(self) -> str:
        return f"{self.name}: {'pass' if self.ok else 'fail'}"


class Failure(Exception):
    """Raised inside a case to report a counterexample."""

    def __init__(self, msg: str, counterexample=None):
        super().__init__(msg)
        self.counterexample = counterexample


SUITES = ("lattice", "idempotents", "seqspace", "setrep", "analysis", "paper-examples")
_CASES: dict[str, list[tuple[str, Callable]]] = {s: [] for s in SUITES}


def case(suite: str, name: str):
    def deco(fn):
        _CASES[suite].append((name, fn))
        return fn
    return deco


def _require(cond: bool, msg: str, cex=None):
    if not cond:
        raise Failure(msg, cex)


def case_names(suite: str) -> list[str]:
    return sorted(n for n, _ in _CASES[suite])


def _run_case(suite: str, name: str, fn: Callable, cfg: Config) -> CaseResult:
    rng = random.Random(f"{cfg.seed}:{suite}:{name}")
    try:
        detail = fn(cfg, rng) or {}
        return CaseResult(suite, name, True, detail, seed=cfg.seed)
    except Failure as exc:
        return CaseResult(suite, name, False, {"error": str(exc)}, _jsonable(exc.counterexample), cfg.seed)


def _jsonable(v):
    try:
        json.dumps(v)
        return v
    except TypeError:
        return repr(v)


def run(suite: str, cfg: Config = Config()) -> list[CaseResult]:
    """Run one suite (or ``all``); results are sorted by ``(suite, case)``."""
    if suite == "all":
        names = SUITES
    elif suite in _CASES:
        names = (suite,)
    else:
        raise KeyError(suite)
    jobs = [(s, n, fn) for s in names for n, fn in _CASES[s]]
    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            results = list(pool.map(lambda j: _run_case(*j, cfg), jobs))
    else:
        results = [_run_case(*j, cfg) for j in jobs]
    return sorted(results, key=lambda r: (r.suite, r.name))


# ---------------------------------------------------------------- lattice

@case("lattice", "topology_triviality")
def _topology_triviality(cfg, rng):
    counts = {}
    for n in range(1, 5):
        ps = lat.all_posets(n)
        counts[str(n)] = len(ps)
        for P in ps:
            ts = lat.enumerate_T0_topologies(P)
            a, t = lat.alexandrov(P), lat.tau_top(P)
            _require(len(ts) == 1 and ts[0] == a == t, "finite T0 topology not unique", P.to_json())
    return {"posets_by_size": counts, "posets": sum(counts.values()), "topologies_each": 1}


@case("lattice", "specialization_of_alexandrov")
def _spec_alex(cfg, rng):
    total = 0
    for n in range(1, 5):
        for P in lat.all_posets(n):
            _require(lat.specialization_order(lat.alexandrov(P)).leq == P.leq, "order not recovered", P.to_json())
            total += 1
    return {"posets": total}


def _lattice_pairs(max_n: int):
    ls = lat.all_lattices(max_n)
    return [(a, b) for a in ls for b in ls]


@case("lattice", "left_adjoint_iff_sup_preserving")
def _three_way(cfg, rng):
    maps = agree = 0
    for L, M in _lattice_pairs(4):
        for f in lat.all_monotone_maps(L.poset, M.poset):
            maps += 1
            g = lat.right_adjoint(f, L)
            brute = lat.brute_force_right_adjoints(f)
            sp = lat.preserves_sups(f)
            _require((g is not None) == bool(brute) == sp, "three-way disagreement", list(f.table))
            _require(lat.preserves_joins(f, L) == sp, "binary-join test disagrees", list(f.table))
            if g is not None:
                _require(lat.check_adjunction(f, g) and brute == [g], "constructed adjoint wrong", list(f.table))
                agree += 1
    return {"maps": maps, "left_adjoints": agree}


@case("lattice", "mono_left_adjoint_retracts")
def _mono_retract(cfg, rng):
    checked = 0
    for L, M in _lattice_pairs(5):
        for t in permutations(range(M.n), L.n):
            if not lat.is_monotone(L.poset, M.poset, t):
                continue
            f = lat.MonotoneMap(L.poset, M.poset, t)
            g = lat.right_adjoint(f, L)
            if g is None:
                continue
            gf = g.compose(f)
            _require(all(gf(a) == a for a in range(L.n)), "g.f is not the identity", list(f.table))
            checked += 1
    return {"mono_left_adjoints": checked}


@case("lattice", "random_maps_oracle_6")
def _random_oracle(cfg, rng):
    ls = lat.all_lattices(6)
    left = other = 0
    for _ in range(60):
        L, M = rng.choice(ls), rng.choice(ls)
        maps = lat.all_monotone_maps(L.poset, M.poset)
        f = rng.choice(maps)
        g = lat.right_adjoint(f, L)
        brute = lat.brute_force_right_adjoints(f)
        if lat.preserves_sups(f):
            _require(g is not None and lat.check_adjunction(f, g), "sup-preserving map lacks adjoint", list(f.table))
            left += 1
        else:
            _require(g is None and not brute, "adjoint found for non-sup-preserving map", list(f.table))
            other += 1
    return {"sup_preserving": left, "not_sup_preserving": other, "lattices": len(ls)}


# ---------------------------------------------------------------- idempotents

@case("idempotents", "idem_leq_partial_order")
def _idem_order(cfg, rng):
    total = 0
    for k in range(1, 5):
        gs = idm.all_idempotents(k)
        ident = idm.Fn.identity(range(k))
        le = {(a, b): idm.idem_leq(gs[a], gs[b]) for a in range(len(gs)) for b in range(len(gs))}
        for a in range(len(gs)):
            _require(le[a, a], "not reflexive", list(gs[a].table))
            _require(idm.idem_leq(gs[a], ident), "g <= id fails", list(gs[a].table))
            for b in range(len(gs)):
                if a != b and le[a, b]:
                    _require(not le[b, a], "not antisymmetric", [list(gs[a].table), list(gs[b].table)])
                    for c in range(len(gs)):
                        if le[b, c]:
                            _require(le[a, c], "not transitive", [a, b, c])
        total += len(gs)
    return {"idempotents": total}


@case("idempotents", "ep_composite_idempotent")
def _ep_idem(cfg, rng):
    for _ in range(300):
        ep = idm.random_ep_pair(rng, 6)
        _require(ep.holds(), "p.e != id")
        _require(idm.is_idempotent(ep.e.after(ep.p)), "e.p not idempotent")
    return {"pairs": 300}


@case("idempotents", "chain_laws_and_uniqueness")
def _chains(cfg, rng):
    naive_checked = 0
    for k in range(100):
        ch = idm.random_split_chain(rng, 5, 8)
        bad = idm.check_chain_laws(ch)
        _require(not bad, "chain laws violated", bad)
        eps = idm.connecting_ep(ch)
        for n in range(len(ch) - 1):
            pairs = idm.factorizing_pairs(ch, n)
            want = ({x: eps[n].e(x) for x in ch.stage_points(n)}, {y: eps[n].p(y) for y in ch.stage_points(n + 1)})
            _require(pairs == [want], "factorizing pair not unique", [k, n, len(pairs)])
            try:
                naive = idm.naive_factorizing_pairs(ch, n)
            except lat.ResourceError:
                continue
            _require(naive == pairs, "whole-table search disagrees", [k, n])
            naive_checked += 1
    return {"chains": 100, "whole_table_checks": naive_checked}


@case("idempotents", "limit_comparison_map")
def _limit(cfg, rng):
    mono = 0
    for _ in range(100):
        ch = idm.random_split_chain(rng, 5, 8)
        lim = idm.truncated_limit(ch)
        for s in ch.points():
            t = lim.iota(s)
            _require(lim.is_compatible(t), "iota lands outside the limit", s)
            _require(all(lim.project(n, t) == ch.stages[n].q(s) for n in range(lim.depth + 1)), "q_n.iota != q_n")
        jointly = len({tuple(st.g(s) for st in ch.stages) for s in ch.points()}) == len(ch.points())
        if jointly:
            mono += 1
            _require(len({lim.iota(s) for s in ch.points()}) == len(ch.points()), "iota not injective")
        _require(lim.jointly_mono(), "gbar family not jointly mono on the limit")
    return {"chains": 100, "jointly_mono_chains": mono}


# ---------------------------------------------------------------- seqspace

_PS = (Q(1), Q(2), sq.INF)


def _pairs(rng, count, length=6):
    xs = sq.sample_vectors(rng, 2 * count, length)
    return list(zip(xs[::2], xs[1::2]))


@case("seqspace", "truncation_is_short")
def _short(cfg, rng):
    for x, y in _pairs(rng, 200):
        for p in _PS:
            d = sq.dist(x, y, p, cfg.tol)
            for n in range(cfg.depth + 1):
                dn = sq.dist(sq.truncate(n, x), sq.truncate(n, y), p, cfg.tol)
                _require(_le_dist(dn, d), "g_n not short",
                         [x.to_json(), y.to_json(), n, sq.fmt_p(p)])
    return {"pairs": 200}


def _le_dist(a: sq.Dist, b: sq.Dist) -> bool:
    """Exact ``a <= b`` for two values of the same norm."""
    if a.exact is not None and b.exact is not None:
        return a.exact <= b.exact
    if a.power is not None and b.power is not None and a.p == b.p:
        return a.power <= b.power
    if a.hi <= b.lo:
        return True
    if not Counter(a.terms) - Counter(b.terms):
        return True  # a's terms are a sub-multiset of b's
    # compare sums of p-th powers with increasingly fine brackets
    m = 64
    while m <= 4096:
        ahi = sum((sq.power_bracket(t, a.p, m)[1] for t in a.terms), Q(0))
        blo = sum((sq.power_bracket(t, b.p, m)[0] for t in b.terms), Q(0))
        if ahi <= blo:
            return True
        m *= 2
    return False


@case("seqspace", "truncation_chain_order")
def _chain_order(cfg, rng):
    pts = sq.sample_vectors(rng, 60, 8)
    for n in range(6):
        g0 = idm.Fn(lambda x, n=n: sq.truncate(n, x), None, f"g_{n}")
        g1 = idm.Fn(lambda x, n=n: sq.truncate(n + 1, x), None, f"g_{n + 1}")
        _require(idm.idem_leq(g0, g1, pts), f"g_{n} not below g_{n + 1}")
    ch = sq.chain_ctx(sq.SpaceCtx(Q(2), 4, Q(1)), cfg.depth)
    ch.sample = tuple(pts)
    ch.check_order()
    return {"levels": 6, "stage_chain": len(ch)}


@case("seqspace", "metric_comparison")
def _metric_cmp(cfg, rng):
    for x, y in _pairs(rng, 1000):
        ds = sq.dstar(x, y).exact
        di = sq.dinf(x, y)
        _require(ds <= di, "d_* > d_inf", [x.to_json(), y.to_json()])
        for p in _PS:
            _require(sq.dist(x, y, p, cfg.tol).lt(di) is False, "d_inf > d_p", [x.to_json(), y.to_json(), sq.fmt_p(p)])
    return {"pairs": 1000}


@case("seqspace", "dstar_metric")
def _dstar_metric(cfg, rng):
    xs = sq.sample_vectors(rng, 600, 6)
    for x, y, z in zip(xs[::3], xs[1::3], xs[2::3]):
        a, b, c = (sq.dstar(u, v).exact for u, v in ((x, y), (y, z), (x, z)))
        _require(c <= a + b, "triangle inequality fails", [x.to_json(), y.to_json(), z.to_json()])
        _require(a == sq.dstar(y, x).exact, "not symmetric")
        _require((a == 0) == (x == y), "not definite")
    return {"triples": 200}


@case("seqspace", "norm_monotone_under_truncation")
def _norm_mono(cfg, rng):
    for x in sq.sample_vectors(rng, 300, 8):
        for p in (Q(1), Q(3, 2), Q(2), sq.INF):
            full = sq.norm(x, p, cfg.tol)
            for n in range(9):
                part = sq.norm(sq.truncate(n, x), p, cfg.tol)
                _require(_le_dist(part, full), "truncation increased the norm", [x.to_json(), n])
    return {"vectors": 300}


# ---------------------------------------------------------------- setrep

def _grid_vec(rng, dim=3, den=8):
    return SeqVec({i: Q(rng.randint(-den, den), den) for i in range(dim)})


def _random_primitive(rng):
    if rng.random() < 0.5:
        return sr.Ball(_grid_vec(rng), Q(rng.randint(1, 8), 8), 2)
    lo, hi = {}, {}
    for i in range(3):
        a, b = sorted((rng.randint(-8, 8), rng.randint(-8, 8)))
        lo[i], hi[i] = Q(a, 8), Q(b, 8)
    return sr.Interval(SeqVec(lo), SeqVec(hi))


def random_no_loss_set(rng) -> sr.SetExpr:
    """Intersection of 1-2 unions of 1-3 grid balls/boxes, inside the unit l2 ball."""
    clauses = [sr.Union(tuple(_random_primitive(rng) for _ in range(rng.randint(1, 3))))
               for _ in range(rng.randint(1, 2))]
    return sr.Intersection(tuple(clauses) + (sr.omega(2),))


def grid_points(k: int = 17, dim: int = 3) -> list[SeqVec]:
    half = (k - 1) // 2
    return [SeqVec({i: Q(v, half) for i, v in enumerate(c)}) for c in product(range(-half, half + 1), repeat=dim)]


def no_loss_round_trip(sets: int, seed, cfg: Config, k: int = 17) -> dict:
    rng = random.Random(f"{seed}:no-loss")
    pts = grid_points(k)
    mism = unknown = inside = 0
    cex = None
    for _ in range(sets):
        e = random_no_loss_set(rng)
        for x in pts:
            c = sr.contains(e, x, cfg.tol)
            r = sr.in_closure(e, x, cfg.n_max, cfg.delta_min, cfg.tol)
            inside += c.is_in
            unknown += r.verdict == sr.UNKNOWN
            if c.is_in != r.is_in or r.verdict == sr.UNKNOWN:
                mism += 1
                cex = cex or {"set": e.to_json(), "point": x.to_json(), "verdict": r.verdict}
    return {"sets": sets, "points": len(pts), "inside": inside, "disagreements": mism, "unknown": unknown,
            "counterexample": cex}


@case("setrep", "no_loss_round_trip")
def _no_loss(cfg, rng):
    out = no_loss_round_trip(100, cfg.seed, cfg)
    _require(out["disagreements"] == 0, "closure membership differs from membership", out["counterexample"])
    out.pop("counterexample")
    return out


def _grid_prefix_gap_oracle(e: sr.SetExpr, x: SeqVec, n: int, den: int = 16):
    """Smallest prefix distance to a member of ``e`` over a 1/den grid on coords < n (tail = 0)."""
    best = None
    rngs = [range(-2 * den, 2 * den + 1)] * n
    for c in product(*rngs):
        y = SeqVec({i: Q(v, den) for i, v in enumerate(c)})
        if sr.contains(e, y).is_in:
            g = max(abs(x[i] - y[i]) for i in range(n))
            best = g if best is None or g < best else best
    return best


@case("setrep", "out_certificates_sound")
def _out_sound(cfg, rng):
    outs = 0
    for _ in range(40):
        kind = rng.randrange(3)
        if kind == 0:
            e = sr.Ball(SeqVec({0: Q(rng.randint(-4, 4), 4), 1: Q(rng.randint(-4, 4), 4)}), Q(rng.randint(1, 4), 4), 2)
        elif kind == 1:
            a, b = sorted((rng.randint(-4, 4), rng.randint(-4, 4)))
            e = sr.Interval(SeqVec({0: Q(a, 4), 1: Q(-1, 4)}), SeqVec({0: Q(b, 4), 1: Q(1, 2)}))
        else:
            e = sr.Points(tuple(SeqVec({0: Q(rng.randint(-4, 4), 4), 1: Q(rng.randint(-4, 4), 4)}) for _ in range(3)))
        x = SeqVec({0: Q(rng.randint(-8, 8), 4), 1: Q(rng.randint(-8, 8), 4)})
        r = sr.in_closure(e, x, cfg.n_max, cfg.delta_min, cfg.tol)
        if r.is_out:
            outs += 1
            n, delta = r.cert.n, r.cert.delta
            best = _grid_prefix_gap_oracle(e, x, min(n, 2), 8)
            _require(best is None or best >= delta, "grid point closer than the certified gap",
                     {"set": e.to_json(), "point": x.to_json(), "n": n, "delta": fmt_q(delta)})
    return {"cases": 40, "out": outs}


@case("setrep", "sphere_witness")
def _sphere_witness(cfg, rng):
    built = 0
    for p in (Q(2), Q(3, 2)):
        e = sr.Sphere(1, p)
        for _ in range(40):
            # signed squares keep |x_i|**(3/2) rational
            x = SeqVec({i: rng.choice((-1, 1)) * Q(rng.randint(0, 6), 8) ** 2 for i in range(rng.randint(0, 8))})
            if sq.norm(x, p, cfg.tol).le(1) is not True:
                continue
            w = sr.find_witness(e, x, cfg.n_max, cfg.tol)
            _require(w is not None and w.name == "sphere-pad", "no sphere witness", [x.to_json(), sq.fmt_p(p)])
            for n in range(1, cfg.n_max + 1):
                y = w.build(n)
                _require(all(y.prefix[i] == x[i] for i in range(n)), "prefix mismatch")
                if y.pad_power is not None:
                    _require(y.power_sum() == sq.exact_power(Q(1), p), "p-th powers do not sum to 1")
                _require(sr.check_witness(e, x, w, n, cfg.tol), "witness rejected", [x.to_json(), n])
            built += 1
    return {"witnesses": built}


@case("setrep", "fattening_monotone")
def _fatten_mono(cfg, rng):
    pts = grid_points(9, 2)
    for _ in range(20):
        e = _random_primitive(rng)
        d1 = Q(rng.randint(1, 4), 8)
        d2 = d1 + Q(rng.randint(0, 4), 8)
        f1, f2 = sr.fatten(e, d1, 2), sr.fatten(e, d2, 2)
        for x in pts:
            if sr.contains(e, x).is_in:
                _require(sr.contains(f1, x).is_in, "C not inside C_delta", x.to_json())
            if sr.contains(f1, x).is_in:
                _require(sr.contains(f2, x).is_in, "C_delta not inside C_delta'", x.to_json())
    return {"sets": 20, "points": len(pts)}


@case("setrep", "unit_vectors_limit")
def _units(cfg, rng):
    e = sr.UnitVectors()
    for i in range(12):
        _require(sr.in_closure(e, SeqVec.unit(i), cfg.n_max, cfg.delta_min, cfg.tol).is_in, f"e_{i} not In")
    _require(sr.in_closure(e, SeqVec(), cfg.n_max, cfg.delta_min, cfg.tol).is_in, "0 not In")
    r = sr.in_closure(e, SeqVec.unit(0, Q(1, 2)), cfg.n_max, cfg.delta_min, cfg.tol)
    _require(r.is_out and r.cert is not None, "e_0/2 not Out")
    return {"cert": r.cert.to_json()}


# ---------------------------------------------------------------- analysis

def _all_systems(n: int):
    pairs = [(a, b) for a in range(n) for b in range(n)]
    for bits in range(1 << len(pairs)):
        yield an.TransitionSystem(n, frozenset(p for k, p in enumerate(pairs) if bits >> k & 1))


def _systems(rng):
    for n in range(1, 4):
        yield from _all_systems(n)
    for _ in range(60):
        n = rng.randint(4, 6)
        yield an.random_system(rng, n, rng.choice((0.15, 0.3, 0.5)))


@case("analysis", "reach_closure_operator")
def _reach_closure(cfg, rng):
    count = 0
    for T in _systems(rng):
        subs = [frozenset(c) for k in range(T.n + 1) for c in combinations(range(T.n), k)]
        r = {S: an.reach(T, S) for S in subs}
        for S in subs:
            _require(S <= r[S], "not extensive", [sorted(T.rel), sorted(S)])
            _require(an.reach(T, r[S]) == r[S], "not idempotent", [sorted(T.rel), sorted(S)])
        for S, U in combinations(subs, 2):
            if S <= U:
                _require(r[S] <= r[U], "not monotone", [sorted(T.rel), sorted(S), sorted(U)])
        count += 1
    return {"systems": count}


@case("analysis", "safety_matches_paths")
def _safety(cfg, rng):
    count = 0
    for T in _systems(rng):
        I = frozenset(x for x in range(T.n) if rng.random() < 0.4)
        E = frozenset(x for x in range(T.n) if rng.random() < 0.3)
        want = an.TOP if not (an.paths_reach(T, I) & E) else an.BOTTOM
        _require(an.safety(T, I, E) == want, "safety disagrees with path enumeration",
                 [sorted(T.rel), sorted(I), sorted(E)])
        count += 1
    return {"systems": count}


@case("analysis", "post_left_adjoint")
def _post_adj(cfg, rng):
    count = 0
    lattices = {n: an.powerset_lattice(n) for n in range(1, 4)}
    for T in (T for n in range(1, 4) for T in _all_systems(n)):
        L = lattices[T.n]
        f = an.post_map(T)
        _require(lat.preserves_joins(f, L), "post does not preserve unions", sorted(T.rel))
        for k in range(1 << T.n):
            S = frozenset(i for i in range(T.n) if k >> i & 1)
            _require(an.wp_via_adjoint(T, S) == an.wp(T, S), "adjoint differs from wp", [sorted(T.rel), sorted(S)])
        count += 1
    return {"systems": count}


@case("analysis", "box_below_idempotent")
def _box(cfg, rng):
    ms = an.metrics_up_to(4)
    for _ in range(10):
        n = 5
        pts = [Q(rng.randint(0, 12), 4) for _ in range(n)]
        if len(set(pts)) == n:
            ms.append(an.FiniteMetric(tuple(tuple(abs(a - b) for b in pts) for a in pts)))
    analyses = 0
    for M in ms:
        fam = an.analysis_family(M, rng, 50)
        for A in fam:
            B = an.box_analysis(A, M)
            BB = an.box_analysis(B, M)
            for S in M.subsets():
                _require(A.codomain.leq(B(S), A(S)), "box above its input", [M.to_json(), A.name, sorted(S)])
                _require(BB(S) == B(S), "box not idempotent", [M.to_json(), A.name, sorted(S)])
                _require(B(S) == an.brute_box(A, S, M), "box differs from brute force", [M.to_json(), A.name])
            _require(an.is_robust(B, M), "box is not robust", [M.to_json(), A.name])
            analyses += 1
    return {"metrics": len(ms), "analyses": analyses}


# ---------------------------------------------------------------- worked examples

def _kernel():
    return sr.KernelSlice("ones", 0, sr.Ball(SeqVec(), 1, 1))


def geometric_tail_check(terms: int = 64) -> dict:
    """``x_n = 2^-(n+2)``: every truncation lies in the half ball and off the
    zero-sum slice; the closed forms for the full sequence agree."""
    half = sr.Ball(SeqVec(), Q(1, 2), 1)
    k = _kernel()
    for N in range(1, terms + 1):
        x = SeqVec({i: Q(1, 2 ** (i + 2)) for i in range(N)})
        s = sum((v for _, v in x.items()), Q(0))
        if s != Q(1, 2) - Q(1, 2 ** (N + 1)):
            return {"ok": False, "N": N}
        if not sr.contains(half, x).is_in or sr.contains(k, x).is_in:
            return {"ok": False, "N": N}
    # full sequence: l1 norm and coordinate sum are both exactly 1/2
    return {"ok": True, "truncations": terms, "l1_norm": "1/2", "sum": "1/2"}


def kernel_ell_1_check(cfg: Config, rng: random.Random, samples: int = 60) -> dict:
    k = _kernel()
    y = SeqVec({0: Q(1, 2), 1: Q(-1, 2)})
    _require(sr.contains(k, y).is_in, "y not in the slice")
    _require(sr.contains(sr.Ball(SeqVec(), Q(1, 2), 1), y).is_out, "y inside the half ball")
    geo = geometric_tail_check()
    _require(geo["ok"], "geometric sequence not in D minus C", geo)
    r = sr.in_closure(k, SeqVec.unit(0), cfg.n_max, cfg.delta_min, cfg.tol)
    _require(r.is_out and r.cert.n == 1 and r.cert.delta == Q(1, 2), "e_0 certificate wrong", r.to_json())
    mirror = next(w for w in sr.membership.WITNESSES if w.__name__ == "_mirror")
    count = 0
    while count < samples:
        x = SeqVec({i: Q(rng.randint(-8, 8), 64) for i in range(rng.randint(0, 6))})
        if sum((abs(v) for _, v in x.items()), Q(0)) > Q(1, 2):
            continue
        w = mirror(k, x, cfg.tol)
        _require(w is not None, "mirror witness unavailable", x.to_json())
        for n in range(1, 9):
            _require(sr.check_witness(k, x, w, n, cfg.tol), "mirror witness fails", [x.to_json(), n])
        _require(sr.in_closure(k, x, cfg.n_max, cfg.delta_min, cfg.tol).is_in, "half-ball point not In")
        count += 1
    return {"samples": samples, "e0_cert": r.cert.to_json(), "geometric": geo}


@case("paper-examples", "kernel_ell_1")
def _kernel_ell_1(cfg, rng):
    return kernel_ell_1_check(cfg, rng)


def discrete_units_check(cfg: Config) -> dict:
    pts = sr.UnitVectors()
    _require(sr.in_closure(pts, SeqVec(), cfg.n_max, cfg.delta_min, cfg.tol).is_in, "0 not in the closure")
    r = sr.in_closure(pts, SeqVec.unit(0, Q(1, 2)), cfg.n_max, cfg.delta_min, cfg.tol)
    _require(r.is_out and r.cert is not None and r.cert.delta > 0, "e_0/2 lacks a certificate", r.to_json())
    for i in range(21):
        d = sq.dstar(SeqVec.unit(i), SeqVec()).exact
        _require(d == Q(1, 2 ** (i + 1)), f"d_*(e_{i}, 0) = {d}")
    return {"cert": r.cert.to_json(), "dstar_checked": 21}


@case("paper-examples", "discrete_e_i_s")
def _discrete(cfg, rng):
    return discrete_units_check(cfg)


def unit_sphere_check(cfg: Config, rng: random.Random, samples: int = 50) -> dict:
    e = sr.Sphere(1, 2)
    done = 0
    while done < samples:
        x = SeqVec({i: Q(rng.randint(-16, 16), 48) for i in rng.sample(range(8), rng.randint(0, 8))})
        if sq.norm(x, 2).le(1) is not True:
            continue
        w = sr.find_witness(e, x, cfg.n_max, cfg.tol)
        _require(w is not None and w.name == "sphere-pad", "sphere witness missing", x.to_json())
        for n in range(1, 9):
            y = w.build(n)
            _require(y.pad_power is not None and y.power_sum() == 1, "p-th powers not exact", [x.to_json(), n])
            _require(all(y.prefix[i] == x[i] for i in range(n)), "prefix mismatch", [x.to_json(), n])
        done += 1
    br = sr.closure(e, 2)
    ball = sr.Ball(SeqVec(), 1, 2)
    _require(br.inner == ball and br.outer == ball, "closure of the sphere is not the ball", br.to_json())
    return {"samples": samples, "closure": "ball both sides"}


@case("paper-examples", "unit_sphere")
def _sphere(cfg, rng):
    return unit_sphere_check(cfg, rng)


@case("paper-examples", "adjunction_swap")
def _swap(cfg, rng):
    D = lat.FiniteLattice.diamond()
    swap = lat.MonotoneMap(D.poset, D.poset, (0, 2, 1, 3))
    ident = lat.MonotoneMap.identity(D.poset)
    _require(lat.check_adjunction(swap, swap), "swap is self-adjoint on the diamond")
    _require(not lat.check_adjunction(swap, ident), "swap/id is not an adjunction")
    const = lat.MonotoneMap(D.poset, D.poset, (0, 0, 0, 0))
    g = lat.right_adjoint(const, D)
    _require(g is not None and g.table == (3, 3, 3, 3), "constant bottom map has the top adjoint")
    return {"diamond": True}


@case("paper-examples", "reach_and_safety")
def _reach_ex(cfg, rng):
    T = an.TransitionSystem(3, frozenset({(0, 1), (1, 2)}))
    _require(an.post(T, {0}) == {1}, "post({0})")
    _require(an.reach(T, {0}) == {0, 1, 2}, "reach({0})")
    T2 = an.TransitionSystem(2, frozenset({(0, 1)}))
    _require(an.safety(T2, {0}, {1}) == an.BOTTOM, "safety should be bottom")
    _require(an.wp(T, {2}) == an.wp_via_adjoint(T, {2}), "wp via adjoint")
    return {"wp_2": sorted(an.wp(T, {2}))}


@case("paper-examples", "dist_star_e0")
def _dstar_e0(cfg, rng):
    d = sq.dstar(SeqVec.unit(0), SeqVec())
    _require(d.exact == Q(1, 2), "d_*(e_0, 0) != 1/2")
    return {"value": "1/2"}


@case("paper-examples", "box_singleton_test")
def _box_single(cfg, rng):
    M = an.FiniteMetric.line(3)
    A = an.singleton_test(M, 1)
    _require(an.box_robust(A, {1}, M, [Q(1, 2)]) == an.TOP, "box at the resolution scale")
    _require(an.fattened_join(A, {1}, M, [Q(1)]) == an.BOTTOM, "fattening by the resolution escapes")
    try:
        an.box_robust(A, {1}, M, [Q(1)])
    except an.ScheduleError:
        pass
    else:
        raise Failure("schedule stopping at the resolution was accepted")
    return {}


def report_lines(results: list[CaseResult], as_json: bool, seed: int) -> list[str]:
    if as_json:
        return [json.dumps(r.to_json(), sort_keys=True) for r in results]
    lines = [f"# seed={seed}"]
    for r in results:
        extra = "" if r.ok else f" ({r.detail.get('error')}; counterexample={json.dumps(r.counterexample, sort_keys=True)})"
        lines.append(r.line() + extra)
    return lines


__all__ = ["Config", "CaseResult", "SUITES", "case_names", "no_loss_round_trip", "report_lines", "run"]
