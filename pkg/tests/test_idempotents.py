from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from robustlat import idempotents as idm
from robustlat.idempotents import ChainOrderError, EpPair, Fn, IdempotentError, SplitChain


def clamp_chain():
    pts = list(range(-3, 4))
    gs = [Fn.from_dict({x: max(-n, min(n, x)) for x in pts}, f"r_{n}") for n in range(4)]
    return SplitChain.from_idempotents(gs, pts)


def test_fn_basics():
    f = Fn.from_table([1, 1, 2])
    assert f(0) == 1 and f.image() == (1, 2)
    assert idm.is_idempotent(f)
    g = Fn.from_table([1, 2, 0])
    assert not idm.is_idempotent(g)
    with pytest.raises(IdempotentError):
        idm.idem_leq(f, g)


def test_idem_leq_partial_order_and_below_identity():
    for k in range(1, 5):
        gs = idm.all_idempotents(k)
        ident = Fn.identity(range(k))
        for a in gs:
            assert idm.idem_leq(a, a) and idm.idem_leq(a, ident)
            for b in gs:
                if idm.idem_leq(a, b) and idm.idem_leq(b, a):
                    assert a.table == b.table
                for c in gs:
                    if idm.idem_leq(a, b) and idm.idem_leq(b, c):
                        assert idm.idem_leq(a, c)


def test_idempotent_counts():
    # idempotent self-maps of a k-set: sum_j C(k, j) j^(k-j)
    from math import comb

    for k in range(1, 6):
        want = sum(comb(k, j) * j ** (k - j) for j in range(1, k + 1))
        assert len(idm.all_idempotents(k)) == want


@given(st.integers(0, 10**6))
def test_ep_pair_composite_is_idempotent(seed):
    ep = idm.random_ep_pair(random.Random(seed), 6)
    assert ep.holds()
    assert idm.is_idempotent(ep.e.after(ep.p))


def test_ep_composition():
    rng = random.Random(1)
    for _ in range(50):
        inner = idm.random_ep_pair(rng, 4)
        n = len(inner.p.dom)
        img = list(range(n + 2))
        e = Fn.from_dict({y: y for y in range(n)}, "e")
        p = Fn.from_dict({y: min(y, n - 1) for y in img}, "p")
        outer = EpPair(e, p)
        assert outer.holds() and outer.compose(inner).holds()


def test_split_and_chain_laws_on_clamp_chain():
    ch = clamp_chain()
    assert idm.check_chain_laws(ch) == []
    img, ep = idm.split(ch.stages[1].g)
    assert img == (-1, 0, 1) and ep.holds()


def test_chain_order_violation():
    pts = list(range(3))
    g0 = Fn.from_dict({0: 0, 1: 0, 2: 2}, "a")
    g1 = Fn.from_dict({0: 1, 1: 1, 2: 1}, "b")
    with pytest.raises(ChainOrderError):
        SplitChain.from_idempotents([g0, g1], pts)


def test_h_family_range():
    ch = clamp_chain()
    assert idm.h_family(ch, 2, 0)(2) == 0
    assert idm.h_family(ch, 0, 3)(0) == 0
    with pytest.raises(IndexError):
        idm.h_family(ch, 0, 9)


@given(st.integers(0, 10**6))
def test_random_chains_satisfy_laws_and_uniqueness(seed):
    ch = idm.random_split_chain(random.Random(seed), 5, 8)
    assert idm.check_chain_laws(ch) == []
    eps = idm.connecting_ep(ch)
    for n in range(len(ch) - 1):
        pairs = idm.factorizing_pairs(ch, n)
        assert len(pairs) == 1
        e, p = pairs[0]
        assert all(e[x] == eps[n].e(x) for x in ch.stage_points(n))
        assert all(p[y] == eps[n].p(y) for y in ch.stage_points(n + 1))
        try:
            assert idm.naive_factorizing_pairs(ch, n) == pairs
        except idm.ResourceError:
            pass


def test_truncated_limit_of_clamp_chain():
    lim = idm.truncated_limit(clamp_chain())
    assert len(lim.elements) == 7
    assert lim.jointly_mono()
    assert all(lim.is_compatible(t) for t in lim.elements)
    for n in range(lim.depth + 1):
        g = lim.gbar(n)
        assert all(g(g(t)) == g(t) for t in lim.elements)


@given(st.integers(0, 10**6))
def test_iota_lands_in_limit_and_is_injective_when_jointly_mono(seed):
    ch = idm.random_split_chain(random.Random(seed), 5, 8)
    lim = idm.truncated_limit(ch)
    pts = ch.points()
    for s in pts:
        t = lim.iota(s)
        assert lim.is_compatible(t)
        assert all(lim.project(n, t) == ch.stages[n].q(s) for n in range(lim.depth + 1))
    if len({tuple(st_.g(s) for st_ in ch.stages) for s in pts}) == len(pts):
        assert len({lim.iota(s) for s in pts}) == len(pts)


def test_truncated_limit_resource_bound():
    with pytest.raises(idm.ResourceError):
        idm.truncated_limit(clamp_chain(), max_size=2)
