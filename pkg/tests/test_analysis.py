from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from robustlat import analysis as an
from robustlat.analysis import BOTTOM, TOP, FiniteMetric, ScheduleError, SystemInputError, TransitionSystem
from robustlat.lattice import ResourceError
from robustlat.seqspace import Q


def ts(n, rel):
    return TransitionSystem(n, frozenset(rel))


def subsets(n):
    return [frozenset(c) for k in range(n + 1) for c in combinations(range(n), k)]


@st.composite
def systems(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    rel = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n * n))
    return ts(n, rel)


# ---------------------------------------------------------------- systems

def test_post_examples():
    assert an.post(ts(3, {(0, 1), (1, 2)}), {0}) == {1}
    assert an.post(ts(3, {(0, 1), (1, 2)}), set()) == frozenset()
    assert an.post(ts(2, {(a, b) for a in range(2) for b in range(2)}), {0}) == {0, 1}
    with pytest.raises(SystemInputError):
        an.post(ts(2, set()), {5})
    with pytest.raises(SystemInputError):
        ts(2, {(0, 3)})


def test_reach_and_safety_examples():
    assert an.reach(ts(3, {(0, 1), (1, 2)}), {0}) == {0, 1, 2}
    assert an.reach(ts(3, {(0, 1), (1, 2)}), set()) == frozenset()
    assert an.reach(ts(2, {(0, 1), (1, 0)}), {0}) == {0, 1}
    T = ts(2, {(0, 1)})
    assert an.safety(T, {0}, {1}) == BOTTOM
    assert an.safety(T, {0}, set()) == TOP
    assert an.safety(T, {0}, {0}) == BOTTOM
    assert an.safety(ts(2, set()), {0}, {1}) == TOP


@given(systems(), st.data())
def test_reach_is_a_closure_operator(T, data):
    A = data.draw(st.sets(st.integers(0, T.n - 1)))
    B = data.draw(st.sets(st.integers(0, T.n - 1)))
    rA = an.reach(T, A)
    assert frozenset(A) <= rA
    assert an.reach(T, rA) == rA
    if A <= B:
        assert rA <= an.reach(T, B)


def test_reach_closure_exhaustive_on_three_states():
    pairs = [(a, b) for a in range(3) for b in range(3)]
    for bits in range(1 << len(pairs)):
        T = ts(3, {pr for i, pr in enumerate(pairs) if bits >> i & 1})
        cache = {S: an.reach(T, S) for S in subsets(3)}
        for S, r in cache.items():
            assert S <= r and cache[r] == r
            for S2 in subsets(3):
                if S <= S2:
                    assert r <= cache[S2]


@given(systems(), st.data())
def test_safety_matches_path_enumeration(T, data):
    I = data.draw(st.sets(st.integers(0, T.n - 1)))
    E = data.draw(st.sets(st.integers(0, T.n - 1)))
    assert an.reach(T, I) == an.paths_reach(T, I)
    assert (an.safety(T, I, E) == TOP) == (not (an.paths_reach(T, I) & frozenset(E)))


@given(systems(max_n=3))
def test_post_is_a_left_adjoint_with_wp_as_right_adjoint(T):
    for S in subsets(T.n):
        assert an.wp_via_adjoint(T, S) == an.wp(T, S)
        for U in subsets(T.n):
            assert an.post(T, S | U) == an.post(T, S) | an.post(T, U)
            assert (an.post(T, S) <= U) == (S <= an.wp(T, U))


# ---------------------------------------------------------------- metrics

def test_metric_validation():
    with pytest.raises(SystemInputError):
        FiniteMetric(((0, 1), (2, 0)))
    with pytest.raises(SystemInputError):
        FiniteMetric(((0, 0), (0, 0)))
    with pytest.raises(SystemInputError):
        FiniteMetric(((0, 1, 5), (1, 0, 1), (5, 1, 0)))
    m = FiniteMetric.line(3)
    assert m.spectrum() == [1, 2] and m.resolution() == 1
    assert m.fatten({0}, 1) == {0, 1} and m.fatten({0}, Q(1, 2)) == {0}
    assert FiniteMetric.discrete(1).resolution() is None


def test_metrics_up_to_counts():
    ms = an.metrics_up_to(3)
    assert [sum(1 for m in ms if m.n == k) for k in (1, 2, 3)] == [1, 3, 10]


# ---------------------------------------------------------------- box

def test_box_of_identity_is_identity():
    m = FiniteMetric.line(4)
    A = an.identity_analysis(m)
    for C in m.subsets():
        assert an.box_robust(A, C, m, an.default_schedule(m)) == C


def test_box_singleton_test_flips_at_resolution():
    m = FiniteMetric.discrete(2)
    A = an.singleton_test(m, 0)
    assert an.box_robust(A, {0}, m, [Q(2), Q(1, 2)]) == TOP
    assert an.fattened_join(A, {0}, m, [Q(2), Q(1)]) == BOTTOM
    with pytest.raises(ScheduleError):
        an.box_robust(A, {0}, m, [Q(2), Q(1)])
    with pytest.raises(ScheduleError):
        an.box_robust(A, {0}, m, [Q(1, 2), Q(1)])
    with pytest.raises(ScheduleError):
        an.box_robust(A, {0}, m, [])


def test_box_of_empty_input():
    m = FiniteMetric.line(3)
    rng = random.Random(4)
    for A in an.analysis_family(m, rng, 30):
        assert an.box_robust(A, frozenset(), m, an.default_schedule(m)) == A(frozenset())


def test_is_robust_examples():
    m = FiniteMetric.line(3)
    assert an.is_robust(an.identity_analysis(m), m)
    assert an.is_robust(an.constant_analysis(m, {1}), m)
    A = an.interior_analysis(m, 1)
    v = an.robustness_violation(A, m, resolution=True)
    assert v is not None and not an.is_robust(A, m, resolution=True)
    with pytest.raises(ResourceError):
        an.is_robust(an.identity_analysis(FiniteMetric.discrete(13)), FiniteMetric.discrete(13))


def test_fixpoint_reports():
    m = FiniteMetric.line(3)
    rng = random.Random(0)
    fam = an.analysis_family(m, rng, 40)
    for A in (an.identity_analysis(m), an.constant_analysis(m, {0, 2})):
        rep = an.box_robust_eq_fixpoint_property(A, m, fam)
        assert rep.ok and rep.equals_input
    rep = an.box_robust_eq_fixpoint_property(an.interior_analysis(m, 1), m, fam)
    assert rep.ok


@pytest.mark.parametrize("seed", range(3))
def test_box_matches_brute_force_and_is_idempotent(seed):
    rng = random.Random(seed)
    for m in an.metrics_up_to(3):
        fam = an.analysis_family(m, rng, 50)
        for A in fam:
            assert A.is_monotone(m)
            B = an.box_analysis(A, m)
            BB = an.box_analysis(B, m)
            for C in m.subsets():
                assert B(C) == an.brute_box(A, C, m)
                assert A.codomain.leq(B(C), A(C))
                assert BB(C) == B(C)
            assert an.is_robust(B, m)


def test_box_on_five_point_line_metrics():
    rng = random.Random(9)
    for step in (1, Q(1, 3)):
        m = FiniteMetric.line(5, step)
        for A in an.analysis_family(m, rng, 50):
            B = an.box_analysis(A, m)
            assert all(A.codomain.leq(B(C), A(C)) for C in m.subsets())
            assert all(an.box_analysis(B, m)(C) == B(C) for C in m.subsets())
