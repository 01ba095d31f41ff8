from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import as_fraction, seqvecs, small_q
from robustlat import seqspace as sq
from robustlat.idempotents import idem_leq
from robustlat.seqspace import INF, Q, STAR, DomainError, SeqVec

mpmath.mp.dps = 80

PS = [Q(1), Q(3, 2), Q(2), Q(3), INF]


def mp_norm(x: SeqVec, p) -> mpmath.mpf:
    vals = [mpmath.mpf(as_fraction(v).numerator) / as_fraction(v).denominator for _, v in x.items()]
    if p == INF:
        return max((abs(v) for v in vals), default=mpmath.mpf(0))
    pf = mpmath.mpf(int(p.numerator)) / int(p.denominator)
    return mpmath.power(sum((abs(v) ** pf for v in vals), mpmath.mpf(0)), 1 / pf)


def to_mp(q) -> mpmath.mpf:
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def test_parse_and_format():
    assert sq.parse_p("inf") == INF and sq.parse_p("3/2") == Q(3, 2)
    with pytest.raises(DomainError):
        sq.parse_p("1/2")
    assert sq.fmt_q(Q(-3, 4)) == "-3/4" and sq.fmt_q(Q(2)) == "2"
    assert sq.to_q("0.25") == Q(1, 4)


def test_seqvec_basics():
    x = SeqVec({0: 1, 3: Q(1, 2), 5: 0})
    assert x.support() == [0, 3] and x.length() == 4
    assert x.prefix(1) == SeqVec.unit(0)
    assert SeqVec.from_json(x.to_json()) == x
    assert hash(x) == hash(SeqVec({3: Q(1, 2), 0: 1}))
    with pytest.raises(DomainError):
        SeqVec({-1: 1})


@given(seqvecs(), seqvecs())
def test_vector_arithmetic(x, y):
    assert (x + y) - y == x
    assert x - x == SeqVec()
    assert x.scale(2) == x + x


@given(seqvecs(), st.sampled_from(PS))
def test_norm_brackets_contain_true_value(x, p):
    d = sq.norm(x, p)
    v = mp_norm(x, p)
    assert to_mp(d.lo) - mpmath.mpf(10) ** -60 <= v <= to_mp(d.hi) + mpmath.mpf(10) ** -60
    assert d.width <= sq.DEFAULT_TOL


@given(seqvecs())
def test_exact_norms_for_one_and_inf(x):
    f = [as_fraction(v) for _, v in x.items()]
    assert sq.norm(x, 1).exact == Q(sum((abs(v) for v in f), Fraction(0)))
    assert sq.norm(x, INF).exact == Q(max((abs(v) for v in f), default=Fraction(0)))


def test_pythagorean_norm_is_exact():
    d = sq.norm(SeqVec({0: 3, 1: 4}), 2)
    assert d.exact == 5 and d.power == 25


def test_dist_comparisons_without_roots():
    d = sq.norm(SeqVec({0: 1, 1: 1}), 2)  # sqrt 2
    assert d.exact is None
    assert d.le(Q(141, 100)) is False and d.le(Q(142, 100)) is True
    assert d.le(Q(1414, 1000)) is False and d.le(Q(1415, 1000)) is True
    assert d.lt(2) is True and d.eq(Q(3, 2)) is False


def test_dist_of_irrational_terms_refines():
    d = sq.norm(SeqVec({0: 2}), Q(3, 2))  # |2|^(3/2) irrational, but the norm is 2
    assert d.le(2) in (True, None) and d.lt(2) in (False, None)
    assert d.lo <= 2 <= d.hi


def test_root_helpers():
    assert sq.exact_root(Q(9, 4), 2) == Q(3, 2) and sq.exact_root(Q(2), 2) is None
    lo, hi = sq.root_bracket(2, 2, 30)
    assert lo * lo < 2 < hi * hi and hi - lo == Q(1, 2**30)
    assert sq.exact_power(Q(4), Q(3, 2)) == 8 and sq.exact_power(Q(2), Q(3, 2)) is None
    with pytest.raises(DomainError):
        sq.root_bracket(-1, 2, 4)


def test_dstar_examples():
    assert sq.dstar(SeqVec.unit(0), SeqVec()).exact == Q(1, 2)
    for i in range(6):
        for j in range(6):
            if i != j:
                assert sq.dstar(SeqVec.unit(i), SeqVec.unit(j)).exact == Q(1, 2 ** (i + 1)) + Q(1, 2 ** (j + 1))
    assert sq.dstar(SeqVec.unit(0), SeqVec()).to_json() == {"p": STAR, "value": "1/2"}


@given(seqvecs(), seqvecs())
def test_dstar_formula_against_fractions(x, y):
    want = sum((abs(as_fraction(x[i]) - as_fraction(y[i])) / 2 ** (i + 1) for i in range(8)), Fraction(0))
    assert sq.dstar(x, y).exact == Q(want)


@given(seqvecs(), seqvecs(), seqvecs())
def test_dstar_is_a_metric(x, y, z):
    d = lambda a, b: sq.dstar(a, b).exact  # noqa: E731
    assert d(x, y) == d(y, x)
    assert (d(x, y) == 0) == (x == y)
    assert d(x, z) <= d(x, y) + d(y, z)


@given(seqvecs(), seqvecs(), st.sampled_from([Q(1), Q(2), INF]))
def test_metric_comparison(x, y, p):
    di = sq.dinf(x, y)
    assert sq.dstar(x, y).exact <= di
    assert sq.dist(x, y, p).lt(di) is False


@given(seqvecs(), seqvecs(), st.sampled_from([Q(1), Q(2), INF]), st.integers(0, 8))
def test_truncation_is_short(x, y, p, n):
    a = sq.dist(sq.truncate(n, x), sq.truncate(n, y), p)
    b = sq.dist(x, y, p)
    if a.power is not None and b.power is not None:
        assert a.power <= b.power
    else:
        assert a.exact <= b.exact


@given(seqvecs(), st.sampled_from([Q(1), Q(2), INF]), st.integers(0, 8))
def test_norm_monotone_under_truncation(x, p, n):
    a, b = sq.norm(sq.truncate(n, x), p), sq.norm(x, p)
    assert to_mp(a.lo) <= to_mp(b.hi)
    if a.power is not None and b.power is not None:
        assert a.power <= b.power


@given(small_q, st.integers(0, 5))
def test_clamp(t, n):
    c = sq.clamp(n, t)
    assert -n <= c <= n
    assert sq.clamp(n, c) == c
    if -n <= t <= n:
        assert c == t


def test_clamp_rejects_negative_index():
    with pytest.raises(DomainError):
        sq.clamp(-1, 0)


@given(st.lists(seqvecs(), min_size=1, max_size=12))
def test_truncation_chain_order(pts):
    from robustlat.idempotents import Fn

    for n in range(6):
        g0 = Fn(lambda x, n=n: sq.truncate(n, x), None, "g0")
        g1 = Fn(lambda x, n=n: sq.truncate(n + 1, x), None, "g1")
        assert idem_leq(g0, g1, pts)


def test_chain_ctx_laws_on_samples():
    from robustlat.idempotents import check_chain_laws

    ch = sq.chain_ctx(sq.SpaceCtx(Q(2), 3), 4)
    import random

    ch.sample = tuple(sq.sample_vectors(random.Random(0), 40, 4))
    assert check_chain_laws(ch) == []
    assert ch.stages[2].carrier.contains(sq.truncate(2, SeqVec({0: 5})))
