from __future__ import annotations

from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from robustlat import lattice as lat
from robustlat.lattice import FiniteLattice, FinitePoset, MonotoneMap, OrderError, ResourceError


def diamond():
    return FiniteLattice.diamond()


def test_poset_rejects_non_orders():
    with pytest.raises(OrderError):
        FinitePoset(((True, True), (True, True)))  # not antisymmetric
    with pytest.raises(OrderError):
        FinitePoset(((False,),))  # not reflexive
    with pytest.raises(OrderError):
        FinitePoset(((True, True, False), (False, True, True), (False, False, True)))  # not transitive


def test_sup_and_inf_in_a_chain():
    c = FinitePoset.chain(4)
    assert c.sup(0b0110) == 2
    assert c.inf(0b0110) == 1
    assert c.sup(0) == 0 and c.inf(0) == 3


def test_antichain_has_no_sup():
    a = FinitePoset.antichain(2)
    assert a.sup(0b11) is None
    with pytest.raises(OrderError):
        FiniteLattice(a)


@pytest.mark.parametrize("n, posets, lattices", [(1, 1, 1), (2, 2, 1), (3, 5, 1), (4, 16, 2), (5, 63, 5), (6, 318, 15)])
def test_enumeration_counts_match_known_sequences(n, posets, lattices):
    ps = lat.all_posets(n)
    assert len(ps) == posets
    assert sum(1 for L in lat.all_lattices(n) if L.n == n) == lattices


def test_enumeration_is_iso_free():
    for n in range(1, 5):
        keys = [p.canonical_key() for p in lat.all_posets(n)]
        assert len(set(keys)) == len(keys)


def test_canonical_key_is_isomorphism_invariant():
    from itertools import permutations

    for p in lat.all_posets(4):
        for perm in permutations(range(4)):
            assert p.relabel(perm).canonical_key() == p.canonical_key()


def test_swap_on_diamond():
    D = diamond()
    swap = MonotoneMap(D.poset, D.poset, (0, 2, 1, 3))
    ident = MonotoneMap.identity(D.poset)
    assert lat.check_adjunction(swap, swap)
    assert not lat.check_adjunction(swap, ident)


def test_constant_bottom_has_top_adjoint():
    two = FiniteLattice.chain(2)
    f = MonotoneMap(two.poset, two.poset, (0, 0))
    assert lat.right_adjoint(f, two).table == (1, 1)


def test_map_missing_bottom_has_no_adjoint():
    two = FiniteLattice.chain(2)
    f = MonotoneMap(two.poset, two.poset, (1, 1))
    assert lat.right_adjoint(f, two) is None
    assert lat.brute_force_right_adjoints(f) == []


def test_inclusion_into_diamond():
    D = diamond()
    two = FiniteLattice.chain(2)
    inc = MonotoneMap(two.poset, D.poset, (0, 3))
    g = lat.right_adjoint(inc, two)
    assert g is not None and g.table == (0, 0, 0, 1)


def test_is_monotone_checks_tables():
    c = FinitePoset.chain(2)
    assert lat.is_monotone(c, c, (0, 1))
    assert not lat.is_monotone(c, c, (1, 0))
    with pytest.raises(OrderError):
        lat.is_monotone(c, c, (0,))
    with pytest.raises(OrderError):
        MonotoneMap(c, c, (1, 0))


def _lattice_maps(max_n):
    ls = lat.all_lattices(max_n)
    for L, M in product(ls, ls):
        for f in lat.all_monotone_maps(L.poset, M.poset):
            yield L, M, f


def test_three_way_oracle_on_small_lattices():
    for L, M, f in _lattice_maps(4):
        g = lat.right_adjoint(f, L)
        brute = lat.brute_force_right_adjoints(f)
        sp = lat.preserves_sups(f)
        assert (g is not None) == bool(brute) == sp == lat.preserves_joins(f, L)
        if g is not None:
            assert brute == [g]
            assert lat.check_adjunction(f, g) and lat.check_adjunction_galois(f, g)


def _naive_sup(P: FinitePoset, S):
    ubs = [u for u in range(P.n) if all(P.leq[s][u] for s in S)]
    least = [u for u in ubs if all(P.leq[u][v] for v in ubs)]
    return least[0] if least else None


def test_poset_sup_against_naive_definition():
    for n in range(1, 5):
        for P in lat.all_posets(n):
            for k in range(n + 1):
                for S in combinations(range(n), k):
                    mask = sum(1 << s for s in S)
                    assert P.sup(mask) == _naive_sup(P, S)


@given(st.data())
def test_random_monotone_maps_on_six_element_lattices(data):
    ls = lat.all_lattices(6)
    L = data.draw(st.sampled_from(ls))
    M = data.draw(st.sampled_from(ls))
    maps = lat.all_monotone_maps(L.poset, M.poset)
    f = data.draw(st.sampled_from(maps))
    g = lat.right_adjoint(f, L)
    if lat.preserves_sups(f):
        assert g is not None and lat.check_adjunction(f, g)
    else:
        assert g is None and lat.brute_force_right_adjoints(f) == []


def test_mono_left_adjoint_is_retracted():
    from itertools import permutations

    for L in lat.all_lattices(5):
        for M in lat.all_lattices(5):
            for t in permutations(range(M.n), L.n):
                if not lat.is_monotone(L.poset, M.poset, t):
                    continue
                f = MonotoneMap(L.poset, M.poset, t)
                g = lat.right_adjoint(f, L)
                if g is not None:
                    assert g.compose(f).table == tuple(range(L.n))


def test_topologies_are_trivial_up_to_four_points():
    for n in range(1, 5):
        for P in lat.all_posets(n):
            ts = lat.enumerate_T0_topologies(P)
            assert ts == [lat.alexandrov(P)] == [lat.tau_top(P)]
            assert lat.specialization_order(ts[0]).leq == P.leq


def test_enumeration_bound():
    with pytest.raises(ResourceError):
        lat.enumerate_T0_topologies(FinitePoset.chain(5))


def test_specialization_needs_t0():
    t = lat.FiniteTopology(2, frozenset({0, 0b11}))
    with pytest.raises(OrderError):
        lat.specialization_order(t)


def test_scott_equals_alexandrov_on_finite_lattices():
    for L in lat.all_lattices(5):
        assert lat.scott_opens(L) == lat.alexandrov(L.poset)


def test_alexandrov_opens_are_upsets():
    for P in lat.all_posets(4):
        opens = lat.alexandrov(P).opens
        assert opens == frozenset(m for m in range(1 << P.n) if P.is_upset(m))


def test_json_round_trip():
    for P in lat.all_posets(3):
        assert FinitePoset.from_json(P.to_json()).leq == P.leq
    with pytest.raises(OrderError):
        FinitePoset.from_json({"nope": 1})


def test_topology_family_code_round_trip():
    t = lat.alexandrov(FinitePoset.chain(3))
    assert lat.FiniteTopology.from_family_code(3, t.family_code()) == t
