from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conelab.errors import CycleError, NoJoinError, NotT0Error, SizeError, UnknownNameError
from conelab.generate import antichain, chain, powerset, random_poset
from conelab.poset import FinitePoset, MonotoneMap, specialization_from_opens
from conelab.powercone import box_basis, enumerate_smyth


def brute_force_upsets(poset):
    """Filter all 2^n subsets, in the canonical order."""
    found = []
    n = poset.size
    for r in range(n + 1):
        for combo in combinations(range(n), r):
            s = frozenset(combo)
            if all(y in s for x in s for y in range(n) if poset.leq(x, y)):
                found.append(s)
    return found


def ids(poset, *names):
    return frozenset(poset.index(n) for n in names)


def test_from_covers_closes_transitively(c3):
    assert c3.leq(0, 2)
    assert not c3.leq(2, 0)
    assert c3.size == 3


def test_m2_fixture(m2):
    bot, a, b, top = range(4)
    assert m2.leq(bot, top) and not m2.leq(a, b) and not m2.leq(b, a)


def test_cycle_rejected():
    with pytest.raises(CycleError):
        FinitePoset.from_covers(["a", "b"], [("a", "b"), ("b", "a")])


def test_unknown_name():
    with pytest.raises(UnknownNameError):
        FinitePoset.from_covers(["a"], [("a", "z")])


def test_up_and_down_closure(m2, c3):
    assert m2.up_closure(ids(m2, "a")) == ids(m2, "a", "top")
    assert c3.up_closure(set()) == frozenset()
    assert m2.up_closure(ids(m2, "bot")) == m2.everything
    assert m2.down_closure(ids(m2, "a")) == ids(m2, "bot", "a")
    assert m2.down_closure(ids(m2, "a", "b")) == ids(m2, "bot", "a", "b")
    assert c3.down_closure({2}) == {0, 1, 2}


def test_enumerate_upsets_c3(c3):
    assert c3.enumerate_upsets() == [frozenset(), {2}, {1, 2}, {0, 1, 2}]


def test_enumerate_upsets_m2_matches_brute_force(m2):
    upsets = m2.enumerate_upsets()
    assert len(upsets) == 6
    assert upsets == brute_force_upsets(m2)


@pytest.mark.parametrize("n", range(0, 7))
def test_antichain_has_all_subsets(n):
    assert len(antichain(n).enumerate_upsets()) == 2**n


def test_upset_bound():
    with pytest.raises(SizeError):
        antichain(6).enumerate_upsets(max_count=63)
    assert len(antichain(6).enumerate_upsets(max_count=64)) == 64


def test_way_below_is_order(c3, m2):
    assert c3.way_below(0, 2)
    assert not m2.way_below(1, 2)
    assert all(m2.way_below(x, x) for x in m2.elements)


def test_minimal_elements(m2):
    assert m2.minimal_elements(ids(m2, "a", "b", "top")) == ids(m2, "a", "b")
    assert m2.minimal_elements(m2.everything) == ids(m2, "bot")
    assert m2.minimal_elements(frozenset()) == frozenset()


def test_join(m2, c3):
    assert m2.join(1, 2) == 3
    assert c3.join(0, 1) == 1
    with pytest.raises(NoJoinError):
        antichain(2).join(0, 1)


def test_is_lattice():
    assert chain(1).is_lattice()
    assert powerset(3).is_lattice()
    assert not antichain(2).is_lattice()
    assert not FinitePoset.from_covers([], []).is_lattice()
    # two maximal elements above a bottom: joins missing
    assert not FinitePoset.from_covers(["0", "a", "b"], [("0", "a"), ("0", "b")]).is_lattice()


def test_specialization_roundtrip(m2):
    assert specialization_from_opens(m2.names, m2.enumerate_upsets()) == m2


def test_specialization_not_t0():
    with pytest.raises(NotT0Error):
        specialization_from_opens(["p", "q"], [set(), {0, 1}])


def test_box_basis_specialization_is_reverse_inclusion(m2_cone):
    smyth = enumerate_smyth(m2_cone)
    order = specialization_from_opens([q.label() for q in smyth.elements], box_basis(smyth))
    for i, qi in enumerate(smyth.elements):
        for j, qj in enumerate(smyth.elements):
            assert order.leq(i, j) == (qi.members >= qj.members)


def test_monotone_map_checks(m2, c3):
    MonotoneMap(m2, c3, (0, 1, 1, 2))
    with pytest.raises(Exception):
        MonotoneMap(m2, c3, (2, 1, 1, 0))


posets = st.builds(
    lambda size, seed, density: random_poset(size, __import__("random").Random(seed), density),
    st.integers(0, 7), st.integers(0, 2**32), st.floats(0, 1),
)


@settings(max_examples=150, deadline=None)
@given(posets)
def test_poset_invariants(poset):
    upsets = poset.enumerate_upsets()
    assert upsets == brute_force_upsets(poset)
    as_set = set(upsets)
    for u in upsets:
        assert poset.up_closure(poset.minimal_elements(u)) == u
        for v in upsets:
            assert u | v in as_set and u & v in as_set
    assert specialization_from_opens(poset.names, upsets) == poset


@settings(max_examples=100, deadline=None)
@given(posets, st.data())
def test_up_closure_idempotent_and_monotone(poset, data):
    a = frozenset(data.draw(st.sets(st.integers(0, max(poset.size - 1, 0)))) if poset.size else set())
    b = a | frozenset(data.draw(st.sets(st.integers(0, max(poset.size - 1, 0)))) if poset.size else set())
    assert poset.up_closure(poset.up_closure(a)) == poset.up_closure(a)
    assert poset.up_closure(a) <= poset.up_closure(b)


def test_join_laws_on_corpus(corpus):
    for _, lattice in corpus:
        bot = lattice.bottom
        for x in lattice.elements:
            assert lattice.join(x, x) == x
            assert lattice.join(bot, x) == x
            for y in lattice.elements:
                assert lattice.join(x, y) == lattice.join(y, x)
                for z in lattice.elements:
                    assert lattice.join(lattice.join(x, y), z) == lattice.join(x, lattice.join(y, z))
