import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import C4, GRID3, K4, P4, graphs
from twsolver import oracle
from twsolver.graph import Graph, flow_value, is_linked, is_separator, reach
from twsolver.impsep import (
    enumerate_important,
    hitting_set,
    is_important,
    is_minimal_separator,
    smallest_dominating_important,
    unique_min_important,
)

# Separators may use vertices of a and b.  Under that reading the separator
# next to b dominates every other one on a path, which the brute force confirms.


def test_unique_min_important_examples():
    assert unique_min_important(P4, {1}, {4}) == {4}
    assert unique_min_important(Graph([1, 2, 3], [(1, 2)]), {1}, {3}) == frozenset()
    assert unique_min_important(K4, {1}, {4}) == {4}
    assert oracle.all_important_bruteforce(K4, {1}, {4}, 1) == {frozenset({4})}


def test_enumerate_examples():
    assert set(enumerate_important(P4, {1}, {4}, 1)) == {frozenset({4})}
    assert set(enumerate_important(C4, {1}, {3}, 2)) == {frozenset({3})}
    assert list(enumerate_important(P4, {1}, {4}, 0)) == []
    assert list(enumerate_important(P4, {1}, {4}, -1)) == []


def test_enumerate_unreachable_gives_empty_separator():
    g = Graph([1, 2, 3], [(1, 2)])
    assert list(enumerate_important(g, {1}, {3}, 2)) == [frozenset()]
    assert oracle.all_important_bruteforce(g, {1}, {3}, 2) == {frozenset()}


def test_smallest_dominating_examples():
    assert smallest_dominating_important(P4, {1}, {4}, {2}) == {4}
    assert smallest_dominating_important(P4, {1}, {4}, {4}) == {4}
    left, right, middle = {1, 4, 7}, {3, 6, 9}, {2, 5, 8}
    got = smallest_dominating_important(GRID3, left, right, middle)
    assert got == frozenset(right)
    assert got in oracle.all_important_bruteforce(GRID3, left, right, 3)
    with pytest.raises(ValueError):
        smallest_dominating_important(P4, {1}, {4}, set())


def test_hitting_set_examples():
    h = hitting_set(P4, {1}, {4}, 2)
    assert len(h) <= 2 and 4 in h
    assert hitting_set(Graph([1, 2, 3], [(1, 2)]), {1}, {3}, 2) == frozenset()
    h = hitting_set(K4, {1}, {2}, 3)
    assert all(s & h for s in enumerate_important(K4, {1}, {2}, 3) if s)


def test_minimal_and_important_checks():
    assert is_minimal_separator(P4, {1}, {4}, {2})
    assert not is_minimal_separator(P4, {1}, {4}, {2, 3})
    assert is_important(P4, {1}, {4}, {4})
    assert not is_important(P4, {1}, {4}, {2})


def _ab(g, data):
    verts = sorted(g)
    a = data.draw(st.sets(st.sampled_from(verts), min_size=1, max_size=2))
    b = data.draw(st.sets(st.sampled_from(verts), min_size=1, max_size=2))
    return frozenset(a), frozenset(b)


@settings(max_examples=200, deadline=None)
@given(graphs(2, 8), st.data(), st.integers(0, 4))
def test_enumeration_equals_bruteforce(g, data, k):
    a, b = _ab(g, data)
    got = list(enumerate_important(g, a, b, k))
    assert len(got) == len(set(got))
    assert set(got) == oracle.all_important_bruteforce(g, a, b, k)


@settings(max_examples=150, deadline=None)
@given(graphs(2, 8), st.data(), st.integers(1, 4))
def test_count_bounds(g, data, k):
    a, b = _ab(g, data)
    got = list(enumerate_important(g, a, b, k))
    f = flow_value(g, a, b)
    assert len(got) <= 4**k
    if f > k:
        assert got == []
    else:
        assert len(got) <= k ** (k - f)


@settings(max_examples=150, deadline=None)
@given(graphs(2, 8), st.data(), st.integers(1, 3))
def test_dominance_closure(g, data, k):
    a, b = _ab(g, data)
    imp = list(enumerate_important(g, a, b, k))
    for s in oracle.all_separators(g, a, b, k):
        r = reach(g, a, s)
        assert any(len(t) <= len(s) and r <= reach(g, a, t) for t in imp)


@settings(max_examples=150, deadline=None)
@given(graphs(2, 8), st.data())
def test_smallest_dominating_contract(g, data):
    a, b = _ab(g, data)
    seps = oracle.all_separators(g, a, b, 3)
    s = data.draw(st.sampled_from(seps)) if seps else frozenset(g.vertices)
    got = smallest_dominating_important(g, a, b, s)
    assert is_important(g, a, b, got)
    assert len(got) <= len(s)
    assert reach(g, a, s) <= reach(g, a, got)
    region = reach(g, a, got) | got
    assert is_linked(g, got, s & region)
    if is_minimal_separator(g, a, b, s):
        assert is_separator(g, s, b, got)


@settings(max_examples=200, deadline=None)
@given(graphs(2, 8), st.data(), st.integers(1, 4))
def test_hitting_set_hits_everything(g, data, k):
    a, b = _ab(g, data)
    h = hitting_set(g, a, b, k)
    assert len(h) <= k
    for s in oracle.all_important_bruteforce(g, a, b, k):
        if s:
            assert s & h
