from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import C4, K4, P4, graphs
from twsolver import config, oracle
from twsolver.config import Budget, BudgetExceeded
from twsolver.graph import Graph
from twsolver.pstw import (
    PstwInstance,
    find_safe_separation,
    measure,
    merge,
    push,
    restrict,
    small_solution,
    solve,
    solve_singletons,
)
from twsolver.treedec import validate_torso


@pytest.fixture(autouse=True)
def debug_on():
    old = config.set_debug(True)
    yield
    config.set_debug(old)


def _singletons(g, vs, k):
    return PstwInstance.make(g, [{v} for v in vs], k)


def test_restrict_examples():
    i = _singletons(P4, [1, 4], 1)
    out = restrict(i, {1}, {2})
    assert out.g.edges() == [(1, 2)]
    assert out.cliques == (frozenset({1}), frozenset({2}))
    kept = restrict(i, {1, 2}, {1})
    assert kept.cliques == (frozenset({1}),)
    whole = restrict(_singletons(P4, [2, 3], 2), {1}, {2, 3, 4})
    assert whole.cliques == (frozenset({2, 3, 4}),)
    with pytest.raises(ValueError):
        restrict(i, {1}, {2, 3, 4})


def test_merge_examples():
    out = merge(_singletons(P4, [1, 4], 1), frozenset({1}), frozenset({4}))
    assert out.cliques == (frozenset({1, 4}),) and out.g == C4
    nested = PstwInstance.make(K4, [{1}, {1, 2}], 2)
    assert merge(nested, frozenset({1}), frozenset({1, 2})).cliques == (frozenset({1, 2}),)
    with pytest.raises(ValueError):
        merge(PstwInstance.make(K4, [{1, 2}, {3}], 1), frozenset({1, 2}), frozenset({3}))


def test_push_examples():
    out = push(_singletons(P4, [1, 4], 1), frozenset({1}), {2})
    assert out.cliques == (frozenset({1, 2}), frozenset({4}))
    same = push(_singletons(P4, [1, 4], 1), frozenset({1}), set())
    assert same.cliques == (frozenset({1}), frozenset({4}))
    with pytest.raises(ValueError):
        push(_singletons(P4, [1, 4], 1), frozenset({1}), {2, 3})


def test_safe_separation_examples():
    sep = find_safe_separation(P4, [frozenset({1}), frozenset({4})], 1)
    assert sep is not None and sep.s in ({2}, {3})
    assert find_safe_separation(K4, [frozenset({1}), frozenset({2})], 2) is None
    star = Graph(range(4), [(0, 1), (0, 2), (0, 3)])
    sep = find_safe_separation(star, [frozenset({0}), frozenset({1})], 1)
    assert sep.s <= {0} and sep.is_strict


def test_small_solution_examples():
    one = small_solution(Graph([1, 2], [(1, 2)]), [frozenset({1, 2})], 1)
    assert one.td.bags == (frozenset({1, 2}),)
    assert small_solution(K4, [frozenset({v}) for v in K4], 2) is None
    two = small_solution(C4, [frozenset({v}) for v in C4], 2)
    (u,), (v,) = (C4.vertices - b for b in two.td.bags)
    assert not C4.has_edge(u, v)
    assert validate_torso(C4, two).ok


def test_solve_examples():
    sol = solve(_singletons(P4, [1, 4], 1))
    assert sol.covers({1, 4}) and sol.width == 1
    k4e = Graph([1, 2, 3, 4], [e for e in combinations([1, 2, 3, 4], 2) if e != (1, 2)])
    sol = solve(_singletons(k4e, [1, 2, 3, 4], 2))
    assert sol.width == 2 and validate_torso(k4e, sol).ok
    assert solve_singletons(C4, [1, 2, 3], 1) is None


def test_measure_example():
    k = 1
    assert measure(_singletons(P4, [1, 4], k)) == 2 * (3 * k + 2)
    assert measure(PstwInstance.make(K4, [{1, 2}, {3, 4}], k)) == 2 * (3 * k + 3 - 2)


def test_budget_is_enforced():
    g = Graph(range(8), [(a, b) for a in range(8) for b in range(a + 1, 8) if (a + b) % 3])
    with pytest.raises(BudgetExceeded):
        solve_singletons(g, range(6), 4, Budget(1))


@settings(max_examples=120, deadline=None)
@given(graphs(3, 8), st.data())
def test_matches_subset_treewidth_oracle(g, data):
    k = data.draw(st.integers(0, min(4, g.n - 2)))
    w = data.draw(st.lists(st.sampled_from(sorted(g)), min_size=k + 2, max_size=k + 2, unique=True))
    sol = solve_singletons(g, w, k)
    assert (sol is not None) == (oracle.subset_tw(g, w) <= k)
    if sol is not None:
        assert validate_torso(g, sol).ok and sol.covers(w) and sol.width <= k


@settings(max_examples=80, deadline=None)
@given(graphs(3, 8), st.data())
def test_partitioned_cliques(g, data):
    k = data.draw(st.integers(1, min(4, g.n - 1)))
    verts = data.draw(st.lists(st.sampled_from(sorted(g)), min_size=2, max_size=min(g.n, k + 3), unique=True))
    cut = data.draw(st.integers(1, len(verts) - 1))
    parts = [frozenset(verts[:cut]), frozenset(verts[cut:])]
    if any(len(p) > k + 1 for p in parts):
        return
    g2 = g
    for p in parts:
        g2 = g2.with_clique(p)
    sol = solve(PstwInstance.make(g2, parts, k))
    assert (sol is not None) == (oracle.subset_tw(g2, verts) <= k)
