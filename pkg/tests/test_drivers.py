from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import C4, GRID3, P4, graphs
from twsolver import config, drivers, oracle
from twsolver.config import Budget, BudgetExceeded
from twsolver.generators import complete, cycle, ktree, path
from twsolver.graph import Graph
from twsolver.treedec import TreeDecomposition, validate

TREE6 = Graph(range(6), [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])


@pytest.fixture(autouse=True)
def debug_on():
    old = config.set_debug(True)
    yield
    config.set_debug(old)


@pytest.mark.parametrize("backend", drivers.BACKENDS)
def test_exact_examples(backend):
    td = drivers.exact(TREE6, 1, backend)
    assert validate(TREE6, td).ok and td.width == 1
    k5 = complete(5)
    assert drivers.exact(k5, 3, backend, prune=False) is None
    assert drivers.exact(k5, 4, backend).width == 4
    assert drivers.exact(GRID3, 2, backend, prune=False) is None
    td = drivers.exact(GRID3, 3, backend)
    assert validate(GRID3, td).ok and td.width == 3


def test_exact_rejects_bad_arguments():
    with pytest.raises(ValueError):
        drivers.exact(P4, -1)
    with pytest.raises(ValueError):
        drivers.exact(P4, 1, backend="nope")
    with pytest.raises(ValueError):
        drivers.exact(P4, 1, order="nope")


def test_exact_budget():
    with pytest.raises(BudgetExceeded):
        drivers.exact(GRID3, 3, budget=Budget(1))


def test_degeneracy_order():
    td = drivers.exact(GRID3, 3, order="degeneracy")
    assert validate(GRID3, td).ok and td.width <= 3


def test_prune_answers_no_early():
    assert drivers.lower_bound(complete(5)) == 4
    assert drivers.exact(complete(5), 3) is None


def test_disconnected_graph():
    g = Graph(range(7), [(0, 1), (1, 2), (2, 0), (3, 4)])
    td = drivers.exact(g, 2)
    assert validate(g, td).ok and td.width == 2


def test_approx_examples():
    td = drivers.approx(GRID3, 3, Fraction(1, 2))
    assert validate(GRID3, td).ok and td.width <= 4
    td = drivers.approx(TREE6, 1, Fraction(1, 3))
    assert validate(TREE6, td).ok and td.width <= 1
    assert drivers.approx(complete(5), 3, Fraction(1, 4)) is None
    with pytest.raises(ValueError):
        drivers.approx(P4, 1, Fraction(3, 2))
    with pytest.raises(ValueError):
        drivers.approx(P4, 1, 0)


def test_approx_width_is_exact():
    assert drivers.approx_width(3, Fraction(1, 3)) == 4
    assert drivers.approx_width(5, Fraction(1, 5)) == 6
    assert drivers.approx_width(7, "1/2") == 10
    assert drivers.approx_width(4, 1) == 8
    assert drivers.part_bound(Fraction(1, 4)) == 65


def test_partitions_by_blocks_counts():
    # Stirling numbers of the second kind S(5, j)
    assert [sum(1 for _ in drivers.partitions_by_blocks(list(range(5)), j, 5)) for j in range(1, 6)] == [1, 15, 25, 10, 1]
    assert sum(1 for _ in drivers.partitions_by_blocks([1, 2, 3, 4], 2, 2)) == 3


def test_treewidth_examples():
    assert drivers.treewidth(C4)[0] == 2
    w, td = drivers.treewidth(Graph())
    assert w == -1 and td.bags == (frozenset(),)
    assert drivers.treewidth(P4)[0] == 1
    assert drivers.treewidth(Graph([1]))[0] == 0
    assert drivers.treewidth(GRID3, mode="approx", eps=Fraction(1, 2))[0] <= 4
    with pytest.raises(ValueError):
        drivers.treewidth(P4, mode="nope")


def test_partition_exists_check_examples():
    _, order = oracle.exact_tw(GRID3)
    td = oracle.td_from_elimination(GRID3, order)
    parts, widened = drivers.partition_exists_check(GRID3, GRID3.vertices, td, Fraction(1, 4))
    assert parts == [frozenset({v}) for v in sorted(GRID3)]
    parts, widened = drivers.partition_exists_check(GRID3, GRID3.vertices, td, 1)
    assert len(parts) <= 17 and widened.width <= 6
    k6 = complete(6)
    parts, _ = drivers.partition_exists_check(k6, {0, 1}, TreeDecomposition.single(k6.vertices), 1)
    assert parts == [frozenset({0, 1})]


def test_lower_bound_examples():
    assert drivers.lower_bound(Graph()) == -1
    assert drivers.lower_bound(Graph([1])) == 0
    assert drivers.lower_bound(GRID3) <= 3
    assert drivers.lower_bound(cycle(6)) == 2


@settings(max_examples=60, deadline=None)
@given(graphs(1, 8))
def test_treewidth_matches_oracle(g):
    want, _ = oracle.exact_tw(g)
    assert drivers.lower_bound(g) <= want
    for backend in drivers.BACKENDS:
        w, td = drivers.treewidth(g, backend=backend)
        assert w == want and oracle.check_td(g, td) and td.width == w


@settings(max_examples=40, deadline=None)
@given(graphs(2, 8), st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(1)]))
def test_approx_within_bound(g, eps):
    tw, _ = oracle.exact_tw(g)
    td = drivers.approx(g, tw, eps)
    assert td is not None and oracle.check_td(g, td) and td.width <= drivers.approx_width(tw, eps)


@settings(max_examples=40, deadline=None)
@given(graphs(3, 8), st.integers(0, 10**6), st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(1)]))
def test_partition_exists_check_property(g, seed, eps):
    import random

    order = sorted(g)
    random.Random(seed).shuffle(order)
    td = oracle.td_from_elimination(g, order)
    w = frozenset(random.Random(seed + 1).sample(sorted(g), min(g.n, 2 * td.width + 2)))
    drivers.partition_exists_check(g, w, td, eps)


def test_families_small():
    for n in range(1, 7):
        assert drivers.treewidth(complete(n))[0] == n - 1
    for n in range(3, 9):
        assert drivers.treewidth(cycle(n))[0] == 2
    assert drivers.treewidth(path(7))[0] == 1
    assert drivers.treewidth(ktree(12, 3, seed=5))[0] == 3


@settings(max_examples=40, deadline=None)
@given(graphs(1, 8), st.sampled_from(drivers.BACKENDS))
def test_exact_monotone_in_k(g, backend):
    found = [drivers.exact(g, k, backend, prune=False) is not None for k in range(g.n)]
    assert found == sorted(found)
    assert found[-1]
