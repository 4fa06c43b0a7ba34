import random

import pytest

from helpers import C4, P4, improve_case, pull_case
from twsolver import config, oracle
from twsolver.graph import Graph, Separation
from twsolver.improve import DLinkWitness, improve, improve_step, pull, refine_cover, witness_ok
from twsolver.treedec import TorsoTreeDecomposition, TreeDecomposition, depth_weights, validate, validate_torso


@pytest.fixture(autouse=True)
def debug_on():
    old = config.set_debug(True)
    yield
    config.set_debug(old)


P4_TTD = TorsoTreeDecomposition(P4.vertices, TreeDecomposition.build([{1, 2}, {2, 3}, {3, 4}], [(0, 1), (1, 2)], 0))


def test_pull_example():
    sep = Separation(frozenset({1}), frozenset({2}), frozenset({3, 4}))
    out = pull(P4, P4_TTD, sep, 1)
    assert out.x == {1, 2}
    assert sep.s <= out.td.bags[1]
    assert all(len(b) <= len(a) for a, b in zip(P4_TTD.td.bags, out.td.bags))
    assert validate_torso(P4, out).ok


def test_pull_with_separator_inside_root_bag():
    sep = Separation(frozenset({1, 2}), frozenset({3}), frozenset({4}))
    out = pull(P4, P4_TTD, sep, 1)
    assert out.x == {1, 2, 3}
    assert [len(b) for b in out.td.bags] == [2, 2, 1]


def test_pull_rejects_unlinked_separator():
    g = Graph([1, 2, 3, 4, 5], [(1, 2), (1, 3), (2, 4), (3, 4), (4, 5)])
    ttd = TorsoTreeDecomposition(g.vertices, TreeDecomposition.build([{1, 2, 3}, {2, 3, 4}, {4, 5}], [(0, 1), (1, 2)]))
    sep = Separation(frozenset({1}), frozenset({2, 3}), frozenset({4, 5}))
    with pytest.raises(ValueError):
        pull(g, ttd, sep, 2)


def test_improve_step_on_c4():
    td = TreeDecomposition.single(C4.vertices)
    ttd = TorsoTreeDecomposition(C4.vertices, TreeDecomposition.build([{1, 2, 3}, {1, 3, 4}], [(0, 1)]))
    out = improve_step(C4, td, ttd, 0)
    assert isinstance(out, TreeDecomposition)
    assert validate(C4, out).ok and out.width == 2 and len(out) == 2
    assert improve(C4, td, ttd, 0).width == 2


def test_improve_step_cover_is_whole_graph():
    g = Graph([1, 2, 3], [(1, 2), (2, 3)])
    td = TreeDecomposition.single(g.vertices)
    ttd = TorsoTreeDecomposition(g.vertices, TreeDecomposition.build([{1, 2}, {2, 3}], [(0, 1)]))
    out = improve_step(g, td, ttd, 0)
    assert out.width == 1 and validate(g, out).ok


def test_improve_step_preconditions():
    td = TreeDecomposition.single(C4.vertices)
    too_wide = TorsoTreeDecomposition(C4.vertices, td)
    with pytest.raises(ValueError):
        improve_step(C4, td, too_wide, 0)
    partial = TorsoTreeDecomposition(frozenset({1, 2, 3}), TreeDecomposition.single({1, 2, 3}))
    with pytest.raises(ValueError):
        improve_step(C4, td, partial, 0)


def test_refine_cover_rejects_bad_witness():
    td = TreeDecomposition.single(C4.vertices)
    ttd = TorsoTreeDecomposition(C4.vertices, TreeDecomposition.build([{1, 2, 3}, {1, 3, 4}], [(0, 1)]))
    d = depth_weights(td, 0)
    wit = DLinkWitness(0, frozenset({1}))
    assert not witness_ok(C4, C4.vertices, ttd, d, wit)
    with pytest.raises(ValueError):
        refine_cover(C4, C4.vertices, ttd, d, wit)


def test_pull_fuzz():
    rng = random.Random(11)
    for _ in range(60):
        g, ttd, sep, r = pull_case(rng)
        out = pull(g, ttd, sep, r)
        assert validate_torso(g, out).ok
        assert sep.s <= out.td.bags[r]
        assert all(len(b) <= len(a) for a, b in zip(ttd.td.bags, out.td.bags))
        assert out.x == (ttd.x & sep.a) | sep.s


def test_improve_fuzz():
    rng = random.Random(12)
    for _ in range(60):
        g, td, ttd, r = improve_case(rng)
        out = improve(g, td, ttd, r)
        assert oracle.check_td(g, out)
        assert out.width <= td.width
        assert out.count_of_size(td.width + 1) < td.count_of_size(td.width + 1)


def test_overflowing_component_gives_witness():
    g = Graph(range(5), [(0, 1), (0, 3), (2, 4), (3, 4)])
    td = TreeDecomposition.build([{0, 1, 3}, {1, 3, 4}, {2, 4}], [(0, 1), (1, 2)], 0)
    ttd = TorsoTreeDecomposition(
        frozenset({0, 1, 2, 3}), TreeDecomposition.build([{0, 1}, {0, 3}, {2, 3}, {3}], [(0, 1), (1, 3), (2, 3)], 3)
    )
    wit = improve_step(g, td, ttd, 0)
    assert wit == DLinkWitness(2, frozenset({1, 3}))
    d = depth_weights(td, 0)
    assert witness_ok(g, td.bags[0], ttd, d, wit)
    better = refine_cover(g, td.bags[0], ttd, d, wit)
    assert better.covers(td.bags[0]) and validate_torso(g, better).ok
    out = improve(g, td, ttd, 0)
    assert validate(g, out).ok and out.width <= 2 and out.count_of_size(3) < 2
