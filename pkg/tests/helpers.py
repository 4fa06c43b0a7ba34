"""Canonical small graphs and the seeded random corpus shared by the tests."""

from __future__ import annotations

import random
from itertools import combinations

from hypothesis import strategies as st

from twsolver import oracle
from twsolver.graph import Graph, min_separation, reach
from twsolver.treedec import TorsoTreeDecomposition, shrink

P4 = Graph([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4)])
C4 = Graph([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (4, 1)])
K4 = Graph([1, 2, 3, 4], combinations([1, 2, 3, 4], 2))
K3 = Graph([1, 2, 3], combinations([1, 2, 3], 2))
GRID3 = Graph(
    range(1, 10),
    [(v, v + 1) for v in range(1, 10) if v % 3] + [(v, v + 3) for v in range(1, 7)],
)

CORPUS_SEED = 2024
PROBS = (0.2, 0.4, 0.6, 0.8)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(range(n), [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])


def corpus(count: int = 300, lo: int = 4, hi: int = 10, seed: int = CORPUS_SEED) -> list[Graph]:
    """Seeded G(n, p) graphs with n in [lo, hi] and p cycling through PROBS."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(lo, hi)
        out.append(random_graph(rng, n, PROBS[i % len(PROBS)]))
    return out


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(range(n), [e for e, keep in zip(pairs, mask) if keep])


def pull_case(rng: random.Random):
    """A graph, a torso decomposition, a separation linked into bag(r), and r."""
    while True:
        n = rng.randint(5, 9)
        g = random_graph(rng, n, rng.choice([0.3, 0.5, 0.7]))
        x = frozenset(rng.sample(range(n), rng.randint(2, n)))
        tg = oracle.torso_bruteforce(g, x)
        _, order = oracle.exact_tw(tg)
        ttd = TorsoTreeDecomposition(x, oracle.td_from_elimination(tg, order))
        r = rng.randrange(len(ttd.td.bags))
        z = ttd.td.bags[r]
        y = frozenset(rng.sample(range(n), rng.randint(1, 3)))
        if y & z or not reach(g, y) & z:
            continue
        sep = min_separation(g, y, z)
        if sep.a:
            return g, ttd, sep, r


def improve_case(rng: random.Random):
    """A decomposition rooted at a largest bag W and a narrower torso decomposition covering W."""
    while True:
        n = rng.randint(5, 9)
        g = random_graph(rng, n, rng.choice([0.3, 0.5, 0.7]))
        order = list(range(n))
        rng.shuffle(order)
        td = shrink(g, oracle.td_from_elimination(g, order))
        k = td.width - 1
        if k < 0:
            continue
        r = next(i for i, b in enumerate(td.bags) if len(b) == k + 2)
        w = td.bags[r]
        extra = [v for v in range(n) if v not in w]
        rng.shuffle(extra)
        x = w | frozenset(extra[: rng.randint(0, len(extra))])
        tg = oracle.torso_bruteforce(g, x)
        tw, ordx = oracle.exact_tw(tg)
        if tw <= k:
            return g, td.with_root(r), TorsoTreeDecomposition(x, oracle.td_from_elimination(tg, ordx)), r


VERDICTS: list[str] = []


def verdict(name: str, failures: list, detail: str = "") -> None:
    """Record and print one PASS/FAIL line, then fail the test on any violation."""
    status = "PASS" if not failures else "FAIL"
    line = f"{status}: {name}" + (f" ({detail})" if detail else "")
    if failures:
        line += f"; {len(failures)} violation(s), first: {failures[0]}"
    VERDICTS.append(line)
    print(line)
    assert not failures, line
