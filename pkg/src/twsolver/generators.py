"""Deterministic instance generators."""

from __future__ import annotations

import random
from itertools import combinations

from .config import default_seed
from .graph import Graph


def gnp(n: int, p: float, seed: int | None = None) -> Graph:
    if n < 0 or not 0 <= p <= 1:
        raise ValueError("need n >= 0 and 0 <= p <= 1")
    rng = random.Random(default_seed() if seed is None else seed)
    return Graph(range(n), [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def grid(r: int, c: int) -> Graph:
    if r < 1 or c < 1:
        raise ValueError("grid sides must be positive")
    edges = []
    for i in range(r):
        for j in range(c):
            v = i * c + j
            if j + 1 < c:
                edges.append((v, v + 1))
            if i + 1 < r:
                edges.append((v, v + c))
    return Graph(range(r * c), edges)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be non-negative")
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be non-negative")
    return Graph(range(n), combinations(range(n), 2))


def ktree(n: int, k: int, seed: int | None = None) -> Graph:
    """Random k-tree: a (k+1)-clique grown by attaching each new vertex to a k-clique."""
    if k < 0 or n < 0:
        raise ValueError("need n, k >= 0")
    if n <= k + 1:
        return complete(n)
    rng = random.Random(default_seed() if seed is None else seed)
    edges = list(combinations(range(k + 1), 2))
    cliques = [tuple(range(k + 1))]
    for v in range(k + 1, n):
        base = rng.choice(cliques)
        drop = rng.randrange(k + 1)
        face = base[:drop] + base[drop + 1:]
        edges.extend((u, v) for u in face)
        cliques.append(face + (v,))
    return Graph(range(n), edges)


def drop_edges(g: Graph, fraction: float, seed: int | None = None) -> Graph:
    """Remove round(fraction * m) edges chosen uniformly at random."""
    rng = random.Random(default_seed() if seed is None else seed)
    edges = g.edges()
    gone = set(rng.sample(range(len(edges)), round(fraction * len(edges))))
    return Graph(g.vertices, [e for i, e in enumerate(edges) if i not in gone])
