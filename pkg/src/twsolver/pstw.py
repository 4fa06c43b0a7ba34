"""Partitioned subset treewidth: find a torso tree decomposition of width at
most k that contains every terminal clique, by safe separations, clique
merging and leaf pushing."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from . import config
from .config import Budget
from .graph import (
    Graph,
    Separation,
    flow_potential,
    flow_value,
    min_cut,
    other_min_separator,
    reach,
)
from .impsep import hitting_set
from .treedec import TorsoTreeDecomposition, TreeDecomposition, join_on, validate_torso


def clique_key(c: frozenset) -> tuple[int, ...]:
    return tuple(sorted(c))


def canon(cliques: Iterable[Iterable[int]]) -> tuple[frozenset, ...]:
    """Deduplicate and sort terminal cliques lexicographically."""
    return tuple(sorted({frozenset(c) for c in cliques}, key=clique_key))


@dataclass(frozen=True)
class PstwInstance:
    g: Graph
    cliques: tuple[frozenset, ...]
    k: int

    @staticmethod
    def make(g: Graph, cliques: Iterable[Iterable[int]], k: int) -> "PstwInstance":
        return PstwInstance(g, canon(cliques), k)

    @property
    def t(self) -> int:
        return len(self.cliques)

    @property
    def hat(self) -> frozenset:
        return frozenset().union(*self.cliques)

    def others(self, w: frozenset) -> frozenset:
        return frozenset().union(*(c for c in self.cliques if c != w))

    def check(self) -> None:
        for c in self.cliques:
            if len(c) > self.k + 1:
                raise ValueError(f"terminal clique {sorted(c)} larger than k+1")
            if not self.g.is_clique(c):
                raise ValueError(f"terminal clique {sorted(c)} is not a clique")
        if self.t > self.k + 2:
            raise ValueError("more than k+2 terminal cliques")


def restrict_cliques(cliques, a: frozenset, s: frozenset) -> list[frozenset]:
    kept = [c for c in cliques if c & a]
    if not any(s <= c for c in kept):
        kept.append(s)
    return kept


def restrict(i: PstwInstance, a: Iterable[int], s: Iterable[int]) -> PstwInstance:
    """Keep a + s with s made a clique; drop cliques missing a, add s."""
    a, s = frozenset(a), frozenset(s)
    if len(s) > i.k + 1:
        raise ValueError("separator larger than k+1")
    g = i.g.induced(a | s).with_clique(s)
    return PstwInstance.make(g, restrict_cliques(i.cliques, a, s), i.k)


def merge(i: PstwInstance, wi: frozenset, wj: frozenset) -> PstwInstance:
    u = wi | wj
    if wi == wj or len(u) > i.k + 1:
        raise ValueError("cannot merge these terminal cliques")
    rest = [c for c in i.cliques if c != wi and c != wj]
    return PstwInstance.make(i.g.with_clique(u), rest + [u], i.k)


def push(i: PstwInstance, wi: frozenset, a: Iterable[int]) -> PstwInstance:
    a = frozenset(a)
    u = wi | a
    if a & wi or len(u) > i.k + 1:
        raise ValueError("cannot push these vertices into the terminal clique")
    rest = [c for c in i.cliques if c != wi]
    return PstwInstance.make(i.g.with_clique(u), rest + [u], i.k)


def _separation(g: Graph, x: frozenset, s: frozenset) -> Separation:
    a = reach(g, x, s)
    return Separation(a, s, g.vertices - a - s)


def find_safe_separation(g: Graph, cliques, k: int) -> Separation | None:
    """A strict separation whose separator is linked into a terminal clique on each side."""
    return _find_safe_separation(g, tuple(cliques), k)


@lru_cache(maxsize=8192)
def _find_safe_separation(g: Graph, cliques: tuple, k: int) -> Separation | None:
    for wa in cliques:
        for s in [wa] + [wa - {w} for w in sorted(wa)]:
            start = next((v for v in g if v not in s), None)
            if start is None:
                continue
            a = reach(g, (start,), s)
            if len(a) + len(s) < g.n:
                return Separation(a, s, g.vertices - a - s)
    for wa, wb in combinations(cliques, 2):
        if len(wb) < len(wa):
            wa, wb = wb, wa
        f = flow_value(g, wa, wb, limit=len(wa))
        if f < len(wa):
            s = min_cut(g, wa, wb)[1]
        else:
            s = other_min_separator(g, wa, wb)
            if s is None:
                continue
        return _separation(g, wa, s)
    return None


def safe_separation(i: PstwInstance) -> Separation | None:
    return find_safe_separation(i.g, i.cliques, i.k)


def small_solution(g: Graph, cliques, k: int) -> TorsoTreeDecomposition | None:
    hat = frozenset().union(*cliques)
    if len(cliques) <= 1:
        return TorsoTreeDecomposition(hat, TreeDecomposition.single(hat))
    if g.n > k + 2:
        raise ValueError("not a small case")
    if len(hat) <= k + 1:
        return TorsoTreeDecomposition(hat, TreeDecomposition.single(hat))
    verts = sorted(g)
    for u, v in combinations(verts, 2):
        if not g.has_edge(u, v):
            bags = [g.vertices - {u}, g.vertices - {v}]
            return TorsoTreeDecomposition(g.vertices, TreeDecomposition.build(bags, [(0, 1)], 0))
    return None


def small_case(i: PstwInstance) -> TorsoTreeDecomposition | None:
    """Instances with one terminal clique or at most k+2 vertices."""
    return small_solution(i.g, i.cliques, i.k)


def combine(sa: TorsoTreeDecomposition, sb: TorsoTreeDecomposition, s: frozenset) -> TorsoTreeDecomposition:
    return TorsoTreeDecomposition(sa.x | sb.x, join_on(sa.td, sb.td, s))


def measure(i: PstwInstance) -> int:
    """Sum over cliques of 3k+3 minus the flow potential toward the other cliques."""
    return sum(3 * i.k + 3 - flow_potential(i.g, w, i.others(w)) for w in i.cliques)


def solve(i: PstwInstance, budget: Budget | None = None, failed: set | None = None) -> TorsoTreeDecomposition | None:
    """A solution of the instance, or None when none exists.

    ``failed`` collects instances proved to have no solution and may be
    shared between calls.
    """
    if budget is None:
        budget = Budget()
    out = _solve(i, budget, set() if failed is None else failed)
    if out is not None and config.debug_enabled():
        config.check(validate_torso(i.g, out).ok, "solution is not a torso tree decomposition")
        config.check(out.covers(i.hat), "solution misses a terminal vertex")
        config.check(out.width <= i.k, "solution too wide")
    return out


def _solve(i: PstwInstance, budget: Budget, failed: set) -> TorsoTreeDecomposition | None:
    # branches reach the same subinstance many times; remember the dead ones
    if i in failed:
        return None
    out = _branch(i, budget, failed)
    if out is None:
        failed.add(i)
    return out


def _branch(i: PstwInstance, budget: Budget, failed: set) -> TorsoTreeDecomposition | None:
    budget.tick()
    k = i.k
    if i.t <= 1 or i.g.n <= k + 2:
        return small_case(i)
    debug = config.debug_enabled()
    phi = measure(i) if debug else 0

    sep = safe_separation(i)
    if sep is not None:
        left = restrict(i, sep.a, sep.s)
        right = restrict(i, sep.b, sep.s)
        if debug:
            config.check(measure(left) <= phi, "safe separation raised the measure")
            config.check(measure(right) <= phi, "safe separation raised the measure")
        sa = _solve(left, budget, failed)
        if sa is None:
            return None
        sb = _solve(right, budget, failed)
        if sb is None:
            return None
        return combine(sa, sb, sep.s)

    for wi, wj in combinations(i.cliques, 2):
        if len(wi | wj) <= k + 1:
            child = merge(i, wi, wj)
            if debug:
                config.check(measure(child) <= phi - k - 1, "merging did not lower the measure by k+1")
            out = _solve(child, budget, failed)
            if out is not None:
                return out

    for wi in i.cliques:
        for wj in i.cliques:
            if wi < wj:
                return None

    hat = i.hat
    for wi in i.cliques:
        if len(wi) > k or not any(wj != wi and len(wj) >= len(wi) for wj in i.cliques):
            continue
        far = hat - wi
        for w in sorted(wi):
            h = hitting_set(i.g.remove(wi - {w}), {w}, far, k)
            for v in sorted(h - {w}):
                child = push(i, wi, {v})
                if debug:
                    config.check(measure(child) <= phi - 1, "leaf pushing did not lower the measure")
                out = _solve(child, budget, failed)
                if out is not None:
                    return out
    return None


def solve_singletons(g: Graph, w: Iterable[int], k: int, budget: Budget | None = None) -> TorsoTreeDecomposition | None:
    """Subset treewidth through the partitioned solver with one clique per vertex."""
    return solve(PstwInstance.make(g, [{v} for v in w], k), budget)
