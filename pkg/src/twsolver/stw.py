"""Subset treewidth through valid instances: pre-branching over degenerate
separations, terminal-cover bookkeeping and a search that raises the least
allowed internal separation order q step by step."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from . import config
from .config import Budget
from .graph import Graph, Separation, is_separator, reach, torso
from .impsep import enumerate_important
from .pstw import canon, clique_key, combine, find_safe_separation, restrict_cliques, small_solution
from .treedec import TorsoTreeDecomposition, TreeDecomposition, validate_torso


class _Invalid:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INVALID"

    def __bool__(self) -> bool:
        return False


INVALID = _Invalid()


@dataclass(frozen=True)
class StwInstance:
    """Terminal cliques plus the map tc from original terminals to the clique covering each."""

    g: Graph
    cliques: tuple[frozenset, ...]
    k: int
    tc: tuple[tuple[int, frozenset], ...]
    q: int = 0
    original_g: Graph | None = field(default=None, compare=False, hash=False, repr=False)

    @staticmethod
    def make(g: Graph, cliques, k: int, tc: Mapping[int, frozenset], q: int = 0, original_g: Graph | None = None):
        return StwInstance(g, canon(cliques), k, tuple(sorted(tc.items())), q, original_g)

    @property
    def t(self) -> int:
        return len(self.cliques)

    @property
    def hat(self) -> frozenset:
        return frozenset().union(*self.cliques)

    @property
    def original_w(self) -> frozenset:
        return frozenset(w for w, _ in self.tc)

    def tc_map(self) -> dict[int, frozenset]:
        return dict(self.tc)

    def others(self, w: frozenset) -> frozenset:
        return frozenset().union(*(c for c in self.cliques if c != w))

    def ctc(self, c: frozenset) -> int:
        return sum(1 for _, x in self.tc if x == c)

    def with_q(self, q: int) -> "StwInstance":
        return StwInstance(self.g, self.cliques, self.k, self.tc, q, self.original_g)

    def check(self) -> None:
        """Debug check of the clique, cover and torso-edge invariants."""
        for c in self.cliques:
            config.check(len(c) <= self.k + 1, f"terminal clique {sorted(c)} larger than k+1")
            config.check(self.g.is_clique(c), f"terminal clique {sorted(c)} is not a clique")
        config.check(self.t <= self.k + 2, "more than k+2 terminal cliques")
        for w, c in self.tc:
            config.check(c in self.cliques, f"tc({w}) is not a terminal clique")
        for c in self.cliques:
            config.check(self.ctc(c) >= 1, f"terminal clique {sorted(c)} covers no original terminal")
        if self.original_g is None:
            return
        verts = self.g.vertices
        for w, c in self.tc:
            config.check(is_separator(self.original_g, {w}, verts, c), f"tc({w}) = {sorted(c)} does not cover {w}")
        t = torso(self.original_g, verts)
        for u, v in t.edges():
            config.check(self.g.has_edge(u, v), f"torso edge {u}-{v} missing from the instance graph")


def _lex_first_superset(cliques, s: frozenset) -> frozenset:
    return min((c for c in cliques if s <= c), key=clique_key)


def restrict_ext(i: StwInstance, a: Iterable[int], s: Iterable[int]) -> StwInstance:
    """Restriction to a + s; covers inside the dropped side move to the first clique containing s."""
    a, s = frozenset(a), frozenset(s)
    if len(s) > i.k + 1:
        raise ValueError("separator larger than k+1")
    g = i.g.induced(a | s).with_clique(s)
    cliques = canon(restrict_cliques(i.cliques, a, s))
    target = _lex_first_superset(cliques, s)
    tc = {w: (c if c & a else target) for w, c in i.tc}
    out = StwInstance(g, cliques, i.k, tuple(sorted(tc.items())), i.q, i.original_g)
    if config.debug_enabled():
        out.check()
    return out


def merge_ext(i: StwInstance, wi: frozenset, wj: frozenset) -> StwInstance:
    u = wi | wj
    if wi == wj or len(u) > i.k + 1:
        raise ValueError("cannot merge these terminal cliques")
    rest = [c for c in i.cliques if c != wi and c != wj]
    tc = {w: (u if c in (wi, wj) else c) for w, c in i.tc}
    return StwInstance.make(i.g.with_clique(u), rest + [u], i.k, tc, i.q, i.original_g)


def push_ext(i: StwInstance, wi: frozenset, a: Iterable[int]) -> StwInstance:
    a = frozenset(a)
    u = wi | a
    if a & wi or len(u) > i.k + 1:
        raise ValueError("cannot push these vertices into the terminal clique")
    rest = [c for c in i.cliques if c != wi]
    tc = {w: (u if c == wi else c) for w, c in i.tc}
    return StwInstance.make(i.g.with_clique(u), rest + [u], i.k, tc, i.q, i.original_g)


def is_degenerate(i: StwInstance, sep: Separation) -> bool:
    covered = sum(i.ctc(c) for c in i.cliques if c & sep.a)
    return len(sep.s) + covered <= i.k + 1


# measure telemetry

def clique_measure(i: StwInstance, c: frozenset) -> float:
    k, q = i.k, i.q
    delta = k + 2 - k / math.log2(k)
    if q >= delta:
        if len(c) >= delta:
            return (k + 2 - min(q, len(c))) * math.log2(k) + 4 * k
        return 6 * k
    return (k + 2 - min(q, len(c))) * i.ctc(c) + 6 * k


def measure(i: StwInstance) -> float:
    if i.t <= 1:
        return 1
    k, q = i.k, i.q
    cq = min(2, sum(1 for c in i.cliques if len(c) >= q))
    return (k + 2 - q) * 3 * k + (2 - cq) * k + sum(clique_measure(i, c) for c in i.cliques)


def _tracks_measure(i: StwInstance) -> bool:
    return config.debug_enabled() and i.k >= 2 and i.t >= 2


def _check_drop(phi: float, child: StwInstance, drop: float, what: str) -> None:
    after = measure(child)
    config.check(after <= phi - drop + 1e-9, f"{what}: measure {phi} -> {after}, expected a drop of {drop}")


# pre-branching

def set_partitions(items: list[int], max_block: int) -> Iterator[list[frozenset]]:
    """Unordered partitions of items via restricted growth strings, blocks capped in size."""
    n = len(items)
    if n == 0:
        yield []
        return
    code = [0] * n

    def rec(pos: int, blocks: int, sizes: list[int]):
        if pos == n:
            parts = [set() for _ in range(blocks)]
            for x, b in zip(items, code):
                parts[b].add(x)
            yield [frozenset(p) for p in parts]
            return
        for b in range(blocks + 1):
            if b < blocks and sizes[b] >= max_block:
                continue
            code[pos] = b
            if b == blocks:
                sizes.append(1)
                yield from rec(pos + 1, blocks + 1, sizes)
                sizes.pop()
            else:
                sizes[b] += 1
                yield from rec(pos + 1, blocks, sizes)
                sizes[b] -= 1

    yield from rec(0, 0, [])


Recipe = tuple[tuple[frozenset, frozenset], ...]


def _process(i: StwInstance, processed: frozenset, recipe: Recipe) -> Iterator[tuple[StwInstance, Recipe]]:
    todo = [c for c in i.cliques if c not in processed]
    if not todo:
        yield i, recipe
        return
    wi = todo[0]
    yield from _process(i, processed | {wi}, recipe)
    cap = i.k + 1 - i.ctc(wi)
    for s in enumerate_important(i.g, wi, i.others(wi), cap):
        a = reach(i.g, wi, s)
        b = i.g.vertices - a - s
        child = restrict_ext(i, b, s)
        done = frozenset(c for c in processed if c in child.cliques)
        if s in child.cliques:
            done |= {s}
        yield from _process(child, done, recipe + ((wi, s),))


def prebranch(g: Graph, w: Iterable[int], k: int) -> Iterator[tuple[StwInstance, Recipe]]:
    """Instances whose solutions lift to a covering torso decomposition; if one
    exists, at least one emitted instance is valid."""
    w = sorted(set(w))
    if len(w) != k + 2:
        raise ValueError(f"expected {k + 2} terminals, got {len(w)}")
    for parts in set_partitions(w, k + 1):
        gp = g
        for p in parts:
            if len(p) > 1:
                gp = gp.with_clique(p)
        tc = {v: p for p in parts for v in p}
        inst = StwInstance.make(gp, parts, k, tc, 0, g)
        if config.debug_enabled():
            inst.check()
        yield from _process(inst, frozenset(), ())


def lift(sol: TorsoTreeDecomposition, recipe: Recipe) -> TorsoTreeDecomposition:
    """Undo pre-branching by hanging a bag W_i + S' next to a bag holding S'."""
    bags = list(sol.td.bags)
    edges = list(sol.td.edges)
    x = set(sol.x)
    for wi, s in reversed(recipe):
        host = next(t for t, bag in enumerate(bags) if s <= bag)
        bags.append(wi | s)
        edges.append((host, len(bags) - 1))
        x |= wi
    return TorsoTreeDecomposition(frozenset(x), TreeDecomposition.build(bags, edges, sol.td.root))


# the search over valid instances

def solve_valid(i: StwInstance, budget: Budget | None = None, failed: set | None = None):
    """A solution of i, or INVALID when i is not valid."""
    if budget is None:
        budget = Budget()
    if failed is None:
        failed = set()
    out = _solve(i, budget, failed)
    if out is not INVALID and config.debug_enabled():
        config.check(validate_torso(i.g, out).ok, "solution is not a torso tree decomposition")
        config.check(out.covers(i.hat), "solution misses a terminal vertex")
        config.check(out.width <= i.k, "solution too wide")
    return out


def _solve(i: StwInstance, budget: Budget, failed: set):
    if i in failed:
        return INVALID
    out = _branch(i, budget, failed)
    if out is INVALID:
        failed.add(i)
    return out


def _split(i: StwInstance, sep: Separation, budget: Budget, failed: set, phi, what: str):
    left = restrict_ext(i, sep.a, sep.s)
    right = restrict_ext(i, sep.b, sep.s)
    if phi is not None:
        for child in (left, right):
            if what == "safe":
                _check_drop(phi, child, 0, "safe separation")
            elif child.t < i.t:
                _check_drop(phi, child, i.k, "q-separation losing a clique")
            elif child.t == i.t:
                _check_drop(phi, child, 0, "q-separation")
    sa = _solve(left, budget, failed)
    if sa is INVALID:
        return INVALID
    sb = _solve(right, budget, failed)
    if sb is INVALID:
        return INVALID
    return combine(sa, sb, sep.s)


def _branch(i: StwInstance, budget: Budget, failed: set):
    budget.tick()
    if config.debug_enabled():
        i.check()
    k, q = i.k, i.q
    if i.t <= 1 or i.g.n <= k + 2:
        out = small_solution(i.g, i.cliques, k)
        return INVALID if out is None else out
    phi = measure(i) if _tracks_measure(i) else None
    hat = i.hat

    sep = find_safe_separation(i.g, i.cliques, k)
    if sep is not None:
        if len(sep.s) < q and hat & sep.a and hat & sep.b:
            return INVALID
        return _split(i, sep, budget, failed, phi, "safe")

    for wi, wj in combinations(i.cliques, 2):
        if len(wi | wj) <= k + 1:
            child = merge_ext(i, wi, wj)
            if phi is not None:
                _check_drop(phi, child, k, "merging")
            out = _solve(child, budget, failed)
            if out is not INVALID:
                return out

    if q > k + 1:
        return INVALID

    big = [c for c in i.cliques if len(c) >= q]
    if len(big) < 2:
        for wi in i.cliques:
            if len(wi) >= q or not any(wj != wi and len(wj) >= len(wi) for wj in i.cliques):
                continue
            far = hat - wi
            for w in sorted(wi):
                sub = i.g.remove(wi - {w})
                for s in enumerate_important(sub, {w}, far, k):
                    # the separator must stay outside W_i
                    if w in s or not q + 1 <= len(wi | s) <= k + 1:
                        continue
                    child = push_ext(i, wi, s)
                    if phi is not None:
                        _check_drop(phi, child, k, "leaf pushing")
                    out = _solve(child, budget, failed)
                    if out is not INVALID:
                        return out
    else:
        free = [c for c in i.cliques if len(c) < q]
        fixed = [c for c in i.cliques if len(c) >= q]
        for size in range(1, len(free) + 1):
            for left in combinations(free, size):
                right = fixed + [c for c in free if c not in left]
                wl = frozenset().union(*left)
                wr = frozenset().union(*right)
                for s in enumerate_important(i.g, wl, wr, q):
                    if len(s) != q:
                        continue
                    a = reach(i.g, wl, s)
                    sep = Separation(a, s, i.g.vertices - a - s)
                    if sum(i.ctc(c) for c in i.cliques if c & a) <= k + 1 - q:
                        continue
                    out = _split(i, sep, budget, failed, phi, "q")
                    if out is not INVALID:
                        return out

    child = i.with_q(q + 1)
    if phi is not None:
        _check_drop(phi, child, k, "raising q")
    return _solve(child, budget, failed)


def solve_stw(g: Graph, w: Iterable[int], k: int, budget: Budget | None = None) -> TorsoTreeDecomposition | None:
    """A torso tree decomposition of width at most k covering w, or None if none exists."""
    if budget is None:
        budget = Budget()
    w = frozenset(w)
    failed: set = set()
    for inst, recipe in prebranch(g, w, k):
        out = solve_valid(inst, budget, failed)
        if out is INVALID:
            continue
        sol = lift(out, recipe)
        if config.debug_enabled():
            config.check(validate_torso(g, sol).ok, "lifted solution is not a torso tree decomposition")
            config.check(sol.covers(w), "lifted solution misses a terminal")
            config.check(sol.width <= k, "lifted solution too wide")
        return sol
    return None
