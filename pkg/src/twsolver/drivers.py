"""Treewidth by iterative compression: exact through subset treewidth, and
the (1+eps)-approximation through partitioned subset treewidth."""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor
from typing import Callable, Iterable, Iterator

from . import config, pstw, stw
from .config import Budget
from .graph import Graph, components
from .improve import improve
from .treedec import TorsoTreeDecomposition, TreeDecomposition, nice_form, rooted, shrink, validate

Backend = Callable[[Graph, frozenset], "TorsoTreeDecomposition | None"]

BACKENDS = ("stw", "pstw")


def _order(g: Graph, comp: frozenset, how: str) -> list[int]:
    if how == "id":
        return sorted(comp)
    if how == "degeneracy":
        # repeatedly peel a minimum degree vertex, then insert in reverse
        deg = {v: len(g.neighbors(v) & comp) for v in comp}
        left = set(comp)
        peeled = []
        while left:
            v = min(left, key=lambda u: (deg[u], u))
            left.discard(v)
            peeled.append(v)
            for u in g.neighbors(v):
                if u in left:
                    deg[u] -= 1
        return peeled[::-1]
    raise ValueError(f"unknown insertion order {how!r}")


def lower_bound(g: Graph) -> int:
    """Contraction degeneracy: repeatedly contract a minimum degree vertex into
    its least degree neighbour; the largest minimum degree seen bounds tw."""
    adj = {v: set(g.neighbors(v)) for v in g}
    best = 0 if adj else -1
    while len(adj) > 1:
        v = min(adj, key=lambda u: (len(adj[u]), u))
        best = max(best, len(adj[v]))
        nbrs = adj.pop(v)
        if not nbrs:
            continue
        u = min(nbrs, key=lambda x: (len(adj[x]), x))
        for x in nbrs:
            adj[x].discard(v)
            if x != u:
                adj[x].add(u)
                adj[u].add(x)
    return best


def _insert(td: TreeDecomposition, v: int, nbrs: Iterable[int]) -> TreeDecomposition:
    """Add v to the smallest subtree touching a bag of each earlier neighbour."""
    bags = list(td.bags)
    edges = list(td.edges)
    marks = []
    for u in sorted(nbrs):
        t = next(i for i, b in enumerate(bags) if u in b)
        marks.append(t)
    if not marks:
        bags.append(frozenset({v}))
        edges.append((0, len(bags) - 1))
        return TreeDecomposition.build(bags, edges, td.root)
    parent, _, _ = rooted(td, marks[0])
    keep = {marks[0]}
    for t in marks[1:]:
        while t not in keep:
            keep.add(t)
            t = parent[t]
    for t in keep:
        bags[t] = bags[t] | {v}
    return TreeDecomposition.build(bags, edges, td.root)


def _largest(td: TreeDecomposition) -> int:
    size = max(len(b) for b in td.bags)
    return next(i for i, b in enumerate(td.bags) if len(b) == size)


def compress(g: Graph, width: int, solve: Backend, order: str = "id", prune: bool = False) -> TreeDecomposition | None:
    """Grow a decomposition of width at most ``width`` one vertex at a time.

    After each insertion the width is at most width + 1; while it is, a
    largest bag W is handed to ``solve`` and the returned torso decomposition
    covering W drives one improvement.  None means ``solve`` refused some W,
    or, with ``prune``, that a prefix has a contraction lower bound above width.
    """
    if g.n == 0:
        return TreeDecomposition.single()
    parts = []
    for comp in components(g):
        seq = _order(g, comp, order)
        done = {seq[0]}
        td = TreeDecomposition.single({seq[0]})
        for v in seq[1:]:
            done.add(v)
            gp = g.induced(done)
            td = shrink(gp, _insert(td, v, gp.neighbors(v)))
            if td.width > width and prune and lower_bound(gp) > width:
                return None
            while td.width > width:
                r = _largest(td)
                ttd = solve(gp, td.bags[r])
                if ttd is None:
                    return None
                td = improve(gp, td.with_root(r), ttd, r)
        parts.append(td)
    bags, edges = [], []
    for td in parts:
        off = len(bags)
        if off:
            edges.append((0, off))
        bags.extend(td.bags)
        edges.extend((a + off, b + off) for a, b in td.edges)
    out = TreeDecomposition.build(bags, edges, 0)
    if config.debug_enabled():
        config.check(validate(g, out).ok, "compressed decomposition is invalid")
        config.check(out.width <= width, "compressed decomposition is too wide")
    return out


def exact(
    g: Graph, k: int, backend: str = "stw", budget: Budget | None = None, order: str = "id", prune: bool = True
) -> TreeDecomposition | None:
    """A decomposition of width at most k, or None when tw(g) > k.

    ``prune`` lets a cheap lower bound answer no before the backend runs;
    turn it off to make every no come from the backend.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    if budget is None:
        budget = Budget()

    def solve(gp: Graph, w: frozenset):
        if backend == "stw":
            return stw.solve_stw(gp, w, k, budget)
        return pstw.solve_singletons(gp, w, k, budget)

    return compress(g, k, solve, order, prune)


def parse_eps(eps) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    return eps


def approx_width(k: int, eps) -> int:
    """floor((1 + eps) k) in exact arithmetic."""
    eps = parse_eps(eps)
    return floor((eps.denominator + eps.numerator) * k / eps.denominator)


def part_bound(eps) -> int:
    eps = parse_eps(eps)
    return ceil(16 / eps) + 1


def partitions_by_blocks(items: list[int], blocks: int, max_block: int) -> Iterator[list[frozenset]]:
    """Set partitions of ``items`` into exactly ``blocks`` parts of size at most max_block."""
    n = len(items)
    code = [0] * n
    sizes: list[int] = []

    def rec(pos: int):
        opened = len(sizes)
        if n - pos < blocks - opened:
            return
        if pos == n:
            if opened == blocks:
                parts = [set() for _ in range(blocks)]
                for x, b in zip(items, code):
                    parts[b].add(x)
                yield [frozenset(p) for p in parts]
            return
        for b in range(min(opened + 1, blocks)):
            code[pos] = b
            if b == opened:
                sizes.append(1)
                yield from rec(pos + 1)
                sizes.pop()
            elif sizes[b] < max_block:
                sizes[b] += 1
                yield from rec(pos + 1)
                sizes[b] -= 1

    yield from rec(0)


def approx(
    g: Graph, k: int, eps, budget: Budget | None = None, order: str = "id", prune: bool = True
) -> TreeDecomposition | None:
    """A decomposition of width at most floor((1+eps)k), or None when tw(g) > k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    eps = parse_eps(eps)
    big = approx_width(k, eps)
    t = part_bound(eps)
    if budget is None:
        budget = Budget()

    def solve(gp: Graph, w: frozenset):
        config.check(len(w) <= 4 * k + 4, "largest bag exceeds 4k+4")
        items = sorted(w)
        failed: set = set()
        # finest partitions first: singletons already succeed whenever W has small subset treewidth
        for blocks in range(min(t, len(items)), 0, -1):
            for parts in partitions_by_blocks(items, blocks, big + 1):
                g2 = gp
                for p in parts:
                    if len(p) > 1:
                        g2 = g2.with_clique(p)
                inst = pstw.PstwInstance.make(g2, parts, big)
                sol = pstw.solve(inst, budget, failed)
                if sol is not None:
                    return sol
        return None

    return compress(g, big, solve, order, prune)


def treewidth(g: Graph, mode: str = "exact", eps=None, backend: str = "stw", budget: Budget | None = None):
    """(width, decomposition) by trying k = 0, 1, ... until the driver succeeds."""
    if g.n == 0:
        return -1, TreeDecomposition.single()
    if budget is None:
        budget = Budget()
    k = max(0, lower_bound(g))
    while True:
        if mode == "exact":
            td = exact(g, k, backend, budget)
        elif mode == "approx":
            td = approx(g, k, eps, budget)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        if td is not None:
            return td.width, td
        k += 1


def partition_exists_check(g: Graph, w: Iterable[int], td: TreeDecomposition, eps, k: int | None = None):
    """Build the partition of w from a width-k decomposition by the post-order sweep.

    Returns ``(parts, widened)`` where ``widened`` decomposes g with every
    part made a clique; the width and part-count bounds are checked.
    """
    w = frozenset(w)
    eps = parse_eps(eps)
    if k is None:
        k = td.width
    if eps * k < 1:
        return [frozenset({v}) for v in sorted(w)], td
    nice = nice_form(g, td)
    parent, order, _ = rooted(nice)
    children: list[list[int]] = [[] for _ in nice.bags]
    for t in order[1:]:
        children[parent[t]].append(t)
    forget = {}
    for t in order[1:]:
        gone = nice.bags[t] - nice.bags[parent[t]]
        for v in gone:
            forget[t] = v
    threshold = eps * k / 2
    removed = [False] * len(nice.bags)
    pending: list[list[int]] = [[] for _ in nice.bags]
    bags = [set(b) for b in nice.bags]
    parts: list[frozenset] = []
    for t in reversed(order):
        d = [t]
        for c in children[t]:
            if not removed[c]:
                d.extend(pending[c])
        pending[t] = d
        hits = [forget[u] for u in d if u in forget and forget[u] in w]
        if len(hits) >= threshold or parent[t] < 0:
            part = frozenset(hits)
            if part:
                parts.append(part)
                for u in d:
                    bags[u] |= part
            for u in d:
                removed[u] = True
    widened = TreeDecomposition.build(bags, nice.edges, nice.root)
    g2 = g
    for p in parts:
        g2 = g2.with_clique(p)
    if sorted(v for p in parts for v in p) != sorted(w):
        raise config.InvariantViolation("parts do not partition w")
    report = validate(g2, widened)
    if not report.ok:
        raise config.InvariantViolation(f"widened decomposition is invalid: {report.first()}")
    if widened.width > floor(k + eps * k):
        raise config.InvariantViolation("widened decomposition exceeds k + eps k")
    if len(parts) > len(w) / threshold + 1:
        raise config.InvariantViolation("too many parts")
    return parts, widened
