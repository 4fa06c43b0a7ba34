"""Tree decompositions, torso tree decompositions and their normal forms."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph, torso


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed 0..len-1 over an undirected tree given by ``edges``."""

    bags: tuple[frozenset, ...]
    edges: tuple[tuple[int, int], ...] = ()
    root: int | None = None

    @staticmethod
    def build(bags: Sequence[Iterable[int]], edges: Iterable[tuple[int, int]] = (), root: int | None = None):
        bags = tuple(frozenset(b) for b in bags)
        edges = tuple(sorted((min(a, b), max(a, b)) for a, b in edges))
        return TreeDecomposition(bags, edges, root)

    @staticmethod
    def single(bag: Iterable[int] = ()) -> "TreeDecomposition":
        return TreeDecomposition((frozenset(bag),), (), 0)

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def __len__(self) -> int:
        return len(self.bags)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def with_root(self, root: int) -> "TreeDecomposition":
        return TreeDecomposition(self.bags, self.edges, root)

    def vertices(self) -> frozenset:
        return frozenset().union(*self.bags)

    def count_of_size(self, size: int) -> int:
        return sum(1 for b in self.bags if len(b) == size)

    def find_bag(self, s: Iterable[int]) -> int | None:
        s = frozenset(s)
        for i, b in enumerate(self.bags):
            if s <= b:
                return i
        return None


@dataclass(frozen=True)
class TorsoTreeDecomposition:
    """A vertex set x with a tree decomposition of torso(G, x)."""

    x: frozenset
    td: TreeDecomposition

    @property
    def width(self) -> int:
        return self.td.width

    def covers(self, w: Iterable[int]) -> bool:
        return frozenset(w) <= self.x


@dataclass
class ValidationReport:
    ok: bool
    width: int
    failures: list[tuple[str, object]] = field(default_factory=list)

    def first(self) -> str:
        if not self.failures:
            return "ok"
        cond, what = self.failures[0]
        return f"{cond}: {what}"


def _tree_problem(td: TreeDecomposition) -> str | None:
    n = len(td.bags)
    if n == 0:
        return "no nodes"
    if len(td.edges) != n - 1:
        return f"{len(td.edges)} edges for {n} nodes"
    adj = td.adjacency()
    seen = {0}
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for u in adj[t]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    if len(seen) != n:
        return "tree is disconnected"
    return None


def validate(g: Graph, td: TreeDecomposition) -> ValidationReport:
    """Check the tree shape and the vertex, edge and connectedness conditions."""
    failures: list[tuple[str, object]] = []
    problem = _tree_problem(td)
    if problem is not None:
        return ValidationReport(False, -1 if not td.bags else td.width, [("tree", problem)])
    where: dict[int, list[int]] = {}
    for i, bag in enumerate(td.bags):
        for v in bag:
            if v not in g:
                failures.append(("unknown vertex", v))
            where.setdefault(v, []).append(i)
    for v in g:
        if v not in where:
            failures.append(("vertex", v))
    for u, v in g.edges():
        if not any(v in td.bags[i] for i in where.get(u, ())):
            failures.append(("edge", (u, v)))
    adj = td.adjacency()
    for v, nodes in sorted(where.items()):
        inside = set(nodes)
        seen = {nodes[0]}
        queue = deque([nodes[0]])
        while queue:
            t = queue.popleft()
            for u in adj[t]:
                if u in inside and u not in seen:
                    seen.add(u)
                    queue.append(u)
        if len(seen) != len(inside):
            failures.append(("connectedness", v))
    return ValidationReport(not failures, td.width, failures)


def validate_torso(g: Graph, ttd: TorsoTreeDecomposition) -> ValidationReport:
    return validate(torso(g, ttd.x), ttd.td)


def rooted(td: TreeDecomposition, root: int | None = None):
    """Return ``(parent, order, depth)`` with ``order`` a BFS order from the root."""
    if root is None:
        root = td.root if td.root is not None else 0
    adj = td.adjacency()
    parent = [-1] * len(td.bags)
    depth = [0] * len(td.bags)
    order = [root]
    parent[root] = root
    for t in order:
        for u in adj[t]:
            if parent[u] == -1:
                parent[u] = t
                depth[u] = depth[t] + 1
                order.append(u)
    parent[root] = -1
    return parent, order, depth


def forget_nodes(td: TreeDecomposition, root: int | None = None) -> dict[int, int]:
    """Map each vertex to the node closest to the root whose bag holds it."""
    _, order, _ = rooted(td, root)
    out: dict[int, int] = {}
    for t in order:
        for v in td.bags[t]:
            if v not in out:
                out[v] = t
    return out


def depth_weights(td: TreeDecomposition, root: int | None = None) -> dict[int, int]:
    """Distance from each vertex's forget node to the root, plus one."""
    _, order, depth = rooted(td, root)
    out: dict[int, int] = {}
    for t in order:
        for v in td.bags[t]:
            if v not in out:
                out[v] = depth[t] + 1
    return out


def shrink(g: Graph | None, td: TreeDecomposition) -> TreeDecomposition:
    """Contract tree edges uv with bag(u) a subset of bag(v) until none remain.

    The surviving node keeps the larger bag, so validity and width are
    preserved and at most |V(g)| nodes remain (at least one).
    """
    n = len(td.bags)
    alive = [True] * n
    adj = [set(a) for a in td.adjacency()]
    root = td.root
    changed = True
    while changed:
        changed = False
        for u in range(n):
            if not alive[u]:
                continue
            for v in sorted(adj[u]):
                if td.bags[u] <= td.bags[v]:
                    # fold u into v
                    for w in adj[u]:
                        if w != v:
                            adj[w].discard(u)
                            adj[w].add(v)
                            adj[v].add(w)
                    adj[v].discard(u)
                    adj[u] = set()
                    alive[u] = False
                    if root == u:
                        root = v
                    changed = True
                    break
    keep = [i for i in range(n) if alive[i]]
    new = {old: i for i, old in enumerate(keep)}
    edges = {(min(new[a], new[b]), max(new[a], new[b])) for a in keep for b in adj[a]}
    return TreeDecomposition(
        tuple(td.bags[i] for i in keep),
        tuple(sorted(edges)),
        None if root is None else new[root],
    )


def disjoint_union(parts: Sequence[TreeDecomposition]) -> tuple[list[frozenset], list[tuple[int, int]], list[int]]:
    """Concatenate bags and edges; also returns each part's node offset."""
    bags: list[frozenset] = []
    edges: list[tuple[int, int]] = []
    offsets = []
    for td in parts:
        off = len(bags)
        offsets.append(off)
        bags.extend(td.bags)
        edges.extend((a + off, b + off) for a, b in td.edges)
    return bags, edges, offsets


def join_on(td_a: TreeDecomposition, td_b: TreeDecomposition, s: Iterable[int]) -> TreeDecomposition:
    """Disjoint union plus one edge between bags that both contain s."""
    s = frozenset(s)
    ia = td_a.find_bag(s)
    ib = td_b.find_bag(s)
    if ia is None or ib is None:
        raise ValueError(f"no bag contains {sorted(s)}")
    bags, edges, (_, off) = disjoint_union([td_a, td_b])
    edges.append((ia, ib + off))
    return TreeDecomposition.build(bags, edges, td_a.root)


def nice_form(g: Graph | None, td: TreeDecomposition, root: int | None = None) -> TreeDecomposition:
    """Rooted nice decomposition with an empty root bag.

    Every node has at most two children, adjacent bags differ in at most one
    vertex, join nodes copy their bag to both children and get a copy above
    them, so every node that drops a vertex toward its parent has exactly one
    child.  Going up from a child, vertices are dropped before new ones are
    added, which keeps the width unchanged.
    """
    parent, order, _ = rooted(td, root)
    children: list[list[int]] = [[] for _ in td.bags]
    for t in order[1:]:
        children[parent[t]].append(t)
    for t in range(len(td.bags)):
        children[t].sort(key=lambda c: (min(td.bags[c]) if td.bags[c] else -1, c))

    bags: list[frozenset] = []
    edges: list[tuple[int, int]] = []

    def node(bag, below=()):
        i = len(bags)
        bags.append(frozenset(bag))
        for c in below:
            edges.append((i, c))
        return i

    def climb(top: int, target: frozenset) -> int:
        cur = bags[top]
        for v in sorted(cur - target):
            cur = cur - {v}
            top = node(cur, (top,))
        for v in sorted(target - cur):
            cur = cur | {v}
            top = node(cur, (top,))
        return top

    built: dict[int, int] = {}
    for t in reversed(order):
        bag = td.bags[t]
        subs = [climb(built.pop(c), bag) for c in children[t]]
        if not subs:
            top = climb(node(()), bag)
        elif len(subs) == 1:
            top = subs[0]
        else:
            top = subs[0]
            for other in subs[1:]:
                top = node(bag, (top, other))
            top = node(bag, (top,))
        built[t] = top
    top = climb(built[order[0]], frozenset())
    if bags[top]:
        top = node((), (top,))
    return TreeDecomposition.build(bags, edges, top)
