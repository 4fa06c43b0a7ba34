"""Undirected graphs and the separator primitives built on vertex flows."""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from . import _kernel

VSet = frozenset


class Graph:
    """Immutable simple undirected graph over integer vertex ids.

    Derived graphs (induced subgraphs, clique unions) keep the original ids,
    so results never need translating back.
    """

    __slots__ = ("_adj", "_vset", "_csr", "_key")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._set({v: frozenset(adj[v]) for v in sorted(adj)})

    def _set(self, adj: dict[int, frozenset]) -> None:
        self._adj = adj
        self._vset = frozenset(adj)
        self._csr = None
        self._key = None

    @classmethod
    def _raw(cls, adj: dict[int, frozenset]) -> "Graph":
        # trusted constructor: ``adj`` must be symmetric and sorted by key
        g = cls.__new__(cls)
        g._set(adj)
        return g

    @property
    def vertices(self) -> frozenset:
        return self._vset

    def ordered(self) -> tuple[int, ...]:
        return tuple(self._adj)

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self):
        return iter(self._adj)

    def __contains__(self, v) -> bool:
        return v in self._adj

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, ns in self._adj.items() for v in sorted(ns) if u < v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def induced(self, s: Iterable[int]) -> "Graph":
        keep = self._vset.intersection(s)
        if len(keep) == len(self._adj):
            return self
        return Graph._raw({v: ns & keep for v, ns in self._adj.items() if v in keep})

    def remove(self, s: Iterable[int]) -> "Graph":
        return self.induced(self._vset.difference(s))

    def with_clique(self, s: Iterable[int]) -> "Graph":
        s = frozenset(s)
        if len(s) < 2:
            return self
        missing = [v for v in s if not (s - {v}) <= self._adj[v]]
        if not missing:
            return self
        adj = dict(self._adj)
        for v in s:
            adj[v] = adj[v] | (s - {v})
        return Graph._raw(adj)

    def is_clique(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        return all((s - {v}) <= self._adj[v] for v in s)

    def is_complete(self) -> bool:
        n = len(self._adj)
        return all(len(ns) == n - 1 for ns in self._adj.values())

    def _csr_data(self):
        if self._csr is None:
            order = tuple(self._adj)
            index = {v: i for i, v in enumerate(order)}
            indptr = array("i", [0])
            indices = array("i")
            for v in order:
                indices.extend(sorted(index[u] for u in self._adj[v]))
                indptr.append(len(indices))
            pos = {}
            for i in range(len(order)):
                for e in range(indptr[i], indptr[i + 1]):
                    pos[(i, indices[e])] = e
            rev = array("i", [pos[(indices[e], i)] for i in range(len(order)) for e in range(indptr[i], indptr[i + 1])])
            self._csr = (order, index, indptr, indices, rev)
        return self._csr

    def _canon(self):
        if self._key is None:
            self._key = tuple((v, tuple(sorted(ns))) for v, ns in self._adj.items())
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._canon() == other._canon()

    def __hash__(self) -> int:
        return hash(self._canon())

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Separation:
    """A tripartition (a, s, b) of the vertex set with no a-b edge."""

    a: frozenset
    s: frozenset
    b: frozenset

    @property
    def order(self) -> int:
        return len(self.s)

    @property
    def is_strict(self) -> bool:
        return bool(self.a) and bool(self.b)

    def check(self, g: Graph) -> None:
        a, s, b = self.a, self.s, self.b
        if a & s or a & b or s & b or (a | s | b) != g.vertices:
            raise ValueError("separation does not partition the vertex set")
        for v in a:
            if g.neighbors(v) & b:
                raise ValueError(f"edge between sides at vertex {v}")


class FlowResult(NamedTuple):
    value: int
    paths: tuple[tuple[int, ...], ...]
    min_separator: frozenset


def reach(g: Graph, x: Iterable[int], s: Iterable[int] = ()) -> frozenset:
    """Vertices of g - s reachable from x - s."""
    s = frozenset(s)
    start = [v for v in x if v not in s]
    seen = set(start)
    queue = deque(start)
    adj = g._adj
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u not in seen and u not in s:
                seen.add(u)
                queue.append(u)
    return frozenset(seen)


def neighborhood(g: Graph, c: Iterable[int]) -> frozenset:
    """Open neighbourhood N(c)."""
    c = frozenset(c)
    out = set()
    for v in c:
        out |= g._adj[v]
    return frozenset(out - c)


def reach_boundary(g: Graph, x: Iterable[int], s: Iterable[int]) -> frozenset:
    """(x & s) together with the neighbourhood of reach(g, x, s)."""
    x, s = frozenset(x), frozenset(s)
    return (x & s) | neighborhood(g, reach(g, x, s))


def components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset]:
    """Connected components of g - removed, ordered by smallest vertex."""
    removed = frozenset(removed)
    seen = set(removed)
    out = []
    for v in g._adj:
        if v not in seen:
            comp = reach(g, (v,), removed)
            seen |= comp
            out.append(comp)
    return out


def is_separator(g: Graph, x: Iterable[int], y: Iterable[int], s: Iterable[int]) -> bool:
    """True when g - s has no path from x - s to y - s."""
    s = frozenset(s)
    return not (reach(g, x, s) & (frozenset(y) - s))


def _solve(g, x, y, removed=(), undeletable=(), limit=None, want=0):
    order, index, indptr, indices, rev = g._csr_data()
    n = len(order)
    src = bytearray(n)
    snk = bytearray(n)
    inf = bytearray(n)
    rem = bytearray(n)
    for v in x:
        src[index[v]] = 1
    for v in y:
        snk[index[v]] = 1
    for v in undeletable:
        inf[index[v]] = 1
    for v in removed:
        rem[index[v]] = 1
    if limit is None:
        limit = n + 1
    value, paths, cx, cy = _kernel.max_flow(indptr, indices, rev, n, src, snk, inf, rem, limit, want)
    return (
        value,
        [tuple(order[i] for i in p) for p in paths],
        frozenset(order[i] for i in cx),
        frozenset(order[i] for i in cy),
    )


def flow_value(g: Graph, x, y, *, removed=(), undeletable=(), limit=None) -> int:
    """Maximum number of vertex-disjoint x-y paths.

    Vertices in ``undeletable`` have unbounded capacity; ``removed`` vertices
    are absent.  The count is capped at ``limit + 1``.
    """
    return _solve(g, x, y, removed, undeletable, limit)[0]


def min_cut(g: Graph, x, y, *, side: str = "y", removed=(), undeletable=(), limit=None):
    """Return ``(value, cut)`` for a minimum (x, y)-separator.

    ``side="y"`` gives the cut closest to y, ``side="x"`` the one closest to
    x.  ``cut`` is None when the value exceeds ``limit``.
    """
    want = _kernel.WANT_CUT_Y if side == "y" else _kernel.WANT_CUT_X
    value, _, cx, cy = _solve(g, x, y, removed, undeletable, limit, want)
    if limit is not None and value > limit:
        return value, None
    return value, (cy if side == "y" else cx)


def flow(g: Graph, x, y) -> FlowResult:
    value, paths, _, cy = _solve(g, x, y, want=_kernel.WANT_PATHS | _kernel.WANT_CUT_Y)
    return FlowResult(value, tuple(paths), cy)


def min_separation(g: Graph, x, y) -> Separation:
    """Minimum-order separation with x on the a-side, cut pushed toward y."""
    _, s = min_cut(g, x, y)
    a = reach(g, x, s)
    return Separation(a, s, g.vertices - a - s)


def is_linked(g: Graph, x, y) -> bool:
    x = frozenset(x)
    return flow_value(g, x, y, limit=len(x)) == len(x)


def other_min_separator(g: Graph, x, y) -> frozenset | None:
    """A minimum (x, y)-separator different from both x and y, if any.

    Every minimum separator takes exactly one vertex from each path of a
    maximum flow, so it is enough to try forcing each path vertex outside x
    into the separator and look at the two extreme cuts of what remains.
    """
    x, y = frozenset(x), frozenset(y)
    value, paths, cx, cy = _solve(g, x, y, want=7)
    for c in (cx, cy):
        if c != x and c != y:
            return c
    tried = set()
    for p in paths:
        for v in p:
            if v in x or v in tried:
                continue
            tried.add(v)
            val, _, cx, cy = _solve(g, x, y, removed=(v,), limit=value - 1, want=6)
            if val != value - 1:
                continue
            for c in (cx, cy):
                c = c | {v}
                if c != x and c != y:
                    return c
    return None


def is_strictly_linked(g: Graph, x, y) -> bool:
    return is_linked(g, x, y) and other_min_separator(g, x, y) is None


def torso(g: Graph, x: Iterable[int]) -> Graph:
    """G[x] plus a clique on N(C) for every component C of g - x."""
    x = frozenset(x)
    adj = {v: set(g._adj[v] & x) for v in g._adj if v in x}
    for comp in components(g, x):
        nb = neighborhood(g, comp)
        for v in nb:
            adj[v] |= nb
            adj[v].discard(v)
    return Graph._raw({v: frozenset(ns) for v, ns in adj.items()})


def clique_union(g: Graph, s: Iterable[int]) -> Graph:
    return g.with_clique(s)


def flow_potential(g: Graph, x, y) -> int:
    """Minimum order of a separation (A, S, B) with x in A+S, y in B+S, B nonempty.

    Equals the flow except when |x| > |y|, y is strictly linked into x and x
    meets every component of g - y.  In that case one vertex b outside x is
    forced onto the B side, for every candidate b.
    """
    x, y = frozenset(x), frozenset(y)
    if x >= g.vertices:
        return len(x)
    f = flow_value(g, x, y, limit=len(x))
    if len(x) <= len(y):
        return f
    if not all(comp & x for comp in components(g, y)):
        return f
    if not is_strictly_linked(g, y, x):
        return f
    best = len(x)
    for b in g.vertices - x:
        val = flow_value(g, x, y | {b}, undeletable=(b,), limit=best)
        if val < best:
            best = val
    return best
