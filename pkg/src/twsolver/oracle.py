"""Brute-force ground truth, deliberately sharing no code with the flow layer.

Only the Graph container and the TreeDecomposition record are reused.
Everything here works on bitmasks and exhaustive enumeration.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .graph import Graph
from .treedec import TreeDecomposition

MAX_DP = 20
MAX_IMPORTANT = 15


def _masks(g: Graph):
    order = sorted(g)
    index = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for v in order:
        for u in g.neighbors(v):
            adj[index[v]] |= 1 << index[u]
    return order, index, adj


def _q(adj, s: int, v: int) -> int:
    """Vertices outside s + v reachable from v through s."""
    comp = todo = 1 << v
    nbrs = 0
    while todo:
        low = todo & -todo
        todo ^= low
        nb = adj[low.bit_length() - 1]
        nbrs |= nb
        new = nb & s & ~comp
        comp |= new
        todo |= new
    return bin(nbrs & ~s & ~(1 << v)).count("1")


def elimination_width(g: Graph, order) -> int:
    """Width of the elimination ordering ``order`` (max forward degree in the fill graph)."""
    _, index, adj = _masks(g)
    done = 0
    width = -1
    for v in order:
        i = index[v]
        width = max(width, _q(adj, done, i))
        done |= 1 << i
    return width


def _greedy_order(g: Graph) -> list[int]:
    adj = {v: set(g.neighbors(v)) for v in g}
    order = []
    while adj:
        def fill(v):
            ns = list(adj[v])
            return sum(1 for x, y in combinations(ns, 2) if y not in adj[x])

        v = min(adj, key=lambda u: (fill(u), len(adj[u]), u))
        ns = adj.pop(v)
        for x in ns:
            adj[x].discard(v)
            adj[x] |= ns - {x}
        order.append(v)
    return order


def exact_tw(g: Graph) -> tuple[int, list[int]]:
    """Treewidth and an optimal elimination ordering by subset DP.

    TW(S) = min over v in S of max(TW(S - v), Q(S - v, v)) with TW({}) = -1,
    explored level by level and pruned by a greedy upper bound.
    """
    n = g.n
    if n > MAX_DP:
        raise ValueError(f"oracle limited to {MAX_DP} vertices, got {n}")
    if n == 0:
        return -1, []
    order, _, adj = _masks(g)
    greedy = _greedy_order(g)
    ub = elimination_width(g, greedy)
    full = (1 << n) - 1
    layers = [{0: (-1, -1, -1)}]
    for _ in range(n):
        nxt: dict[int, tuple[int, int, int]] = {}
        for s, (tw, _, _) in layers[-1].items():
            for v in range(n):
                if s >> v & 1:
                    continue
                val = max(tw, _q(adj, s, v))
                if val >= ub:
                    continue
                s2 = s | 1 << v
                old = nxt.get(s2)
                if old is None or old[0] > val:
                    nxt[s2] = (val, s, v)
        layers.append(nxt)
        if not nxt:
            break
    if len(layers) == n + 1 and full in layers[n]:
        width = layers[n][full][0]
        seq = []
        s = full
        for level in range(n, 0, -1):
            _, prev, v = layers[level][s]
            seq.append(order[v])
            s = prev
        return width, seq[::-1]
    return ub, greedy


def exhaustive_tw(g: Graph) -> int:
    """Minimum elimination width over all orderings; only for tiny graphs."""
    if g.n > 8:
        raise ValueError("exhaustive search limited to 8 vertices")
    if g.n == 0:
        return -1
    return min(elimination_width(g, p) for p in permutations(sorted(g)))


def td_from_elimination(g: Graph, order) -> TreeDecomposition:
    """Fill-in construction: bag(v) = v plus its later neighbours in the fill graph."""
    order = list(order)
    if sorted(order) != sorted(g):
        raise ValueError("order is not a permutation of the vertices")
    if not order:
        return TreeDecomposition.single()
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.neighbors(v)) for v in g}
    bags = []
    parent = []
    for v in order:
        later = {u for u in adj[v] if pos[u] > pos[v]}
        bags.append(frozenset(later | {v}))
        parent.append(min(later, key=pos.__getitem__) if later else None)
        for x in later:
            adj[x] |= later - {x}
    edges = []
    roots = []
    for i, p in enumerate(parent):
        if p is None:
            roots.append(i)
        else:
            edges.append((i, pos[p]))
    for r in roots[:-1]:
        edges.append((r, roots[-1]))
    return TreeDecomposition.build(bags, edges, roots[-1])


def check_td(g: Graph, td: TreeDecomposition) -> bool:
    """Definition-level validity check written independently of treedec.validate."""
    nodes = range(len(td.bags))
    if not td.bags or len(td.edges) != len(td.bags) - 1:
        return False
    nbr = {t: set() for t in nodes}
    for a, b in td.edges:
        nbr[a].add(b)
        nbr[b].add(a)

    def connected(sub):
        sub = set(sub)
        if not sub:
            return True
        start = next(iter(sub))
        seen = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for u in nbr[t] & sub:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen == sub

    if not connected(nodes):
        return False
    verts = set(g)
    for bag in td.bags:
        if not bag <= verts:
            return False
    for v in verts:
        holding = [t for t in nodes if v in td.bags[t]]
        if not holding or not connected(holding):
            return False
    for u in verts:
        for v in g.neighbors(u):
            if not any(u in b and v in b for b in td.bags):
                return False
    return True


def _reach(g: Graph, x, s) -> frozenset:
    seen = {v for v in x if v not in s}
    stack = list(seen)
    while stack:
        v = stack.pop()
        for u in g.neighbors(v):
            if u not in s and u not in seen:
                seen.add(u)
                stack.append(u)
    return frozenset(seen)


def _separates(g: Graph, a, b, s) -> bool:
    return not (_reach(g, a, s) & (frozenset(b) - s))


def all_separators(g: Graph, a, b, k: int) -> list[frozenset]:
    verts = sorted(g)
    out = []
    for size in range(min(k, len(verts)) + 1):
        for s in combinations(verts, size):
            s = frozenset(s)
            if _separates(g, a, b, s):
                out.append(s)
    return out


def all_important_bruteforce(g: Graph, a, b, k: int) -> set[frozenset]:
    """Every important (a, b)-separator of size at most k, straight from the definition."""
    if g.n > MAX_IMPORTANT:
        raise ValueError(f"brute force limited to {MAX_IMPORTANT} vertices")
    a, b = frozenset(a), frozenset(b)
    seps = all_separators(g, a, b, k)
    reach_of = {s: _reach(g, a, s) for s in seps}
    sepset = set(seps)
    out = set()
    for s in seps:
        if any(s - {v} in sepset for v in s):
            continue
        r = reach_of[s]
        if any(len(t) <= len(s) and r < reach_of[t] for t in seps):
            continue
        out.add(s)
    return out


def min_separator_size(g: Graph, x, y) -> int:
    """Smallest (x, y)-separator by exhaustive search."""
    x, y = frozenset(x), frozenset(y)
    verts = sorted(g)
    for size in range(len(verts) + 1):
        for s in combinations(verts, size):
            if _separates(g, x, y, frozenset(s)):
                return size
    return len(verts)


def flow_potential_bruteforce(g: Graph, x, y) -> int:
    """Minimum order over all separations (A, S, B) with x in A+S, y in B+S, B nonempty."""
    x, y = frozenset(x), frozenset(y)
    verts = frozenset(g)
    if x >= verts:
        return len(x)
    best = len(x)
    for size in range(len(verts) + 1):
        if size >= best:
            break
        for s in combinations(sorted(verts), size):
            s = frozenset(s)
            rest = verts - s
            comps = []
            seen = set()
            for v in sorted(rest):
                if v not in seen:
                    c = _reach(g, [v], s)
                    seen |= c
                    comps.append(c)
            ok = True
            has_b = False
            for c in comps:
                if c & x and c & y:
                    ok = False
                    break
                if not c & x:
                    has_b = True
            if ok and has_b:
                best = size
                break
    return best


def is_torso_edge(g: Graph, x, u: int, v: int) -> bool:
    """u and v are joined by a path whose inner vertices avoid x."""
    x = frozenset(x)
    if g.has_edge(u, v):
        return True
    inner = _reach(g, [w for w in g.neighbors(u) if w not in x], x)
    return any(w in inner for w in g.neighbors(v))


def torso_bruteforce(g: Graph, x) -> Graph:
    x = sorted(set(x))
    return Graph(x, [(u, v) for u, v in combinations(x, 2) if is_torso_edge(g, x, u, v)])


def subset_tw(g: Graph, w) -> int:
    """Least width of a torso decomposition covering w, over every superset of w."""
    w = frozenset(w)
    rest = sorted(frozenset(g) - w)
    if len(rest) > 12:
        raise ValueError("subset treewidth oracle limited to 12 free vertices")
    best = None
    for size in range(len(rest) + 1):
        for extra in combinations(rest, size):
            tw, _ = exact_tw(torso_bruteforce(g, w | frozenset(extra)))
            if best is None or tw < best:
                best = tw
    return best
