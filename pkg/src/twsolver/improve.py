"""Pulling a torso decomposition through a separation, and the improvement
loop that turns a small torso decomposition covering a largest bag into a
decomposition with fewer largest bags."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import config
from .graph import Graph, Separation, components, flow, is_separator, min_cut, neighborhood, reach
from .treedec import (
    TorsoTreeDecomposition,
    TreeDecomposition,
    depth_weights,
    rooted,
    shrink,
    validate,
    validate_torso,
)


@dataclass(frozen=True)
class DLinkWitness:
    """Node ``node`` of the torso decomposition and a separator between its
    bag and the covered set that is smaller, or equal in size with smaller
    total depth weight."""

    node: int
    separator: frozenset


def weight(d: Mapping[int, int], s) -> int:
    return sum(d[v] for v in s)


def witness_ok(g: Graph, w, ttd: TorsoTreeDecomposition, d: Mapping[int, int], wit: DLinkWitness) -> bool:
    bag = ttd.td.bags[wit.node]
    s = wit.separator
    if not is_separator(g, bag, w, s):
        return False
    if len(s) < len(bag):
        return True
    return len(s) == len(bag) and weight(d, s) < weight(d, bag)


def pull(g: Graph, ttd: TorsoTreeDecomposition, sep: Separation, r: int) -> TorsoTreeDecomposition:
    """Replace the B side of a torso decomposition by the separator.

    Each separator vertex s is routed along its own path into bag(r) inside
    S + B and takes over every bag that path touches.  The tree is unchanged
    and no bag grows.
    """
    a, s, b = sep.a, sep.s, sep.b
    sb = s | b
    target = ttd.td.bags[r] & sb
    res = flow(g.induced(sb), s, target)
    if res.value != len(s):
        raise ValueError("separator is not linked into the bag of the chosen node")
    route = {p[0]: frozenset(p) for p in res.paths}
    bags = []
    for bag in ttd.td.bags:
        kept = bag - sb
        hit = frozenset(v for v, p in route.items() if p & bag)
        bags.append(kept | hit)
    x = (ttd.x & a) | s
    return TorsoTreeDecomposition(x, TreeDecomposition(tuple(bags), ttd.td.edges, ttd.td.root))


def potential(x, d: Mapping[int, int], n: int, bag_size: int) -> int:
    return len(x) * n * bag_size + weight(d, x)


def refine_cover(g: Graph, w, ttd: TorsoTreeDecomposition, d: Mapping[int, int], wit: DLinkWitness) -> TorsoTreeDecomposition:
    """Use a witness against d-linkedness to get a cover with smaller potential."""
    w = frozenset(w)
    if not witness_ok(g, w, ttd, d, wit):
        raise ValueError("witness does not satisfy its separator and weight conditions")
    bag = ttd.td.bags[wit.node]
    s = wit.separator
    value, cut = min_cut(g, bag, w)
    if value < len(s):
        s = cut
    a = reach(g, w, s)
    sep = Separation(a, s, g.vertices - a - s)
    out = pull(g, ttd, sep, wit.node)
    if config.debug_enabled():
        size = max(len(b) for b in ttd.td.bags)
        before = potential(ttd.x, d, g.n, size)
        after = potential(out.x, d, g.n, size)
        config.check(after < before, f"cover potential did not drop ({before} -> {after})")
        config.check(out.covers(w), "refined cover lost a covered vertex")
        config.check(validate_torso(g, out).ok, "refined torso decomposition is invalid")
    return out


def improve_step(g: Graph, td: TreeDecomposition, ttd: TorsoTreeDecomposition, r: int | None = None):
    """One round of the improvement: a better decomposition or a witness.

    Every component C of G - X gets a copy of the nodes of ``td`` whose bags
    meet C, with bags restricted to N[C] plus the vertices of N(C) forgotten
    strictly below; the copy hangs off the node of the torso decomposition
    where the deepest-forgotten vertex of N(C) is forgotten.
    """
    if r is None:
        r = td.root if td.root is not None else 0
    k = td.width
    w = td.bags[r]
    if len(w) != k + 1:
        raise ValueError("root bag is not a largest bag")
    if not ttd.covers(w) or ttd.width > k - 1:
        raise ValueError("torso decomposition must cover the root bag with width below k")
    x = ttd.x

    parent, order, depth = rooted(td, r)
    forgotten_at: list[set[int]] = [set() for _ in td.bags]
    seen: set[int] = set()
    for t in order:
        for v in td.bags[t]:
            if v not in seen:
                seen.add(v)
                forgotten_at[t].add(v)
    below: list[frozenset] = [frozenset()] * len(td.bags)
    acc: list[set[int]] = [set() for _ in td.bags]
    for t in reversed(order):
        below[t] = frozenset(acc[t])
        p = parent[t]
        if p >= 0:
            acc[p] |= acc[t]
            acc[p] |= forgotten_at[t]

    xroot = ttd.td.root if ttd.td.root is not None else 0
    _, xorder, xdepth = rooted(ttd.td, xroot)
    xforget: dict[int, int] = {}
    for t in xorder:
        for v in ttd.td.bags[t]:
            xforget.setdefault(v, t)

    bags = list(ttd.td.bags)
    edges = list(ttd.td.edges)
    for comp in components(g, x):
        nc = neighborhood(g, comp)
        closed = comp | nc
        if nc:
            v_star = max(sorted(nc), key=lambda v: xdepth[xforget[v]])
            attach = xforget[v_star]
        else:
            attach = xroot
        nodes = [t for t in order if td.bags[t] & comp]
        local: dict[int, int] = {}
        for t in nodes:
            bag = td.bags[t]
            tn = below[t] & nc
            bag_c = (bag & closed) | tn
            if not (len(bag_c) < len(bag) or bag_c == bag):
                s = (ttd.td.bags[attach] - tn) | (bag - closed)
                return DLinkWitness(attach, frozenset(s))
            local[t] = len(bags)
            bags.append(frozenset(bag_c))
        for t in nodes:
            p = parent[t]
            if p >= 0 and p in local:
                edges.append((local[p], local[t]))
        edges.append((attach, local[nodes[0]]))
    out = shrink(g, TreeDecomposition.build(bags, edges))
    if config.debug_enabled():
        config.check(validate(g, out).ok, "improved decomposition is invalid")
        config.check(out.width <= k, "improved decomposition is wider")
        config.check(out.count_of_size(k + 1) < td.count_of_size(k + 1), "no largest bag was removed")
    return out


def improve(g: Graph, td: TreeDecomposition, ttd: TorsoTreeDecomposition, r: int | None = None) -> TreeDecomposition:
    """Alternate improve_step and refine_cover until a decomposition comes out."""
    if r is None:
        r = td.root if td.root is not None else 0
    ttd = TorsoTreeDecomposition(ttd.x, shrink(g, ttd.td))
    w = td.bags[r]
    d = depth_weights(td, r)
    n = g.n
    size = max(len(b) for b in ttd.td.bags)
    if config.debug_enabled():
        config.check(max(d.values(), default=0) <= max(n, len(td.bags)), "depth weight above node count")
    bound = potential(ttd.x, d, n, size)
    steps = 0
    while True:
        out = improve_step(g, td, ttd, r)
        if isinstance(out, TreeDecomposition):
            return out
        ttd = refine_cover(g, w, ttd, d, out)
        steps += 1
        if steps > bound:
            raise RuntimeError("improvement loop exceeded its potential bound")
