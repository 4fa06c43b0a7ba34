"""Important separators: the unique smallest one, enumeration, domination, hitting sets.

Separators are vertex sets that may contain vertices of a or b; the
importance test is applied to exactly that notion.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

from .graph import Graph, is_separator, min_cut, reach


def unique_min_important(g: Graph, a: Iterable[int], b: Iterable[int]) -> frozenset:
    """The minimum (a, b)-cut pushed as far toward b as possible."""
    return min_cut(g, frozenset(a), frozenset(b), side="y")[1]


def is_minimal_separator(g: Graph, a, b, s) -> bool:
    a, b, s = frozenset(a), frozenset(b), frozenset(s)
    if not is_separator(g, a, b, s):
        return False
    return all(not is_separator(g, a, b, s - {v}) for v in s)


def is_important(g: Graph, a, b, s) -> bool:
    """Direct importance test.

    A separator S' with R(a, S') strictly above R = R(a, s) must avoid R and
    cut R from b, so s is important exactly when the furthest minimum cut
    between a + R (with R undeletable) and b is s itself.
    """
    a, b, s = frozenset(a), frozenset(b), frozenset(s)
    if not is_minimal_separator(g, a, b, s):
        return False
    r = reach(g, a, s)
    value, best = min_cut(g, a | r, b, side="y", undeletable=r, limit=len(s))
    if best is None or value < len(s):
        return False
    return reach(g, a, best) == r


def _candidates(g: Graph, a, b, deleted: frozenset, forced: frozenset, k: int) -> Iterator[frozenset]:
    value, s = min_cut(g, a | forced, b, side="y", removed=deleted, undeletable=forced, limit=k)
    if s is None:
        return
    if value == 0:
        yield deleted
        return
    v = min(s)
    yield from _candidates(g, a, b, deleted | {v}, forced, k - 1)
    yield from _candidates(g, a, b, deleted, forced | {v}, k)


def enumerate_important(g: Graph, a: Iterable[int], b: Iterable[int], k: int) -> Iterator[frozenset]:
    """Yield every important (a, b)-separator of size at most k, once each.

    Branches on the smallest vertex v of the current furthest minimum cut:
    either v goes into the separator (deleted, budget k - 1) or v is pinned
    to the a side as an undeletable source.  The two branches produce
    disjoint candidate sets; candidates failing the importance test are
    dropped.
    """
    if k < 0:
        return iter(())
    return iter(_important(g, frozenset(a), frozenset(b), k))


@lru_cache(maxsize=8192)
def _important(g: Graph, a: frozenset, b: frozenset, k: int) -> tuple[frozenset, ...]:
    # the searches ask for the same (g, a, b, k) many times over
    return tuple(c for c in _candidates(g, a, b, frozenset(), frozenset(), k) if is_important(g, a, b, c))


def smallest_dominating_important(g: Graph, a, b, s) -> frozenset:
    """Smallest important separator S' with R(a, s) contained in R(a, S')."""
    a, b, s = frozenset(a), frozenset(b), frozenset(s)
    if not is_separator(g, a, b, s):
        raise ValueError(f"{sorted(s)} does not separate a from b")
    r = reach(g, a, s)
    return min_cut(g, a | r, b, side="y", undeletable=r)[1]


def hitting_set(g: Graph, a: Iterable[int], b: Iterable[int], k: int) -> frozenset:
    """A set of at most max(0, k - flow + 1) vertices meeting every nonempty
    important (a, b)-separator of size at most k."""
    return _hitting_set(g, frozenset(a), frozenset(b), k)


@lru_cache(maxsize=8192)
def _hitting_set(g: Graph, a: frozenset, b: frozenset, k: int) -> frozenset:
    out: set[int] = set()
    while reach(g, a) & b:
        _, s = min_cut(g, a, b, side="y", limit=k)
        if s is None:
            break
        hit = s & b
        if hit:
            out.add(min(hit))
            break
        v = min(s)
        out.add(v)
        a = s | g.neighbors(v)
    return frozenset(out)
