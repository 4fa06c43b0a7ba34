"""PACE 2017 ``.gr`` and ``.td`` reading and writing.

Vertices read from ``.gr`` keep their 1-based ids.  Writing a graph maps its
vertices, in sorted order, to 1..n.
"""

from __future__ import annotations

import logging

from .graph import Graph
from .treedec import TreeDecomposition, validate

log = logging.getLogger(__name__)


class FormatError(ValueError):
    """Malformed or inconsistent PACE input."""


def _lines(text: str):
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("c"):
            yield num, line.split()


def _ints(num: int, fields) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError(f"line {num}: expected integers, got {' '.join(fields)!r}") from None


def parse_gr(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    lines = 0
    for num, fields in _lines(text):
        if fields[0] == "p":
            if n is not None:
                raise FormatError(f"line {num}: second header")
            if len(fields) != 4 or fields[1] != "tw":
                raise FormatError(f"line {num}: header must be 'p tw <n> <m>'")
            n, m = _ints(num, fields[2:])
            if n < 0 or m < 0:
                raise FormatError(f"line {num}: negative counts in header")
            continue
        if n is None:
            raise FormatError(f"line {num}: edge before header")
        if len(fields) != 2:
            raise FormatError(f"line {num}: edge lines hold two ids")
        u, v = _ints(num, fields)
        for x in (u, v):
            if not 1 <= x <= n:
                raise FormatError(f"line {num}: vertex {x} outside 1..{n}")
        if u == v:
            raise FormatError(f"line {num}: self-loop at {u}")
        lines += 1
        key = (min(u, v), max(u, v))
        if key in seen:
            log.warning("line %d: duplicate edge %d %d dropped", num, u, v)
            continue
        seen.add(key)
        edges.append(key)
    if n is None:
        raise FormatError("missing 'p tw' header")
    if lines != m:
        raise FormatError(f"header announces {m} edges, found {lines}")
    return Graph(range(1, n + 1), edges)


def emit_gr(g: Graph) -> str:
    ids = {v: i for i, v in enumerate(sorted(g), 1)}
    edges = sorted((ids[u], ids[v]) for u, v in g.edges())
    out = [f"p tw {g.n} {len(edges)}"]
    out += [f"{min(a, b)} {max(a, b)}" for a, b in edges]
    return "\n".join(out) + "\n"


def parse_td(text: str, g: Graph) -> TreeDecomposition:
    """Read a decomposition and validate it against g."""
    header = None
    bags: dict[int, frozenset] = {}
    edges: list[tuple[int, int]] = []
    for num, fields in _lines(text):
        if fields[0] == "s":
            if header is not None:
                raise FormatError(f"line {num}: second header")
            if len(fields) != 5 or fields[1] != "td":
                raise FormatError(f"line {num}: header must be 's td <bags> <width+1> <n>'")
            header = _ints(num, fields[2:])
            continue
        if header is None:
            raise FormatError(f"line {num}: content before header")
        if fields[0] == "b":
            vals = _ints(num, fields[1:])
            if not vals:
                raise FormatError(f"line {num}: bag line without index")
            i = vals[0]
            if i in bags:
                raise FormatError(f"line {num}: bag {i} given twice")
            bags[i] = frozenset(vals[1:])
            continue
        if len(fields) != 2:
            raise FormatError(f"line {num}: tree edge lines hold two bag indices")
        edges.append(tuple(_ints(num, fields)))
    if header is None:
        raise FormatError("missing 's td' header")
    count, size, n = header
    if sorted(bags) != list(range(1, count + 1)):
        raise FormatError(f"bag indices must be exactly 1..{count}")
    if n != g.n:
        raise FormatError(f"header says {n} vertices, graph has {g.n}")
    for a, b in edges:
        if a not in bags or b not in bags:
            raise FormatError(f"tree edge {a} {b} names a missing bag")
    real = max((len(b) for b in bags.values()), default=0)
    if real != size:
        raise FormatError(f"header says largest bag {size}, found {real}")
    td = TreeDecomposition.build([bags[i] for i in range(1, count + 1)], [(a - 1, b - 1) for a, b in edges], 0)
    report = validate(g, td)
    if not report.ok:
        raise FormatError(f"invalid decomposition: {report.first()}")
    return td


def emit_td(td: TreeDecomposition, n: int | None = None) -> str:
    """Write td; vertex ids are written unchanged, so they should be 1-based."""
    if n is None:
        n = len(td.vertices())
    size = max((len(b) for b in td.bags), default=0)
    out = [f"s td {len(td.bags)} {size} {n}"]
    for i, bag in enumerate(td.bags, 1):
        out.append(" ".join(["b", str(i)] + [str(v) for v in sorted(bag)]))
    out += [f"{a + 1} {b + 1}" for a, b in td.edges]
    return "\n".join(out) + "\n"
