"""Pure-Python vertex-capacitated max-flow kernel.

Every vertex ``v`` is split into ``in(v) = 2v`` and ``out(v) = 2v + 1``.
The arc in(v) -> out(v) has capacity 1, or is unbounded when ``inf[v]`` is
set.  Graph edges become unbounded arcs out(u) -> in(v).  A super source
feeds ``in(x)`` for every source and ``out(y)`` drains into a super sink for
every sink.  Augmentation is one unit per BFS, which is fine because flow
values stay tiny (at most ``limit + 1``).

The compiled kernel in ``_flowcore.pyx`` mirrors this file line by line and
must return identical results.
"""

from __future__ import annotations

from collections import deque

WANT_PATHS = 1
WANT_CUT_X = 2
WANT_CUT_Y = 4


def max_flow(indptr, indices, rev, n, src, snk, inf, removed, limit, want):
    """Return ``(value, paths, cut_x, cut_y)`` over compact vertex indices.

    ``src``, ``snk``, ``inf`` and ``removed`` are byte flags of length ``n``.
    Once the value exceeds ``limit`` the search stops and only the value
    (``limit + 1``) is meaningful.
    """
    size = 2 * n
    fv = [0] * n
    fs = [0] * n
    ft = [0] * n
    fe = [0] * len(indices)
    value = 0
    seen = bytearray(size)
    while value <= limit:
        seen = bytearray(size)
        pnode = [-1] * size
        parc = [-1] * size
        queue = deque()
        for x in range(n):
            if src[x] and not removed[x]:
                seen[2 * x] = 1
                pnode[2 * x] = size
                queue.append(2 * x)
        end = -1
        while queue:
            z = queue.popleft()
            v = z >> 1
            if z & 1 == 0:
                o = z + 1
                if not seen[o] and (inf[v] or fv[v] == 0):
                    seen[o] = 1
                    pnode[o] = z
                    queue.append(o)
                    if snk[v]:
                        end = o
                        break
                for e in range(indptr[v], indptr[v + 1]):
                    u = indices[e]
                    o = 2 * u + 1
                    if not seen[o] and not removed[u] and fe[rev[e]] > 0:
                        seen[o] = 1
                        pnode[o] = z
                        parc[o] = rev[e]
                        queue.append(o)
                        if snk[u]:
                            end = o
                            break
                if end >= 0:
                    break
            else:
                i = z - 1
                if not seen[i] and fv[v] > 0:
                    seen[i] = 1
                    pnode[i] = z
                    queue.append(i)
                for e in range(indptr[v], indptr[v + 1]):
                    u = indices[e]
                    i = 2 * u
                    if not seen[i] and not removed[u]:
                        seen[i] = 1
                        pnode[i] = z
                        parc[i] = e
                        queue.append(i)
        if end < 0:
            break
        ft[end >> 1] += 1
        z = end
        while True:
            p = pnode[z]
            if p == size:
                fs[z >> 1] += 1
                break
            if p >> 1 == z >> 1:
                if z & 1:
                    fv[z >> 1] += 1
                else:
                    fv[z >> 1] -= 1
            elif z & 1 == 0:
                fe[parc[z]] += 1
            else:
                fe[parc[z]] -= 1
            z = p
        value += 1

    if value > limit:
        return value, [], [], []

    paths = []
    if want & WANT_PATHS:
        used = list(fe)
        left = list(ft)
        for x in range(n):
            for _ in range(fs[x]):
                path = [x]
                v = x
                while True:
                    if left[v] > 0:
                        left[v] -= 1
                        break
                    for e in range(indptr[v], indptr[v + 1]):
                        if used[e] > 0:
                            used[e] -= 1
                            v = indices[e]
                            break
                    else:
                        break
                    path.append(v)
                paths.append(path)

    cut_x = []
    if want & WANT_CUT_X:
        # ``seen`` holds the residual reachable set of the last search
        for v in range(n):
            if seen[2 * v] and not seen[2 * v + 1] and not removed[v]:
                cut_x.append(v)

    cut_y = []
    if want & WANT_CUT_Y:
        back = bytearray(size)
        queue = deque()
        for y in range(n):
            if snk[y] and not removed[y]:
                back[2 * y + 1] = 1
                queue.append(2 * y + 1)
        while queue:
            z = queue.popleft()
            v = z >> 1
            if z & 1:
                i = z - 1
                if not back[i] and (inf[v] or fv[v] == 0):
                    back[i] = 1
                    queue.append(i)
                for e in range(indptr[v], indptr[v + 1]):
                    u = indices[e]
                    i = 2 * u
                    if not back[i] and not removed[u] and fe[e] > 0:
                        back[i] = 1
                        queue.append(i)
            else:
                o = z + 1
                if not back[o] and fv[v] > 0:
                    back[o] = 1
                    queue.append(o)
                for e in range(indptr[v], indptr[v + 1]):
                    u = indices[e]
                    o = 2 * u + 1
                    if not back[o] and not removed[u]:
                        back[o] = 1
                        queue.append(o)
        for v in range(n):
            if back[2 * v + 1] and not back[2 * v] and not removed[v]:
                cut_y.append(v)

    return value, paths, cut_x, cut_y
