# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled vertex-capacitated max-flow kernel.

Same node encoding and search order as ``_flow_py.max_flow``; the two are
checked against each other in the test suite.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy


def max_flow(indptr, indices, rev, int n, src, snk, inf, removed, int limit, int want):
    cdef int m = len(indices)
    cdef int size = 2 * n
    cdef const int[:] ip = indptr
    cdef const int[:] ix = indices
    cdef const int[:] rv = rev
    cdef int *fe = <int *> malloc((m + 1) * sizeof(int))
    cdef int *used = <int *> malloc((m + 1) * sizeof(int))
    cdef int *fv = <int *> malloc((n + 1) * sizeof(int))
    cdef int *fs = <int *> malloc((n + 1) * sizeof(int))
    cdef int *ft = <int *> malloc((n + 1) * sizeof(int))
    cdef int *left = <int *> malloc((n + 1) * sizeof(int))
    cdef char *seen = <char *> malloc(size + 2)
    cdef int *pnode = <int *> malloc((size + 2) * sizeof(int))
    cdef int *parc = <int *> malloc((size + 2) * sizeof(int))
    cdef int *queue = <int *> malloc((size + 2) * sizeof(int))
    cdef int i, e, u, v, x, z, o, p, head, tail, end, value, k
    cdef const unsigned char[:] sr = src
    cdef const unsigned char[:] sk = snk
    cdef const unsigned char[:] nf = inf
    cdef const unsigned char[:] rm = removed
    try:
        for i in range(m):
            fe[i] = 0
        for i in range(n):
            fv[i] = 0
            fs[i] = 0
            ft[i] = 0
        value = 0
        memset(seen, 0, size + 2)
        while value <= limit:
            memset(seen, 0, size + 2)
            head = 0
            tail = 0
            for x in range(n):
                if sr[x] and not rm[x]:
                    seen[2 * x] = 1
                    pnode[2 * x] = size
                    parc[2 * x] = -1
                    queue[tail] = 2 * x
                    tail += 1
            end = -1
            while head < tail:
                z = queue[head]
                head += 1
                v = z >> 1
                if z & 1 == 0:
                    o = z + 1
                    if not seen[o] and (nf[v] or fv[v] == 0):
                        seen[o] = 1
                        pnode[o] = z
                        parc[o] = -1
                        queue[tail] = o
                        tail += 1
                        if sk[v]:
                            end = o
                            break
                    for e in range(ip[v], ip[v + 1]):
                        u = ix[e]
                        o = 2 * u + 1
                        if not seen[o] and not rm[u] and fe[rv[e]] > 0:
                            seen[o] = 1
                            pnode[o] = z
                            parc[o] = rv[e]
                            queue[tail] = o
                            tail += 1
                            if sk[u]:
                                end = o
                                break
                    if end >= 0:
                        break
                else:
                    i = z - 1
                    if not seen[i] and fv[v] > 0:
                        seen[i] = 1
                        pnode[i] = z
                        parc[i] = -1
                        queue[tail] = i
                        tail += 1
                    for e in range(ip[v], ip[v + 1]):
                        u = ix[e]
                        i = 2 * u
                        if not seen[i] and not rm[u]:
                            seen[i] = 1
                            pnode[i] = z
                            parc[i] = e
                            queue[tail] = i
                            tail += 1
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
        if want & 1:
            memcpy(used, fe, m * sizeof(int))
            memcpy(left, ft, n * sizeof(int))
            for x in range(n):
                for k in range(fs[x]):
                    path = [x]
                    v = x
                    while True:
                        if left[v] > 0:
                            left[v] -= 1
                            break
                        o = -1
                        for e in range(ip[v], ip[v + 1]):
                            if used[e] > 0:
                                used[e] -= 1
                                o = ix[e]
                                break
                        if o < 0:
                            break
                        v = o
                        path.append(v)
                    paths.append(path)

        cut_x = []
        if want & 2:
            for v in range(n):
                if seen[2 * v] and not seen[2 * v + 1] and not rm[v]:
                    cut_x.append(v)

        cut_y = []
        if want & 4:
            memset(seen, 0, size + 2)
            head = 0
            tail = 0
            for x in range(n):
                if sk[x] and not rm[x]:
                    seen[2 * x + 1] = 1
                    queue[tail] = 2 * x + 1
                    tail += 1
            while head < tail:
                z = queue[head]
                head += 1
                v = z >> 1
                if z & 1:
                    i = z - 1
                    if not seen[i] and (nf[v] or fv[v] == 0):
                        seen[i] = 1
                        queue[tail] = i
                        tail += 1
                    for e in range(ip[v], ip[v + 1]):
                        u = ix[e]
                        i = 2 * u
                        if not seen[i] and not rm[u] and fe[e] > 0:
                            seen[i] = 1
                            queue[tail] = i
                            tail += 1
                else:
                    o = z + 1
                    if not seen[o] and fv[v] > 0:
                        seen[o] = 1
                        queue[tail] = o
                        tail += 1
                    for e in range(ip[v], ip[v + 1]):
                        u = ix[e]
                        o = 2 * u + 1
                        if not seen[o] and not rm[u]:
                            seen[o] = 1
                            queue[tail] = o
                            tail += 1
            for v in range(n):
                if seen[2 * v + 1] and not seen[2 * v] and not rm[v]:
                    cut_y.append(v)

        return value, paths, cut_x, cut_y
    finally:
        free(fe); free(used)
        free(fv); free(fs); free(ft); free(left)
        free(seen); free(pnode); free(parc); free(queue)
