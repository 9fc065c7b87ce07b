# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``_pure`` exactly; both run the GIL-free inner loops."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

cdef int64_t INF = (<int64_t>1) << 62


def max_matching(const int64_t[::1] row_of, const int64_t[::1] indptr,
                 const int64_t[::1] indices, Py_ssize_t n_right):
    cdef Py_ssize_t n_left = row_of.shape[0]
    cdef int64_t[::1] start = np.empty(n_left, dtype=np.int64)
    cdef int64_t[::1] end = np.empty(n_left, dtype=np.int64)
    cdef int64_t[::1] match_l = np.full(n_left, -1, dtype=np.int64)
    cdef int64_t[::1] match_r = np.full(max(n_right, 1), -1, dtype=np.int64)
    cdef int64_t[::1] dist = np.empty(max(n_left, 1), dtype=np.int64)
    cdef int64_t[::1] it = np.empty(max(n_left, 1), dtype=np.int64)
    cdef int64_t[::1] queue = np.empty(max(n_left, 1), dtype=np.int64)
    cdef int64_t[::1] stack = np.empty(max(n_left, 1), dtype=np.int64)
    cdef Py_ssize_t u, x, k, root, head, tail, top
    cdef int64_t du, v, w, limit, size = 0
    cdef bint found, descended

    for u in range(n_left):
        start[u] = indptr[row_of[u]]
        end[u] = indptr[row_of[u] + 1]

    with nogil:
        while True:
            head = 0
            tail = 0
            for u in range(n_left):
                if match_l[u] == -1:
                    dist[u] = 0
                    queue[tail] = u
                    tail += 1
                else:
                    dist[u] = INF
            limit = INF
            while head < tail:
                u = queue[head]
                head += 1
                du = dist[u]
                if du >= limit:
                    continue
                for k in range(start[u], end[u]):
                    w = match_r[indices[k]]
                    if w == -1:
                        if du + 1 < limit:
                            limit = du + 1
                    elif dist[w] == INF:
                        dist[w] = du + 1
                        queue[tail] = w
                        tail += 1
            if limit == INF:
                break

            for u in range(n_left):
                it[u] = start[u]
            for root in range(n_left):
                if match_l[root] != -1:
                    continue
                top = 0
                stack[0] = root
                while top >= 0:
                    u = stack[top]
                    du = dist[u]
                    found = False
                    descended = False
                    while it[u] < end[u]:
                        v = indices[it[u]]
                        w = match_r[v]
                        if w == -1:
                            if du + 1 == limit:
                                found = True
                                break
                        elif du + 1 < limit and dist[w] == du + 1:
                            top += 1
                            stack[top] = w
                            descended = True
                            break
                        it[u] += 1
                    if found:
                        for k in range(top + 1):
                            x = stack[k]
                            v = indices[it[x]]
                            match_l[x] = v
                            match_r[v] = x
                        size += 1
                        break
                    if not descended:
                        dist[u] = INF
                        top -= 1
                        if top >= 0:
                            it[stack[top]] += 1
    return size


def greedy_curve(const int64_t[::1] indptr, const int64_t[::1] indices,
                 Py_ssize_t n_items, Py_ssize_t ell_max):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef int64_t[::1] cursor = np.empty(max(n, 1), dtype=np.int64)
    cdef int64_t[::1] active = np.empty(max(n, 1), dtype=np.int64)
    cdef unsigned char[::1] matched = np.zeros(max(n_items, 1), dtype=np.uint8)
    counts_arr = np.empty(ell_max, dtype=np.int64)
    cdef int64_t[::1] counts = counts_arr
    cdef Py_ssize_t i, j, rnd, n_active = 0, kept
    cdef int64_t c, e, size = 0

    for i in range(n):
        cursor[i] = indptr[i]
        if indptr[i] < indptr[i + 1]:
            active[n_active] = i
            n_active += 1

    with nogil:
        for rnd in range(ell_max):
            if n_active == 0:
                for j in range(rnd, ell_max):
                    counts[j] = size
                break
            kept = 0
            for j in range(n_active):
                i = active[j]
                c = cursor[i]
                e = indptr[i + 1]
                while c < e and matched[indices[c]]:
                    c += 1
                if c < e:
                    matched[indices[c]] = 1
                    size += 1
                    c += 1
                    if c < e:
                        active[kept] = i
                        kept += 1
                cursor[i] = c
            n_active = kept
            counts[rnd] = size
    return counts_arr
