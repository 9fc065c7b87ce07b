"""Pure-Python kernels. Same signatures and results as the compiled ``_kernels``."""

from collections import deque

import numpy as np

_INF = 1 << 62


def max_matching(row_of, indptr, indices, n_right):
    """Maximum bipartite matching size by Hopcroft-Karp.

    Left vertex ``u`` has neighbours ``indices[indptr[r]:indptr[r+1]]`` with
    ``r = row_of[u]``, so copies of one person share a single adjacency row.
    Roots and neighbours are visited in ascending order.
    """
    row_of = np.asarray(row_of).tolist()
    ptr = np.asarray(indptr).tolist()
    adj = np.asarray(indices).tolist()
    n_left = len(row_of)
    start = [ptr[r] for r in row_of]
    end = [ptr[r + 1] for r in row_of]

    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0] * n_left
    it = [0] * n_left
    size = 0

    while True:
        queue = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        limit = _INF
        while queue:
            u = queue.popleft()
            du = dist[u]
            if du >= limit:
                continue
            for k in range(start[u], end[u]):
                w = match_r[adj[k]]
                if w == -1:
                    if du + 1 < limit:
                        limit = du + 1
                elif dist[w] == _INF:
                    dist[w] = du + 1
                    queue.append(w)
        if limit == _INF:
            return size

        for u in range(n_left):
            it[u] = start[u]
        for root in range(n_left):
            if match_l[root] != -1:
                continue
            stack = [root]
            while stack:
                u = stack[-1]
                du = dist[u]
                found = descended = False
                while it[u] < end[u]:
                    v = adj[it[u]]
                    w = match_r[v]
                    if w == -1:
                        if du + 1 == limit:
                            found = True
                            break
                    elif du + 1 < limit and dist[w] == du + 1:
                        stack.append(w)
                        descended = True
                        break
                    it[u] += 1
                if found:
                    for x in stack:
                        v = adj[it[x]]
                        match_l[x] = v
                        match_r[v] = x
                    size += 1
                    break
                if not descended:
                    # dead end for the rest of this phase
                    dist[u] = _INF
                    stack.pop()
                    if stack:
                        it[stack[-1]] += 1


def greedy_curve(indptr, indices, n_items, ell_max):
    """Greedy maximal-matching size after each of ``ell_max`` person sweeps.

    Each sweep visits active persons in order and matches each to the first
    unmatched item of its (pre-sorted) list. Persons whose lists run out are
    dropped, so total work is O(|D| + ell_max).
    """
    ptr = np.asarray(indptr).tolist()
    adj = np.asarray(indices).tolist()
    n = len(ptr) - 1
    cursor = ptr[:-1]
    matched = bytearray(n_items)
    active = [i for i in range(n) if ptr[i] < ptr[i + 1]]
    counts = np.empty(ell_max, dtype=np.int64)
    size = 0
    for rnd in range(ell_max):
        if not active:
            counts[rnd:] = size
            break
        survivors = []
        for i in active:
            c = cursor[i]
            e = ptr[i + 1]
            while c < e and matched[adj[c]]:
                c += 1
            if c < e:
                matched[adj[c]] = 1
                size += 1
                c += 1
                if c < e:
                    survivors.append(i)
            cursor[i] = c
        active = survivors
        counts[rnd] = size
    return counts
