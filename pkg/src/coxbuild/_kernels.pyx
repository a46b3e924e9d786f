# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels over CSR chamber windows."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t idx_t


def bfs_distances(const idx_t[:] indptr, const idx_t[:] indices, sources):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int32)
    cdef int[:] dist = dist_arr
    cdef idx_t[:] queue = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t head = 0, tail = 0, k
    cdef idx_t u, v
    for src in sources:
        u = src
        if dist[u] < 0:
            dist[u] = 0
            queue[tail] = u
            tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue[tail] = v
                tail += 1
    return dist_arr


def label_components(const idx_t[:] indptr, const idx_t[:] indices, const cnp.uint8_t[:] mask):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    labels_arr = np.full(n, -1, dtype=np.int32)
    cdef int[:] labels = labels_arr
    cdef idx_t[:] stack = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t top, k, start
    cdef idx_t u, v
    cdef int nlab = 0
    for start in range(n):
        if not mask[start] or labels[start] >= 0:
            continue
        labels[start] = nlab
        top = 0
        stack[top] = start
        top += 1
        while top > 0:
            top -= 1
            u = stack[top]
            for k in range(indptr[u], indptr[u + 1]):
                v = indices[k]
                if mask[v] and labels[v] < 0:
                    labels[v] = nlab
                    stack[top] = v
                    top += 1
        nlab += 1
    return labels_arr


def voronoi_min(const idx_t[:] indptr, const idx_t[:] indices, const int[:] owner):
    """Multi-source BFS from every owned vertex; the closest pair of distinct
    owners is found on an edge whose endpoints were reached from different owners.

    Returns (distance, owner_a, owner_b) or (-1, -1, -1) if no two owners meet.
    """
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef int[:] dist = np.full(n, -1, dtype=np.int32)
    cdef int[:] who = np.full(n, -1, dtype=np.int32)
    cdef idx_t[:] queue = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t head = 0, tail = 0, k, i
    cdef idx_t u, v
    cdef long best = -1, cand
    cdef int ba = -1, bb = -1
    for i in range(n):
        if owner[i] >= 0:
            dist[i] = 0
            who[i] = owner[i]
            queue[tail] = i
            tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        if best >= 0 and 2 * dist[u] + 1 >= best:
            break
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                who[v] = who[u]
                queue[tail] = v
                tail += 1
            elif who[v] != who[u]:
                cand = dist[u] + dist[v] + 1
                if best < 0 or cand < best or (cand == best and (min(who[u], who[v]) < ba or
                        (min(who[u], who[v]) == ba and max(who[u], who[v]) < bb))):
                    best = cand
                    ba = min(who[u], who[v])
                    bb = max(who[u], who[v])
    return best, ba, bb


def tree_distance_block(const int[:] depth_a, const cnp.int8_t[:] first_a, const cnp.int16_t[:, :] lab_a,
                        const int[:] depth_b, const cnp.int8_t[:] first_b, const cnp.int16_t[:, :] lab_b):
    cdef Py_ssize_t na = depth_a.shape[0], nb = depth_b.shape[0]
    out_arr = np.empty((na, nb), dtype=np.int32)
    cdef int[:, :] out = out_arr
    cdef Py_ssize_t i, j, p, lim
    cdef int da, db
    for i in range(na):
        da = depth_a[i]
        for j in range(nb):
            db = depth_b[j]
            if da == 0 or db == 0 or first_a[i] != first_b[j]:
                out[i, j] = da + db
                continue
            lim = da if da < db else db
            p = 0
            while p < lim and lab_a[i, p] == lab_b[j, p]:
                p += 1
            if p == da or p == db:
                out[i, j] = da - db if da > db else db - da
            else:
                out[i, j] = da + db - 2 * p - 1
    return out_arr


def pair_sum_max(const int[:, :] d1, const int[:, :] d2, const idx_t[:] r1, const idx_t[:] r2,
                 const idx_t[:] c1, const idx_t[:] c2):
    """max over (a, b) of d1[r1[a], c1[b]] + d2[r2[a], c2[b]]; -1 when empty."""
    cdef Py_ssize_t na = r1.shape[0], nb = c1.shape[0], a, b
    cdef int best = -1, v
    cdef idx_t x1, x2
    for a in range(na):
        x1 = r1[a]
        x2 = r2[a]
        for b in range(nb):
            v = d1[x1, c1[b]] + d2[x2, c2[b]]
            if v > best:
                best = v
    return best
