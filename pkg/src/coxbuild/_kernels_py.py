"""Pure-Python fallback for the compiled kernels (same signatures and results)."""
from __future__ import annotations

from collections import deque

import numpy as np


def bfs_distances(indptr, indices, sources):
    ptr, idx = indptr.tolist(), indices.tolist()
    n = len(ptr) - 1
    dist = [-1] * n
    q = deque()
    for s in sources:
        s = int(s)
        if dist[s] < 0:
            dist[s] = 0
            q.append(s)
    while q:
        u = q.popleft()
        du = dist[u] + 1
        for v in idx[ptr[u]:ptr[u + 1]]:
            if dist[v] < 0:
                dist[v] = du
                q.append(v)
    return np.asarray(dist, dtype=np.int32)


def label_components(indptr, indices, mask):
    ptr, idx, m = indptr.tolist(), indices.tolist(), mask.tolist()
    n = len(ptr) - 1
    labels = [-1] * n
    nlab = 0
    for start in range(n):
        if not m[start] or labels[start] >= 0:
            continue
        labels[start] = nlab
        stack = [start]
        while stack:
            u = stack.pop()
            for v in idx[ptr[u]:ptr[u + 1]]:
                if m[v] and labels[v] < 0:
                    labels[v] = nlab
                    stack.append(v)
        nlab += 1
    return np.asarray(labels, dtype=np.int32)


def voronoi_min(indptr, indices, owner):
    ptr, idx = indptr.tolist(), indices.tolist()
    own = owner.tolist()
    n = len(ptr) - 1
    dist = [-1] * n
    who = [-1] * n
    q = deque()
    for i, o in enumerate(own):
        if o >= 0:
            dist[i] = 0
            who[i] = o
            q.append(i)
    best, ba, bb = -1, -1, -1
    while q:
        u = q.popleft()
        if best >= 0 and 2 * dist[u] + 1 >= best:
            break
        for v in idx[ptr[u]:ptr[u + 1]]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                who[v] = who[u]
                q.append(v)
            elif who[v] != who[u]:
                cand = dist[u] + dist[v] + 1
                pair = (min(who[u], who[v]), max(who[u], who[v]))
                if best < 0 or (cand, pair) < (best, (ba, bb)):
                    best, (ba, bb) = cand, pair
    return best, ba, bb


def tree_distance_block(depth_a, first_a, lab_a, depth_b, first_b, lab_b):
    da = depth_a.astype(np.int32)[:, None]
    db = depth_b.astype(np.int32)[None, :]
    width = min(lab_a.shape[1], lab_b.shape[1])
    eq = np.ones((len(da), len(db.T)), dtype=bool)
    p = np.zeros((len(da), len(db.T)), dtype=np.int32)
    lim = np.minimum(da, db)
    for k in range(width):
        eq &= lab_a[:, k][:, None] == lab_b[:, k][None, :]
        eq &= k < lim
        p += eq
    out = np.where((p == da) | (p == db), np.abs(da - db), da + db - 2 * p - 1)
    split = (da == 0) | (db == 0) | (first_a[:, None] != first_b[None, :])
    return np.where(split, da + db, out).astype(np.int32)


def pair_sum_max(d1, d2, r1, r2, c1, c2, chunk=1024):
    best = -1
    for a in range(0, len(r1), chunk):
        block = d1[np.ix_(r1[a:a + chunk], c1)] + d2[np.ix_(r2[a:a + chunk], c2)]
        if block.size:
            best = max(best, int(block.max()))
    return best
