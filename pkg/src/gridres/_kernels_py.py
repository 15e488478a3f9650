"""Pure-Python graph kernels.

Fallback for gridres._kernels. The two backends must stay in lockstep
operation for operation: same formulas, same accumulation order, plain
float64 arithmetic only. Any change here must be mirrored in _kernels.pyx.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "pure-python"


def _adjacency(n, indptr, indices):
    ip = indptr.tolist() if hasattr(indptr, "tolist") else list(indptr)
    ix = indices.tolist() if hasattr(indices, "tolist") else list(indices)
    return [ix[ip[i]:ip[i + 1]] for i in range(n)]


def distance_stats(n, indptr, indices):
    """BFS hop distances over all unordered vertex pairs.

    Returns (dist_total, reachable_pairs, max_dist). Unreached pairs are
    excluded from the total; callers detect disconnection by comparing
    reachable_pairs with n*(n-1)/2.
    """
    adj = _adjacency(n, indptr, indices)
    total = 0
    pairs = 0
    maxd = 0
    dist = [-1] * n
    queue = [0] * n
    for s in range(n):
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
        for t in range(s + 1, n):
            d = dist[t]
            if d >= 0:
                total += d
                pairs += 1
                if d > maxd:
                    maxd = d
    return float(total), pairs, maxd


def betweenness_counts(n, indptr, indices):
    """Shortest-path betweenness per vertex over unordered pairs.

    Accumulation (Brandes) runs once per source; the directed total is
    halved at the end because each unordered pair is seen from both sides.
    """
    adj = _adjacency(n, indptr, indices)
    bc = [0.0] * n
    dist = [-1] * n
    sigma = [0.0] * n
    delta = [0.0] * n
    order = [0] * n
    for s in range(n):
        for i in range(n):
            dist[i] = -1
            sigma[i] = 0.0
            delta[i] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = order[head]
            head += 1
            du = dist[u]
            su = sigma[u]
            for w in adj[u]:
                dw = dist[w]
                if dw < 0:
                    dist[w] = du + 1
                    order[tail] = w
                    tail += 1
                    sigma[w] = su
                elif dw == du + 1:
                    sigma[w] = sigma[w] + su
        for k in range(tail - 1, 0, -1):
            w = order[k]
            coeff = (1.0 + delta[w]) / sigma[w]
            dw = dist[w]
            for v in adj[w]:
                if dist[v] == dw - 1:
                    delta[v] = delta[v] + sigma[v] * coeff
        for i in range(n):
            if i != s:
                bc[i] = bc[i] + delta[i]
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = bc[i] * 0.5
    return out


def jacobi_eigh(matrix):
    """Cyclic Jacobi eigensolver for a dense symmetric float64 matrix.

    Sweeps upper-triangle rotations until the off-diagonal Frobenius norm
    drops below 1e-10. Returns (eigenvalues ascending, eigenvectors as
    columns in the same order).
    """
    n = len(matrix)
    a = [[float(matrix[i][j]) for j in range(n)] for i in range(n)]
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    if n == 1:
        return np.array([a[0][0]]), np.array([[1.0]])
    for _ in range(100):
        off = 0.0
        for i in range(n):
            ai = a[i]
            for j in range(i + 1, n):
                off += ai[j] * ai[j]
        if math.sqrt(2.0 * off) < 1e-10:
            break
        for p in range(n - 1):
            ap = a[p]
            for q in range(p + 1, n):
                apq = ap[q]
                if apq == 0.0:
                    continue
                aq = a[q]
                theta = (aq[q] - ap[p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                app = ap[p]
                aqq = aq[q]
                ap[p] = app - t * apq
                aq[q] = aqq + t * apq
                ap[q] = 0.0
                aq[p] = 0.0
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k][p]
                        akq = a[k][q]
                        a[k][p] = c * akp - s * akq
                        a[k][q] = s * akp + c * akq
                        ap[k] = a[k][p]
                        aq[k] = a[k][q]
                for k in range(n):
                    vkp = v[k][p]
                    vkq = v[k][q]
                    v[k][p] = c * vkp - s * vkq
                    v[k][q] = s * vkp + c * vkq
    diag = [a[i][i] for i in range(n)]
    perm = sorted(range(n), key=lambda i: (diag[i], i))
    w = np.array([diag[i] for i in perm], dtype=np.float64)
    vecs = np.empty((n, n), dtype=np.float64)
    for col, i in enumerate(perm):
        for row in range(n):
            vecs[row, col] = v[row][i]
    return w, vecs
