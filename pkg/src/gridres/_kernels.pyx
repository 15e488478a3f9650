# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels.

Mirror of gridres._kernels_py with identical float64 operation order; see
that module for semantics. Compiled with -ffp-contract=off so results match
the pure backend bit for bit.
"""

from libc.math cimport sqrt

import numpy as np

BACKEND = "compiled"


def distance_stats(int n, int[::1] indptr, int[::1] indices):
    cdef double total = 0.0
    cdef long long pairs = 0
    cdef int maxd = 0
    cdef int s, i, u, w, du, d, head, tail, k
    dist_arr = np.empty(n, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] dist = dist_arr
    cdef int[::1] queue = queue_arr
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
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
        for i in range(s + 1, n):
            d = dist[i]
            if d >= 0:
                total += d
                pairs += 1
                if d > maxd:
                    maxd = d
    return total, pairs, maxd


def betweenness_counts(int n, int[::1] indptr, int[::1] indices):
    cdef int s, i, u, w, v, du, dw, head, tail, k, j
    cdef double su, coeff
    bc_arr = np.zeros(n, dtype=np.float64)
    dist_arr = np.empty(n, dtype=np.int32)
    sigma_arr = np.empty(n, dtype=np.float64)
    delta_arr = np.empty(n, dtype=np.float64)
    order_arr = np.empty(n, dtype=np.int32)
    cdef double[::1] bc = bc_arr
    cdef int[::1] dist = dist_arr
    cdef double[::1] sigma = sigma_arr
    cdef double[::1] delta = delta_arr
    cdef int[::1] order = order_arr
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
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                dw = dist[w]
                if dw < 0:
                    dist[w] = du + 1
                    order[tail] = w
                    tail += 1
                    sigma[w] = su
                elif dw == du + 1:
                    sigma[w] = sigma[w] + su
        for j in range(tail - 1, 0, -1):
            w = order[j]
            coeff = (1.0 + delta[w]) / sigma[w]
            dw = dist[w]
            for k in range(indptr[w], indptr[w + 1]):
                v = indices[k]
                if dist[v] == dw - 1:
                    delta[v] = delta[v] + sigma[v] * coeff
        for i in range(n):
            if i != s:
                bc[i] = bc[i] + delta[i]
    for i in range(n):
        bc[i] = bc[i] * 0.5
    return bc_arr


def jacobi_eigh(double[:, :] matrix):
    cdef int n = matrix.shape[0]
    cdef int sweep, i, j, p, q, k, col, row
    cdef double off, apq, theta, t, c, s, app, aqq, akp, akq, vkp, vkq
    a_arr = np.empty((n, n), dtype=np.float64)
    v_arr = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] v = v_arr
    for i in range(n):
        for j in range(n):
            a[i, j] = matrix[i, j]
        v[i, i] = 1.0
    if n == 1:
        return np.array([a_arr[0, 0]]), np.array([[1.0]])
    for sweep in range(100):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        if sqrt(2.0 * off) < 1e-10:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                app = a[p, p]
                aqq = a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[k, q] = s * akp + c * akq
                        a[p, k] = a[k, p]
                        a[q, k] = a[k, q]
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    diag = [a_arr[i, i] for i in range(n)]
    perm = sorted(range(n), key=lambda idx: (diag[idx], idx))
    w_arr = np.array([diag[i] for i in perm], dtype=np.float64)
    vecs_arr = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] vecs = vecs_arr
    for col in range(n):
        i = perm[col]
        for row in range(n):
            vecs[row, col] = v[row, i]
    return w_arr, vecs_arr
