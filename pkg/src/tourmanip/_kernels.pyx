"""Compiled kernels; ``_kernels_py`` holds the numpy twins with identical contracts."""

import numpy as np

from libc.stdint cimport int64_t, uint8_t

cdef int64_t INF = 1 << 40


def cup_dp(const uint8_t[:, ::1] beats, const uint8_t[::1] member, const int64_t[::1] leaves):
    cdef Py_ssize_t m = leaves.shape[0]
    cdef int h = (<object>m).bit_length() - 1
    cost_arr = np.full((h + 1, m), INF, dtype=np.int64)
    choice_arr = np.full((h + 1, m), -1, dtype=np.int64)
    cost_arr[0, :] = 0
    cdef int64_t[:, ::1] cost = cost_arr
    cdef int64_t[:, ::1] choice = choice_arr
    cdef Py_ssize_t lvl, half, start, side, a0, b0, p, q
    cdef int64_t i, j, best, bestj, bestq, cq, val
    cdef long long comparisons = 0
    for lvl in range(1, h + 1):
        half = 1 << (lvl - 1)
        for start in range(0, m, 2 * half):
            for side in range(2):
                a0 = start + side * half
                b0 = start + (1 - side) * half
                for p in range(a0, a0 + half):
                    if cost[lvl - 1, p] >= INF:
                        continue
                    i = leaves[p]
                    best = INF
                    bestj = m
                    bestq = -1
                    for q in range(b0, b0 + half):
                        cq = cost[lvl - 1, q]
                        if cq >= INF:
                            continue
                        comparisons += 1
                        j = leaves[q]
                        if beats[i, j]:
                            val = cq
                        elif member[j]:
                            val = cq + 1
                        else:
                            continue
                        if val < best or (val == best and j < bestj):
                            best = val
                            bestj = j
                            bestq = q
                    if bestq >= 0:
                        cost[lvl, p] = cost[lvl - 1, p] + best
                        choice[lvl, p] = bestq
    return cost_arr, choice_arr, comparisons


def max_points(const int64_t[:, ::1] points, const uint8_t[::1] member, int64_t n):
    cdef Py_ssize_t m = points.shape[0]
    out_arr = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef int64_t s
    for i in range(m):
        s = 0
        for k in range(m):
            if k == i:
                continue
            if member[k]:
                s += n
            else:
                s += points[i, k]
        out[i] = s
    return out_arr
