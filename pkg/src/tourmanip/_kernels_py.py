"""Numpy implementations of the compiled kernels in ``_kernels.pyx``."""

import numpy as np

INF = 1 << 40


def cup_dp(beats, member, leaves):
    """Bottom-up minimum-manipulation table for a fixed cup.

    ``cost[l, p]`` is the fewest throws letting the team at leaf position
    ``p`` win its level-``l`` sub-cup (``INF`` if impossible); ``choice[l, p]``
    is the leaf position of the opponent it beats at level ``l``.  Ties on
    cost go to the opponent with the lowest team id.
    """
    beats = np.asarray(beats, dtype=bool)
    member = np.asarray(member, dtype=bool)
    leaves = np.asarray(leaves, dtype=np.int64)
    m = leaves.shape[0]
    h = m.bit_length() - 1
    cost = np.full((h + 1, m), INF, dtype=np.int64)
    choice = np.full((h + 1, m), -1, dtype=np.int64)
    cost[0] = 0
    comparisons = 0
    for lvl in range(1, h + 1):
        half = 1 << (lvl - 1)
        nb = m // (2 * half)
        teams = leaves.reshape(nb, 2, half)
        prev = cost[lvl - 1].reshape(nb, 2, half)
        starts = np.arange(nb, dtype=np.int64)[:, None] * 2 * half
        for side in (0, 1):
            a, b = teams[:, side, :], teams[:, 1 - side, :]
            ca, cb = prev[:, side, :], prev[:, 1 - side, :]
            valid = (ca < INF)[:, :, None] & (cb < INF)[:, None, :]
            comparisons += int(valid.sum())
            win = beats[a[:, :, None], b[:, None, :]]
            ok = valid & (win | member[b][:, None, :])
            val = np.where(ok, cb[:, None, :] + (~win), INF)
            key = val * m + b[:, None, :]
            idx = key.argmin(axis=2)
            best = np.take_along_axis(val, idx[:, :, None], axis=2)[:, :, 0]
            found = best < INF
            new = np.where(found, ca + best, INF)
            pos = np.where(found, starts + (1 - side) * half + idx, -1)
            cost[lvl].reshape(nb, 2, half)[:, side, :] = new
            choice[lvl].reshape(nb, 2, half)[:, side, :] = pos
    return cost, choice, comparisons


def max_points(points, member, n):
    """Best total per team when every coalition opponent concedes the whole game."""
    points = np.asarray(points, dtype=np.int64)
    member = np.asarray(member, dtype=bool)
    conceded = np.where(member[None, :], n, points).sum(axis=1)
    return conceded - np.where(member, n, 0)
