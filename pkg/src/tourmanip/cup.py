"""Fixed single-elimination cups: possible winners and minimum throw counts.

The bracket is a perfect binary tree whose leaves are a seeding permutation.
Node ``(level, index)`` is the sub-cup over leaf positions
``[index * 2**level, (index + 1) * 2**level)``; level 0 holds the leaves.

One bottom-up pass computes, for every team and level, the fewest throws
that let the team win its sub-cup.  A team wins a sub-cup iff it wins its own
half and then beats some possible winner of the other half, either fairly or
because that opponent is a coalition member who throws.  Possible winners
are exactly the teams with a finite count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .core import Answer, ManipulationPlan, Move, Tournament, apply_plan, as_coalition, member_mask
from .errors import MalformedTree, NotAchievable


@dataclass(frozen=True)
class CupTree:
    leaves: tuple

    def __post_init__(self):
        leaves = tuple(int(x) for x in self.leaves)
        m = len(leaves)
        if m == 0 or m & (m - 1):
            raise MalformedTree(f"a cup needs a power-of-two field, got {m} teams")
        if sorted(leaves) != list(range(m)):
            raise MalformedTree("leaves must be a permutation of the team ids")
        object.__setattr__(self, "leaves", leaves)

    @classmethod
    def identity(cls, m: int) -> "CupTree":
        return cls(tuple(range(m)))

    @property
    def m(self) -> int:
        return len(self.leaves)

    @property
    def height(self) -> int:
        return self.m.bit_length() - 1

    def position(self, team: int) -> int:
        return self.leaves.index(team)

    def node_teams(self, level: int, index: int) -> tuple:
        if not 0 <= level <= self.height or not 0 <= index < self.m >> level:
            raise MalformedTree(f"no node ({level}, {index}) in a cup of height {self.height}")
        size = 1 << level
        return self.leaves[index * size:(index + 1) * size]

    def check(self, t: Tournament) -> None:
        if self.m != t.m:
            raise MalformedTree(f"cup has {self.m} leaves but the tournament has {t.m} teams")


class WinnerTable:
    """Per-(team, level) minimum throw counts with argmin opponents for witnesses."""

    def __init__(self, tree: CupTree, t: Tournament, co: frozenset, impl=None):
        tree.check(t)
        self.tree = tree
        self.t = t
        self.coalition = co
        cost, choice, comparisons = kernels.cup_dp(
            t.beats_matrix(), member_mask(co, t.m), np.asarray(tree.leaves, dtype=np.int64), impl
        )
        self.cost = cost
        self.choice = choice
        self.comparisons = int(comparisons)
        self._pos = {team: p for p, team in enumerate(tree.leaves)}

    def possible_winners(self, level: int | None = None, index: int = 0) -> frozenset:
        level = self.tree.height if level is None else level
        self.tree.node_teams(level, index)
        size = 1 << level
        row = self.cost[level, index * size:(index + 1) * size]
        return frozenset(self.tree.leaves[index * size + k] for k in np.flatnonzero(row < kernels.INF))

    def min_count(self, team: int, level: int | None = None) -> int | None:
        level = self.tree.height if level is None else level
        c = int(self.cost[level, self._pos[team]])
        return None if c >= kernels.INF else c

    def plan(self, team: int, level: int | None = None) -> ManipulationPlan:
        """Throws realising ``min_count(team, level)``."""
        level = self.tree.height if level is None else level
        if self.min_count(team, level) is None:
            raise NotAchievable(f"team {team} cannot win at level {level}")
        moves = []
        stack = [(self._pos[team], level)]
        while stack:
            p, lvl = stack.pop()
            for ell in range(lvl, 0, -1):
                q = int(self.choice[ell, p])
                i, j = self.tree.leaves[p], self.tree.leaves[q]
                if not self.t.beats(i, j):
                    moves.append(Move.throw(j, i))
                stack.append((q, ell - 1))
        return ManipulationPlan(tuple(moves), self.coalition)


def winner_table(tree: CupTree, t: Tournament, co: Iterable[int] = (), impl=None) -> WinnerTable:
    return WinnerTable(tree, t, as_coalition(co, t.m), impl)


def simulate_cup(tree: CupTree, t: Tournament) -> int:
    """Fair champion of the cup under ``t``."""
    tree.check(t)
    alive = list(tree.leaves)
    while len(alive) > 1:
        alive = [a if t.beats(a, b) else b for a, b in zip(alive[::2], alive[1::2])]
    return alive[0]


def possible_winners(
    tree: CupTree, t: Tournament, co: Iterable[int] = (), level: int | None = None, index: int = 0
) -> frozenset:
    """Teams that can win node ``(level, index)`` (the root by default) under some legal plan."""
    return winner_table(tree, t, co).possible_winners(level, index)


def cup_min_manipulations(v_w: int, tree: CupTree, t: Tournament, co: Iterable[int] = ()) -> Answer:
    table = winner_table(tree, t, co)
    count = table.min_count(v_w)
    if count is None:
        raise NotAchievable(f"team {v_w} cannot be made cup winner by this coalition")
    return Answer(True, table.plan(v_w), count, stats=_stats(table))


def cup_constructive(v_w: int, tree: CupTree, t: Tournament, co: Iterable[int] = ()) -> Answer:
    """Can the coalition make ``v_w`` win?  The witness plan is a minimum one."""
    table = winner_table(tree, t, co)
    count = table.min_count(v_w)
    if count is None:
        return Answer(False, stats=_stats(table))
    return Answer(True, table.plan(v_w), count, stats=_stats(table))


def cup_destructive(v_l: int, tree: CupTree, t: Tournament, co: Iterable[int] = ()) -> Answer:
    """Can the coalition stop ``v_l`` from winning?  True iff another team is a possible winner."""
    table = winner_table(tree, t, co)
    best = _cheapest_other(table, v_l)
    if best is None:
        return Answer(False, stats=_stats(table))
    u, count = best
    return Answer(True, table.plan(u), count, stats={**_stats(table), "winner": u})


def cup_destructive_min(v_l: int, tree: CupTree, t: Tournament, co: Iterable[int] = ()) -> Answer:
    """Fewest throws crowning someone other than ``v_l``."""
    table = winner_table(tree, t, co)
    best = _cheapest_other(table, v_l)
    if best is None:
        raise NotAchievable(f"team {v_l} wins under every legal plan")
    u, count = best
    return Answer(True, table.plan(u), count, stats={**_stats(table), "winner": u})


def _cheapest_other(table: WinnerTable, v_l: int):
    best = None
    for u in sorted(table.possible_winners()):
        if u == v_l:
            continue
        c = table.min_count(u)
        if best is None or c < best[1]:
            best = (u, c)
    return best


def _stats(table: WinnerTable) -> dict:
    return {"comparisons": table.comparisons, "backend": kernels.BACKEND}


def replay(tree: CupTree, t: Tournament, plan: ManipulationPlan) -> int:
    return simulate_cup(tree, apply_plan(t, plan))
