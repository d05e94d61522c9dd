"""Tournament results, scoring models, coalitions and manipulation plans.

Teams are dense integer ids ``0..m-1``.  A tournament stores, for every
ordered pair ``(i, j)``, the points ``i`` earned against ``j`` in the fair
game; the pair ``(points[i, j], points[j, i])`` is the game's outcome.
Points are integers: fractional models (chess halves) are scaled by the
caller so that every comparison is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import IllegalMove, InvalidOutcome, ManipulationError

Pair = tuple[int, int]


@dataclass(frozen=True)
class ScoringModel:
    """The set of admissible ``(points_i, points_j)`` outcomes of a single game."""

    outcomes: frozenset

    def __post_init__(self):
        outs = frozenset((int(a), int(b)) for a, b in self.outcomes)
        if not outs:
            raise ValueError("a scoring model needs at least one outcome")
        if any(a < 0 or b < 0 for a, b in outs):
            raise ValueError("outcome points must be non-negative")
        object.__setattr__(self, "outcomes", outs)

    @classmethod
    def linear(cls, n: int) -> "ScoringModel":
        """The full model ``{(i, n - i) : 0 <= i <= n}``."""
        return cls(frozenset((i, n - i) for i in range(n + 1)))

    @property
    def n(self) -> int | None:
        """Per-game point total, or ``None`` when outcomes disagree on it."""
        sums = {a + b for a, b in self.outcomes}
        return sums.pop() if len(sums) == 1 else None

    @property
    def scale(self) -> int:
        """Common divisor of every point value (1 for an already normalised model)."""
        g = 0
        for a, b in self.outcomes:
            g = math.gcd(g, math.gcd(a, b))
        return g or 1

    @property
    def is_symmetric(self) -> bool:
        return all((b, a) in self.outcomes for a, b in self.outcomes)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.outcomes

    def __len__(self) -> int:
        return len(self.outcomes)

    def sorted_outcomes(self) -> list[Pair]:
        return sorted(self.outcomes, key=lambda p: (-p[0], p[1]))


WIN_LOSS = ScoringModel.linear(1)


def validate_model_form(s: ScoringModel) -> bool:
    """True iff ``s`` normalises to the full linear model ``{(i, n-i)}``.

    Every outcome must share the same total ``n``, and after dividing all
    points by their common divisor the outcomes must be exactly
    ``(0, n'), (1, n'-1), ..., (n', 0)``.
    """
    n = s.n
    if n is None:
        return False
    g = s.scale
    normalised = {(a // g, b // g) for a, b in s.outcomes}
    return normalised == set(ScoringModel.linear(n // g).outcomes)


class Tournament:
    """Complete result structure over ``m`` teams.

    ``points[i, j]`` is what ``i`` earned against ``j``; the diagonal is zero.
    Instances are immutable: the backing array is read-only and every
    modification returns a new tournament.
    """

    __slots__ = ("_points", "model")

    def __init__(self, points, model: ScoringModel = WIN_LOSS, *, validate: bool = True):
        arr = np.array(points, dtype=np.int64, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("points must be a square matrix")
        arr.setflags(write=False)
        self._points = arr
        self.model = model
        if validate:
            self._validate()

    def _validate(self):
        p = self._points
        m = p.shape[0]
        if np.any(np.diag(p) != 0):
            raise ValueError("a team does not play itself")
        if m < 2:
            return
        iu, ju = np.triu_indices(m, k=1)
        a, b = p[iu, ju], p[ju, iu]
        allowed = np.array(sorted(self.model.outcomes), dtype=np.int64)
        base = int(max(allowed.max(), 0)) + 1
        if a.min() < 0 or b.min() < 0 or max(a.max(), b.max()) >= base:
            raise InvalidOutcome("outcome outside the scoring model")
        ok = np.isin(a * base + b, allowed[:, 0] * base + allowed[:, 1])
        if not ok.all():
            k = int(np.argmin(ok))
            raise InvalidOutcome(
                f"game ({iu[k]}, {ju[k]}) has outcome ({a[k]}, {b[k]}) not in the scoring model"
            )

    # construction helpers

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[Pair]) -> "Tournament":
        """Win-loss tournament from ``(winner, loser)`` pairs covering every game once."""
        p = np.zeros((m, m), dtype=np.int64)
        seen = set()
        for w, l in edges:
            key = (min(w, l), max(w, l))
            if w == l or not (0 <= w < m and 0 <= l < m):
                raise ValueError(f"bad edge {(w, l)}")
            if key in seen:
                raise ValueError(f"duplicate game {key}")
            seen.add(key)
            p[w, l] = 1
        if len(seen) != m * (m - 1) // 2:
            raise ValueError("every pair of teams must play exactly once")
        return cls(p)

    @classmethod
    def from_beats(cls, beats) -> "Tournament":
        b = np.asarray(beats, dtype=bool)
        return cls(b.astype(np.int64))

    @classmethod
    def from_order(cls, order: Iterable[int]) -> "Tournament":
        """Transitive win-loss tournament where earlier teams beat later ones."""
        order = list(order)
        return cls.from_edges(
            len(order), ((order[i], order[j]) for i in range(len(order)) for j in range(i + 1, len(order)))
        )

    @classmethod
    def from_results(
        cls, m: int, results: Mapping[Pair, Pair], model: ScoringModel = WIN_LOSS
    ) -> "Tournament":
        p = np.zeros((m, m), dtype=np.int64)
        seen = set()
        for (i, j), (pi, pj) in results.items():
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate game {key}")
            seen.add(key)
            p[i, j], p[j, i] = pi, pj
        if len(seen) != m * (m - 1) // 2:
            raise ValueError("every pair of teams must play exactly once")
        return cls(p, model)

    @classmethod
    def random(cls, m: int, rng: np.random.Generator) -> "Tournament":
        upper = np.triu(rng.random((m, m)) < 0.5, k=1)
        beats = upper | np.tril(~upper.T, k=-1)
        return cls.from_beats(beats)

    # accessors

    @property
    def m(self) -> int:
        return self._points.shape[0]

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def is_win_loss(self) -> bool:
        return self.model == WIN_LOSS

    def result(self, i: int, j: int) -> Pair:
        return int(self._points[i, j]), int(self._points[j, i])

    def beats(self, i: int, j: int) -> bool:
        return self._points[i, j] > self._points[j, i]

    def beats_matrix(self) -> np.ndarray:
        """Boolean matrix of decisive fair results; elimination formats need one."""
        p = self._points
        b = p > p.T
        if self.m > 1:
            draws = ~(b | b.T)
            np.fill_diagonal(draws, False)
            if draws.any():
                raise ValueError("elimination formats need a decisive result for every game")
        return b

    def games(self) -> Iterator[Pair]:
        for i in range(self.m):
            for j in range(i + 1, self.m):
                yield i, j

    def with_results(self, changes: Mapping[Pair, Pair]) -> "Tournament":
        p = self._points.copy()
        for (i, j), (pi, pj) in changes.items():
            p[i, j], p[j, i] = pi, pj
        return Tournament(p, self.model)

    def __eq__(self, other):
        if not isinstance(other, Tournament):
            return NotImplemented
        return self.model == other.model and np.array_equal(self._points, other._points)

    def __hash__(self):
        return hash((self._points.tobytes(), self.model))

    def __repr__(self):
        return f"Tournament(m={self.m}, n={self.model.n})"


def as_coalition(members: Iterable[int] | None, m: int) -> frozenset[int]:
    """Validate a coalition against a team count and freeze it."""
    co = frozenset(int(x) for x in (members or ()))
    bad = [x for x in co if not 0 <= x < m]
    if bad:
        raise ValueError(f"coalition members {sorted(bad)} are not teams of a {m}-team tournament")
    return co


def member_mask(co: Iterable[int], m: int) -> np.ndarray:
    mask = np.zeros(m, dtype=bool)
    mask[list(co)] = True
    return mask


@dataclass(frozen=True, order=True)
class Move:
    """Replace the outcome of game ``{i, j}`` (stored with ``i < j``) by ``(points_i, points_j)``."""

    i: int
    j: int
    points_i: int
    points_j: int

    def __post_init__(self):
        if self.i > self.j:
            i, j, pi, pj = self.j, self.i, self.points_j, self.points_i
            object.__setattr__(self, "i", i)
            object.__setattr__(self, "j", j)
            object.__setattr__(self, "points_i", pi)
            object.__setattr__(self, "points_j", pj)

    @classmethod
    def throw(cls, winner: int, loser: int, n: int = 1) -> "Move":
        """The fair winner concedes the whole game."""
        if winner < loser:
            return cls(winner, loser, 0, n)
        return cls(loser, winner, n, 0)

    @property
    def pair(self) -> Pair:
        return self.i, self.j

    def outcome_for(self, team: int) -> int:
        return self.points_i if team == self.i else self.points_j

    def to_json(self) -> dict:
        return {"pair": [self.i, self.j], "outcome": [self.points_i, self.points_j]}


@dataclass(frozen=True)
class ManipulationPlan:
    """A set of outcome reassignments, optionally tied to the coalition performing them."""

    moves: tuple = ()
    coalition: frozenset | None = None

    def __post_init__(self):
        moves = tuple(sorted(self.moves))
        pairs = [mv.pair for mv in moves]
        if len(set(pairs)) != len(pairs):
            raise IllegalMove("a game appears twice in the plan")
        object.__setattr__(self, "moves", moves)
        if self.coalition is not None:
            object.__setattr__(self, "coalition", frozenset(self.coalition))

    @property
    def count(self) -> int:
        return len(self.moves)

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def __add__(self, other: "ManipulationPlan") -> "ManipulationPlan":
        co = self.coalition if self.coalition == other.coalition else None
        return ManipulationPlan(self.moves + other.moves, co)

    def reversed_against(self, t: Tournament) -> "ManipulationPlan":
        """Plan that restores ``t``'s outcomes after this plan has been applied to it."""
        return ManipulationPlan(tuple(Move(mv.i, mv.j, *t.result(mv.i, mv.j)) for mv in self.moves))

    def to_json(self) -> list:
        return [mv.to_json() for mv in self.moves]


EMPTY_PLAN = ManipulationPlan()


def thrower(t: Tournament, mv: Move) -> int:
    """The side of a move that gives up points; raises IllegalMove if there is none."""
    m = t.m
    if not (0 <= mv.i < m and 0 <= mv.j < m) or mv.i == mv.j:
        raise IllegalMove(f"unknown game {mv.pair}")
    new = (mv.points_i, mv.points_j)
    if new not in t.model:
        raise IllegalMove(f"outcome {new} for game {mv.pair} is not in the scoring model")
    pi, pj = t.result(mv.i, mv.j)
    if new == (pi, pj):
        raise IllegalMove(f"move on {mv.pair} does not change the result")
    if mv.points_i <= pi and mv.points_j >= pj:
        return mv.i
    if mv.points_j <= pj and mv.points_i >= pi:
        return mv.j
    raise IllegalMove(f"move on {mv.pair} is not a throw by either side")


def check_plan(t: Tournament, p: ManipulationPlan, coalition: Iterable[int] | None = None) -> None:
    co = p.coalition if coalition is None else frozenset(coalition)
    for mv in p.moves:
        who = thrower(t, mv)
        if co is not None and who not in co:
            raise IllegalMove(f"team {who} is not in the coalition and cannot throw game {mv.pair}")


def apply_plan(t: Tournament, p: ManipulationPlan) -> Tournament:
    """Return ``t`` with the plan's outcomes substituted; other games are untouched."""
    if not p.moves:
        return t
    check_plan(t, p)
    return t.with_results({mv.pair: (mv.points_i, mv.points_j) for mv in p.moves})


def manipulable_edges(t: Tournament, co: Iterable[int]) -> frozenset[Pair]:
    """Ordered pairs ``(i, j)`` where coalition member ``i`` can give points to ``j``."""
    co = as_coalition(co, t.m)
    if not co:
        return frozenset()
    p = t.points
    if t.is_win_loss:
        mask = member_mask(co, t.m)
        rows, cols = np.nonzero((p > p.T) & mask[:, None])
        return frozenset(zip(rows.tolist(), cols.tolist()))
    out = set()
    outs = t.model.outcomes
    for i in co:
        for j in range(t.m):
            if j == i:
                continue
            pi, pj = int(p[i, j]), int(p[j, i])
            if any((a, b) != (pi, pj) and a <= pi and b >= pj for a, b in outs):
                out.add((i, j))
    return frozenset(out)


def copeland_scores(t: Tournament) -> np.ndarray:
    """Per-team point totals (out-degree in the win-loss case)."""
    return t.points.sum(axis=1)


def round_robin_winners(t: Tournament) -> frozenset[int]:
    """Teams scoring at least as much as every other team."""
    s = copeland_scores(t)
    return frozenset(np.flatnonzero(s == s.max()).tolist())


@dataclass(frozen=True)
class NormalizedGame:
    """A coalition-vs-outsider game after banking the outsider's guaranteed points."""

    nonmember_banked: int
    residual: ScoringModel
    member_banked: int = 0


def normalize_scoring(s: ScoringModel, nonmember_points: int, member_points: int) -> NormalizedGame:
    """Restrict a game between an outsider and a coalition member.

    The member can only concede, so the outsider keeps ``nonmember_points``
    by default and the member's current ``member_points`` become the
    residual stake, split as ``(x, member_points - x)``.
    """
    if (nonmember_points, member_points) not in s:
        raise InvalidOutcome(f"({nonmember_points}, {member_points}) is not in the scoring model")
    if not validate_model_form(s):
        raise ManipulationError("only linear scoring models can be normalised")
    g = s.scale
    r = member_points // g
    residual = ScoringModel(frozenset((x * g, (r - x) * g) for x in range(r + 1)))
    return NormalizedGame(nonmember_points, residual)


@dataclass(frozen=True)
class Answer:
    """Verdict of a manipulation query, with a witness when one exists."""

    achievable: bool
    plan: ManipulationPlan | None = None
    min_count: int | None = None
    throws: tuple = ()
    stats: dict = field(default_factory=dict, compare=False)
