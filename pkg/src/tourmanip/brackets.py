"""Ranked-reseeding cups and double-elimination brackets under small coalitions.

Both searches walk the bracket round by round.  In each round only games
whose fair winner is a coalition member can go two ways, and a member plays
at most one game per round, so a round has at most ``2**c`` branches for a
coalition of size ``c``.  Everything else is deterministic replay.

Double-elimination layout for ``m = 2**h`` teams:

* winners bracket (WB): ``h`` rounds, adjacent leaves meet;
* losers bracket (LB) round 1: WB round-1 losers, adjacent pairs;
* LB round ``2k-2`` (``k >= 2``): LB survivors meet WB round-``k`` losers,
  survivor ``j`` against the ``j``-th loser counted from the end;
* LB round ``2k-1`` (``2 <= k < h``): LB survivors, adjacent pairs;
* grand final: WB champion against LB champion, one game, no reset.

Game keys are ``("W", round, index)``, ``("L", round, index)``,
``("GF", 1, 0)`` and, for reseeding cups, ``("R", round, index)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import Answer, ManipulationPlan, Move, Tournament, as_coalition
from .errors import CoalitionTooLarge, IllegalThrow, MalformedField

DEFAULT_MAX_COALITION = 4


def _check_field(teams: Sequence[int]) -> tuple:
    teams = tuple(int(x) for x in teams)
    m = len(teams)
    if m == 0 or m & (m - 1):
        raise MalformedField(f"bracket needs a power-of-two field, got {m} teams")
    if sorted(teams) != list(range(m)):
        raise MalformedField("field must be a permutation of the team ids")
    return teams


def _check_coalition(co: frozenset, bound: int):
    if len(co) > bound:
        raise CoalitionTooLarge(f"coalition of {len(co)} exceeds the configured bound {bound}")


def _play(t: Tournament, a: int, b: int, thrown: bool, co) -> tuple[int, int]:
    """(winner, loser) of ``a`` vs ``b``; a throw hands the game to the fair loser."""
    w, l = (a, b) if t.beats(a, b) else (b, a)
    if thrown:
        if co is not None and w not in co:
            raise IllegalThrow(f"team {w} is not in the coalition and cannot throw to {l}")
        w, l = l, w
    return w, l


@dataclass
class SearchCounter:
    leaves: int = 0


# ranked reseeding


@dataclass(frozen=True)
class SeededField:
    """Rank order of the field (``seeds[0]`` is the top seed) and the current survivors."""

    seeds: tuple
    survivors: tuple | None = None
    round: int = 1

    def __post_init__(self):
        seeds = _check_field(self.seeds)
        object.__setattr__(self, "seeds", seeds)
        surv = seeds if self.survivors is None else tuple(self.survivors)
        rank = {team: r for r, team in enumerate(seeds)}
        if any(x not in rank for x in surv) or len(set(surv)) != len(surv):
            raise MalformedField("survivors must be distinct teams of the field")
        object.__setattr__(self, "survivors", tuple(sorted(surv, key=rank.__getitem__)))

    @property
    def m(self) -> int:
        return len(self.seeds)

    @property
    def finished(self) -> bool:
        return len(self.survivors) == 1

    def pairings(self) -> list[tuple[int, int]]:
        """Best remaining seed against worst, second best against second worst, ..."""
        s = self.survivors
        return [(s[k], s[-1 - k]) for k in range(len(s) // 2)]


def simulate_round(f: SeededField, decisions: Sequence[bool], t: Tournament, co: Iterable[int] = ()) -> SeededField:
    """Play one reseeded round; ``decisions[k]`` throws the ``k``-th pairing."""
    games = f.pairings()
    if len(decisions) != len(games):
        raise ValueError(f"{len(games)} games this round, got {len(decisions)} decisions")
    co = frozenset(co)
    winners = [_play(t, a, b, bool(d), co)[0] for (a, b), d in zip(games, decisions)]
    return SeededField(f.seeds, tuple(winners), f.round + 1)


def simulate_reseed(
    f: SeededField, t: Tournament, throws: Iterable = (), co: Iterable[int] | None = None, decide=None
) -> int:
    """Champion of a reseeded cup.

    ``throws`` holds ``("R", round, index)`` keys; alternatively ``decide(key,
    fair_winner, fair_loser)`` is asked about every game as it is played.
    """
    throws = set(throws)
    co = None if co is None else frozenset(co)
    while not f.finished:
        winners = []
        for k, (a, b) in enumerate(f.pairings()):
            key = ("R", f.round, k)
            if decide is not None:
                w, l = _play(t, a, b, False, None)
                flag = decide(key, w, l)
            else:
                flag = key in throws
            winners.append(_play(t, a, b, flag, co)[0])
        f = SeededField(f.seeds, tuple(winners), f.round + 1)
    return f.survivors[0]


def _subsets(k: int):
    for mask in range(1 << k):
        yield [bool(mask >> b & 1) for b in range(k)]


def ranked_reseed_constructive(
    v_w: int,
    f: SeededField,
    t: Tournament,
    co: Iterable[int] = (),
    max_coalition: int = DEFAULT_MAX_COALITION,
) -> Answer:
    """Depth-first search over per-round throw choices of coalition members."""
    if f.m != t.m:
        raise MalformedField(f"field has {f.m} teams but the tournament has {t.m}")
    co = as_coalition(co, t.m)
    _check_coalition(co, max_coalition)
    counter = SearchCounter()

    def search(state: SeededField, throws: tuple):
        if state.finished or v_w not in state.survivors:
            counter.leaves += 1
            return throws if state.survivors == (v_w,) else None
        games = state.pairings()
        branching = [k for k, (a, b) in enumerate(games) if (a if t.beats(a, b) else b) in co]
        for choice in _subsets(len(branching)):
            flags = [False] * len(games)
            for k, d in zip(branching, choice):
                flags[k] = d
            thrown = tuple(("R", state.round, k) for k in range(len(games)) if flags[k])
            found = search(simulate_round(state, flags, t, co), throws + thrown)
            if found is not None:
                return found
        return None

    start = SeededField(f.seeds)
    found = search(start, ())
    stats = {"leaves": counter.leaves, "bound": t.m ** len(co)}
    if found is None:
        return Answer(False, stats=stats)
    return Answer(True, _reseed_plan(start, t, found, co), throws=found, stats={**stats, "throws": len(found)})


def _reseed_plan(f: SeededField, t: Tournament, throws: tuple, co) -> ManipulationPlan:
    """Translate reseeding throws into edge reversals (no pair meets twice in a cup)."""
    keys = set(throws)
    moves = []
    while not f.finished:
        games = f.pairings()
        winners = []
        for k, (a, b) in enumerate(games):
            w, l = _play(t, a, b, False, None)
            if ("R", f.round, k) in keys:
                moves.append(Move.throw(w, l))
                w = l
            winners.append(w)
        f = SeededField(f.seeds, tuple(winners), f.round + 1)
    return ManipulationPlan(tuple(moves), co)


# double elimination


@dataclass(frozen=True)
class DoubleElimBracket:
    """Winners-bracket leaf order; the losers-bracket layout is derived from it."""

    leaves: tuple

    def __post_init__(self):
        object.__setattr__(self, "leaves", _check_field(self.leaves))

    @property
    def m(self) -> int:
        return len(self.leaves)

    @property
    def height(self) -> int:
        return self.m.bit_length() - 1

    def rounds(self) -> list[tuple[str, int]]:
        h = self.height
        if h == 0:
            return []
        return [("W", r) for r in range(1, h + 1)] + [("L", r) for r in range(1, 2 * h - 1)] + [("GF", 1)]


@dataclass(frozen=True)
class _DEState:
    wb: tuple
    wb_losers: tuple  # one tuple per completed WB round
    lb: tuple
    out: frozenset
    champion: int | None = None


def _de_start(b: DoubleElimBracket) -> _DEState:
    return _DEState(b.leaves, (), (), frozenset(), b.leaves[0] if b.m == 1 else None)


def _de_pairings(b: DoubleElimBracket, s: _DEState, stage: str, r: int) -> list[tuple[int, int]]:
    if stage == "W":
        return list(zip(s.wb[::2], s.wb[1::2]))
    if stage == "GF":
        lb_champ = s.lb[0] if s.lb else s.wb_losers[0][0]
        return [(s.wb[0], lb_champ)]
    if r == 1:
        first = s.wb_losers[0]
        return list(zip(first[::2], first[1::2]))
    if r % 2 == 0:
        drop = s.wb_losers[r // 2][::-1]
        return list(zip(s.lb, drop))
    return list(zip(s.lb[::2], s.lb[1::2]))


def _de_advance(s: _DEState, stage: str, results: list[tuple[int, int]]) -> _DEState:
    winners = tuple(w for w, _ in results)
    losers = tuple(l for _, l in results)
    if stage == "W":
        return _DEState(winners, s.wb_losers + (losers,), s.lb, s.out)
    if stage == "GF":
        return _DEState(s.wb, s.wb_losers, s.lb, s.out | set(losers), winners[0])
    return _DEState(s.wb, s.wb_losers, winners, s.out | set(losers))


@dataclass(frozen=True)
class DoubleElimRun:
    champion: int
    games: tuple  # (key, a, b, winner)
    losses: dict = field(compare=False)


def simulate_double_elim(
    b: DoubleElimBracket, t: Tournament, throws: Iterable = (), co: Iterable[int] | None = None, decide=None
) -> DoubleElimRun:
    """Replay the bracket, handing every game in ``throws`` to its fair loser.

    With ``decide(key, fair_winner, fair_loser)`` the throw choice is made
    game by game instead.
    """
    if b.m != t.m:
        raise MalformedField(f"bracket has {b.m} teams but the tournament has {t.m}")
    throws = set(throws)
    co = None if co is None else frozenset(co)
    s = _de_start(b)
    games = []
    losses = {team: 0 for team in b.leaves}
    for stage, r in b.rounds():
        results = []
        for k, (x, y) in enumerate(_de_pairings(b, s, stage, r)):
            key = (stage, r, k)
            flag = key in throws if decide is None else decide(key, *_play(t, x, y, False, None))
            w, l = _play(t, x, y, flag, co)
            results.append((w, l))
            games.append((key, x, y, w))
            losses[l] += 1
        s = _de_advance(s, stage, results)
    return DoubleElimRun(s.champion, tuple(games), losses)


def double_elim_constructive(
    v_w: int,
    b: DoubleElimBracket,
    t: Tournament,
    co: Iterable[int] = (),
    max_coalition: int = DEFAULT_MAX_COALITION,
) -> Answer:
    """Search every round's throw choices of coalition members; witness is a throw schedule."""
    if b.m != t.m:
        raise MalformedField(f"bracket has {b.m} teams but the tournament has {t.m}")
    co = as_coalition(co, t.m)
    _check_coalition(co, max_coalition)
    rounds = b.rounds()
    counter = SearchCounter()

    def search(idx: int, s: _DEState, throws: tuple):
        if idx == len(rounds) or v_w in s.out:
            counter.leaves += 1
            return throws if s.champion == v_w else None
        stage, r = rounds[idx]
        games = _de_pairings(b, s, stage, r)
        fair = [_play(t, x, y, False, None) for x, y in games]
        branching = [k for k, (w, _) in enumerate(fair) if w in co]
        for choice in _subsets(len(branching)):
            flipped = {k for k, d in zip(branching, choice) if d}
            results = [(l, w) if k in flipped else (w, l) for k, (w, l) in enumerate(fair)]
            thrown = tuple((stage, r, k) for k in sorted(flipped))
            found = search(idx + 1, _de_advance(s, stage, results), throws + thrown)
            if found is not None:
                return found
        return None

    found = search(0, _de_start(b), ())
    stats = {"leaves": counter.leaves}
    if found is None:
        return Answer(False, stats=stats)
    return Answer(True, throws=found, stats={**stats, "throws": len(found)})
