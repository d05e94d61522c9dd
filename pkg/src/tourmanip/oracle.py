"""Exhaustive ground truth for small instances.

Nothing here shares search logic with the polynomial algorithms: every query
enumerates candidate manipulations by increasing size (then
lexicographically), replays the competition from scratch for each one, and
stops at the first that works, so the reported count is a true minimum.

Round robins enumerate subsets of the manipulable games directly.  Elimination
formats enumerate *throw schedules*: one bit per (coalition member, k-th game
that member plays), meaning "throw that game if you would win it".  Every
legal sequence of throws is produced by some schedule, and schedules stay
small even when the manipulable edge set is large.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable

from .brackets import DoubleElimBracket, SeededField, simulate_double_elim, simulate_reseed
from .core import ManipulationPlan, Move, Tournament, as_coalition, manipulable_edges
from .cup import CupTree
from .errors import TooLarge
from .flow import FlowNetwork

DEFAULT_CAP = 20


@dataclass(frozen=True)
class OracleReport:
    achievable: bool
    min_count: int | None
    witness: ManipulationPlan | None
    subsets_examined: int
    throws: tuple = ()


def _schedules(bits: int):
    for k in range(bits + 1):
        for combo in combinations(range(bits), k):
            yield frozenset(combo)


class _Schedule:
    """Decision callback for one schedule; records the throws actually executed."""

    def __init__(self, members: dict, per_member: int, bits: frozenset):
        self.members = members
        self.per_member = per_member
        self.bits = bits
        self.played = dict.fromkeys(members, 0)
        self.thrown: list = []

    def __call__(self, key, winner, loser) -> bool:
        flag = False
        if winner in self.members:
            k = self.played[winner]
            flag = self.members[winner] * self.per_member + k in self.bits
            if flag:
                self.thrown.append((key, winner, loser))
        for team in (winner, loser):
            if team in self.members:
                self.played[team] += 1
        return flag


def _cup_replay(tree: CupTree, t: Tournament, decide) -> int:
    alive = list(tree.leaves)
    level = 1
    while len(alive) > 1:
        nxt = []
        for k, (a, b) in enumerate(zip(alive[::2], alive[1::2])):
            w, l = (a, b) if t.beats(a, b) else (b, a)
            nxt.append(l if decide(("C", level, k), w, l) else w)
        alive = nxt
        level += 1
    return alive[0]


def _sweep(replay, co: frozenset, per_member: int, cap: int, target=None):
    """Enumerate schedules; returns ({champion: (count, thrown)}, examined)."""
    members = {team: r for r, team in enumerate(sorted(co))}
    bits = per_member * len(members)
    if bits > cap:
        raise TooLarge(f"{bits} schedule bits exceed the cap of {cap}")
    best: dict = {}
    examined = 0
    for sched in _schedules(bits):
        examined += 1
        decide = _Schedule(members, per_member, sched)
        champ = replay(decide)
        if len(decide.thrown) < len(sched):
            continue  # a flagged game was lost anyway; an equivalent smaller schedule exists
        if champ not in best:
            best[champ] = (len(decide.thrown), tuple(decide.thrown))
            if champ == target:
                break
    return best, examined


def _report(best: dict, target: int, examined: int, co, plan_from_throws=True) -> OracleReport:
    if target not in best:
        return OracleReport(False, None, None, examined)
    count, thrown = best[target]
    keys = tuple(key for key, _, _ in thrown)
    plan = None
    if plan_from_throws:
        plan = ManipulationPlan(tuple(Move.throw(w, l) for _, w, l in thrown), co)
    return OracleReport(True, count, plan, examined, keys)


def oracle_cup(v_w: int, tree: CupTree, t: Tournament, co: Iterable[int] = (), cap: int = DEFAULT_CAP) -> OracleReport:
    co = as_coalition(co, t.m)
    tree.check(t)
    best, examined = _sweep(lambda d: _cup_replay(tree, t, d), co, tree.height, cap, v_w)
    return _report(best, v_w, examined, co)


def oracle_cup_all(tree: CupTree, t: Tournament, co: Iterable[int] = (), cap: int = DEFAULT_CAP) -> dict:
    """Report for every team from a single full sweep."""
    co = as_coalition(co, t.m)
    tree.check(t)
    best, examined = _sweep(lambda d: _cup_replay(tree, t, d), co, tree.height, cap)
    return {v: _report(best, v, examined, co) for v in range(t.m)}


def _bracket_setup(fmt, t: Tournament):
    if isinstance(fmt, SeededField):
        h = fmt.m.bit_length() - 1
        return (lambda d: simulate_reseed(SeededField(fmt.seeds), t, decide=d)), h, True
    if isinstance(fmt, DoubleElimBracket):
        # a team plays at most 2h games: lose in WB round 1 or 2, then survive the LB to the final
        h = fmt.height
        return (lambda d: simulate_double_elim(fmt, t, decide=d).champion), 2 * h, False
    raise TypeError(f"unknown bracket format {fmt!r}")


def oracle_bracket(v_w: int, fmt, t: Tournament, co: Iterable[int] = (), cap: int = DEFAULT_CAP) -> OracleReport:
    """Exhaustive check for ranked-reseeding (``SeededField``) or double-elimination brackets.

    Double-elimination pairs can meet twice, so the witness there is the
    throw schedule in ``throws`` and ``witness`` is ``None``.
    """
    co = as_coalition(co, t.m)
    replay, per_member, as_plan = _bracket_setup(fmt, t)
    best, examined = _sweep(replay, co, per_member, cap, v_w)
    return _report(best, v_w, examined, co, as_plan)


def oracle_bracket_all(fmt, t: Tournament, co: Iterable[int] = (), cap: int = DEFAULT_CAP) -> dict:
    co = as_coalition(co, t.m)
    replay, per_member, as_plan = _bracket_setup(fmt, t)
    best, examined = _sweep(replay, co, per_member, cap)
    return {v: _report(best, v, examined, co, as_plan) for v in range(t.m)}


def oracle_roundrobin(v_w: int, t: Tournament, co: Iterable[int] = (), cap: int = DEFAULT_CAP) -> OracleReport:
    """Fewest reversals of manipulable win-loss games leaving ``v_w`` with a top score."""
    if not t.is_win_loss:
        raise ValueError("oracle_roundrobin enumerates win-loss reversals; use oracle_roundrobin_general")
    co = as_coalition(co, t.m)
    edges = sorted(manipulable_edges(t, co))
    if len(edges) > cap:
        raise TooLarge(f"{len(edges)} manipulable games exceed the cap of {cap}")
    base = t.points.sum(axis=1).tolist()
    examined = 0
    for k in range(len(edges) + 1):
        for combo in combinations(edges, k):
            examined += 1
            s = list(base)
            for w, l in combo:
                s[w] -= 1
                s[l] += 1
            if s[v_w] == max(s):
                plan = ManipulationPlan(tuple(Move.throw(w, l) for w, l in combo), co)
                return OracleReport(True, k, plan, examined)
    return OracleReport(False, None, None, examined)


def legal_outcomes(t: Tournament, co: frozenset, i: int, j: int) -> list:
    """Current outcome of game ``{i, j}`` followed by every outcome some member may throw to."""
    pi, pj = t.result(i, j)
    out = [(pi, pj)]
    for a, b in t.model.sorted_outcomes():
        if (a, b) == (pi, pj):
            continue
        if (i in co and a <= pi and b >= pj) or (j in co and b <= pj and a >= pi):
            out.append((a, b))
    return out


def oracle_roundrobin_general(
    goal: str, team: int, t: Tournament, co: Iterable[int] = (), cap: int = 1 << 20
) -> OracleReport:
    """Enumerate every legal result assignment under any scoring model.

    ``goal="constructive"``: ``team`` scores at least as much as everyone.
    ``goal="destructive"``: some other team strictly outscores ``team``.
    The count is the number of games whose outcome changed.
    """
    co = as_coalition(co, t.m)
    games = [(i, j) for i, j in t.games()]
    options = [legal_outcomes(t, co, i, j) for i, j in games]
    total = 1
    for o in options:
        total *= len(o)
    if total > cap:
        raise TooLarge(f"{total} result assignments exceed the cap of {cap}")
    base = t.points.sum(axis=1).tolist()
    best = None
    examined = 0
    for choice in product(*(range(len(o)) for o in options)):
        examined += 1
        changed = sum(1 for c in choice if c)
        if best is not None and changed >= best[0]:
            continue
        s = list(base)
        for (i, j), o, c in zip(games, options, choice):
            if c:
                s[i] += o[c][0] - o[0][0]
                s[j] += o[c][1] - o[0][1]
        if goal == "constructive":
            ok = s[team] == max(s)
        else:
            ok = any(s[k] > s[team] for k in range(t.m) if k != team)
        if ok:
            moves = tuple(Move(i, j, *o[c]) for (i, j), o, c in zip(games, options, choice) if c)
            best = (changed, ManipulationPlan(moves, co))
    if best is None:
        return OracleReport(False, None, None, examined)
    return OracleReport(True, best[0], best[1], examined)


def oracle_flow(net: FlowNetwork):
    """Minimum cost over every integral flow meeting the bounds, or ``None`` if there is none.

    Arcs are assigned one at a time; a node's balance is checked as soon
    as its last arc has a value.
    """
    n = net.num_nodes
    arcs = list(net.arcs)
    order = sorted(range(len(arcs)), key=lambda k: max(arcs[k].tail, arcs[k].head))
    last_use = {}
    for pos, k in enumerate(order):
        last_use[arcs[k].tail] = pos
        last_use[arcs[k].head] = pos
    closes: dict[int, list[int]] = {}
    for v, pos in last_use.items():
        if v not in (net.source, net.sink):
            closes.setdefault(pos, []).append(v)
    balance = [0] * n
    best = [None]

    def rec(pos: int, cost: int):
        if best[0] is not None and cost >= best[0]:
            return
        if pos == len(order):
            best[0] = cost
            return
        a = arcs[order[pos]]
        for f in range(a.lower, a.upper + 1):
            balance[a.tail] -= f
            balance[a.head] += f
            if all(balance[v] == 0 for v in closes.get(pos, ())):
                rec(pos + 1, cost + f * a.cost)
            balance[a.tail] += f
            balance[a.head] -= f

    rec(0, 0)
    return best[0]
