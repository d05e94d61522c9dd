"""Round-robin manipulation: feasibility, destructive checks and minimum throw counts.

A team wins the round robin when it scores at least as much as every other
team (co-winners allowed).  Minimum counts are computed for win-loss scoring
in two stages.  First the target takes back games it lost to coalition
members, always from the currently highest-scoring such member, until it
leads or runs out of such games.  If it still trails, its score ``c`` is
frozen and a min-cost flow distributes the remaining games so nobody exceeds
``c``; routing a game to its fair loser costs one throw.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .core import (
    Answer,
    ManipulationPlan,
    Move,
    ScoringModel,
    Tournament,
    apply_plan,
    as_coalition,
    copeland_scores,
    member_mask,
    validate_model_form,
)
from .errors import Infeasible, InvalidCapacity, ModelNotSupported, NotAchievable
from .flow import Arc, FlowNetwork, min_cost_feasible_flow

RRAnswer = Answer


@dataclass(frozen=True)
class GreedyResult:
    c: int
    used_moves: ManipulationPlan
    satisfied: bool


def _require_win_loss(t: Tournament):
    if not t.is_win_loss:
        raise ModelNotSupported("minimum counts are only defined for win-loss scoring")


def greedy_out_degree(v_w: int, t: Tournament, co: Iterable[int] = ()) -> GreedyResult:
    _require_win_loss(t)
    co = as_coalition(co, t.m)
    scores = copeland_scores(t).tolist()
    sources = [i for i in sorted(co) if i != v_w and t.beats(i, v_w)]
    others = [k for k in range(t.m) if k != v_w]

    def leads():
        return all(scores[v_w] >= scores[k] for k in others)

    moves = []
    while not leads() and sources:
        # highest current score first; lowest id on ties
        i = max(sources, key=lambda k: (scores[k], -k))
        sources.remove(i)
        moves.append(Move.throw(i, v_w))
        scores[i] -= 1
        scores[v_w] += 1
    return GreedyResult(scores[v_w], ManipulationPlan(tuple(moves), co), leads())


def build_flow_network(t: Tournament, co: Iterable[int], v_w: int, c: int) -> FlowNetwork:
    """Winner-determination network for the games not involving ``v_w``.

    Each such game sends one unit to its fair winner (cost 0) or, when the
    winner is a coalition member, to its fair loser (cost 1).  Team ``k`` may
    absorb at most ``c`` minus the points it already took off ``v_w``.
    """
    _require_win_loss(t)
    co = as_coalition(co, t.m)
    teams = [k for k in range(t.m) if k != v_w]
    games = [(i, j) for i, j in t.games() if v_w not in (i, j)]
    labels = ["s", "t"] + [("game", i, j) for i, j in games] + [("team", k) for k in teams]
    team_node = {k: 2 + len(games) + n for n, k in enumerate(teams)}
    arcs = []
    for g, (i, j) in enumerate(games):
        node = 2 + g
        win, lose = (i, j) if t.beats(i, j) else (j, i)
        arcs.append(Arc(0, node, 1, 1, 0))
        arcs.append(Arc(node, team_node[win], 0, 1, 0))
        if win in co:
            arcs.append(Arc(node, team_node[lose], 0, 1, 1))
    for k in teams:
        room = c - int(t.points[k, v_w])
        if room < 0:
            raise InvalidCapacity(f"team {k} already has more than {c} points")
        arcs.append(Arc(team_node[k], 1, 0, room, 0))
    return FlowNetwork(len(labels), 0, 1, tuple(arcs), tuple(labels))


def _decode_throws(t: Tournament, net: FlowNetwork, flows) -> list[Move]:
    moves = []
    for a, f in zip(net.arcs, flows):
        if f and a.cost:
            _, i, j = net.label(a.tail)
            _, k = net.label(a.head)
            moves.append(Move.throw(j if k == i else i, k))
    return moves


def rr_min_manipulations(v_w: int, t: Tournament, co: Iterable[int] = ()) -> Answer:
    co = as_coalition(co, t.m)
    greedy = greedy_out_degree(v_w, t, co)
    stats = {"c": greedy.c, "greedy_moves": greedy.used_moves.count, "flow_cost": 0}
    if greedy.satisfied:
        return Answer(True, greedy.used_moves, greedy.used_moves.count, stats=stats)
    after = apply_plan(t, greedy.used_moves)
    try:
        net = build_flow_network(after, co, v_w, greedy.c)
        res = min_cost_feasible_flow(net)
    except (InvalidCapacity, Infeasible):
        raise NotAchievable(f"team {v_w} cannot reach the top score") from None
    plan = greedy.used_moves + ManipulationPlan(tuple(_decode_throws(after, net, res.flows)), co)
    stats["flow_cost"] = res.cost
    return Answer(True, plan, greedy.used_moves.count + res.cost, stats=stats)


def _form_or_refuse(t: Tournament, s: ScoringModel | None) -> ScoringModel:
    s = s or t.model
    if not validate_model_form(s):
        raise ModelNotSupported()
    if s != t.model:
        t_model_ok = all(t.result(i, j) in s for i, j in t.games())
        if not t_model_ok:
            raise ModelNotSupported("tournament results are not outcomes of the given model")
    return s


def rr_constructive(
    v_w: int, t: Tournament, co: Iterable[int] = (), s: ScoringModel | None = None
) -> Answer:
    """Can the coalition make ``v_w`` a (co-)winner under a linear scoring model?

    ``v_w`` takes every point coalition opponents can concede.  Games between
    an outsider and a member bank the outsider's current points and leave
    the member's share to be split; member-versus-member games are open.
    The witness moves as few points as possible given that split.
    """
    s = _form_or_refuse(t, s)
    co = as_coalition(co, t.m)
    g = s.scale
    n = s.n // g
    p = t.points // g
    m = t.m

    final = {}
    total_w = 0
    for k in range(m):
        if k == v_w:
            continue
        if k in co:
            final[(v_w, k)] = (n, 0)
            total_w += n
        else:
            total_w += int(p[v_w, k])

    banked = [0] * m
    for k in range(m):
        if k != v_w:
            banked[k] = 0 if k in co else int(p[k, v_w])
    labels = ["s", "t"]
    arcs: list[Arc] = []
    open_games = []
    for i, j in t.games():
        if v_w in (i, j):
            continue
        pi, pj = int(p[i, j]), int(p[j, i])
        if i not in co and j not in co:
            banked[i] += pi
            banked[j] += pj
        elif i in co and j in co:
            open_games.append((i, j, n, ((i, pi), (j, pj))))
        else:
            out, mem = (i, j) if j in co else (j, i)
            banked[out] += int(p[out, mem])
            r = int(p[mem, out])
            if r:
                open_games.append((i, j, r, ((mem, r), (out, 0))))

    stats = {"target_points": total_w * g}
    rooms = {k: total_w - banked[k] for k in range(m) if k != v_w}
    if any(r < 0 for r in rooms.values()):
        return Answer(False, stats=stats)

    team_node = {}
    for k in rooms:
        team_node[k] = len(labels)
        labels.append(("team", k))
    for i, j, supply, keep in open_games:
        node = len(labels)
        labels.append(("game", i, j))
        arcs.append(Arc(0, node, supply, supply, 0))
        for team, free in keep:
            if free:
                arcs.append(Arc(node, team_node[team], 0, free, 0))
            if supply - free:
                arcs.append(Arc(node, team_node[team], 0, supply - free, 1))
    for k, room in rooms.items():
        arcs.append(Arc(team_node[k], 1, 0, room, 0))
    net = FlowNetwork(len(labels), 0, 1, tuple(arcs), tuple(labels))
    try:
        res = min_cost_feasible_flow(net)
    except Infeasible:
        return Answer(False, stats=stats)

    got: dict = {}
    for a, f in zip(net.arcs, res.flows):
        tail = net.label(a.tail)
        if f and tail[0] == "game":
            key = (tail[1:], net.label(a.head)[1])
            got[key] = got.get(key, 0) + f
    for i, j, supply, keep in open_games:
        if i in co and j in co:
            final[(i, j)] = (got.get(((i, j), i), 0), got.get(((i, j), j), 0))
        else:
            out = i if j in co else j
            mem = j if out == i else i
            gi = got.get(((i, j), out), 0)
            pts = {out: int(p[out, mem]) + gi, mem: got.get(((i, j), mem), 0)}
            final[(i, j)] = (pts[i], pts[j])

    moves = []
    for (i, j), (qi, qj) in sorted(final.items()):
        if (qi, qj) != (int(p[i, j]), int(p[j, i])):
            moves.append(Move(i, j, qi * g, qj * g))
    plan = ManipulationPlan(tuple(moves), co)
    stats["points_moved"] = res.cost * g
    return Answer(True, plan, stats=stats)


def rr_destructive(
    v_l: int, t: Tournament, co: Iterable[int] = (), s: ScoringModel | None = None
) -> Answer:
    """Can the coalition make some other team strictly outscore ``v_l``?

    For each candidate the coalition concedes every game it plays against
    it; if ``v_l`` is itself a member it also throws all its games.  Games
    of an outsider ``v_l`` are left alone, since no legal throw lowers its score.
    """
    s = _form_or_refuse(t, s)
    co = as_coalition(co, t.m)
    g = s.scale
    n = s.n // g
    p = t.points // g
    best = kernels.max_points(p, member_mask(co, t.m), n)
    target = 0 if v_l in co else int(p[v_l].sum())
    best[v_l] = -1
    cand = int(np.argmax(best))
    stats = {
        "candidate": cand,
        "candidate_points": int(best[cand]) * g,
        "target_points": target * g,
    }
    if t.m < 2 or best[cand] <= target:
        return Answer(False, stats=stats)
    moves = []
    for k in sorted(co):
        if k != cand and p[cand, k] < n:
            moves.append(Move(cand, k, n * g, 0))
    if v_l in co:
        for k in range(t.m):
            if k not in (cand, v_l) and p[v_l, k] > 0:
                moves.append(Move(v_l, k, 0, n * g))
    return Answer(True, ManipulationPlan(tuple(moves), co), stats=stats)
