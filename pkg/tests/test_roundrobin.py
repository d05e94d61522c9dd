import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tourmanip import ScoringModel, Tournament, apply_plan, copeland_scores
from tourmanip.errors import ModelNotSupported, NotAchievable
from tourmanip.flow import min_cost_feasible_flow
from tourmanip.oracle import oracle_roundrobin, oracle_roundrobin_general
from tourmanip.roundrobin import (
    build_flow_network,
    greedy_out_degree,
    rr_constructive,
    rr_destructive,
    rr_min_manipulations,
)

FOOTBALL = ScoringModel(frozenset({(0, 3), (1, 1), (3, 0)}))
CHESS = ScoringModel.linear(2)


def top(t, v):
    s = t.points.sum(axis=1)
    return s[v] == s.max()


class TestFiveTeams:
    def test_greedy_stalls(self, five_teams):
        g = greedy_out_degree(0, five_teams.tournament, five_teams.coalition)
        assert g.c == 2
        assert g.used_moves.count == 0
        assert not g.satisfied

    def test_network_shape(self, five_teams):
        net = build_flow_network(five_teams.tournament, five_teams.coalition, 0, 2)
        games = [v for v in range(net.num_nodes) if net.label(v)[0] == "game"]
        assert len(games) == 6
        game_arcs = [a for a in net.arcs if a.tail in games]
        assert len(game_arcs) == 9
        assert sum(a.cost for a in game_arcs) == 3
        caps = {net.label(a.tail)[1]: a.upper for a in net.arcs if a.head == net.sink}
        assert caps == {1: 2, 2: 1, 3: 2, 4: 1}
        res = min_cost_feasible_flow(net)
        assert (res.cost, res.value) == (1, 6)

    def test_minimum(self, five_teams):
        t, co = five_teams.tournament, five_teams.coalition
        ans = rr_min_manipulations(0, t, co)
        assert ans.min_count == 1
        assert ans.stats == {"c": 2, "greedy_moves": 0, "flow_cost": 1}
        assert [mv.to_json() for mv in ans.plan] == [{"pair": [1, 3], "outcome": [1, 0]}]
        assert top(apply_plan(t, ans.plan), 0)

    def test_other_targets(self, five_teams):
        t, co = five_teams.tournament, five_teams.coalition
        assert rr_min_manipulations(2, t, co).min_count == 1
        assert rr_min_manipulations(4, t, co).min_count == 1
        assert rr_min_manipulations(3, t, {3}).min_count == 0

    def test_unreachable(self, five_teams):
        with pytest.raises(NotAchievable):
            rr_min_manipulations(1, five_teams.tournament, ())

    def test_destructive(self, five_teams):
        t = five_teams.tournament
        assert not rr_destructive(3, t, {0}).achievable
        ans = rr_destructive(3, t, {0, 3})
        assert ans.achievable and ans.stats["target_points"] == 0
        after = copeland_scores(apply_plan(t, ans.plan))
        assert after.max() > after[3]

    def test_constructive(self, five_teams):
        t, co = five_teams.tournament, five_teams.coalition
        ans = rr_constructive(0, t, co)
        assert ans.achievable
        assert top(apply_plan(t, ans.plan), 0)
        assert not rr_constructive(1, t, ()).achievable


class TestGreedyExample:
    def test_three_teams(self):
        # 1 beats 0 and 2, 2 beats 0; member 1 hands its game to 0
        t = Tournament.from_edges(3, [(1, 0), (1, 2), (2, 0)])
        g = greedy_out_degree(0, t, {1})
        assert g.used_moves.count == 1
        assert rr_min_manipulations(0, t, {1}).min_count == oracle_roundrobin(0, t, {1}).min_count == 1


class TestModels:
    def test_football_refused(self, five_teams):
        t = five_teams.tournament
        with pytest.raises(ModelNotSupported, match=r"scoring model not of form S=\{\(i,n-i\)\}"):
            rr_constructive(0, t, {0}, FOOTBALL)
        with pytest.raises(ModelNotSupported):
            rr_destructive(0, t, {0}, FOOTBALL)

    def test_min_needs_win_loss(self):
        t = Tournament.from_results(2, {(0, 1): (1, 1)}, CHESS)
        with pytest.raises(ModelNotSupported):
            rr_min_manipulations(0, t, {1})

    def test_chess_draw_pushed_to_win(self):
        t = Tournament.from_results(3, {(0, 1): (0, 2), (0, 2): (1, 1), (1, 2): (1, 1)}, CHESS)
        ans = rr_constructive(0, t, {1})
        assert ans.achievable
        # only the target's own game changes; nothing is routed through the flow
        assert ans.stats["points_moved"] == 0
        assert [mv.to_json() for mv in ans.plan] == [{"pair": [0, 1], "outcome": [2, 0]}]
        assert top(apply_plan(t, ans.plan), 0)


def random_linear(rng, m, n):
    model = ScoringModel.linear(n)
    res = {}
    for i in range(m):
        for j in range(i + 1, m):
            a = int(rng.integers(0, n + 1))
            res[(i, j)] = (a, n - a)
    return Tournament.from_results(m, res, model)


@st.composite
def wl_instances(draw, sizes=(2, 6)):
    m = draw(st.integers(*sizes))
    t = Tournament.random(m, np.random.default_rng(draw(st.integers(0, 2**32 - 1))))
    co = draw(st.frozensets(st.integers(0, m - 1), max_size=m))
    return t, co, draw(st.integers(0, m - 1))


class TestProperties:
    @given(wl_instances())
    @settings(max_examples=80, deadline=None)
    def test_min_matches_oracle(self, inst):
        t, co, v = inst
        truth = oracle_roundrobin(v, t, co)
        try:
            ans = rr_min_manipulations(v, t, co)
        except NotAchievable:
            assert not truth.achievable
            return
        assert ans.min_count == truth.min_count
        assert ans.plan.count == ans.min_count
        assert top(apply_plan(t, ans.plan), v)
        assert rr_constructive(v, t, co).achievable

    @given(wl_instances())
    @settings(max_examples=60, deadline=None)
    def test_empty_coalition(self, inst):
        t, _, v = inst
        s = copeland_scores(t)
        assert rr_constructive(v, t, ()).achievable == (s[v] == s.max())
        assert rr_destructive(v, t, ()).achievable == bool(s.max() > s[v])

    @given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 3))
    @settings(max_examples=60, deadline=None)
    def test_linear_models_match_enumeration(self, seed, m, n):
        rng = np.random.default_rng(seed)
        t = random_linear(rng, m, n)
        co = frozenset(int(x) for x in rng.choice(m, size=int(rng.integers(0, m + 1)), replace=False))
        v = int(rng.integers(0, m))
        for goal, fn in (("constructive", rr_constructive), ("destructive", rr_destructive)):
            truth = oracle_roundrobin_general(goal, v, t, co)
            ans = fn(v, t, co)
            assert ans.achievable == truth.achievable, goal
            if ans.achievable:
                after = apply_plan(t, ans.plan).points.sum(axis=1)
                if goal == "constructive":
                    assert after[v] == after.max()
                else:
                    assert after.max() > after[v]

    @given(wl_instances(), st.data())
    @settings(max_examples=40, deadline=None)
    def test_min_monotone(self, inst, data):
        t, co, v = inst
        extra = data.draw(st.frozensets(st.integers(0, t.m - 1)))
        try:
            small = rr_min_manipulations(v, t, co).min_count
        except NotAchievable:
            return
        assert rr_min_manipulations(v, t, co | extra).min_count <= small
