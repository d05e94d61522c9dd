import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tourmanip import Tournament, apply_plan, manipulable_edges
from tourmanip.cup import (
    CupTree,
    cup_constructive,
    cup_destructive,
    cup_destructive_min,
    cup_min_manipulations,
    possible_winners,
    replay,
    simulate_cup,
    winner_table,
)
from tourmanip.errors import MalformedTree, NotAchievable
from tourmanip.oracle import oracle_cup_all

TREE4 = CupTree((0, 1, 2, 3))


class TestTree:
    def test_not_power_of_two(self):
        with pytest.raises(MalformedTree):
            CupTree((0, 1, 2))

    def test_not_permutation(self):
        with pytest.raises(MalformedTree):
            CupTree((0, 1, 1, 3))

    def test_size_mismatch(self, linear4):
        with pytest.raises(MalformedTree):
            simulate_cup(CupTree((0, 1)), linear4)

    def test_node_teams(self):
        tree = CupTree((3, 1, 0, 2))
        assert tree.node_teams(1, 1) == (0, 2)
        assert tree.node_teams(2, 0) == (3, 1, 0, 2)


class TestLinearOrderExample:
    # 0 beats everyone, 1 beats 2 and 3, 2 beats 3

    def test_fair_winner(self, linear4):
        assert simulate_cup(TREE4, linear4) == 0
        assert possible_winners(TREE4, linear4) == {0}

    def test_possible_winners_with_top_team(self, linear4):
        assert possible_winners(TREE4, linear4, {0}) == {0, 1, 2}

    def test_min_counts(self, linear4):
        table = winner_table(TREE4, linear4, {0})
        assert [table.min_count(v) for v in range(4)] == [0, 1, 1, None]

    def test_team_two_needs_one_throw(self, linear4):
        ans = cup_min_manipulations(2, TREE4, linear4, {0})
        assert ans.min_count == 1
        assert replay(TREE4, linear4, ans.plan) == 2

    def test_bottom_team_is_out_of_reach(self, linear4):
        with pytest.raises(NotAchievable):
            cup_min_manipulations(3, TREE4, linear4, {0})
        assert not cup_constructive(3, TREE4, linear4, {0}).achievable

    def test_subtree_query(self, linear4):
        assert possible_winners(TREE4, linear4, {0}, level=1, index=0) == {0, 1}
        assert possible_winners(TREE4, linear4, {0}, level=1, index=1) == {2}

    def test_destructive(self, linear4):
        assert not cup_destructive(0, TREE4, linear4).achievable
        ans = cup_destructive_min(0, TREE4, linear4, {0})
        assert ans.min_count == 1 and ans.stats["winner"] == 1
        assert replay(TREE4, linear4, ans.plan) == 1
        with pytest.raises(NotAchievable):
            cup_destructive_min(0, TREE4, linear4, ())

    def test_comparisons_bound(self, linear4):
        table = winner_table(TREE4, linear4, {0})
        assert table.comparisons <= 4 * 3


@st.composite
def cup_instances(draw):
    h = draw(st.integers(1, 3))
    m = 1 << h
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    t = Tournament.random(m, rng)
    leaves = tuple(rng.permutation(m).tolist())
    co = draw(st.frozensets(st.integers(0, m - 1), max_size=3))
    return CupTree(leaves), t, co


class TestProperties:
    @given(cup_instances())
    @settings(max_examples=60, deadline=None)
    def test_empty_coalition_gives_fair_winner(self, inst):
        tree, t, _ = inst
        assert possible_winners(tree, t, ()) == {simulate_cup(tree, t)}

    @given(cup_instances(), st.data())
    @settings(max_examples=60, deadline=None)
    def test_monotone_in_coalition(self, inst, data):
        tree, t, co = inst
        extra = data.draw(st.frozensets(st.integers(0, t.m - 1)))
        small = winner_table(tree, t, co)
        big = winner_table(tree, t, co | extra)
        assert small.possible_winners() <= big.possible_winners()
        for v in small.possible_winners():
            assert big.min_count(v) <= small.min_count(v)

    @given(cup_instances())
    @settings(max_examples=60, deadline=None)
    def test_plans_are_sound_and_minimal(self, inst):
        tree, t, co = inst
        table = winner_table(tree, t, co)
        truth = oracle_cup_all(tree, t, co)
        for v in range(t.m):
            assert table.min_count(v) == truth[v].min_count
            if table.min_count(v) is not None:
                plan = table.plan(v)
                assert plan.count == table.min_count(v)
                assert {(mv.i, mv.j) for mv in plan} <= {tuple(sorted(e)) for e in manipulable_edges(t, co)}
                assert simulate_cup(tree, apply_plan(t, plan)) == v

    @given(cup_instances())
    @settings(max_examples=40, deadline=None)
    def test_comparisons_quadratic(self, inst):
        tree, t, co = inst
        assert winner_table(tree, t, co).comparisons <= t.m * (t.m - 1)
