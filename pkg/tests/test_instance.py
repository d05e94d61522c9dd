import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tourmanip import ScoringModel, Tournament
from tourmanip.instance import InstanceFile, ParseError, ValidationError, parse_instance, serialize_instance

HEADER = "teams 2\n"


def test_fixture(five_teams):
    assert five_teams.tournament.m == 5
    assert five_teams.coalition == {0, 3}
    assert five_teams.tournament.is_win_loss


def test_names_and_model():
    inst = parse_instance(
        "teams 2\nname 0 Ajax\nname 1 PSV Eindhoven\nmodel 2 0:2 1:1 2:0\ngame 0 1 1 1\nseed 1 0\n"
    )
    assert inst.team_id("Ajax") == 0
    assert inst.team_id("PSV Eindhoven") == 1
    assert inst.team_id("1") == 1
    assert inst.model == ScoringModel.linear(2)
    assert inst.seed == (1, 0)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("teams 2\ngame 0 1 1 x\n", 2, 12),
        ("game 0 1 1 0\n", 1, 6),
        ("teams 2\nfrobnicate\n", 2, 1),
        ("teams 2\nmodel 1 0:1 10\ngame 0 1 1 0\n", 2, 13),
        ("teams 2\n  teams 3\n", 2, 3),
    ],
)
def test_parse_errors_point_at_token(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert (info.value.line, info.value.column) == (line, column)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("teams 3\ngame 0 1 1 0\ngame 0 2 1 0\n", "missing game 1-2"),
        ("teams 2\ngame 0 1 1 0\ngame 1 0 0 1\n", "duplicate game 0-1"),
        ("teams 2\ngame 0 1 1 1\n", "not in the scoring model"),
        ("teams 2\ngame 0 5 1 0\n", "out of range"),
        ("teams 2\ncoalition 0 0\ngame 0 1 1 0\n", "twice"),
        ("teams 2\nmodel 3 0:2 2:0\ngame 0 1 2 0\n", "model total 3"),
        ("teams 2\nmodel 2 2:0\ngame 0 1 2 0\n", "at least two outcomes"),
        ("teams 2\ngame 0 1 1 0\nseed 0 0\n", "every team exactly once"),
        ("", "missing 'teams'"),
    ],
)
def test_validation_errors(text, fragment):
    with pytest.raises(ValidationError, match=fragment):
        parse_instance(text)


def test_unknown_name():
    inst = parse_instance(HEADER + "game 0 1 1 0\n")
    with pytest.raises(ValidationError):
        inst.team_id("Nobody")
    with pytest.raises(ValidationError):
        inst.team_id("7")


def test_comments_and_blank_lines():
    inst = parse_instance("# header\n\nteams 2   # two teams\ngame 1 0 0 1  # stored as 0 beats 1\n")
    assert inst.tournament.beats(0, 1)


@given(st.integers(1, 7), st.integers(0, 2**32 - 1), st.integers(1, 3), st.booleans())
@settings(max_examples=60)
def test_round_trip(m, seed, n, named):
    rng = np.random.default_rng(seed)
    model = ScoringModel.linear(n)
    res = {}
    for i in range(m):
        for j in range(i + 1, m):
            a = int(rng.integers(0, n + 1))
            res[(i, j)] = (a, n - a)
    t = Tournament.from_results(m, res, model)
    co = frozenset(int(x) for x in rng.choice(m, size=int(rng.integers(0, m + 1)), replace=False))
    names = {v: f"team-{v}" for v in range(m)} if named else {}
    inst = InstanceFile(t, co, None, tuple(rng.permutation(m).tolist()), names)
    text = serialize_instance(inst)
    back = parse_instance(text)
    assert back.tournament == t
    assert back.coalition == co
    assert back.seed == inst.seed
    assert back.names == names
    assert serialize_instance(back) == text
