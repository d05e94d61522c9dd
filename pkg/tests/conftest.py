from pathlib import Path

import numpy as np
import pytest

from tourmanip import Tournament, parse_instance

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def five_teams():
    return parse_instance((FIXTURES / "five_teams.txt").read_text())


@pytest.fixture
def linear4():
    """Teams 0 > 1 > 2 > 3: every lower id beats every higher id."""
    return Tournament.from_order([0, 1, 2, 3])


def random_instance(rng, m, max_coalition):
    t = Tournament.random(m, rng)
    size = int(rng.integers(0, max_coalition + 1))
    co = frozenset(rng.choice(m, size=size, replace=False).tolist())
    return t, co
