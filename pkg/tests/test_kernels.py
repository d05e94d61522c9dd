import numpy as np
import pytest

from tourmanip import Tournament
from tourmanip.core import member_mask
from tourmanip import kernels

IMPLS = kernels.implementations()


def test_python_fallback_always_present():
    assert "python" in IMPLS
    assert kernels.BACKEND in IMPLS


@pytest.mark.skipif("cython" not in IMPLS, reason="compiled extension not built")
@pytest.mark.parametrize("seed", range(25))
def test_cup_dp_parity(seed):
    rng = np.random.default_rng(seed)
    m = 1 << int(rng.integers(0, 7))
    t = Tournament.random(m, rng)
    co = rng.choice(m, size=int(rng.integers(0, m + 1)), replace=False)
    leaves = rng.permutation(m).astype(np.int64)
    args = (t.beats_matrix(), member_mask(co, m), leaves)
    c1, ch1, n1 = kernels.cup_dp(*args, impl="python")
    c2, ch2, n2 = kernels.cup_dp(*args, impl="cython")
    np.testing.assert_array_equal(c1, c2)
    np.testing.assert_array_equal(ch1, ch2)
    assert n1 == n2


@pytest.mark.skipif("cython" not in IMPLS, reason="compiled extension not built")
@pytest.mark.parametrize("seed", range(25))
def test_max_points_parity(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, 40))
    n = int(rng.integers(1, 4))
    a = rng.integers(0, n + 1, size=(m, m))
    p = np.triu(a, 1) + np.tril(n - a.T, -1)
    np.fill_diagonal(p, 0)
    mask = member_mask(rng.choice(m, size=int(rng.integers(0, m + 1)), replace=False), m)
    np.testing.assert_array_equal(
        kernels.max_points(p, mask, n, impl="python"), kernels.max_points(p, mask, n, impl="cython")
    )


def test_max_points_values():
    p = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    # 0 beats 1, 1 beats 2, 2 beats 0; member 1 can only concede its win over 2
    for impl in IMPLS:
        out = kernels.max_points(p, member_mask([1], 3), 1, impl=impl)
        assert out.tolist() == [1, 1, 2]


def test_unknown_impl():
    with pytest.raises((KeyError, ValueError)):
        kernels.cup_dp(np.zeros((1, 1), np.uint8), np.zeros(1, np.uint8), np.zeros(1, np.int64), impl="fortran")
