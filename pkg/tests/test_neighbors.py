import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from epiecon.neighbors import (
    StaticBinIndex,
    grid_pairs,
    grid_pairs_between,
    naive_pairs,
    naive_pairs_between,
)


def as_set(pairs):
    return {(int(a), int(b)) for a, b in pairs}


def random_points(rng, n, spread=50.0, cluster=False):
    if cluster and n >= 4:
        centers = rng.uniform(0, spread, (max(n // 4, 1), 2))
        picks = rng.integers(0, len(centers), n)
        pts = centers[picks] + rng.normal(0, 0.5, (n, 2))
    else:
        pts = rng.uniform(0, spread, (n, 2))
    return pts[:, 0].copy(), pts[:, 1].copy()


@pytest.mark.parametrize("force", [False, True])
def test_pairs_boundary_inclusive(force):
    x = np.array([0.0, 1.0, 2.01])
    y = np.array([0.0, 0.0, 0.0])
    got = as_set(grid_pairs(x, y, 1.0, force_grid=force))
    assert got == {(0, 1)}


@pytest.mark.parametrize("force", [False, True])
def test_pairs_match_naive_on_random_sets(force):
    rng = np.random.default_rng(5)
    for trial in range(60):
        n = int(rng.integers(2, 90))
        x, y = random_points(rng, n, cluster=bool(trial % 2))
        r = float(rng.uniform(0.2, 8.0))
        assert as_set(grid_pairs(x, y, r, force_grid=force)) == naive_pairs(
            x, y, r
        )


def test_pairs_with_duplicates_and_zero_radius():
    x = np.array([1.0, 1.0, 1.0, 3.0])
    y = np.array([2.0, 2.0, 2.0, 2.0])
    assert as_set(grid_pairs(x, y, 0.0)) == {(0, 1), (0, 2), (1, 2)}
    assert as_set(grid_pairs(x, y, 0.0)) == naive_pairs(x, y, 0.0)


def test_pairs_rejects_negative_radius():
    with pytest.raises(ValueError):
        grid_pairs(np.zeros(3), np.zeros(3), -1.0)


def test_pairs_between_matches_naive():
    rng = np.random.default_rng(11)
    for force in (False, True):
        for _ in range(40):
            na = int(rng.integers(1, 70))
            nb = int(rng.integers(1, 40))
            xa, ya = random_points(rng, na)
            xb, yb = random_points(rng, nb)
            r = float(rng.uniform(0.3, 12.0))
            got = as_set(grid_pairs_between(xa, ya, xb, yb, r,
                                            force_grid=force))
            assert got == naive_pairs_between(xa, ya, xb, yb, r)


def test_static_index_matches_between_kernel():
    rng = np.random.default_rng(23)
    xb, yb = random_points(rng, 60, spread=100.0)
    index = StaticBinIndex(xb, yb, 5.0)
    for _ in range(25):
        na = int(rng.integers(1, 80))
        # Include queries far outside the indexed extent on purpose.
        xa = rng.uniform(-80, 220, na)
        ya = rng.uniform(-80, 220, na)
        got = as_set(index.query(xa, ya))
        assert got == naive_pairs_between(xa, ya, xb, yb, 5.0)


def test_empty_inputs():
    assert len(grid_pairs([], [], 1.0)) == 0
    assert len(grid_pairs_between([], [], [1.0], [1.0], 1.0)) == 0
    assert len(grid_pairs_between([1.0], [1.0], [], [], 1.0)) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(2, 50),
       st.floats(0.1, 6.0, allow_nan=False))
def test_pairs_property_random(seed, n, r):
    rng = np.random.default_rng(seed)
    x, y = random_points(rng, n, spread=20.0, cluster=True)
    assert as_set(grid_pairs(x, y, r, force_grid=True)) == naive_pairs(x, y, r)
