import numpy as np
import pytest

from rstre import component_statistics, coupled_domination_trial, explore_component, simulate_bp
from rstre.branching import bp_heights, domination_sample, height_tail
from rstre.errors import InvalidArgumentError


def test_bp_starts_with_one():
    for s in range(50):
        assert simulate_bp(50, 100, seed=s).generation_sizes[0] == 1


def test_bp_n_two_survival():
    h, _ = bp_heights(2, 40000, 500, seed=3)
    assert abs(np.mean(h >= 1) - 0.75) < 3 * np.sqrt(0.75 * 0.25 / 40000)


def test_bp_cap():
    run = simulate_bp(4, 3, seed=0)
    assert run.height <= 3
    h, capped = bp_heights(100, 2000, 5, seed=1)
    assert np.all(h[capped] == 5)


def test_height_tail_counts_capped_runs():
    tails = height_tail([1, 3, 5, 5], [False, False, True, True], [2, 4])
    assert tails[2][0] == 0.75 and tails[4][0] == 0.5
    with pytest.raises(InvalidArgumentError):
        height_tail([1, 5], [False, True], [5])


def test_exploration_single_vertex():
    log = explore_component(1, 0.5, 0, seed=1)
    assert log.component_of_start == [0]
    assert log.steps == 1 and log.eta.tolist() == [0]


def test_exploration_p_zero():
    log = explore_component(8, 0.0, 3, seed=1, full_run=True)
    assert log.component_of_start == [3]
    assert np.all(log.eta == 0)


def test_exploration_p_one():
    log = explore_component(8, 1.0, 0, seed=1)
    assert log.component_of_start == list(range(8))
    assert log.eta[0] == 7


def test_exploration_full_run_visits_everything():
    log = explore_component(200, 1 / 200, 5, seed=9, full_run=True)
    assert sorted(log.explored_order) == list(range(200))


def test_component_statistics_isolated():
    st = component_statistics(2, 40000, 1, seed=2)
    assert abs(st.rows[0].probability - 0.5) < 3 * np.sqrt(0.25 / 40000)
    assert st.rows[0].cycle_free_fraction == 1.0
    n = 1000
    st = component_statistics(n, 40000, 3, seed=4)
    iso = (1 - 1 / n) ** (n - 1)
    assert abs(st.rows[0].probability - iso) < 3.5 * np.sqrt(iso * (1 - iso) / 40000)


def test_component_statistics_range():
    with pytest.raises(InvalidArgumentError):
        component_statistics(1000, 10, 5, seed=1)


def test_domination():
    diam, height, _ = domination_sample(2000, 5000, seed=7)
    assert np.all(diam <= 2 * height)
    d, h2, ok = coupled_domination_trial(500, seed=3, p=0.0)
    assert d == 0 and ok
    for s in range(30):
        assert coupled_domination_trial(300, seed=s)[2]
