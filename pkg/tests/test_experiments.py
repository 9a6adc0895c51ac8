from math import log

import numpy as np
import pytest

from rstre import ExperimentConfig, estimate_exponent, run_diameter_sweep, run_repeat_sweep
from rstre.errors import InvalidArgumentError
from rstre.experiments import ResultRecord, fit_loglog, run_component_stats, run_trial


def test_record_count_and_order():
    cfg = ExperimentConfig(mode="diameter", n_grid=(64, 128), trials_per_n=3, gamma=5.0)
    recs = run_diameter_sweep(cfg)
    assert len(recs) == 6
    assert [(r.n, r.trial) for r in recs] == [(n, t) for n in (64, 128) for t in range(3)]
    assert all(r.diameter <= r.n - 1 for r in recs)
    assert all(r.t_1 is None for r in recs)


def test_threads_do_not_change_records():
    cfg = ExperimentConfig(mode="diameter", n_grid=(100, 200), trials_per_n=4, gamma=-1.0)
    a = [r.as_row() for r in run_diameter_sweep(cfg)]
    b = [r.as_row() for r in run_diameter_sweep(cfg.replace(threads=3))]
    for row in a + b:
        row.pop("elapsed_ms")
    assert a == b


def test_trial_replay_from_seed():
    cfg = ExperimentConfig(mode="diameter", n_grid=(300,), trials_per_n=3)
    recs = run_diameter_sweep(cfg)
    again = run_trial(cfg, 300, 2, seed=recs[2].seed)
    assert again.diameter == recs[2].diameter


def test_partial_cover_is_flagged():
    cfg = ExperimentConfig(mode="diameter", n_grid=(300,), trials_per_n=2, gamma=5.0,
                           sampler="wilson", max_steps=10)
    recs = run_diameter_sweep(cfg)
    assert len(recs) == 2 and all(r.partial_cover and r.flagged for r in recs)


def test_single_component_fixture_repeats_at_two():
    cfg = ExperimentConfig(mode="repeat", n_grid=(50,), trials_per_n=5, fixture="single-component")
    assert all(r.t_1 == 2 for r in run_repeat_sweep(cfg))


def test_birthday_fixture():
    cfg = ExperimentConfig(mode="repeat", n_grid=(365,), trials_per_n=2, fixture="singletons",
                           k_probes=(23,))
    recs = run_repeat_sweep(cfg)
    assert recs[0].extras["p_no_repeat_k23"] == pytest.approx(0.4927, abs=1e-4)


def test_config_validation():
    with pytest.raises(InvalidArgumentError):
        ExperimentConfig(n_grid=(10, 5))
    with pytest.raises(InvalidArgumentError):
        ExperimentConfig(trials_per_n=0)
    with pytest.raises(InvalidArgumentError):
        ExperimentConfig(mode="nope")


def test_exponent_exact_power_laws():
    xs = [2.0 ** k for k in range(8, 14)]
    recs = [ResultRecord("diameter", int(x), 0.0, 0, 0, diameter=x ** 0.5) for x in xs]
    slope, _, _ = estimate_exponent(recs)
    assert abs(slope - 0.5) < 1e-9
    slope, _, _ = fit_loglog(xs, [7 * x ** (1 / 3) for x in xs])
    assert abs(slope - 1 / 3) < 1e-9
    grid = [2.0 ** k for k in range(12, 19)]
    slope, _, _ = fit_loglog(grid, [x ** (1 / 3) * log(x) for x in grid])
    assert 0.33 < slope < 0.45


def test_exponent_needs_two_points():
    recs = [ResultRecord("diameter", 100, 0.0, t, 0, diameter=5) for t in range(3)]
    with pytest.raises(InvalidArgumentError):
        estimate_exponent(recs)


def test_flagged_records_excluded_from_fit():
    recs = [ResultRecord("diameter", n, 0.0, 0, 0, diameter=n) for n in (10, 100)]
    recs.append(ResultRecord("diameter", 1000, 0.0, 0, 0, diameter=1, partial_cover=True))
    recs.append(ResultRecord("diameter", 1000, 0.0, 1, 0, diameter=1000))
    assert estimate_exponent(recs)[0] == pytest.approx(1.0)


def test_component_stats_rows():
    cfg = ExperimentConfig(mode="component-stats", n_grid=(1024,), trials_per_n=500)
    rows = run_component_stats(cfg)
    assert [r["j"] for r in rows] == [1, 2, 3, 4]
    assert np.isclose(rows[0]["scaled_probability"], rows[0]["probability"])
