"""Acceptance criteria, each at its stated sample size and tolerance.

Every test reports one PASS/FAIL line with the measured values; the lines
are repeated in the terminal summary.
"""
import subprocess
import sys
import time

import pytest

from rstre import verification as v

pytestmark = pytest.mark.slow


def _run(*checks):
    start = time.perf_counter()
    results = [c() for c in checks]
    return results, time.perf_counter() - start


def _detail(results, seconds, limit):
    parts = [f"{r.name} measured={v._fmt(r.measured)} threshold={r.threshold}" for r in results]
    return "; ".join(parts) + f"; runtime {seconds:.1f}s (limit {limit}s)"


def _assert(criterion, label, results, seconds, limit):
    ok = all(r.passed for r in results) and seconds < limit
    criterion(label, ok, _detail(results, seconds, limit))
    assert ok, _detail(results, seconds, limit)


def test_ac01_exact_ust_law(criterion):
    _assert(criterion, "AC1 exact UST law", *_run(v.check_ust_law), 10)


def test_ac02_km_distance_law(criterion):
    _assert(criterion, "AC2 K_m distance law", *_run(v.check_km_law_wilson, v.check_km_law_walk), 30)


def test_ac03_kirchhoff_identity(criterion):
    _assert(criterion, "AC3 Kirchhoff identity", *_run(v.check_kirchhoff_random), 10)


def test_ac04_repeat_oracle(criterion):
    _assert(criterion, "AC4 repeat-time oracle", *_run(v.check_repeat_oracle), 60)


def test_ac05_repeat_envelope(criterion):
    _assert(criterion, "AC5 repeat envelope", *_run(v.check_repeat_envelope, v.check_repeat_tightness), 300)


def test_ac06_diameter_large_gamma(criterion):
    _assert(criterion, "AC6 diameter scaling gamma=5", *_run(v.check_diameter_large_gamma), 1200)


def test_ac07_diameter_small_gamma(criterion):
    _assert(criterion, "AC7 diameter scaling gamma=-1", *_run(v.check_diameter_small_gamma), 1200)


def test_ac08_component_statistics(criterion):
    _assert(criterion, "AC8 component statistics", *_run(v.check_component_law, v.check_same_component), 300)


def test_ac09_bp_domination_and_tail(criterion):
    _assert(criterion, "AC9 BP domination and tail", *_run(v.check_bp_domination, v.check_bp_tail), 120)


def test_ac10_structural_properties(criterion):
    _assert(criterion, "AC10 structural properties",
            *_run(v.check_excess_diameter, v.check_bottleneck_fixtures, v.check_kirchhoff_random,
                  v.check_tree_validity), 30)


DETERMINISM_RUNS = [
    ["sweep-diameter", "--gamma", "5", "--n-grid", "512,1024", "--trials", "4", "--seed", "7"],
    ["sweep-diameter", "--gamma", "-1", "--n", "300", "--trials", "3", "--seed", "7", "--threads", "3"],
    ["sweep-repeat", "--n-grid", "1000,2000", "--trials", "5", "--seed", "3", "--format", "jsonl"],
    ["component-stats", "--n", "1024", "--trials", "2000", "--seed", "5"],
    ["verify", "oracles", "--seed", "1"],
]


@pytest.mark.parametrize("args", DETERMINISM_RUNS, ids=lambda a: a[0])
def test_ac11_determinism(criterion, tmp_path, args):
    outputs = []
    for rep in range(2):
        out = tmp_path / f"run{rep}.dat"
        proc = subprocess.run([sys.executable, "-m", "rstre.cli", *args, "--out", str(out)],
                              capture_output=True)
        outputs.append((proc.returncode, out.read_bytes(),
                        (tmp_path / f"run{rep}.dat.meta.json").read_bytes()))
    same = outputs[0] == outputs[1] and outputs[0][0] == 0
    criterion(f"AC11 determinism [{' '.join(args[:2])}]", same,
              f"exit={outputs[0][0]},{outputs[1][0]} data bytes={len(outputs[0][1])} identical={same}")
    assert same
