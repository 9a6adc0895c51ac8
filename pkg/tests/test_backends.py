"""The compiled kernels and their pure-Python twins share one generator,
so identical inputs must give identical outputs."""
import numpy as np
import pytest

from rstre import decompose, sample_disorder
from rstre._backend import BACKEND, get_kernels
from rstre.disorder import path_fixture

py = get_kernels("python")
try:
    cy = get_kernels("cython")
except ImportError:  # pragma: no cover - extension not built
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def _same(a, b):
    if isinstance(a, tuple):
        assert len(a) == len(b)
        for x, y in zip(a, b):
            _same(x, y)
    elif isinstance(a, np.ndarray):
        assert np.array_equal(a, np.asarray(b))
    else:
        assert a == b


def test_backend_reported():
    assert BACKEND in ("cython", "python")


@needs_ext
@pytest.mark.parametrize("kind,arg1,arg2", [(0, 0, 0.0), (1, 0, 0.0), (2, 37, 0.0), (3, 1000, 0.001),
                                            (3, 50, 0.5), (3, 10**6, 1e-6)])
def test_generator_parity(kind, arg1, arg2):
    _same(py.rng_sample(99, kind, 500, arg1, arg2), cy.rng_sample(99, kind, 500, arg1, arg2))


@pytest.fixture(scope="module")
def disorder():
    s = sample_disorder(300, 5.0, seed=12)
    return s, decompose(s)


@needs_ext
def test_wilson_parity():
    s = sample_disorder(60, -1.0, seed=4)
    indptr, indices = s.adjacency
    args = (60, indptr, indices, s.heavy_weight, 5, 3, 10**7)
    _same(py.wilson_two_valued(*args), cy.wilson_two_valued(*args))


@needs_ext
def test_assembly_and_walk_parity(disorder):
    s, d = disorder
    args = (s.n, d.labels, d.sizes, d.offsets, d.members, d.indptr, d.indices, d.excess, 8, 10**7)
    _same(py.assemble_contracted(*args), cy.assemble_contracted(*args))
    args = (s.n, d.labels, d.sizes, d.offsets, d.members, 0, 9, 10**6)
    _same(py.aldous_broder_contracted(*args), cy.aldous_broder_contracted(*args))


@needs_ext
def test_metric_parity(disorder):
    s, d = disorder
    _same(py.bfs_distances(d.indptr, d.indices, 0), cy.bfs_distances(d.indptr, d.indices, 0))
    args = (d.indptr, d.indices, d.offsets, d.members, d.excess, 50)
    _same(py.component_diameters(*args), cy.component_diameters(*args))
    path = decompose(path_fixture([40]))
    _same(py.tree_diameter(path.indptr, path.indices), cy.tree_diameter(path.indptr, path.indices))


@needs_ext
def test_stream_parity(disorder):
    _, d = disorder
    k = d.num_components
    _same(py.size_biased_stream(d.labels, k, 30, 3), cy.size_biased_stream(d.labels, k, 30, 3))
    _same(py.first_repeat_times(d.labels, k, 200, k + 1, 3), cy.first_repeat_times(d.labels, k, 200, k + 1, 3))
    probs = d.sizes / d.n
    assert py.no_repeat_dp(probs, 10) == pytest.approx(cy.no_repeat_dp(probs, 10), rel=1e-12)


@needs_ext
def test_branching_parity():
    _same(py.bp_heights(1000, 300, 200, 4), cy.bp_heights(1000, 300, 200, 4))
    _same(py.bp_generations(1000, 200, 5), cy.bp_generations(1000, 200, 5))
    _same(py.exploration_trials(2000, 1 / 2000, 300, 6), cy.exploration_trials(2000, 1 / 2000, 300, 6))
    _same(py.domination_trials(2000, 1 / 2000, 300, 400, 7), cy.domination_trials(2000, 1 / 2000, 300, 400, 7))


def test_fallback_selected_by_environment():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-c", "import rstre; print(rstre.BACKEND)"],
                         env={**__import__("os").environ, "RSTRE_BACKEND": "python"},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
def test_benchmark_runs(capsys):
    import runpy
    from pathlib import Path

    bench = runpy.run_path(str(Path(__file__).parents[1] / "benchmarks" / "bench_kernels.py"))
    bench["main"](["--repeat", "1", "--scale", "0.01"])
    assert "domination_trials" in capsys.readouterr().out
