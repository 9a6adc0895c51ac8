from fractions import Fraction
from math import exp, sqrt

import numpy as np
import pytest

from rstre import DisorderSample, decompose, no_repeat_prob_exact, repeat_envelope, s_statistic, size_biased_stream
from rstre.disorder import path_fixture
from rstre.errors import InvalidArgumentError, SizeLimitError
from rstre.sampling import first_repeat_times, repeat_probe


def test_first_draw_is_size_biased():
    d = decompose(path_fixture([2, 1, 1]))
    first = [size_biased_stream(d, 1, seed=s).component_ids[0] for s in range(20000)]
    assert abs(np.mean(np.array(first) == 0) - 0.5) < 0.015


def test_singletons_uniform():
    d = decompose(DisorderSample.from_edges(4, []))
    draws = np.concatenate([size_biased_stream(d, 10, seed=s).component_ids for s in range(2000)])
    freq = np.bincount(draws, minlength=4) / len(draws)
    assert np.allclose(freq, 0.25, atol=0.01)


def test_single_component_repeats_immediately():
    d = decompose(path_fixture([7]))
    assert size_biased_stream(d, 5, seed=1).t_1 == 2
    assert np.all(first_repeat_times(d, 100, seed=2) == 2)


def test_s_statistic():
    assert s_statistic(decompose(DisorderSample.from_edges(16, []))) == pytest.approx(16 ** -0.5)
    assert s_statistic(decompose(path_fixture([9]))) == pytest.approx(1.0)
    assert s_statistic(decompose(path_fixture([2, 1, 1]))) == pytest.approx(sqrt(6) / 4)


def test_no_repeat_exact_values():
    assert no_repeat_prob_exact([2, 1, 1], 2, exact=True) == Fraction(5, 8)
    assert no_repeat_prob_exact([3, 2, 2], 1) == 1.0
    assert no_repeat_prob_exact([3, 2, 2], 4) == 0.0
    birthday = np.prod([1 - j / 365 for j in range(23)])
    assert no_repeat_prob_exact([1] * 365, 23) == pytest.approx(birthday, abs=1e-12)
    assert abs(birthday - 0.4927) < 1e-4


def test_no_repeat_errors():
    with pytest.raises(InvalidArgumentError):
        no_repeat_prob_exact([1, 1], -1)
    with pytest.raises(SizeLimitError):
        no_repeat_prob_exact([1] * 30, 3, exact=True)


def test_exact_and_float_agree():
    sizes = [5, 4, 4, 2, 1, 1, 1]
    for k in range(1, 8):
        assert float(no_repeat_prob_exact(sizes, k, exact=True)) == pytest.approx(
            no_repeat_prob_exact(sizes, k), rel=1e-12)


def test_repeat_envelope():
    assert repeat_envelope(0) == 1.0
    assert repeat_envelope(1) == pytest.approx(exp(-0.5))
    assert repeat_envelope(2) == pytest.approx(exp(-2))
    with pytest.raises(InvalidArgumentError):
        repeat_envelope(-0.1)


def test_empirical_matches_oracle():
    sizes = [6, 3, 3, 2, 1, 1, 1, 1]
    d = decompose(path_fixture(sizes))
    t1 = first_repeat_times(d, 50000, seed=4)
    for k in range(1, 8):
        exact = no_repeat_prob_exact(sizes, k)
        se = sqrt(max(exact * (1 - exact), 1e-12) / 50000)
        assert abs(np.mean(t1 > k) - exact) < 4 * se + 1e-12


def test_repeat_probe_at_zero():
    d = decompose(path_fixture([4, 2, 1]))
    assert repeat_probe(d, 0) == 1.0
