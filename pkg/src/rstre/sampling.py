"""Size-biased component draws, first repeat times and their exact law.

Drawing a uniform vertex and reporting its component picks component k with
probability ``|C_k| / n``.  For i.i.d. draws of this kind the chance of no
repeat among the first k draws is ``k! e_k(p)`` with ``e_k`` the elementary
symmetric polynomial of the probabilities.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, exp, factorial, sqrt

import numpy as np

from ._backend import kernels
from .disorder import ComponentDecomposition
from .errors import InvalidArgumentError, SizeLimitError

EXACT_COMPONENT_LIMIT = 20


@dataclass(frozen=True, eq=False)
class RepeatTrace:
    """Component ids drawn up to and including the first repeat.

    ``t_1`` counts draws from 1 and is None if ``max_len`` ran out first.
    """

    component_ids: np.ndarray
    t_1: int | None
    s_n: float


def s_statistic(decomp: ComponentDecomposition) -> float:
    sizes = decomp.sizes.astype(np.float64)
    return float(sqrt(np.dot(sizes, sizes)) / decomp.n)


def size_biased_stream(decomp: ComponentDecomposition, max_len, seed) -> RepeatTrace:
    if max_len < 1:
        raise InvalidArgumentError("max_len must be at least 1")
    ids = kernels.size_biased_stream(decomp.labels, decomp.num_components, int(max_len), int(seed))
    repeated = len(ids) >= 2 and ids[-1] in ids[:-1]
    return RepeatTrace(ids, len(ids) if repeated else None, s_statistic(decomp))


def first_repeat_times(decomp: ComponentDecomposition, n_streams, seed, max_len=None) -> np.ndarray:
    """t_1 for ``n_streams`` independent streams; 0 marks "no repeat within
    ``max_len`` draws" (by default ``components + 1``, which always repeats)."""
    if max_len is None:
        max_len = decomp.num_components + 1
    return kernels.first_repeat_times(decomp.labels, decomp.num_components,
                                      int(n_streams), int(max_len), int(seed))


def no_repeat_prob_exact(sizes, k, exact=False):
    """P(t_1 > k): no component drawn twice among the first k draws.

    Computed as ``k! e_k(p)`` through the recursion
    ``g_j <- g_j + j p_i g_{j-1}``, which keeps every ``g_j`` a probability
    so plain float summation is accurate.  ``exact=True`` returns a
    :class:`~fractions.Fraction` (at most 20 components).
    """
    sizes = [int(s) for s in sizes]
    if not sizes:
        raise InvalidArgumentError("sizes must be nonempty")
    if k < 0:
        raise InvalidArgumentError("k must be nonnegative")
    if k <= 1:
        return Fraction(1) if exact else 1.0
    if k > len(sizes):
        return Fraction(0) if exact else 0.0
    total = sum(sizes)
    if exact:
        if len(sizes) > EXACT_COMPONENT_LIMIT:
            raise SizeLimitError(f"exact mode supports at most {EXACT_COMPONENT_LIMIT} components")
        e = [Fraction(1)] + [Fraction(0)] * k
        for s in sizes:
            p = Fraction(s, total)
            for j in range(k, 0, -1):
                e[j] += p * e[j - 1]
        return factorial(k) * e[k]
    probs = np.asarray(sizes, dtype=np.float64) / total
    return kernels.no_repeat_dp(probs, int(k))


def repeat_envelope(r) -> float:
    """Survival envelope ``exp(-r**2 / 2)``."""
    if r < 0:
        raise InvalidArgumentError("r must be nonnegative")
    return exp(-r * r / 2.0)


def repeat_probe(decomp: ComponentDecomposition, r) -> float:
    """P(t_1 > ceil(r / s_n)) for this decomposition; a lower bound on
    P(s_n t_1 > r)."""
    k = ceil(r / s_statistic(decomp))
    return no_repeat_prob_exact(decomp.sizes, k)
