"""Signed-rank statistics and averaging used by the denoising,
generalisation and liveness tests."""

from __future__ import annotations

import itertools
import math

from . import kernels
from .errors import IndeterminateResult, UsageError

MIN_NONZERO = 5
EXACT_LIMIT = 14


def _finite(diffs):
    vals = [float(d) for d in diffs]
    if not all(math.isfinite(v) for v in vals):
        raise UsageError("differences must be finite")
    return vals


def wilcoxon_one_sided_z(diffs) -> float:
    """Normal-approximation z for H1: differences tend to be positive.

    Zero differences are discarded, ties get average ranks and the variance
    carries the usual tie correction. No continuity correction.
    """
    n, w_plus, tie_sum = kernels.signed_rank(_finite(diffs))
    if n < MIN_NONZERO:
        raise IndeterminateResult(f"only {n} nonzero differences (need {MIN_NONZERO})")
    mean = n * (n + 1) / 4.0
    var = n * (n + 1) * (2 * n + 1) / 24.0 - tie_sum / 48.0
    if var <= 0:
        raise IndeterminateResult("all nonzero differences are tied")
    return (w_plus - mean) / math.sqrt(var)


def normal_upper_tail(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def wilcoxon_exact_p(diffs) -> float:
    """Exact one-sided p-value P(W+ >= observed) by enumerating sign flips.

    Only for small untied samples; ranks are assigned independently of the
    compiled kernels so this can serve as an oracle for the z approximation.
    """
    vals = [v for v in _finite(diffs) if v != 0.0]
    n = len(vals)
    if n == 0:
        raise UsageError("no nonzero differences")
    if n > EXACT_LIMIT:
        raise UsageError(f"exact enumeration limited to {EXACT_LIMIT} values, got {n}")
    mags = [abs(v) for v in vals]
    if len(set(mags)) != n:
        raise UsageError("tied absolute differences are not supported")
    order = sorted(range(n), key=mags.__getitem__)
    rank = {idx: r + 1 for r, idx in enumerate(order)}
    observed = sum(rank[i] for i, v in enumerate(vals) if v > 0)
    ranks = list(range(1, n + 1))
    hits = 0
    for signs in itertools.product((0, 1), repeat=n):
        if sum(r for r, s in zip(ranks, signs) if s) >= observed:
            hits += 1
    return hits / 2 ** n


def mean(values) -> float:
    vals = list(values)
    if not vals:
        raise UsageError("mean of an empty list")
    return math.fsum(vals) / len(vals)
