import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats as sps

from axiombench.errors import IndeterminateResult, UsageError
from axiombench.stats import mean, normal_upper_tail, wilcoxon_exact_p, wilcoxon_one_sided_z


@pytest.mark.parametrize("n,z", [(5, 2.0226), (10, 2.8031)])
def test_all_positive_hand_values(n, z):
    assert wilcoxon_one_sided_z(range(1, n + 1)) == pytest.approx(z, abs=5e-5)


def test_exact_p_hand_values():
    assert wilcoxon_exact_p([1, 2, 3, 4, 5]) == 1 / 32
    assert wilcoxon_exact_p([-1, -2, -3, -4, -5]) == 1.0
    # W+ = 3 for ranks {1,2} positive of n=3: subsets with sum >= 3 are 5 of 8
    assert wilcoxon_exact_p([1, 2, -3]) == 5 / 8


def test_zeros_are_discarded():
    assert wilcoxon_one_sided_z([0, 0, 1, 2, 3, 4, 5]) == wilcoxon_one_sided_z([1, 2, 3, 4, 5])


def test_indeterminate_inputs():
    with pytest.raises(IndeterminateResult):
        wilcoxon_one_sided_z([0, 0, 1, 2, 3, 4])
    with pytest.raises(UsageError):
        wilcoxon_one_sided_z([1, 2, 3, 4, float("nan")])
    with pytest.raises(UsageError):
        wilcoxon_exact_p([1, 1, 2])


@given(st.lists(st.integers(-8, 8), min_size=5, max_size=60))
@settings(max_examples=300)
def test_z_matches_scipy_normal_approximation(diffs):
    if sum(d != 0 for d in diffs) < 5 or len({abs(d) for d in diffs if d}) < 2:
        return
    res = sps.wilcoxon(diffs, alternative="greater", zero_method="wilcox",
                       correction=False, method="approx")
    z = wilcoxon_one_sided_z(diffs)
    assert normal_upper_tail(z) == pytest.approx(res.pvalue, rel=1e-7, abs=1e-12)


def test_exact_p_matches_scipy_exact():
    rng = np.random.default_rng(4)
    for _ in range(50):
        d = rng.normal(0.3, 1, size=int(rng.integers(5, 12)))
        ref = sps.wilcoxon(d, alternative="greater", method="exact").pvalue
        assert wilcoxon_exact_p(d) == pytest.approx(ref, abs=1e-12)


def test_normal_tail():
    assert normal_upper_tail(0) == 0.5
    assert normal_upper_tail(3.090) == pytest.approx(0.001, abs=2e-6)


def test_mean():
    assert mean([1, 2, 3, 4]) == 2.5
    assert mean(x / 10 for x in range(11)) == 0.5
    with pytest.raises(UsageError):
        mean([])
    assert math.isclose(mean([0.1] * 10), 0.1)
