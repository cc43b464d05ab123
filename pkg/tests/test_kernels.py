import os
import subprocess
import sys
from collections import Counter

import numpy as np
from hypothesis import given, settings, strategies as st

from axiombench import _purepy, kernels
from axiombench.signals import _fire_probs, _first_fire_prob


def _oracle_signed_rank(diffs):
    nz = [d for d in diffs if d != 0]
    mags = sorted(abs(d) for d in nz)
    ranks = {}
    i = 0
    while i < len(mags):
        j = i
        while j < len(mags) and mags[j] == mags[i]:
            j += 1
        ranks[mags[i]] = (i + 1 + j) / 2
        i = j
    tie_sum = sum(t ** 3 - t for t in Counter(mags).values())
    return len(nz), sum(ranks[abs(d)] for d in nz if d > 0), tie_sum


@given(st.lists(st.integers(-6, 6).map(float), max_size=40))
@settings(max_examples=300)
def test_signed_rank_against_oracle(backend, diffs):
    n, w, t = backend.signed_rank(diffs)
    on, ow, ot = _oracle_signed_rank(diffs)
    assert (n, t) == (on, ot)
    assert abs(w - ow) < 1e-9


@given(st.lists(st.integers(0, 2 ** 10 - 1), max_size=20), st.booleans())
@settings(max_examples=300)
def test_admissible_against_reference(backend, items, cyclic):
    pairs = zip(items, items[1:] + items[:1] if cyclic else items[1:])
    assert backend.admissible(items, cyclic) == all(a & b == 0 for a, b in pairs)


@given(st.lists(st.tuples(st.integers(0, 2 ** 12 - 1), st.integers(0, 2 ** 12 - 1)), max_size=30))
def test_match_count_against_strings(backend, pairs):
    a = [p for p, _ in pairs]
    b = [q for _, q in pairs]
    expected = sum(format(x, "012b")[i] == format(y, "012b")[i]
                   for x, y in pairs for i in range(12))
    assert backend.match_count(a, b, (1 << 12) - 1) == expected


@given(st.integers(1, 15), st.integers(1, 12), st.booleans(), st.integers(0, 2 ** 31))
@settings(max_examples=200)
def test_backends_sample_identically(length, width, cyclic, seed):
    u = np.random.default_rng(seed).random((length, width))
    probs = _fire_probs(length)
    first = _first_fire_prob(length)
    expected = _purepy.sample_channels(u.tolist(), probs.tolist(), first, cyclic)
    assert kernels.sample_channels(u, probs, first, cyclic) == expected


def test_wide_inputs_fall_back_to_python():
    big = [1 << 70, 1 << 69]
    assert kernels.admissible(big, False, width=71)
    assert kernels.match_count(big, big, 71) == 142


def test_environment_forces_pure_python():
    env = dict(os.environ, AXIOMBENCH_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import axiombench.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
