"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row reports the best-of-``repeat`` wall time per call for both backends
on identical inputs, and checks that the two produce the same result.
"""

import argparse
import timeit

import numpy as np

from axiombench import _purepy
from axiombench.signals import _fire_probs, _first_fire_prob

try:
    from axiombench import _speedups
except ImportError:
    _speedups = None


def cases(rng):
    u = rng.random((5000, 10))
    probs = _fire_probs(5000)
    first = _first_fire_prob(5000)
    items = _purepy.sample_channels(u.tolist(), probs.tolist(), first, True)
    a = rng.integers(0, 1 << 10, size=5000).tolist()
    b = rng.integers(0, 1 << 10, size=5000).tolist()
    diffs = rng.normal(size=400).tolist()
    return {
        "sample_channels 5000x10": (
            lambda m: m.sample_channels(u.tolist(), probs.tolist(), first, True),
            lambda m: m.sample_channels(u, probs, first, True)),
        "admissible 5000": (lambda m: m.admissible(items, True),) * 2,
        "match_count 5000": (lambda m: m.match_count(a, b, (1 << 10) - 1),) * 2,
        "signed_rank 400": (lambda m: m.signed_rank(diffs),) * 2,
    }


def best(fn, repeat):
    timer = timeit.Timer(fn)
    n, _ = timer.autorange()
    return min(timer.repeat(repeat, n)) / n


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _speedups is None:
        print("compiled extension not built; nothing to compare")
        return 1
    print(f"{'kernel':<26}{'python':>12}{'compiled':>12}{'speedup':>9}")
    for name, (py_call, c_call) in cases(np.random.default_rng(0)).items():
        assert py_call(_purepy) == c_call(_speedups), name
        tp = best(lambda: py_call(_purepy), args.repeat)
        tc = best(lambda: c_call(_speedups), args.repeat)
        print(f"{name:<26}{tp * 1e6:>10.1f}us{tc * 1e6:>10.1f}us{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
