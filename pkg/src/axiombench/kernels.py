"""Backend selection for the numeric kernels.

The compiled ``_speedups`` extension is used when it imports; otherwise, or
when ``AXIOMBENCH_PURE_PYTHON`` is set to a non-empty value, the pure-Python
module is used. Inputs wider than ``MAX_COMPILED_WIDTH`` bits always take the
pure-Python path because the compiled kernels work on 64-bit words.
"""

import os

import numpy as np

from . import _purepy

MAX_COMPILED_WIDTH = 62

_compiled = None
if not os.environ.get("AXIOMBENCH_PURE_PYTHON"):
    try:
        from . import _speedups as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def _impl(width):
    if _compiled is not None and width <= MAX_COMPILED_WIDTH:
        return _compiled
    return _purepy


def sample_channels(u, probs, first_prob, cyclic):
    width = u.shape[1] if u.ndim == 2 and u.shape[0] else 0
    impl = _impl(width)
    if impl is _purepy:
        return _purepy.sample_channels(u.tolist(), probs.tolist(), first_prob, cyclic)
    return impl.sample_channels(np.ascontiguousarray(u, dtype=np.float64),
                                np.ascontiguousarray(probs, dtype=np.float64),
                                float(first_prob), bool(cyclic))


def admissible(items, cyclic, width=0):
    if not width and items:
        width = max(items).bit_length()
    return _impl(width).admissible(items, bool(cyclic))


def match_count(a, b, width):
    mask = (1 << width) - 1
    return _impl(width).match_count(a, b, mask)


def signed_rank(diffs):
    impl = _compiled if _compiled is not None else _purepy
    return impl.signed_rank([float(d) for d in diffs])
