"""Binary inputs and sequences under the refractory constraint.

An input is a Python ``int`` whose bit ``i`` is signal channel ``i``; the
channel width ``L`` travels alongside it. A sequence is *admissible* when no
channel fires at two consecutive time steps (including the wrap-around pair
when the sequence is read cyclically).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import UsageError

BRUTE_FORCE_LIMIT = 24


def make_rng(seed) -> np.random.Generator:
    """Deterministic generator; ``seed`` may be an int or a sequence of ints."""
    return np.random.default_rng(seed)


def check_input(x: int, width: int) -> int:
    if not isinstance(x, (int, np.integer)) or x < 0 or x >> width:
        raise UsageError(f"input {x!r} is not a {width}-bit pattern")
    return int(x)


def parse_input(bits: str) -> int:
    """``"1010"`` -> input with channels 0 and 2 active (leftmost char is channel 0)."""
    if not bits or set(bits) - {"0", "1"}:
        raise UsageError(f"not a bit string: {bits!r}")
    return sum(1 << i for i, ch in enumerate(bits) if ch == "1")


def format_input(x: int, width: int) -> str:
    return "".join("1" if x >> i & 1 else "0" for i in range(width))


@dataclass(frozen=True)
class Sequence:
    items: tuple
    width: int
    cyclic: bool = False

    def __post_init__(self):
        if self.width < 1:
            raise UsageError("width must be at least 1")
        object.__setattr__(self, "items", tuple(int(x) for x in self.items))
        for x in self.items:
            check_input(x, self.width)

    @classmethod
    def parse(cls, patterns, cyclic=False):
        patterns = list(patterns)
        if not patterns:
            raise UsageError("cannot infer width of an empty sequence")
        widths = {len(p) for p in patterns}
        if len(widths) != 1:
            raise UsageError(f"mixed input widths {sorted(widths)}")
        return cls(tuple(parse_input(p) for p in patterns), widths.pop(), cyclic)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __add__(self, other):
        if not isinstance(other, Sequence) or other.width != self.width:
            return NotImplemented
        return Sequence(self.items + other.items, self.width, self.cyclic)

    def format(self):
        return [format_input(x, self.width) for x in self.items]


def overlap(a: int, b: int, width: int | None = None) -> int:
    """Number of channels active in both ``a`` and ``b``."""
    if width is not None:
        check_input(a, width)
        check_input(b, width)
    return (a & b).bit_count()


def is_admissible(s, cyclic: bool | None = None) -> bool:
    """Refractory check; a length-1 cyclic sequence is admissible only if all-zero."""
    if cyclic is None:
        cyclic = getattr(s, "cyclic", False)
    items = list(s)
    if not items:
        raise UsageError("admissibility is defined for nonempty sequences only")
    return kernels.admissible(items, cyclic, getattr(s, "width", 0))


# Exact counts. ``F`` and ``Lucas`` use the standard indexing F_0 = 0, L_0 = 2.

@lru_cache(maxsize=None)
def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def lucas(n: int) -> int:
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def count_admissible(width: int, length: int, cyclic: bool) -> int:
    """Number of admissible sequences of ``length`` inputs of ``width`` channels.

    Channels are independent under the refractory constraint, so the total is
    the per-channel path count raised to ``width``: F(length + 2) for linear
    sequences, Lucas(length) for cyclic ones.
    """
    if width < 1 or length < 1:
        raise UsageError("width and length must be positive")
    per_channel = lucas(length) if cyclic else fibonacci(length + 2)
    return per_channel ** width


def brute_count_admissible(width: int, length: int, cyclic: bool) -> int:
    """Count admissible sequences by enumerating all 2**(width*length) candidates."""
    if width < 1 or length < 1:
        raise UsageError("width and length must be positive")
    if width * length > BRUTE_FORCE_LIMIT:
        raise UsageError(f"refusing to enumerate 2**{width * length} sequences")
    patterns = range(1 << width)
    return sum(
        1
        for items in itertools.product(patterns, repeat=length)
        if _admissible_reference(items, cyclic)
    )


def _admissible_reference(items, cyclic):
    pairs = zip(items, items[1:] + items[:1] if cyclic else items[1:])
    return all(a & b == 0 for a, b in pairs)


# Sampling tables. ``_paths(r)`` is the number of linear single-channel paths
# of length r (defined for r >= -1 so that segment boundaries need no special
# cases); a free channel with r positions left fires with probability
# _paths(r - 2) / _paths(r).

_paths_cache = [1, 1]  # r = -1, 0


def _paths(r: int) -> int:
    while len(_paths_cache) < r + 2:
        _paths_cache.append(_paths_cache[-1] + _paths_cache[-2])
    return _paths_cache[r + 1]


@lru_cache(maxsize=64)
def _fire_probs(length: int) -> np.ndarray:
    probs = np.zeros(length + 1)
    for r in range(1, length + 1):
        probs[r] = _paths(r - 2) / _paths(r)
    probs.flags.writeable = False
    return probs


def _first_fire_prob(length: int) -> float:
    if length < 2:
        return 0.0
    return _paths(length - 3) / (_paths(length - 1) + _paths(length - 3))


def random_admissible(rng: np.random.Generator, length: int, width: int,
                      cyclic: bool = False) -> Sequence:
    """Uniform draw from the admissible sequences of the given shape.

    Each channel is sampled independently, left to right, with firing
    probabilities weighted by the number of admissible completions.
    """
    if length < 1:
        raise UsageError("length must be at least 1")
    u = rng.random((length, width))
    items = kernels.sample_channels(u, _fire_probs(length), _first_fire_prob(length), cyclic)
    return Sequence(tuple(items), width, cyclic)


def random_admissible_items(rng, length, width, cyclic=False):
    """Like :func:`random_admissible` but returns a plain list (no validation)."""
    u = rng.random((length, width))
    return kernels.sample_channels(u, _fire_probs(length), _first_fire_prob(length), cyclic)


def match_score(alpha, beta, width: int) -> int:
    """Count of agreeing bit positions between two equal-shape sequences."""
    a = list(alpha)
    b = list(beta)
    if len(a) != len(b):
        raise UsageError(f"length mismatch: {len(a)} != {len(b)}")
    for x in itertools.chain(a, b):
        check_input(x, width)
    return kernels.match_count(a, b, width)


def corrupt(x: int, rng: np.random.Generator, width: int) -> int:
    """Uniform draw over all ``2**width`` patterns other than ``x``."""
    check_input(x, width)
    if width == 1:
        return x ^ 1
    while True:
        y = uniform_input(rng, width)
        if y != x:
            return y


def uniform_input(rng: np.random.Generator, width: int) -> int:
    if width <= 62:
        return int(rng.integers(0, 1 << width))
    return int.from_bytes(rng.bytes((width + 7) // 8), "little") & ((1 << width) - 1)


def uniform_inputs(rng: np.random.Generator, n: int, width: int) -> list:
    """``n`` independent uniform patterns (refractory constraint not applied)."""
    if width <= 62:
        return rng.integers(0, 1 << width, size=n).tolist()
    return [uniform_input(rng, width) for _ in range(n)]
