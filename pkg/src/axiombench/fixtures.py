"""Deliberately deficient reference models.

None of these is meant to pass the benchmark. Each one pins down a failure
mode so that every axiom test is seen both failing and passing on some
fixture; the resulting matrix is the harness's regression oracle.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from .errors import UsageError
from .model_api import register_model

VARIANTS = (
    "constant_zero",
    "echo",
    "stochastic",
    "counter",
    "commutative",
    "memoriser_unbounded",
    "memoriser_bounded",
    "slowdown",
)

BOUNDED_CAPACITY = 256
BOUNDED_ORDER = 4
UNBOUNDED_ORDER = 8
_COUNT_BASE = 1 << 40  # keeps every count a heap int so increments cost the same

# Axioms each variant fails under the default configuration (L=10, N=7) at
# smoke scale. Regenerate with :func:`observed_failures`.
EXPECTED_FAILURES = {
    "constant_zero": frozenset({3, 4, 6, 7, 8, 9, 10}),
    "echo": frozenset({6, 7, 8, 9, 10}),
    "stochastic": frozenset({1, 2, 6, 7, 8, 9, 10, 11}),
    "counter": frozenset({4, 6, 7, 8, 9, 10}),
    "commutative": frozenset({4, 6, 7, 8, 9, 10}),
    "memoriser_unbounded": frozenset({5, 6}),
    "memoriser_bounded": frozenset({5}),
    "slowdown": frozenset({5, 6, 12}),
}


def expected_failure_matrix() -> dict:
    return dict(EXPECTED_FAILURES)


def observed_failures(seeds=range(10), **config):
    """Run every variant at smoke scale; map variant -> set of failing-axiom sets seen."""
    from .axioms import TestConfig, run_all

    seen = {}
    for seed in seeds:
        c = TestConfig.smoke(master_seed=seed, **config)
        for v in VARIANTS:
            report = run_all(make_fixture(v, c.input_size), c, workers=1, environment={})
            seen.setdefault(v, set()).add(frozenset(report.failed_axioms()))
    return seen


def _digest(*parts) -> bytes:
    return hashlib.blake2b(repr(parts).encode(), digest_size=16).digest()


_ROOT = 0x5EED


def _chain(digest: int, x: int) -> int:
    # tuple hashing of ints is not salted, so the chain is reproducible across processes
    return hash((digest, x))


class ConstantZero:
    """Stateless; always predicts the all-zero input."""

    def predict(self):
        return 0

    def update(self, x):
        pass

    def fingerprint(self):
        return "constant_zero"

    def clone(self):
        return ConstantZero()


class Echo:
    """Predicts the last input it saw; keeps a running digest of its history."""

    def __init__(self):
        self._last = 0
        self._log = _ROOT

    def predict(self):
        return self._last

    def update(self, x):
        self._last = x
        self._log = _chain(self._log, x)

    def fingerprint(self):
        return self._log

    def clone(self):
        other = Echo.__new__(Echo)
        other._last = self._last
        other._log = self._log
        return other


class Stochastic:
    """Random predictions from a per-instance generator; no two blanks agree."""

    def __init__(self, width, seed):
        self._width = width
        self._seed = seed
        self._rng = random.Random(seed)
        self._steps = _COUNT_BASE
        self._next = self._rng.getrandbits(width)

    def predict(self):
        return self._next

    def update(self, x):
        self._steps += 1
        self._next = self._rng.getrandbits(self._width)

    def fingerprint(self):
        return (self._seed, self._steps - _COUNT_BASE)

    def clone(self):
        other = Stochastic.__new__(Stochastic)
        other._width = self._width
        other._seed = self._seed
        other._rng = random.Random()
        other._rng.setstate(self._rng.getstate())
        other._steps = self._steps
        other._next = self._next
        return other


class Counter:
    """State is the number of updates; predicts zero."""

    def __init__(self):
        self._n = _COUNT_BASE

    def predict(self):
        return 0

    def update(self, x):
        self._n += 1

    def fingerprint(self):
        return self._n - _COUNT_BASE

    def clone(self):
        other = Counter()
        other._n = self._n
        return other


class Commutative:
    """State is the multiset of inputs seen, so input order is invisible."""

    def __init__(self):
        self._counts = {}

    def predict(self):
        return 0

    def update(self, x):
        self._counts[x] = self._counts.get(x, 0) + 1

    def fingerprint(self):
        return _digest(sorted(self._counts.items()))

    def clone(self):
        other = Commutative()
        other._counts = dict(self._counts)
        return other


def _toward(v, x):
    """Flip the lowest bit in which ``v`` differs from ``x``."""
    diff = v ^ x
    return v ^ (diff & -diff)


_PAD = -1  # window filler before the first inputs arrive


class ContextMemoriser:
    """Variable-order context memoriser with rate-limited writes.

    The store maps each recent context (the last k inputs, k = 1..order) to a
    continuation estimate. Prediction uses the longest context present, falling
    back to a global running estimate. Every update moves each context's
    estimate one bit toward the observed input; a context seen for the first
    time starts from the estimate of its longest shorter suffix. Learning time
    therefore grows with the number of active bits to be written and depends
    on whatever the model held before.

    With ``capacity`` set, new contexts are refused once the store is full
    (existing contexts keep adapting).
    """

    def __init__(self, order, capacity=None):
        self._order = order
        self._capacity = capacity
        self._window = (_PAD,) * order
        self._suffixes = tuple(range(-1, -order - 1, -1))
        self._store = {}
        self._prior = 0
        self._log = _ROOT

    def predict(self):
        w = self._window
        store = self._store
        for k in range(self._order, 0, -1):
            v = store.get(w[-k:])
            if v is not None:
                return v
        return self._prior

    def update(self, x):
        w = self._window
        store = self._store
        cap = self._capacity
        full = cap is not None and len(store) >= cap
        backoff = self._prior
        for k in self._suffixes:
            ctx = w[k:]
            cur = store.get(ctx)
            if cur is None:
                if full:
                    continue
                cur = backoff
            diff = cur ^ x
            store[ctx] = cur ^ (diff & -diff)
            backoff = cur
            if cap is not None and not full:
                full = len(store) >= cap
        self._prior = _toward(self._prior, x)
        self._window = w[1:] + (x,)
        if cap is None:
            self._log = _chain(self._log, x)

    def fingerprint(self):
        if self._capacity is None:
            # unbounded: the configuration is the whole input log
            return self._log
        return _digest(self._window, self._prior, sorted(self._store.items()))

    def clone(self):
        other = self.__class__.__new__(self.__class__)
        other.__dict__.update(self.__dict__)
        other._store = dict(self._store)
        return other


class Slowdown(ContextMemoriser):
    """Unbounded memoriser that also rescans its full history on every update."""

    def __init__(self, order):
        super().__init__(order)
        self._history = []
        self._seen = 0

    def update(self, x):
        super().update(x)
        self._history.append(x)
        seen = 0
        for y in self._history:
            seen |= y
        self._seen = seen

    def clone(self):
        other = super().clone()
        other._history = list(self._history)
        return other


@dataclass
class FixtureFactory:
    variant: str
    width: int = 10
    _instances: int = field(default=0, repr=False, compare=False)

    @property
    def descriptor(self):
        return f"fixture:{self.variant}"

    def blank(self):
        v = self.variant
        if v == "constant_zero":
            return ConstantZero()
        if v == "echo":
            return Echo()
        if v == "stochastic":
            self._instances += 1
            return Stochastic(self.width, self._instances)
        if v == "counter":
            return Counter()
        if v == "commutative":
            return Commutative()
        if v == "memoriser_unbounded":
            return ContextMemoriser(UNBOUNDED_ORDER)
        if v == "memoriser_bounded":
            return ContextMemoriser(BOUNDED_ORDER, BOUNDED_CAPACITY)
        if v == "slowdown":
            return Slowdown(UNBOUNDED_ORDER)
        raise UsageError(f"unknown fixture variant {v!r}")


def make_fixture(variant: str, width: int = 10) -> FixtureFactory:
    if variant not in VARIANTS:
        raise UsageError(f"unknown fixture variant {variant!r}; choose from {', '.join(VARIANTS)}")
    if width < 1:
        raise UsageError("width must be positive")
    return FixtureFactory(variant, width)


for _name in VARIANTS:
    register_model(_name, lambda width, _v=_name: make_fixture(_v, width))
