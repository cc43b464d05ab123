"""The twelve axiom tests and the run-all driver.

Every test takes a model factory and a :class:`TestConfig` and returns a
:class:`~axiombench.report.TestResult`. Randomness is drawn from generators
seeded with ``[master_seed, axiom_id, trial, ...]`` so a trial's inputs do
not depend on which other trials ran.
"""

from __future__ import annotations

import dataclasses
import gc
import os
import pickle
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import stats
from .errors import HarnessIncompatibility, IndeterminateResult, UsageError
from .model_api import autoregress, check_factory, feed, learn
from .report import AXIOM_NAMES, Report, TestResult, environment_notes
from .signals import (Sequence, check_input, corrupt, is_admissible, make_rng, match_score,
                      random_admissible_items, uniform_inputs)

SMOKE_TRIALS = 100
MAX_TIMING_BATCH = 1 << 20


@dataclass(frozen=True)
class TestConfig:
    __test__ = False

    input_size: int = 10
    pattern_period: int = 7
    simulated_infinity: int = 5000
    runs_per_trial: int = 20
    rho: int = 10
    timing_resolution_floor: float = 100e-6
    batches_per_timing_trial: int = 100
    structured_input_fraction: float = 0.2
    z_threshold: float = 3.090
    master_seed: int = 0
    denoise_max_passes: int = 500
    max_timing_retries: int = 3
    update_time_ceiling: Optional[float] = None  # seconds per update; off by default

    def __post_init__(self):
        if self.input_size < 1:
            raise UsageError("input_size must be at least 1")
        if self.pattern_period < 2:
            raise UsageError("pattern_period must be at least 2")
        if self.simulated_infinity < 1:
            raise UsageError("simulated_infinity must be at least 1")
        if self.rho < 2:
            raise UsageError("rho must be at least 2")
        if not 0.0 <= self.structured_input_fraction <= 1.0:
            raise UsageError("structured_input_fraction must lie in [0, 1]")
        if self.runs_per_trial < 1 or self.batches_per_timing_trial < 1:
            raise UsageError("runs_per_trial and batches_per_timing_trial must be positive")
        if self.timing_resolution_floor <= 0:
            raise UsageError("timing_resolution_floor must be positive")
        if self.master_seed < 0:
            raise UsageError("master_seed must be non-negative")

    @classmethod
    def smoke(cls, **overrides):
        """Development scale: every trial count drops to :data:`SMOKE_TRIALS`."""
        overrides.setdefault("simulated_infinity", SMOKE_TRIALS)
        return cls(**overrides)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        return dataclasses.asdict(self)


def _rng(c, axiom_id, *path):
    return make_rng([c.master_seed, axiom_id, *path])


def _timed(axiom_id):
    def wrap(fn):
        def run(f, c, *args, **kwargs):
            t0 = time.perf_counter()
            result = fn(f, c, *args, **kwargs)
            result.elapsed = time.perf_counter() - t0
            return result
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        run.__wrapped__ = fn
        run.__test__ = False
        run.axiom_id = axiom_id
        return run
    return wrap


def _universal(axiom_id, trials, trial_fn):
    """Run ``trial_fn(t)`` for t = 1..trials; it returns None or a failure note."""
    for t in range(1, trials + 1):
        note = trial_fn(t)
        if note is not None:
            return TestResult(axiom_id, False, t, t, f"trial {t}: {note}")
    return TestResult(axiom_id, True, trials)


def _prediction(m, width):
    return _checked(m.predict(), width)


def _checked(p, width):
    try:
        return check_input(p, width)
    except UsageError as exc:
        raise HarnessIncompatibility(f"predict() returned {p!r}: {exc}") from None


@_timed(1)
def test_01_uninformed_start(f, c):
    """Two blanks must share a fingerprint and an initial prediction."""
    def trial(t):
        a, b = f.blank(), f.blank()
        if a.fingerprint() != b.fingerprint():
            return "blank fingerprints differ"
        if a.predict() != b.predict():
            return "blank predictions differ"
        return None
    return _universal(1, c.simulated_infinity, trial)


@_timed(2)
def test_02_determinism(f, c):
    """Two blanks fed the same input must agree at every step."""
    L, N = c.input_size, c.pattern_period

    def trial(t):
        rng = _rng(c, 2, t)
        s = random_admissible_items(rng, int(rng.integers(1, 4 * N + 1)), L)
        a, b = f.blank(), f.blank()
        for i, x in enumerate(s):
            if a.predict() != b.predict():
                return f"predictions diverge before input {i}"
            a.update(x)
            b.update(x)
        if a.predict() != b.predict():
            return "predictions diverge after the last input"
        if a.fingerprint() != b.fingerprint():
            return "final fingerprints differ"
        return None
    return _universal(2, c.simulated_infinity, trial)


@_timed(3)
def test_03_trace(f, c):
    """No configuration may recur along one long random input stream.

    Here a trial is one update step, so ``trials_run`` counts steps.
    """
    stream = random_admissible_items(_rng(c, 3, 0), c.simulated_infinity, c.input_size)
    m = f.blank()
    seen = {m.fingerprint(): 0}
    for t, x in enumerate(stream, 1):
        m.update(x)
        fp = m.fingerprint()
        if fp in seen:
            return TestResult(3, False, t, t,
                              f"configuration after step {t} equals the one after step {seen[fp]}")
        seen[fp] = t
    return TestResult(3, True, len(stream))


def _noncommuting_pair(rng, c):
    L, N = c.input_size, c.pattern_period
    while True:
        n1, n2 = (int(v) for v in rng.integers(1, N + 1, size=2))
        p1 = random_admissible_items(rng, n1, L)
        p2 = random_admissible_items(rng, n2, L)
        # equal words, or words that are powers of a common root, give
        # identical concatenations and cannot be told apart by any model
        if p1 + p2 != p2 + p1:
            return p1, p2


@_timed(4)
def test_04_time(f, c):
    """Feeding the same pieces in swapped order must leave different configurations."""
    def trial(t):
        p1, p2 = _noncommuting_pair(_rng(c, 4, t), c)
        a, b = f.blank(), f.blank()
        feed(a, p1 + p2)
        feed(b, p2 + p1)
        if a.fingerprint() == b.fingerprint():
            return f"same configuration for orders of lengths {len(p1)}+{len(p2)}"
        return None
    return _universal(4, c.simulated_infinity, trial)


def refractory_violation(rng, c):
    """Random cyclic sequence of period N with one forced double firing."""
    L, N = c.input_size, c.pattern_period
    s = random_admissible_items(rng, N, L, cyclic=True)
    j = int(rng.integers(N))
    bit = 1 << int(rng.integers(L))
    s[j] |= bit
    s[(j + 1) % N] |= bit
    return s


@_timed(5)
def test_05_refractory(f, c):
    """A sequence breaking the refractory constraint must never be learned."""
    budget = c.simulated_infinity

    def trial(t):
        s = refractory_violation(_rng(c, 5, t), c)
        assert not is_admissible(s, cyclic=True)
        out = learn(f.blank(), s, budget)
        if out.learned:
            return f"learned an inadmissible sequence after {out.passes} passes"
        return None
    return _universal(5, c.simulated_infinity, trial)


@_timed(6)
def test_06_saturation(f, c):
    """(b) every cyclic length-2 sequence is learnable from any context;
    (a) some learnable sequence eventually cannot be absorbed."""
    L, N, budget = c.input_size, c.pattern_period, c.simulated_infinity

    def trial(t):
        rng = _rng(c, 6, t)
        m = f.blank()
        feed(m, random_admissible_items(rng, int(rng.integers(1, 4 * N + 1)), L))
        psi = random_admissible_items(rng, 2, L, cyclic=True)
        if not learn(m, psi, budget).learned:
            return f"(b) length-2 sequence not learned within {budget} passes"
        return None

    result = _universal(6, c.simulated_infinity, trial)
    if not result.passed:
        return result

    rng = _rng(c, 6, 0, 1)
    acc = f.blank()
    reference = f.blank()
    taught = 0
    for k in range(1, c.simulated_infinity + 1):
        psi = random_admissible_items(rng, N, L, cyclic=True)
        if not learn(reference.clone(), psi, budget).learned:
            continue
        taught += 1
        if not learn(acc, psi, budget).learned:
            return TestResult(6, True, result.trials_run,
                              diagnostics=f"(a) saturated at draw {k} after {taught - 1} sequences")
    return TestResult(6, False, result.trials_run, result.trials_run,
                      f"(a) absorbed all {taught} learnable sequences in "
                      f"{c.simulated_infinity} draws without saturating")


@_timed(7)
def test_07_temporal_adaptability(f, c):
    """Learn a cycle, then a strictly longer one, on the same model."""
    L, N, budget = c.input_size, c.pattern_period, c.simulated_infinity
    if N < 3:
        return TestResult(7, False, 0, None, "needs pattern_period >= 3", skipped=True)

    def trial(t):
        rng = _rng(c, 7, t)
        p1 = int(rng.integers(2, N))
        p2 = int(rng.integers(p1 + 1, N + 1))
        psi1 = random_admissible_items(rng, p1, L, cyclic=True)
        psi2 = random_admissible_items(rng, p2, L, cyclic=True)
        m = f.blank()
        if not learn(m, psi1, budget).learned:
            return f"period {p1} not learned from blank"
        if not learn(m, psi2, budget).learned:
            return f"period {p2} not learned after period {p1}"
        return None
    return _universal(7, c.simulated_infinity, trial)


@_timed(8)
def test_08_content_sensitivity(f, c):
    """Find two learnable sequences of equal length with different learning times."""
    L, N, budget = c.input_size, c.pattern_period, c.simulated_infinity
    for t in range(1, c.simulated_infinity + 1):
        rng = _rng(c, 8, t)
        psi1 = random_admissible_items(rng, N, L, cyclic=True)
        psi2 = random_admissible_items(rng, N, L, cyclic=True)
        o1 = learn(f.blank(), psi1, budget)
        if not o1.learned:
            continue
        o2 = learn(f.blank(), psi2, budget)
        if o2.learned and o1.tau != o2.tau:
            return TestResult(8, True, t, diagnostics=f"witness at candidate {t}: tau {o1.tau} vs {o2.tau}")
    return TestResult(8, False, c.simulated_infinity, c.simulated_infinity,
                      f"no witness among {c.simulated_infinity} candidate pairs")


@_timed(9)
def test_09_context_sensitivity(f, c):
    """Find one sequence whose learning time depends on the model's history."""
    L, N, budget = c.input_size, c.pattern_period, c.simulated_infinity
    for t in range(1, c.simulated_infinity + 1):
        rng = _rng(c, 9, t)
        psi = random_admissible_items(rng, N, L, cyclic=True)
        pa = random_admissible_items(rng, int(rng.integers(1, 4 * N + 1)), L)
        pb = random_admissible_items(rng, int(rng.integers(1, 4 * N + 1)), L)
        if not learn(f.blank(), psi, budget).learned:
            continue
        a, b = f.blank(), f.blank()
        feed(a, pa)
        feed(b, pb)
        if a.fingerprint() == b.fingerprint():
            continue
        oa = learn(a, psi, budget)
        ob = learn(b, psi, budget)
        if oa.learned and ob.learned and oa.tau != ob.tau:
            return TestResult(9, True, t, diagnostics=f"witness at candidate {t}: tau {oa.tau} vs {ob.tau}")
    return TestResult(9, False, c.simulated_infinity, c.simulated_infinity,
                      f"no witness among {c.simulated_infinity} candidates")


def denoise_passes(c):
    return max(1, min(c.simulated_infinity // c.pattern_period, c.denoise_max_passes))


@_timed(10)
def test_10_denoising(f, c):
    """After a corrupted first element, the model must still recall the next cycle start
    better than either constant predictor."""
    L, N = c.input_size, c.pattern_period
    ones = (1 << L) - 1
    passes = denoise_passes(c)

    def trial(t):
        model, zero, one = [], [], []
        for r in range(c.runs_per_trial):
            rng = _rng(c, 10, t, r)
            phi = random_admissible_items(rng, N, L, cyclic=True)
            m = f.blank()
            feed(m, phi * passes)
            x1 = phi[0]
            feed(m, [corrupt(x1, rng, L), *phi[1:]])
            p = _prediction(m, L)
            model.append(match_score((p,), (x1,), L))
            zero.append(match_score((0,), (x1,), L))
            one.append(match_score((ones,), (x1,), L))
        sm, sz, so = stats.mean(model), stats.mean(zero), stats.mean(one)
        if not sm > max(sz, so):
            return f"mean score {sm:.2f} vs baselines zero {sz:.2f}, ones {so:.2f}"
        return None
    return _universal(10, c.simulated_infinity, trial)


def sample_generator(rng, c):
    """Hidden periodic source: returns the observed prefix and the withheld continuation."""
    L, N = c.input_size, c.pattern_period
    p = int(rng.integers(2, N + 1))
    while True:
        pattern = random_admissible_items(rng, p, L, cyclic=True)
        if any(pattern):
            break
    phase = int(rng.integers(p))
    head = c.rho * N
    stream = [pattern[(phase + i) % p] for i in range(head + N)]
    return Sequence(stream[:head], L), Sequence(stream[head:], L)


@_timed(11)
def test_11_generalisation(f, c):
    """Continue an unseen periodic stream better than chance."""
    L = c.input_size

    def trial(t):
        scores = []
        for r in range(c.runs_per_trial):
            phi1, phi2 = sample_generator(_rng(c, 11, t, r), c)
            m = f.blank()
            feed(m, phi1)
            guess = autoregress(m, len(phi2))
            for p in guess:
                _checked(p, L)
            scores.append(match_score(guess, phi2, L) / (L * len(phi2)))
        s = stats.mean(scores)
        if not s > 0.5:
            return f"mean score {s:.3f} is not above 0.5"
        return None
    return _universal(11, c.simulated_infinity, trial)


# liveness

def _time_updates(m, xs, clock=time.perf_counter_ns):
    upd = m.update
    t0 = clock()
    for x in xs:
        upd(x)
    return clock() - t0


def calibrate_batch_size(model, rng, c):
    """Double the batch until updating a clone of ``model`` takes longer than the floor."""
    floor_ns = c.timing_resolution_floor * 1e9
    size = 1
    while size < MAX_TIMING_BATCH:
        xs = uniform_inputs(rng, size, c.input_size)
        if min(_time_updates(model.clone(), xs) for _ in range(3)) > floor_ns:
            break
        size *= 2
    return size


def _structured_pattern(rng, L):
    """One worst-case probe, as a short pattern to be repeated."""
    kind = int(rng.integers(4))
    full = (1 << L) - 1
    if kind == 0:
        return [0]
    if kind == 1:
        return [full, 0]
    if kind == 2:
        even = sum(1 << i for i in range(0, L, 2))
        return [even, full ^ even]
    return random_admissible_items(rng, int(rng.integers(2, 4)), L, cyclic=True)


def timing_batches(rng, count, size, c):
    """``count`` batches, each mostly uniform inputs with one contiguous structured block."""
    L = c.input_size
    n_struct = round(size * c.structured_input_fraction)
    if L > 62:
        flat = uniform_inputs(rng, count * size, L)
        batches = [flat[b * size:(b + 1) * size] for b in range(count)]
        for batch in batches:
            if n_struct:
                at = int(rng.integers(0, size - n_struct + 1))
                pat = _structured_pattern(rng, L)
                batch[at:at + n_struct] = [pat[i % len(pat)] for i in range(n_struct)]
        return batches
    arr = rng.integers(0, 1 << L, size=(count, size), dtype=np.int64)
    if n_struct:
        for row in arr:
            at = int(rng.integers(0, size - n_struct + 1))
            row[at:at + n_struct] = np.resize(np.array(_structured_pattern(rng, L), np.int64), n_struct)
    return arr.tolist()


def paired_timings(blank, loaded, batches):
    """Per batch: seconds on ``loaded`` minus seconds on ``blank``, plus the slowest
    per-update time seen on ``loaded``."""
    diffs = []
    worst = 0.0
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        for i, xs in enumerate(batches):
            a, b = blank.clone(), loaded.clone()
            if i % 2 == 0:
                ta = _time_updates(a, xs)
                tb = _time_updates(b, xs)
            else:
                tb = _time_updates(b, xs)
                ta = _time_updates(a, xs)
            diffs.append((tb - ta) * 1e-9)
            worst = max(worst, tb * 1e-9 / len(xs))
    finally:
        if was_enabled:
            gc.enable()
    return diffs, worst


def liveness_trial(blank, loaded, rng, size, c):
    """One timing trial; returns (z, failure note or None)."""
    count = c.batches_per_timing_trial
    for _ in range(c.max_timing_retries + 1):
        diffs, worst = paired_timings(blank, loaded, timing_batches(rng, count, size, c))
        try:
            z = stats.wilcoxon_one_sided_z(diffs)
        except IndeterminateResult as exc:
            count *= 2
            last = str(exc)
            continue
        if c.update_time_ceiling is not None and worst > c.update_time_ceiling:
            return z, f"update took {worst:.3g} s, above the ceiling"
        if z >= c.z_threshold:
            return z, f"z = {z:.3f} (batch size {size})"
        return z, None
    return None, f"indeterminate after {c.max_timing_retries} retries: {last}"


@_timed(12)
def test_12_liveness(f, c, loaded=None):
    """Updates on a model with a long history must not be systematically slower
    than on a blank. ``loaded`` overrides the experienced instance."""
    rng = _rng(c, 12, 0)
    blank = f.blank()
    if loaded is None:
        loaded = f.blank()
        feed(loaded, random_admissible_items(rng, c.simulated_infinity, c.input_size))
    size = calibrate_batch_size(blank, rng, c)

    def trial(t):
        _, note = liveness_trial(blank, loaded, _rng(c, 12, t), size, c)
        return note
    result = _universal(12, c.simulated_infinity, trial)
    if result.passed:
        result.diagnostics = f"batch size {size}"
    return result


TESTS = (
    test_01_uninformed_start,
    test_02_determinism,
    test_03_trace,
    test_04_time,
    test_05_refractory,
    test_06_saturation,
    test_07_temporal_adaptability,
    test_08_content_sensitivity,
    test_09_context_sensitivity,
    test_10_denoising,
    test_11_generalisation,
    test_12_liveness,
)


def _run_one(f, c, index):
    return TESTS[index](f, c)


def _workers(requested):
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("HARNESS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"HARNESS_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _picklable(obj):
    try:
        pickle.dumps(obj)
        return True
    except Exception:
        return False


def run_all(f, c: TestConfig, *, early_exit=False, skip_timing=False,
            workers=None, environment=None) -> Report:
    """Run the twelve tests in order and collect a :class:`Report`.

    Tests 1 to 11 may run in worker processes (``HARNESS_THREADS`` caps them)
    when early exit is off and the factory pickles. Test 12 always runs
    alone in this process after the others finish.
    """
    descriptor = getattr(f, "descriptor", type(f).__name__)
    report = Report(descriptor, c.to_dict(), c.master_seed, [],
                    environment=environment_notes() if environment is None else environment)
    try:
        check_factory(f)
        n = _workers(workers)
        if n > 1 and not early_exit and _picklable(f):
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=min(n, 11)) as pool:
                report.tests.extend(pool.map(_run_one, [f] * 11, [c] * 11, range(11)))
        else:
            for i in range(11):
                r = TESTS[i](f, c)
                report.tests.append(r)
                if early_exit and not r.passed:
                    return report
        if skip_timing:
            report.tests.append(TestResult(12, False, 0, None, "skipped on request", skipped=True))
        else:
            report.tests.append(test_12_liveness(f, c))
    except HarnessIncompatibility as exc:
        report.status = "incompatible"
        report.error = str(exc)
    return report


__all__ = ["TestConfig", "TESTS", "run_all", "sample_generator", "refractory_violation",
           "denoise_passes", "calibrate_batch_size", "timing_batches", "paired_timings",
           "liveness_trial", "AXIOM_NAMES"] + [fn.__name__ for fn in TESTS]
