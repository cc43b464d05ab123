"""Per-test results, the run report and its JSON form."""

from __future__ import annotations

import json
import platform
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

SCHEMA_VERSION = 1
TIMING_AXIOM = 12
MASK = "<wall-clock>"

AXIOM_NAMES = {
    1: "uninformed start",
    2: "determinism",
    3: "trace",
    4: "time",
    5: "absolute refractory period",
    6: "inevitable saturation",
    7: "temporal adaptability",
    8: "content sensitivity",
    9: "context sensitivity",
    10: "denoising",
    11: "generalisation",
    12: "real-time liveness",
}


@dataclass
class TestResult:
    __test__ = False

    axiom_id: int
    passed: bool
    trials_run: int
    first_failure_trial: Optional[int] = None
    diagnostics: str = ""
    elapsed: float = 0.0
    skipped: bool = False

    @property
    def name(self):
        return AXIOM_NAMES[self.axiom_id]


@dataclass
class Report:
    model: str
    config: dict
    master_seed: int
    tests: list
    status: str = "completed"  # or "incompatible"
    mode: str = "full"
    error: Optional[str] = None
    environment: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    @property
    def passed(self):
        ids = {t.axiom_id for t in self.tests if t.passed and not t.skipped}
        return self.status == "completed" and ids == set(AXIOM_NAMES)

    def failed_axioms(self):
        return sorted(t.axiom_id for t in self.tests if not t.passed)

    def result(self, axiom_id):
        for t in self.tests:
            if t.axiom_id == axiom_id:
                return t
        return None

    def to_dict(self):
        return {
            "schema_version": self.schema_version,
            "model": self.model,
            "master_seed": self.master_seed,
            "config": dict(self.config),
            "status": self.status,
            "mode": self.mode,
            "error": self.error,
            "passed": self.passed,
            "tests": [asdict(t) for t in self.tests],
            "environment": dict(self.environment),
        }

    @classmethod
    def from_dict(cls, d):
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')!r}")
        return cls(
            model=d["model"],
            config=dict(d["config"]),
            master_seed=d["master_seed"],
            tests=[TestResult(**t) for t in d["tests"]],
            status=d["status"],
            mode=d["mode"],
            error=d.get("error"),
            environment=dict(d.get("environment", {})),
        )

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def mask_wall_clock(d: dict) -> dict:
    """Copy of a report dict with every wall-clock-derived field replaced.

    Elapsed times, the environment block and the liveness test's record all
    depend on the machine's clock. The overall verdict is masked too unless a
    non-timing test already failed, in which case it is fixed by the seed.
    """
    d = json.loads(json.dumps(d))
    d["environment"] = MASK
    settled = False
    for t in d["tests"]:
        t["elapsed"] = MASK
        if t["axiom_id"] == TIMING_AXIOM and not t["skipped"]:
            for key in ("passed", "trials_run", "first_failure_trial", "diagnostics"):
                t[key] = MASK
        elif not t["passed"]:
            settled = True
    if not settled:
        d["passed"] = MASK
    return d


def measure_clock_resolution(samples: int = 2000) -> int:
    """Smallest positive step observed between consecutive ``perf_counter_ns`` reads."""
    best = None
    clock = time.perf_counter_ns
    for _ in range(samples):
        a = clock()
        b = clock()
        while b == a:
            b = clock()
        if best is None or b - a < best:
            best = b - a
    return best


def environment_notes() -> dict:
    from . import kernels

    return {
        "clock_resolution_ns": measure_clock_resolution(),
        "python": platform.python_version(),
        "platform": platform.platform(),
        "kernel_backend": kernels.BACKEND,
    }


def summary_lines(report: Report) -> list:
    lines = [f"model: {report.model}  seed: {report.master_seed}"]
    for axiom_id, name in AXIOM_NAMES.items():
        t = report.result(axiom_id)
        label = f"axiom {axiom_id:2d} {name}"
        if t is None:
            lines.append(f"{label:<36} NOT RUN")
        elif t.skipped:
            lines.append(f"{label:<36} SKIPPED ({t.diagnostics})")
        else:
            verdict = "PASS" if t.passed else "FAIL"
            extra = f"{t.trials_run} trials, {t.elapsed:.2f} s"
            if not t.passed and t.diagnostics:
                extra += f"; {t.diagnostics}"
            lines.append(f"{label:<36} {verdict} ({extra})")
    if report.status != "completed":
        lines.append(f"overall: INCOMPATIBLE ({report.error})")
    else:
        lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return lines
