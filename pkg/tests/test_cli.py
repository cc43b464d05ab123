import json
from importlib import resources

import jsonschema
import pytest

from axiombench import cli, fixtures
from axiombench.axioms import TestConfig, run_all
from axiombench.report import AXIOM_NAMES, MASK, Report, TestResult, mask_wall_clock, summary_lines

SCHEMA = json.loads(resources.files("axiombench").joinpath("report_schema.json").read_text())


@pytest.fixture(scope="module")
def quick_report():
    c = TestConfig(simulated_infinity=3, runs_per_trial=3)
    return run_all(fixtures.make_fixture("memoriser_bounded"), c, workers=1)


def test_report_matches_schema(quick_report):
    jsonschema.validate(json.loads(quick_report.to_json()), SCHEMA)
    assert quick_report.environment["clock_resolution_ns"] >= 1


def test_report_roundtrip(quick_report):
    again = Report.from_json(quick_report.to_json())
    assert again == quick_report
    assert again.to_json() == quick_report.to_json()


def test_report_rejects_unknown_schema(quick_report):
    d = quick_report.to_dict()
    d["schema_version"] = 99
    with pytest.raises(ValueError):
        Report.from_dict(d)


def test_config_echo_reproduces_config(quick_report):
    assert TestConfig(**quick_report.config) == TestConfig(simulated_infinity=3, runs_per_trial=3)


def test_all_or_nothing():
    every = [TestResult(i, True, 1) for i in AXIOM_NAMES]
    assert Report("m", {}, 0, every).passed
    every[5].passed = False
    assert not Report("m", {}, 0, every).passed
    assert not Report("m", {}, 0, every[:11]).passed


def test_masking():
    tests = [TestResult(i, True, 5, elapsed=0.5) for i in AXIOM_NAMES]
    d = mask_wall_clock(Report("m", {}, 0, tests, environment={"x": 1}).to_dict())
    assert d["environment"] == MASK and d["passed"] == MASK
    assert d["tests"][11]["passed"] == MASK and d["tests"][0]["passed"] is True
    tests[2].passed = False
    d = mask_wall_clock(Report("m", {}, 0, tests).to_dict())
    assert d["passed"] is False


def test_summary_has_fixed_shape(quick_report):
    lines = summary_lines(quick_report)
    assert len(lines) == 14
    for axiom_id, line in zip(AXIOM_NAMES, lines[1:13]):
        assert line.startswith(f"axiom {axiom_id:2d} ")
    short = Report("m", {}, 0, quick_report.tests[:2])
    assert len(summary_lines(short)) == 14 and "NOT RUN" in summary_lines(short)[5]


def test_cli_failing_model_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = cli.main(["--model", "memoriser_bounded", "--seed", "42", "--mode", "smoke",
                     "--skip-timing", "--report", str(out)])
    assert code == cli.EXIT_FAILED
    d = json.loads(out.read_text())
    jsonschema.validate(d, SCHEMA)
    assert d["mode"] == "smoke" and d["master_seed"] == 42
    assert d["config"]["simulated_infinity"] == 100
    assert [t["axiom_id"] for t in d["tests"] if not t["passed"]] == [5, 12]
    assert capsys.readouterr().out.strip().endswith("overall: FAIL")


def test_trials_flag_is_recorded(tmp_path):
    p = tmp_path / "r.json"
    cli.main(["--model", "echo", "--trials", "4", "--skip-timing", "--report", str(p)])
    d = json.loads(p.read_text())
    assert d["config"]["simulated_infinity"] == 4
    assert {t["trials_run"] for t in d["tests"] if t["passed"]} == {4}


def test_cli_seeded_runs_agree(tmp_path):
    reports = []
    for name in ("a.json", "b.json"):
        p = tmp_path / name
        cli.main(["--model", "stochastic", "--seed", "7", "--trials", "3", "--skip-timing",
                  "--report", str(p)])
        reports.append(json.loads(p.read_text()))
    failing = [sorted(t["axiom_id"] for t in r["tests"] if not t["passed"]) for r in reports]
    assert failing[0] == failing[1]
    assert mask_wall_clock(reports[0]) == mask_wall_clock(reports[1])


@pytest.mark.parametrize("argv", [[], ["--model", "nope"], ["--model", "echo", "--mode", "fast"],
                                  ["--model", "echo", "--trials", "0"], ["--model", "echo", "--rho", "1"],
                                  ["--model", "echo", "--seed", "-3"], ["--bogus"]])
def test_cli_usage_errors(argv, capsys):
    assert cli.main(argv) == cli.EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_cli_incompatible_model(capsys):
    assert cli.main(["--model", "crafted:Factory", "--trials", "2"]) == cli.EXIT_INCOMPATIBLE
    code = cli.main(["--model", "test_cli:silent_factory", "--trials", "2"])
    assert code == cli.EXIT_INCOMPATIBLE
    assert "INCOMPATIBLE" in capsys.readouterr().out


def test_cli_list_models(capsys):
    assert cli.main(["--list-models"]) == cli.EXIT_PASSED
    assert set(fixtures.VARIANTS) <= set(capsys.readouterr().out.split())


def test_cli_early_exit(tmp_path):
    p = tmp_path / "r.json"
    assert cli.main(["--model", "stochastic", "--trials", "2", "--early-exit", "on",
                     "--report", str(p)]) == cli.EXIT_FAILED
    assert [t["axiom_id"] for t in json.loads(p.read_text())["tests"]] == [1]


def silent_factory(width):
    from crafted import Factory, Silent
    return Factory(Silent, width)
