import json
from fractions import Fraction

import pytest

from core.errors import ConfigError
from core.reports.models import CheckResult, InfoReport, ReportKind, RunReport, SuiteReport
from core.reports.registry import ReportRegistry
from core.reports.store import ReportStore, make_run_id
from core.settings.manager import ConfigManager
from core.settings.types import OutputFormat


class TestRunConfig:
    def test_defaults(self, run_config):
        assert run_config.seed == 7
        assert run_config.p_y1 == Fraction(1, 2)
        assert run_config.output_format is OutputFormat.TEXT
        assert run_config.report_fields()["p_y1"] == "1/2"
        assert "report_dir" not in run_config.report_fields()

    @pytest.mark.parametrize(
        "field,value",
        [("p_y1", "3/2"), ("p_y1", "half"), ("float_tolerance", 0), ("parallelism", 0), ("samples", -1)],
    )
    def test_invalid_values(self, field, value):
        with pytest.raises(ConfigError) as info:
            ConfigManager(use_env=False).load_config({field: value})
        assert field in info.value.errors


class TestConfigLayers:
    def test_file_then_env_then_overrides(self, tmp_path, monkeypatch):
        path = tmp_path / "racbox.json"
        path.write_text(json.dumps({"seed": 3, "samples": 50, "p_y1": "1/4"}))
        monkeypatch.setenv("RACBOX_SAMPLES", "80")
        config = ConfigManager(path).load_config({"seed": 9, "trace": None})
        assert config.seed == 9
        assert config.samples == 80
        assert config.p_y1 == Fraction(1, 4)
        assert config.trace is False

    def test_config_path_from_env(self, tmp_path, monkeypatch):
        path = tmp_path / "other.json"
        path.write_text(json.dumps({"parallelism": 4}))
        monkeypatch.setenv("RACBOX_CONFIG", str(path))
        assert ConfigManager().load_config().parallelism == 4

    def test_env_ignored_when_disabled(self, monkeypatch):
        monkeypatch.setenv("RACBOX_SEED", "99")
        assert ConfigManager(use_env=False).load_config().seed == 7

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError) as info:
            ConfigManager(tmp_path / "absent.json").load_config()
        assert "config" in info.value.errors

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError):
            ConfigManager(path).load_config()

    def test_save_config(self, tmp_path):
        manager = ConfigManager(use_env=False)
        manager.load_config({"p_y1": "3/4"})
        target = tmp_path / "saved.json"
        manager.save_config(target)
        assert json.loads(target.read_text())["p_y1"] == "3/4"


def _report(command: str, passed: bool, suites: dict[str, bool]) -> RunReport:
    return RunReport(
        kind=ReportKind.VERIFY,
        command=command,
        passed=passed,
        suites=[
            SuiteReport.from_checks(name, [CheckResult(name="check", passed=ok)]) for name, ok in suites.items()
        ],
    )


class TestReports:
    def test_suite_verdict(self):
        info = InfoReport(quantity="q", value=0.6, bound=0.5, satisfied=False, slack=-0.1)
        assert not SuiteReport.from_checks("s", [CheckResult(name="c", passed=True)], info=[info]).passed
        info.applicable = False
        assert SuiteReport.from_checks("s", [CheckResult(name="c", passed=True)], info=[info]).passed
        assert not SuiteReport.from_checks("s", [], counterexamples=[{"k": 1}]).passed

    def test_floats_are_rounded(self):
        info = InfoReport(quantity="q", value=1 / 3, bound=0.5, satisfied=True, slack=0.5 - 1 / 3)
        assert info.model_dump(mode="json")["value"] == 0.333333333333

    def test_run_id(self):
        assert make_run_id("verify lemma5 theorem3", 7) == "verify-lemma5-theorem3-seed7"
        assert make_run_id("  ", 1) == "run-seed1"

    def test_store_roundtrip(self, tmp_path):
        store = ReportStore(tmp_path)
        report = _report("verify lemma1", True, {"lemma1": True})
        store.save(ReportKind.VERIFY, "one", report)
        assert store.load(ReportKind.VERIFY, "one", RunReport) == report
        assert store.load(ReportKind.VERIFY, "missing", RunReport) is None
        assert store.delete(ReportKind.VERIFY, "one")
        assert not store.delete(ReportKind.VERIFY, "one")

    def test_registry_queries(self, tmp_path):
        registry = ReportRegistry(ReportStore(tmp_path))
        registry.register(_report("verify lemma1 chsh", True, {"lemma1": True, "chsh": True}), 7)
        stored = registry.register(_report("verify theorem3", False, {"theorem3": False}), 7)
        registry.register(_report("box pr show", True, {}).model_copy(update={"kind": ReportKind.BOX}), 7)

        assert stored.id == "verify-theorem3-seed7"
        assert registry.get(ReportKind.VERIFY, stored.id).report.passed is False
        assert len(registry.list_all()) == 2
        assert len(registry.list_all(ReportKind.BOX)) == 1
        assert [r.id for r in registry.list_by_suite("chsh")] == ["verify-lemma1-chsh-seed7"]
        assert [r.id for r in registry.list_failed()] == [stored.id]
        metrics = registry.get_metrics()
        assert metrics["total"] == 2
        assert metrics["pass_rate"] == 0.5
        assert metrics["by_suite"]["theorem3"] == {"passed": 0, "failed": 1}

    def test_empty_metrics(self, tmp_path):
        assert ReportRegistry(ReportStore(tmp_path)).get_metrics() == {"total": 0, "by_suite": {}, "pass_rate": 0.0}
