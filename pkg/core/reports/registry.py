"""Registry for tracking and summarizing saved verification runs."""

from typing import Any

from .models import ReportKind, RunReport, StoredRun
from .store import ReportStore, make_run_id


class ReportRegistry:
    """Registry over the stored runs of a ReportStore."""

    def __init__(self, store: ReportStore | None = None):
        self.store = store or ReportStore()

    def register(self, report: RunReport, seed: int) -> StoredRun:
        """Persist a run report and return its stored record."""
        stored = StoredRun(id=make_run_id(report.command, seed), report=report)
        self.store.save(report.kind, stored.id, stored)
        return stored

    def get(self, kind: ReportKind, run_id: str) -> StoredRun | None:
        """Get a stored run by kind and id."""
        return self.store.load(kind, run_id, StoredRun)

    def list_all(self, kind: ReportKind = ReportKind.VERIFY) -> list[StoredRun]:
        """List all stored runs of a kind."""
        return self.store.list_all(kind, StoredRun)

    def list_by_suite(self, suite: str) -> list[StoredRun]:
        """List verification runs that include the named suite."""
        return [r for r in self.list_all() if any(s.suite == suite for s in r.report.suites)]

    def list_failed(self) -> list[StoredRun]:
        """List verification runs that did not pass."""
        return [r for r in self.list_all() if not r.report.passed]

    def get_metrics(self) -> dict[str, Any]:
        """Totals by suite and the overall pass rate of saved verification runs."""
        runs = self.list_all()
        if not runs:
            return {
                "total": 0,
                "by_suite": {},
                "pass_rate": 0.0,
            }

        by_suite: dict[str, dict[str, int]] = {}
        for run in runs:
            for suite in run.report.suites:
                entry = by_suite.setdefault(suite.suite, {"passed": 0, "failed": 0})
                entry["passed" if suite.passed else "failed"] += 1

        passed = sum(1 for r in runs if r.report.passed)
        return {
            "total": len(runs),
            "by_suite": by_suite,
            "pass_rate": passed / len(runs),
        }
