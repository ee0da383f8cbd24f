"""Report store for persisting run reports to JSON files."""

import json
import logging
import re
from pathlib import Path
from typing import TypeVar

from pydantic import BaseModel

from .models import ReportKind, StoredRun

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=BaseModel)

_ID_PATTERN = re.compile(r"[^A-Za-z0-9_.-]+")


def make_run_id(command: str, seed: int) -> str:
    """Deterministic file-safe id for a command and seed."""
    slug = _ID_PATTERN.sub("-", command.strip()).strip("-") or "run"
    return f"{slug}-seed{seed}"


class ReportStore:
    """File-based store for run reports, one subdirectory per report kind."""

    def __init__(self, base_path: str | Path = "./reports"):
        self.base_path = Path(base_path)
        self.base_path.mkdir(parents=True, exist_ok=True)
        for kind in ReportKind:
            (self.base_path / kind.value).mkdir(exist_ok=True)

    def _get_path(self, kind: ReportKind, run_id: str) -> Path:
        """Get the file path for a stored run."""
        return self.base_path / kind.value / f"{run_id}.json"

    def save(self, kind: ReportKind, run_id: str, data: BaseModel) -> Path:
        """Save a report to disk."""
        file_path = self._get_path(kind, run_id)
        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(data.model_dump(mode="json"), f, indent=2, ensure_ascii=False)
        logger.debug("Saved %s report to %s", kind.value, file_path)
        return file_path

    def load(self, kind: ReportKind, run_id: str, model_class: type[T] = StoredRun) -> T | None:
        """Load a report from disk."""
        file_path = self._get_path(kind, run_id)
        if not file_path.exists():
            return None
        with open(file_path, "r", encoding="utf-8") as f:
            data = json.load(f)
        return model_class.model_validate(data)

    def list_all(self, kind: ReportKind, model_class: type[T] = StoredRun) -> list[T]:
        """List all reports of a kind, ordered by file name."""
        path = self.base_path / kind.value
        reports: list[T] = []
        if not path.exists():
            return reports
        for file_path in sorted(path.glob("*.json")):
            with open(file_path, "r", encoding="utf-8") as f:
                data = json.load(f)
            reports.append(model_class.model_validate(data))
        return reports

    def delete(self, kind: ReportKind, run_id: str) -> bool:
        """Delete a report. Returns True if deleted, False if not found."""
        file_path = self._get_path(kind, run_id)
        if file_path.exists():
            file_path.unlink()
            return True
        return False
