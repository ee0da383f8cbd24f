"""Report models and persistence."""

from .models import (
    SCHEMA_VERSION,
    ChannelRow,
    CheckResult,
    InfoReport,
    ReportKind,
    RunReport,
    StoredRun,
    SuiteReport,
    round_float,
)
from .registry import ReportRegistry
from .store import ReportStore, make_run_id

__all__ = [
    "SCHEMA_VERSION",
    "ChannelRow",
    "CheckResult",
    "InfoReport",
    "ReportKind",
    "ReportRegistry",
    "ReportStore",
    "RunReport",
    "StoredRun",
    "SuiteReport",
    "make_run_id",
    "round_float",
]
