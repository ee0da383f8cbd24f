"""Pydantic models for verification and inspection reports."""

from datetime import datetime, timezone
from enum import Enum
from typing import Any

from pydantic import BaseModel, Field, field_serializer

SCHEMA_VERSION = "1"


def round_float(value: float) -> float:
    """Round to 12 significant digits so reports are stable across platforms."""
    return float(f"{value:.12g}")


class ReportKind(str, Enum):
    """Kinds of reports produced by the CLI."""

    BOX = "box"
    PROTOCOL = "protocol"
    VERIFY = "verify"


class CheckResult(BaseModel):
    """One named assertion inside a report."""

    name: str = Field(..., description="What was checked")
    passed: bool = Field(..., description="Whether the assertion holds")
    value: str | None = Field(default=None, description="Observed value, exact when possible")
    expected: str | None = Field(default=None, description="Value the claim requires")
    detail: str = Field(default="", description="Short diagnostic")


class InfoReport(BaseModel):
    """An information-theoretic quantity compared against a bound."""

    quantity: str = Field(..., description="Label of the compared quantity")
    value: float = Field(..., description="Value in bits")
    bound: float = Field(..., description="Upper bound in bits")
    satisfied: bool = Field(..., description="value <= bound + tolerance")
    slack: float = Field(..., description="bound - value")
    applicable: bool = Field(default=True, description="Whether the precondition held")
    note: str | None = Field(default=None)
    terms: dict[str, float] = Field(default_factory=dict, description="Intermediate terms for --trace")

    @field_serializer("value", "bound", "slack")
    def _round(self, value: float) -> float:
        return round_float(value)

    @field_serializer("terms")
    def _round_terms(self, terms: dict[str, float]) -> dict[str, float]:
        return {k: round_float(v) for k, v in terms.items()}


class ChannelRow(BaseModel):
    """One distinct induced channel from an exhaustive strategy sweep."""

    branch: str = Field(..., description="Strategy branch tag")
    z_channel: str = Field(..., description="Class of the channel z -> Bob")
    z_parameter: str | None = None
    x_channel: str = Field(..., description="Class of the channel x -> Bob")
    x_parameter: str | None = None
    strategies: str = Field(..., description="Number of perfect strategies inducing it")
    mutual_information: float = Field(..., description="I(z : Bob's view) in bits")
    erasure_postprocessing: bool = Field(..., description="Obtainable from the 1/2-erasure channel")
    representative: dict[str, Any] = Field(default_factory=dict)

    @field_serializer("mutual_information")
    def _round(self, value: float) -> float:
        return round_float(value)


class SuiteReport(BaseModel):
    """Result of one verification suite."""

    schema_version: str = Field(default=SCHEMA_VERSION)
    suite: str
    passed: bool
    checks: list[CheckResult] = Field(default_factory=list)
    counts: dict[str, str] = Field(default_factory=dict, description="Exact integer counts as text")
    info: list[InfoReport] = Field(default_factory=list)
    channels: list[ChannelRow] = Field(default_factory=list)
    counterexamples: list[dict[str, Any]] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)

    @classmethod
    def from_checks(cls, suite: str, checks: list[CheckResult], **fields: Any) -> "SuiteReport":
        """Build a report whose verdict is the conjunction of its checks and infos."""
        info = fields.get("info", [])
        counterexamples = fields.get("counterexamples", [])
        passed = (
            all(c.passed for c in checks)
            and all(i.satisfied for i in info if i.applicable)
            and not counterexamples
        )
        return cls(suite=suite, passed=passed, checks=checks, **fields)


class RunReport(BaseModel):
    """Top-level report emitted by one CLI invocation."""

    schema_version: str = Field(default=SCHEMA_VERSION)
    kind: ReportKind
    command: str = Field(..., description="Subcommand and arguments")
    passed: bool
    config: dict[str, Any] = Field(default_factory=dict)
    suites: list[SuiteReport] = Field(default_factory=list)
    tables: dict[str, list[str]] = Field(default_factory=dict, description="Rendered box tables")
    skipped: list[str] = Field(default_factory=list)


class StoredRun(BaseModel):
    """A persisted run with bookkeeping fields."""

    id: str
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    report: RunReport
