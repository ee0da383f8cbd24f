"""Types and models for run configuration."""

from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator

from core.rational import format_fraction, to_fraction


class OutputFormat(str, Enum):
    """Report rendering formats."""

    TEXT = "text"
    JSON = "json"


class RunConfig(BaseModel):
    """Configuration for one CLI run."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    seed: int = Field(7, description="Seed for random joints and mixtures")
    float_tolerance: float = Field(1e-9, description="Tolerance for theorem bounds and LP residuals")
    identity_tolerance: float = Field(1e-12, description="Tolerance for information identities")
    p_y1: Fraction = Field(Fraction(1, 2), description="Probability that Bob's input y is 1")
    output_format: OutputFormat = Field(OutputFormat.TEXT, description="Report format on stdout")
    parallelism: int = Field(1, description="Worker threads for exhaustive sweeps")
    trace: bool = Field(False, description="Record intermediate entropy terms")
    keep_going: bool = Field(False, description="Run every suite even after a failure")
    samples: int = Field(10000, description="Random joints for property suites")
    report_dir: Optional[Path] = Field(None, description="Directory where reports are saved")

    @field_validator("p_y1", mode="before")
    @classmethod
    def _parse_p_y1(cls, value: object) -> Fraction:
        try:
            p = to_fraction(value)  # type: ignore[arg-type]
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"p_y1 must be a rational like 1/4: {exc}") from exc
        if not 0 <= p <= 1:
            raise ValueError("p_y1 must lie in [0, 1]")
        return p

    @field_validator("float_tolerance", "identity_tolerance")
    @classmethod
    def _positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("tolerance must be positive")
        return value

    @field_validator("parallelism")
    @classmethod
    def _at_least_one(cls, value: int) -> int:
        if value < 1:
            raise ValueError("parallelism must be at least 1")
        return value

    @field_validator("samples")
    @classmethod
    def _nonnegative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("samples must be nonnegative")
        return value

    @field_serializer("p_y1")
    def _dump_p_y1(self, value: Fraction) -> str:
        return format_fraction(value)

    def report_fields(self) -> dict[str, object]:
        """Config fields that affect results, for embedding in reports."""
        return self.model_dump(mode="json", exclude={"report_dir", "output_format"})
