"""Exception hierarchy for racbox."""

from typing import Any


class RacboxError(Exception):
    """Base error for all racbox failures."""

    def __init__(self, message: str, **context: Any):
        self.context = context
        if context:
            details = ", ".join(f"{k}={v!r}" for k, v in context.items())
            message = f"{message} ({details})"
        super().__init__(message)


class BoxValidationError(RacboxError):
    """A box table is incomplete or not normalized."""


class SignatureError(RacboxError):
    """Variable names do not match the expected signature."""


class PreconditionError(RacboxError):
    """An operation was called outside its precondition."""


class BudgetViolationError(RacboxError):
    """Bob reads the message bit while no message rule is present."""


class VisibilityError(RacboxError):
    """A party reads variables it cannot see."""


class CodecError(RacboxError):
    """Malformed box or wiring text."""

    def __init__(self, message: str, line: int | None = None, **context: Any):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, **context)


class ConfigError(RacboxError):
    """Invalid run configuration."""

    def __init__(self, errors: dict[str, str]):
        self.errors = errors
        super().__init__(f"Invalid configuration: {errors}")
