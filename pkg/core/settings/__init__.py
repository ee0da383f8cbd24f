"""Run configuration."""

from .manager import ConfigManager
from .types import OutputFormat, RunConfig

__all__ = ["ConfigManager", "OutputFormat", "RunConfig"]
