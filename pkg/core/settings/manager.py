"""Manager for run configuration."""

import json
import logging
import os
from pathlib import Path
from typing import Any, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from core.errors import ConfigError

from .types import RunConfig

logger = logging.getLogger(__name__)

ENV_PREFIX = "RACBOX_"
CONFIG_ENV = "RACBOX_CONFIG"


class ConfigManager:
    """Resolves a RunConfig from defaults, a JSON file, environment and overrides."""

    def __init__(self, config_path: Optional[Path] = None, use_env: bool = True):
        if use_env:
            load_dotenv()
        env_path = os.environ.get(CONFIG_ENV) if use_env else None
        self.config_path = config_path or (Path(env_path) if env_path else None)
        self.use_env = use_env
        self._config: Optional[RunConfig] = None

    def _file_values(self) -> dict[str, Any]:
        """Values from the JSON config file, if one is configured."""
        if self.config_path is None:
            return {}
        if not self.config_path.exists():
            raise ConfigError({"config": f"file not found: {self.config_path}"})
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as exc:
            raise ConfigError({"config": f"invalid JSON: {exc}"}) from exc
        if not isinstance(data, dict):
            raise ConfigError({"config": "top-level JSON value must be an object"})
        return data

    def _env_values(self) -> dict[str, Any]:
        """Values from RACBOX_* environment variables."""
        if not self.use_env:
            return {}
        values: dict[str, Any] = {}
        for name in RunConfig.model_fields:
            raw = os.environ.get(ENV_PREFIX + name.upper())
            if raw is not None:
                values[name] = raw
        return values

    def load_config(self, overrides: Optional[dict[str, Any]] = None) -> RunConfig:
        """Merge all layers; explicit overrides win. Raises ConfigError when invalid."""
        merged: dict[str, Any] = {}
        merged.update(self._file_values())
        merged.update(self._env_values())
        merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
        try:
            self._config = RunConfig.model_validate(merged)
        except ValidationError as exc:
            errors = {".".join(str(p) for p in err["loc"]) or "config": err["msg"] for err in exc.errors()}
            raise ConfigError(errors) from exc
        logger.debug("Resolved config: %s", self._config.report_fields())
        return self._config

    def save_config(self, path: Path) -> None:
        """Write the last resolved config as JSON."""
        if self._config is None:
            return
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self._config.model_dump(mode="json"), f, indent=2)
