import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from pydantic import ValidationError

from ..models.config import Settings
from .errors import DomainError

logger = logging.getLogger(__name__)

ENV_PREFIX = "RECIPSUM_"


class SettingsManager:
    """Locates config/ and results/ and loads run settings

    Settings come from config/defaults.json, overridden by RECIPSUM_* env
    vars; built-in defaults apply when the file is missing or unreadable.
    """

    def __init__(self, base_dir: Optional[Path] = None, environ: Optional[Mapping[str, str]] = None):
        if base_dir is None:
            # repository root: src/recipsum/utils -> ../../..
            self.base_dir = Path(__file__).resolve().parent.parent.parent.parent
        else:
            self.base_dir = Path(base_dir)
        self.config_dir = self.base_dir / "config"
        self.results_dir = self.base_dir / "results"
        self.environ = os.environ if environ is None else environ

    def get_defaults_path(self) -> Path:
        return self.config_dir / "defaults.json"

    def _load_file(self) -> Dict[str, Any]:
        path = self.get_defaults_path()
        try:
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
        except FileNotFoundError:
            logger.warning("settings file not found: %s, using built-in defaults", path)
            return {}
        except (OSError, json.JSONDecodeError) as e:
            logger.warning("error loading settings %s: %s, using built-in defaults", path, e)
            return {}

    def _env_overrides(self) -> Dict[str, str]:
        overrides = {}
        for field in Settings.model_fields:
            key = ENV_PREFIX + field.upper()
            value = self.environ.get(key)
            if value is not None and value != "":
                overrides[field] = value
        return overrides

    def load(self) -> Settings:
        data = self._load_file()
        data.update(self._env_overrides())
        try:
            return Settings.model_validate(data)
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(part) for part in first["loc"])
            raise DomainError("load_settings", field, data.get(field), first["msg"])

    def env(self, name: str) -> Optional[str]:
        """Raw RECIPSUM_<NAME> value, for flags that are not settings fields"""
        return self.environ.get(ENV_PREFIX + name.upper()) or None
