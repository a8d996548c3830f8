"""Numeric budgets and bounds, layered from the settings file, environment and flags."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from kernel_fp import DEFAULT_COSET_BUDGET
from permcore import DEFAULT_COSET_INDEX_LIMIT, DEFAULT_SIMPLICITY_BOUND

LOGGER = logging.getLogger(__name__)

BASE_DIR = Path(__file__).resolve().parents[1]
DEFAULT_SETTINGS_PATH = BASE_DIR / "configs" / "settings.json"

SETTINGS_ENV = "CHIRALMIX_SETTINGS"
ENV_VARIABLES = {
    "coset_budget": "CHIRALMIX_COSET_BUDGET",
    "coset_index_limit": "CHIRALMIX_COSET_INDEX_LIMIT",
    "simplicity_bound": "CHIRALMIX_SIMPLICITY_BOUND",
}


@dataclass(frozen=True)
class Settings:
    coset_budget: int = DEFAULT_COSET_BUDGET
    coset_index_limit: int = DEFAULT_COSET_INDEX_LIMIT
    simplicity_bound: int = DEFAULT_SIMPLICITY_BOUND

    def to_dict(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _positive_int(name: str, value: Any, source: str) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name} from {source} must be an integer, got {value!r}") from exc
    if number < 1:
        raise ValueError(f"{name} from {source} must be positive, got {number}")
    return number


def _apply(settings: Settings, values: Mapping[str, Any], source: str) -> Settings:
    known = {f.name for f in fields(Settings)}
    updates = {}
    for key, value in values.items():
        if value is None:
            continue
        if key not in known:
            LOGGER.warning("Ignoring unknown setting %s from %s", key, source)
            continue
        updates[key] = _positive_int(key, value, source)
    if updates:
        LOGGER.debug("Settings from %s: %s", source, updates)
    return replace(settings, **updates)


def _load_file(path: Path) -> Dict[str, Any]:
    with path.open("r", encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise ValueError(f"settings file {path} must hold a JSON object")
    return data


def load_settings(
    path: Optional[Path | str] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> Settings:
    """Defaults, then the settings file, then environment variables, then ``overrides``.

    The file is ``path``, else ``$CHIRALMIX_SETTINGS``, else
    ``configs/settings.json`` when present.
    """
    environ = os.environ if environ is None else environ
    settings = Settings()

    explicit = path or environ.get(SETTINGS_ENV)
    file_path = Path(explicit) if explicit else DEFAULT_SETTINGS_PATH
    if file_path.exists():
        settings = _apply(settings, _load_file(file_path), str(file_path))
    elif explicit:
        raise FileNotFoundError(f"settings file {file_path} not found")

    from_env = {key: environ.get(var) for key, var in ENV_VARIABLES.items()}
    settings = _apply(settings, from_env, "environment")
    if overrides:
        settings = _apply(settings, overrides, "command line")
    return settings
