"""Tests for layered settings."""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parent
SRC_DIR = PROJECT_ROOT / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from settings import DEFAULT_SETTINGS_PATH, Settings, load_settings  # noqa: E402


@pytest.fixture()
def settings_file(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"coset_budget": 500, "simplicity_bound": 4000}), encoding="utf-8")
    return path


def test_shipped_settings_match_defaults():
    """configs/settings.json restates the built-in defaults."""
    assert DEFAULT_SETTINGS_PATH.exists()
    assert load_settings(environ={}) == Settings()


def test_file_then_environment_then_overrides(settings_file):
    """Each layer overrides the one before it."""
    from_file = load_settings(settings_file, environ={})
    assert from_file.coset_budget == 500
    assert from_file.simplicity_bound == 4000
    assert from_file.coset_index_limit == Settings().coset_index_limit

    env = {"CHIRALMIX_COSET_BUDGET": "700"}
    assert load_settings(settings_file, environ=env).coset_budget == 700

    layered = load_settings(settings_file, {"coset_budget": 900, "simplicity_bound": None}, env)
    assert layered.coset_budget == 900
    assert layered.simplicity_bound == 4000


def test_settings_path_from_environment(settings_file):
    """CHIRALMIX_SETTINGS names the file when no path is given."""
    settings = load_settings(environ={"CHIRALMIX_SETTINGS": str(settings_file)})
    assert settings.coset_budget == 500


def test_invalid_values(settings_file):
    """Non-integers and non-positive numbers are rejected."""
    with pytest.raises(ValueError):
        load_settings(settings_file, {"coset_budget": 0}, {})
    with pytest.raises(ValueError):
        load_settings(settings_file, environ={"CHIRALMIX_SIMPLICITY_BOUND": "many"})


def test_missing_or_malformed_file(tmp_path):
    """An explicit missing file is an error, as is a file without a JSON object."""
    with pytest.raises(FileNotFoundError):
        load_settings(tmp_path / "absent.json", environ={})
    listing = tmp_path / "list.json"
    listing.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ValueError):
        load_settings(listing, environ={})


def test_unknown_keys_warn(tmp_path, caplog):
    """Unknown keys are logged and skipped."""
    path = tmp_path / "extra.json"
    path.write_text(json.dumps({"coset_budget": 50, "colour": "blue"}), encoding="utf-8")
    with caplog.at_level(logging.WARNING, logger="settings"):
        settings = load_settings(path, environ={})
    assert settings.coset_budget == 50
    assert "colour" in caplog.text
    assert settings.to_dict()["coset_budget"] == 50
