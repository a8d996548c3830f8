"""Tests for the reproduction suite and its exports."""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import pandas as pd
import pytest
from docx import Document

PROJECT_ROOT = Path(__file__).resolve().parent
SRC_DIR = PROJECT_ROOT / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

import reproduction  # noqa: E402
from catalog import CatalogError  # noqa: E402
from document_generator import DocumentGenerator  # noqa: E402
from reproduction import (  # noqa: E402
    COLUMNS,
    RANDOM_WORD_SEED,
    ReproductionSuite,
    export_xlsx,
    load_catalog_sample,
    random_word,
    render_summary,
    suite_passed,
)
from settings import Settings  # noqa: E402


@pytest.fixture(scope="session")
def toroid_frame():
    suite = ReproductionSuite(Settings())
    return suite.run(only=["catalog", "toroid_chirality", "extensions"])


def _write_checks(path: Path, expected, discrepancies=None) -> Path:
    check = {"id": "catalog", "description": "edited", "expected": expected}
    if discrepancies:
        check["known_discrepancies"] = discrepancies
    path.write_text(json.dumps({"checks": [check]}), encoding="utf-8")
    return path


def test_catalog_sample():
    """The shipped sample lists twelve rank-3 entries."""
    entries = load_catalog_sample()
    assert len(entries) == 12
    assert "toroid44(1,2)" in entries


def test_random_words_are_reproducible():
    """The same seed gives the same words over the given generators."""
    first = [random_word(random.Random(RANDOM_WORD_SEED), 4) for _ in range(5)]
    second = [random_word(random.Random(RANDOM_WORD_SEED), 4) for _ in range(5)]
    assert first == second
    rng = random.Random(RANDOM_WORD_SEED)
    for _ in range(50):
        word = random_word(rng, 3, max_length=10)
        assert word.max_generator <= 3
        assert len(word) <= 10


def test_published_values_are_recomputed(toroid_frame):
    """Catalog orders, toroid chirality groups and the extension check all pass."""
    assert list(toroid_frame.columns) == COLUMNS
    assert set(toroid_frame["check"]) == {"catalog", "toroid_chirality", "extensions"}
    assert (toroid_frame["status"] == "pass").all()
    assert suite_passed(toroid_frame)
    row = toroid_frame[toroid_frame["quantity"] == "X(toroid44(1,2)) invariants"].iloc[0]
    assert row["computed"] == "[5]"


def test_known_discrepancy_is_not_a_failure(tmp_path):
    """A listed discrepancy passes only while the other quantities agree."""
    checks = _write_checks(
        tmp_path / "checks.json",
        {"universal(2,3,3,2) order": 48, "simplex(4) order": 61},
        {"simplex(4) order": "misprint"},
    )
    frame = ReproductionSuite(Settings(), checks_path=checks).run()
    assert list(frame["status"]) == ["pass", "discrepancy"]
    assert suite_passed(frame)

    checks = _write_checks(
        tmp_path / "checks.json",
        {"universal(2,3,3,2) order": 47, "simplex(4) order": 61},
        {"simplex(4) order": "misprint"},
    )
    frame = ReproductionSuite(Settings(), checks_path=checks).run()
    assert list(frame["status"]) == ["fail", "fail"]
    assert not suite_passed(frame)


def test_failing_check_does_not_abort_the_run(tmp_path, monkeypatch):
    """An error inside one check becomes fail rows while later checks still run."""
    checks = tmp_path / "checks.json"
    checks.write_text(
        json.dumps(
            {
                "checks": [
                    {"id": "cubic_toroids", "expected": {"flags of cubic_toroid(4,2,1)": 384}},
                    {"id": "catalog", "expected": {"universal(2,3,3,2) order": 48}},
                ]
            }
        ),
        encoding="utf-8",
    )
    real_resolve = reproduction.resolve

    def resolve(reference, **kwargs):
        if reference.startswith("cubic_toroid"):
            raise CatalogError(f"unavailable: {reference}")
        return real_resolve(reference, **kwargs)

    monkeypatch.setattr(reproduction, "resolve", resolve)
    frame = ReproductionSuite(Settings(), checks_path=checks).run()
    assert list(frame["check"]) == ["cubic_toroids", "catalog"]
    assert list(frame["status"]) == ["fail", "pass"]
    assert str(frame.iloc[0]["computed"]).startswith("error: CatalogError")
    assert not suite_passed(frame)


def test_cubic_toroid_and_property_checks():
    """Cubic flag counts and the property sweeps reproduce."""
    frame = ReproductionSuite(Settings()).run(only=["cubic_toroids", "properties"])
    assert set(frame["check"]) == {"cubic_toroids", "properties"}
    assert len(frame) == 10
    assert (frame["status"] == "pass").all()
    flags = frame[frame["quantity"] == "flags of cubic_toroid(4,2,3)"].iloc[0]
    assert flags["computed"] == "1536"

def test_budget_rows(tmp_path):
    """A budget too small to close any toroid turns every row into a budget row."""
    frame = ReproductionSuite(Settings(coset_budget=5)).run(only=["toroid_chirality"])
    assert len(frame) == 7
    assert (frame["status"] == "budget").all()
    assert not suite_passed(frame)


def test_exports(toroid_frame, tmp_path):
    """The table round-trips through Excel and lands in a Word table."""
    xlsx = export_xlsx(toroid_frame, tmp_path / "reproduction.xlsx")
    loaded = pd.read_excel(xlsx, sheet_name="reproduction", dtype=str)
    assert list(loaded.columns) == COLUMNS
    assert len(loaded) == len(toroid_frame)

    docx = DocumentGenerator().create_reproduction_document(toroid_frame, tmp_path / "docs" / "report.docx")
    document = Document(str(docx))
    assert len(document.tables) == 1
    assert len(document.tables[0].rows) == len(toroid_frame) + 1
    assert document.tables[0].rows[0].cells[0].text == "Check"

    summary = render_summary(toroid_frame)
    assert summary.endswith("\n")
    assert "toroid_chirality" in summary
