"""End-to-end tests of the command line."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parent
SRC_DIR = PROJECT_ROOT / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from main import (  # noqa: E402
    EXIT_BUDGET,
    EXIT_NOT_POLYTOPAL,
    EXIT_OK,
    EXIT_PARSE,
    run,
)


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch):
    for variable in (
        "CHIRALMIX_SETTINGS",
        "CHIRALMIX_COSET_BUDGET",
        "CHIRALMIX_COSET_INDEX_LIMIT",
        "CHIRALMIX_SIMPLICITY_BOUND",
    ):
        monkeypatch.delenv(variable, raising=False)


def _run_json(capsys, *argv):
    code = run(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_classify_regular_polyhedron(capsys):
    """The tetrahedron report carries order, faces and a trivial chirality group."""
    code, report = _run_json(capsys, "classify", "universal(3,3)")
    assert code == EXIT_OK
    assert report["order"] == 12
    assert report["type"] == [3, 3]
    assert report["face_vector"] == [4, 6, 4]
    assert report["flags"] == 24
    assert report["directly_regular"] is True
    assert report["intersection_property"]["holds"] is True
    assert report["chirality_group"]["order"] == 1
    assert report["certificates"] == []


def test_classify_chiral_toroid(capsys):
    """A chiral toroid reports X = C5 and the extension certificate."""
    code, report = _run_json(capsys, "classify", "toroid44(1,2)")
    assert code == EXIT_OK
    assert report["directly_regular"] is False
    assert report["chirality_group"]["order"] == 5
    assert report["chirality_group"]["abelian_invariants"] == [5]
    assert report["certificates"][0]["theorem"] == "extension-chirality"
    assert report["certificates"][0]["conclusion"] == "infinite_chirality_group"


def test_classify_batch_keeps_input_order(capsys):
    """Several systems print as a list in the order given."""
    code, reports = _run_json(capsys, "classify", "toroid44(1,1)", "universal(3,4)", "--jobs", "1")
    assert code == EXIT_OK
    assert [r["name"] for r in reports] == ["toroid44(1,1)", "universal(3,4)"]


def test_classify_unknown_status(capsys):
    """An enumeration that does not close still prints its report but exits with the budget code."""
    code, report = _run_json(capsys, "classify", "universal(4,4)", "--budget", "1000")
    assert code == EXIT_BUDGET
    assert report["status"] == "unknown"
    assert report["order"] == "unknown"


def test_classify_presentation_file(tmp_path, capsys):
    """Presentation files are accepted wherever a reference is."""
    path = tmp_path / "tetra.txt"
    path.write_text("rank 3\nrelator s1^3\nrelator s2^3\n", encoding="utf-8")
    code, report = _run_json(capsys, "classify", str(path))
    assert code == EXIT_OK
    assert report["name"] == "tetra"
    assert report["order"] == 12


def test_exit_codes(tmp_path, capsys):
    """Parse, budget and polytopality failures have their own exit codes."""
    bad = tmp_path / "bad.txt"
    bad.write_text("rank 3\nrelator s3\n", encoding="utf-8")
    collapsed = tmp_path / "collapsed.txt"
    collapsed.write_text("rank 3\nrelator s2\n", encoding="utf-8")

    assert run(["classify", str(bad)]) == EXIT_PARSE
    assert run(["classify", "no_such_family(1)"]) == EXIT_PARSE
    assert run(["classify", "toroid44(1,2)", "--budget", "5"]) == EXIT_BUDGET
    assert run(["classify", str(collapsed)]) == EXIT_NOT_POLYTOPAL
    assert run(["mix", "toroid44(1,2)", "no_such_family"]) == EXIT_PARSE
    capsys.readouterr()


def test_mix_command(capsys):
    """Enantiomorphic toroids mix to the order-100 regular cover."""
    code, report = _run_json(capsys, "mix", "toroid44(1,2)", "toroid44(2,1)", "--faces", "--no-certificates")
    assert code == EXIT_OK
    assert report["mix"]["order"] == 100
    assert report["mix"]["directly_regular"] is True
    assert report["mix"]["face_vector"] == [25, 50, 25]
    assert report["mix"]["flags"] == 200
    assert report["comix_order"] == 4
    assert report["product_formula"]["holds"] is True
    assert "certificates" not in report


def test_comix_command(capsys):
    """The comix of toroid44(1,2) with its mirror identifies both generators."""
    code, report = _run_json(capsys, "comix", "toroid44(1,2)", "toroid44(2,1)")
    assert code == EXIT_OK
    assert report["comix"]["order"] == 4
    assert report["comix"]["directly_regular"] is True


def test_chirality_command(capsys):
    """X of toroid44(2,3) has order 13."""
    code, report = _run_json(capsys, "chirality", "toroid44(2,3)")
    assert code == EXIT_OK
    assert report["chirality_group"]["order"] == 13
    assert report["chirality_group"]["label"] == "C13"


def test_certify_pair_and_single(capsys):
    """Pairs get the mixing criteria; a single system gets the extension criteria."""
    code, pair = _run_json(capsys, "certify", "toroid44(1,2)", "toroid36(1,0)", "--cross-check")
    assert code == EXIT_OK
    tags = [c["theorem"] for c in pair["certificates"]]
    assert "chiral-mix-criterion" in tags

    code, single = _run_json(capsys, "certify", "toroid44(1,2)")
    assert code == EXIT_OK
    tags = [c["theorem"] for c in single["certificates"]]
    assert tags[:2] == ["extension-chirality", "pseudo-extension"]
    assert tags.count("toroid-mixing") == 3


def test_catalog_command(capsys):
    """Without references the families are listed; with references they are built."""
    assert run(["catalog"]) == EXIT_OK
    listing = capsys.readouterr().out
    assert "toroid44" in listing
    assert "cubic_toroid" in listing

    assert run(["catalog", "toroid44(1,2)", "universal(3,3)"]) == EXIT_OK
    table = capsys.readouterr().out
    assert "{4,4}" in table
    assert "20" in table


def test_reproduce_command(tmp_path, capsys):
    """A passing subset exits cleanly and writes both exports."""
    xlsx = tmp_path / "out" / "reproduction.xlsx"
    docx = tmp_path / "out" / "reproduction.docx"
    code = run(["reproduce", "--only", "catalog", "--xlsx", str(xlsx), "--docx", str(docx)])
    assert code == EXIT_OK
    assert "catalog" in capsys.readouterr().out
    assert xlsx.exists()
    assert docx.exists()
