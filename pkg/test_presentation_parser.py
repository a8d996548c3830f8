"""Tests for the presentation file format."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parent
SRC_DIR = PROJECT_ROOT / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from kernel_fp import Presentation, Word  # noqa: E402
from presentation_parser import (  # noqa: E402
    PresentationParseError,
    load_presentation_file,
    parse_presentation,
    serialize_presentation,
)
from rotgroup import from_presentation  # noqa: E402

TETRAHEDRON = """\
# rotation group of the tetrahedron
rank 3
relator s1^3
relator s2^3   # trailing comment
"""


def test_parse_simple_presentation():
    """Rank and relators are read; comments and blank space are ignored."""
    presentation = parse_presentation(TETRAHEDRON)
    assert presentation == Presentation(3, (Word.generator(1, 3), Word.generator(2, 3)))
    assert from_presentation(presentation).order == 12


def test_parenthesised_words_and_exponents():
    """Groups, negative exponents and concatenation build one reduced word."""
    presentation = parse_presentation("rank 3\nrelator (s1 s2^-1)^2 s1^-1\n")
    expected = (Word.of(1, -2) ** 2) * Word.generator(1).inverse()
    assert presentation.relators == (expected,)
    nested = parse_presentation("rank 4\nrelator (s1 (s2 s3)^2)^-1\n")
    assert nested.relators == ((Word.of(1) * Word.of(2, 3) ** 2).inverse(),)


def test_trivial_relators_are_dropped():
    """A relator reducing to the identity contributes nothing."""
    presentation = parse_presentation("rank 3\nrelator s1 s1^-1\nrelator s2^0\nrelator s1^4\n")
    assert presentation.relators == (Word.generator(1, 4),)


def test_unknown_generator_is_located():
    """s3 does not exist in rank 3 and the error points at it."""
    with pytest.raises(PresentationParseError) as excinfo:
        parse_presentation("rank 3\nrelator s1 s3\n")
    assert excinfo.value.line == 2
    assert excinfo.value.column == 12
    assert "s3" in str(excinfo.value)
    with pytest.raises(PresentationParseError):
        parse_presentation("rank 3\nrelator s0\n")


def test_rank_below_three_is_rejected():
    """Rotation systems start at rank 3."""
    with pytest.raises(PresentationParseError) as excinfo:
        parse_presentation("rank 2\n")
    assert excinfo.value.line == 1


def test_syntax_errors():
    """Malformed input raises with a position."""
    for text in ("relator s1\n", "rank 3\nrelator (s1 s2\n", "rank 3\nrelator s1 ^ x\n"):
        with pytest.raises(PresentationParseError) as excinfo:
            parse_presentation(text)
        assert excinfo.value.line >= 1


def test_serialize_is_canonical():
    """Serialized text lists sorted relators and parses back to the same presentation."""
    presentation = Presentation(3, (Word.generator(2, 3), Word.generator(1, 3)))
    text = serialize_presentation(presentation)
    assert text == "rank 3\nrelator s1^3\nrelator s2^3\n"
    assert set(parse_presentation(text).relators) == set(presentation.relators)


def test_load_presentation_file(tmp_path):
    """Files are read as UTF-8 text."""
    path = tmp_path / "tetrahedron.txt"
    path.write_text(TETRAHEDRON, encoding="utf-8")
    assert load_presentation_file(path).rank == 3
