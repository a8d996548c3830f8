"""Reader and writer for presentation files.

A file declares a rank and then one relator per line::

    # {4,4}_(1,2)
    rank 3
    relator s1^4
    relator s2^4
    relator (s1 s2^-1) (s1^-1 s2)^2

Generators are ``s1`` .. ``s{rank-1}``; the string relations are implicit.
"""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import List

import lark

from kernel_fp import Presentation, Word

LOGGER = logging.getLogger(__name__)

GRAMMAR = r"""
start: header line*
header: "rank" INT
line: "relator" word
word: term+
term: atom ("^" SIGNED_INT)?
atom: GENERATOR
    | "(" word ")"

GENERATOR: /s[0-9]+/
COMMENT: /#[^\n]*/

%import common.INT
%import common.SIGNED_INT
%import common.WS
%ignore WS
%ignore COMMENT
"""

MIN_RANK = 3


class PresentationParseError(ValueError):
    """Malformed presentation text, located by line and column (1-based)."""

    def __init__(self, message: str, line: int, column: int) -> None:
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class WordBuilder(lark.Transformer):
    def atom(self, args):
        item = args[0]
        if isinstance(item, lark.Token):
            return Word.generator(int(item[1:]))
        return item

    def term(self, args):
        if len(args) == 1:
            return args[0]
        return args[0] ** int(args[1])

    def word(self, args):
        result = Word.identity()
        for term in args:
            result = result * term
        return result

    def line(self, args):
        return args[0]

    def header(self, args):
        return int(args[0])

    def start(self, args):
        return Presentation(args[0], tuple(w for w in args[1:] if w))


_PARSER = lark.Lark(GRAMMAR, parser="lalr", propagate_positions=True)


def _check_indices(tree: lark.Tree) -> None:
    header = next(tree.find_data("header"))
    rank_token = header.children[0]
    rank = int(rank_token)
    if rank < MIN_RANK:
        raise PresentationParseError(
            f"rank must be at least {MIN_RANK}, got {rank}", rank_token.line, rank_token.column
        )
    for token in tree.scan_values(lambda v: isinstance(v, lark.Token) and v.type == "GENERATOR"):
        index = int(token[1:])
        if not 1 <= index <= rank - 1:
            raise PresentationParseError(
                f"unknown generator {token} for rank {rank} (use s1..s{rank - 1})",
                token.line,
                token.column,
            )


def parse_presentation(text: str) -> Presentation:
    """Parse presentation text; relators that reduce to the identity are dropped."""
    try:
        tree = _PARSER.parse(text)
    except lark.exceptions.UnexpectedInput as exc:
        line = max(getattr(exc, "line", 0) or 0, 0)
        column = max(getattr(exc, "column", 0) or 0, 0)
        if isinstance(exc, lark.exceptions.UnexpectedEOF):
            line = text.count("\n") + 1
            column = len(text.rsplit("\n", 1)[-1]) + 1
        raise PresentationParseError(_describe(exc), line, column) from exc
    _check_indices(tree)
    presentation = WordBuilder().transform(tree)
    LOGGER.debug("Parsed %s", presentation)
    return presentation


def _describe(exc: lark.exceptions.UnexpectedInput) -> str:
    if isinstance(exc, lark.exceptions.UnexpectedCharacters):
        return f"unexpected character {exc.char!r}"
    if isinstance(exc, lark.exceptions.UnexpectedToken):
        return f"unexpected {exc.token.type.lower()} {str(exc.token)!r}"
    return "unexpected end of input"


def serialize_presentation(presentation: Presentation) -> str:
    """Canonical text form: reduced relators in sorted order."""
    lines: List[str] = [f"rank {presentation.rank}"]
    for relator in sorted(presentation.relators):
        lines.append(f"relator {relator}")
    return "\n".join(lines) + "\n"


def load_presentation_file(path: Path | str) -> Presentation:
    path = Path(path)
    LOGGER.info("Reading presentation from %s", path)
    return parse_presentation(path.read_text(encoding="utf-8"))


def _parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Check and normalize a presentation file.")
    parser.add_argument("path", type=Path, help="Presentation file to read.")
    return parser.parse_args()


def main() -> None:
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
    )
    args = _parse_args()
    print(serialize_presentation(load_presentation_file(args.path)), end="")


if __name__ == "__main__":
    main()
