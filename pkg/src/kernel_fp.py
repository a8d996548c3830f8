"""Words, string-group presentations, coset enumeration and abelian invariants."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix, ZZ
from sympy.combinatorics import PermutationGroup
from sympy.combinatorics.fp_groups import FpGroup, coset_enumeration_r
from sympy.combinatorics.free_groups import FreeGroup, FreeGroupElement, free_group
from sympy.matrices.normalforms import invariant_factors

LOGGER = logging.getLogger(__name__)

DEFAULT_COSET_BUDGET = 10_000_000


class BudgetExhausted(RuntimeError):
    """A coset enumeration did not close within its budget (possibly infinite)."""

    def __init__(self, budget: int, context: str = "") -> None:
        self.budget = budget
        self.context = context
        detail = f" while enumerating {context}" if context else ""
        super().__init__(
            f"coset enumeration exceeded {budget} cosets{detail}; "
            "the quotient may be infinite, raise the budget to retry"
        )


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------


def _reduce_letters(letters: Iterable[int]) -> Tuple[int, ...]:
    stack: List[int] = []
    for letter in letters:
        if letter == 0:
            raise ValueError("generator index 0 is not a valid letter")
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True, order=True)
class Word:
    """Freely reduced word over sigma_1..sigma_{n-1}.

    A letter is a nonzero integer: ``+i`` stands for sigma_i and ``-i`` for its
    inverse.
    """

    letters: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", _reduce_letters(self.letters))

    @classmethod
    def of(cls, *letters: int) -> "Word":
        return cls(tuple(letters))

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> "Word":
        sign = 1 if exponent > 0 else -1
        return cls((sign * index,) * abs(exponent))

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, exponent: int) -> "Word":
        base = self if exponent >= 0 else self.inverse()
        return Word(base.letters * abs(exponent))

    def inverse(self) -> "Word":
        return Word(tuple(-letter for letter in reversed(self.letters)))

    @property
    def max_generator(self) -> int:
        return max((abs(letter) for letter in self.letters), default=0)

    def involves(self, index: int) -> bool:
        return any(abs(letter) == index for letter in self.letters)

    def cyclically_reduced(self) -> "Word":
        letters = list(self.letters)
        while len(letters) > 1 and letters[0] == -letters[-1]:
            letters = letters[1:-1]
        return Word(tuple(letters))

    def exponent_sums(self, generator_count: int) -> List[int]:
        sums = [0] * generator_count
        for letter in self.letters:
            sums[abs(letter) - 1] += 1 if letter > 0 else -1
        return sums

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts: List[str] = []
        index = 0
        letters = self.letters
        while index < len(letters):
            letter = letters[index]
            run = 1
            while index + run < len(letters) and letters[index + run] == letter:
                run += 1
            exponent = run if letter > 0 else -run
            generator = f"s{abs(letter)}"
            parts.append(generator if exponent == 1 else f"{generator}^{exponent}")
            index += run
        return " ".join(parts)


def free_reduce(word: Word | Sequence[int]) -> Word:
    """Return the freely reduced form of ``word`` (idempotent)."""
    letters = word.letters if isinstance(word, Word) else tuple(word)
    return Word(letters)


_MIRROR_IMAGES = {
    1: (-1,),
    -1: (1,),
    2: (1, 1, 2),
    -2: (-2, -1, -1),
}


def enantiomorph_word(word: Word) -> Word:
    """Mirror image: sigma_1 -> sigma_1^-1, sigma_2 -> sigma_1^2 sigma_2, rest fixed."""
    letters: List[int] = []
    for letter in word.letters:
        letters.extend(_MIRROR_IMAGES.get(letter, (letter,)))
    return Word(tuple(letters))


def dual_word(word: Word, rank: int) -> Word:
    """Image under sigma_i -> sigma_{n-i}^-1."""
    letters = []
    for letter in word.letters:
        index = abs(letter)
        image = rank - index
        letters.append(-image if letter > 0 else image)
    return Word(tuple(letters))


def tau_word(i: int, j: int) -> Word:
    """sigma_i sigma_{i+1} ... sigma_j as a word (empty for degenerate indices)."""
    if i < 1 or j < i:
        return Word.identity()
    return Word(tuple(range(i, j + 1)))


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Quotient of the universal string rotation group W+ of a given rank.

    The string relations (sigma_i ... sigma_j)^2 for i < j are implicit; only
    the extra relators are stored.
    """

    rank: int
    relators: Tuple[Word, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 2:
            raise ValueError(f"rank must be at least 2, got {self.rank}")
        cleaned: List[Word] = []
        seen = set()
        for relator in self.relators:
            relator = relator if isinstance(relator, Word) else Word(tuple(relator))
            if not relator:
                raise ValueError("relators must be nonempty after free reduction")
            if relator.max_generator > self.generator_count:
                raise ValueError(
                    f"relator {relator} uses a generator beyond s{self.generator_count} "
                    f"(rank {self.rank})"
                )
            if relator not in seen:
                seen.add(relator)
                cleaned.append(relator)
        object.__setattr__(self, "relators", tuple(cleaned))

    @property
    def generator_count(self) -> int:
        return self.rank - 1

    def string_relators(self) -> Tuple[Word, ...]:
        """The implicit W+ relators, generated on demand."""
        words = []
        for i in range(1, self.generator_count + 1):
            for j in range(i + 1, self.generator_count + 1):
                words.append(tau_word(i, j) ** 2)
        return tuple(words)

    def all_relators(self) -> Tuple[Word, ...]:
        return self.string_relators() + self.relators

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation(self.rank, self.relators + tuple(extra))

    def mirrored(self) -> "Presentation":
        return Presentation(self.rank, tuple(enantiomorph_word(w) for w in self.relators))

    def dualized(self) -> "Presentation":
        return Presentation(self.rank, tuple(dual_word(w, self.rank) for w in self.relators))

    def __str__(self) -> str:
        body = ", ".join(str(w) for w in self.relators) or "-"
        return f"<rank {self.rank} | {body}>"


def string_presentation(rank: int, relators: Iterable[Word] = ()) -> Presentation:
    return Presentation(rank, tuple(relators))


# ---------------------------------------------------------------------------
# Coset enumeration
# ---------------------------------------------------------------------------


class TableStatus(str, Enum):
    COMPLETE = "complete"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class CosetTable:
    """Result of a coset enumeration.

    Columns are ordered ``s1, s1^-1, s2, s2^-1, ...``; row 0 is the subgroup
    coset. A table whose budget ran out carries no rows.
    """

    generator_count: int
    rows: Tuple[Tuple[int, ...], ...]
    status: TableStatus
    cosets_defined: int
    budget: int
    subgroup_generators: Tuple[Word, ...] = field(default=())

    @property
    def is_complete(self) -> bool:
        return self.status is TableStatus.COMPLETE

    @property
    def order(self) -> Optional[int]:
        """Index of the subgroup (group order when the subgroup is trivial)."""
        return len(self.rows) if self.is_complete else None

    def generator_actions(self) -> List[List[int]]:
        """Image lists of the generators acting on cosets (right action)."""
        if not self.is_complete:
            raise BudgetExhausted(self.budget)
        return [[row[2 * k] for row in self.rows] for k in range(self.generator_count)]

    def trace(self, word: Word, start: int = 0) -> int:
        coset = start
        for letter in word.letters:
            coset = self.rows[coset][_column(letter)]
        return coset


def _column(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


def _free_word(word: Word, free: FreeGroup) -> FreeGroupElement:
    element = free.identity
    for letter in word.letters:
        element *= free.generators[abs(letter) - 1] ** (1 if letter > 0 else -1)
    return element


@lru_cache(maxsize=None)
def _free_group(generator_count: int) -> FreeGroup:
    return free_group(", ".join(f"s{i}" for i in range(1, generator_count + 1)))[0]


def to_fp_group(presentation: Presentation) -> FpGroup:
    """The quotient of W+ as a sympy ``FpGroup`` on s1..s(n-1)."""
    free = _free_group(presentation.generator_count)
    return FpGroup(free, [_free_word(w, free) for w in presentation.all_relators()])


def todd_coxeter(
    presentation: Presentation,
    subgroup_generators: Iterable[Word] = (),
    budget: int = DEFAULT_COSET_BUDGET,
) -> CosetTable:
    """Enumerate cosets of <subgroup_generators> in the quotient of W+.

    Runs sympy's relator-based (HLT) enumeration; the table is compressed and
    standardized, so it is deterministic for fixed inputs. A budget overrun is
    reported through the table status, never raised.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    subgens = tuple(Word(tuple(w)) if not isinstance(w, Word) else w for w in subgroup_generators)
    group = to_fp_group(presentation)
    subgroup = [_free_word(w, group.free_group) for w in subgens if w]
    try:
        table = coset_enumeration_r(group, subgroup, max_cosets=budget)
    except ValueError as exc:
        LOGGER.warning(
            "Coset enumeration of %s exhausted its budget of %d cosets", presentation, budget
        )
        LOGGER.debug("%s", exc)
        return CosetTable(
            presentation.generator_count, (), TableStatus.BUDGET_EXHAUSTED, budget, budget, subgens
        )
    defined = len(table.p)
    table.compress()
    table.standardize()
    rows = tuple(tuple(row) for row in table.table)
    LOGGER.debug(
        "Enumeration of %s closed at index %d after defining %d cosets",
        presentation,
        len(rows),
        defined,
    )
    return CosetTable(
        presentation.generator_count, rows, TableStatus.COMPLETE, defined, budget, subgens
    )


def quotient_order(presentation: Presentation, budget: int = DEFAULT_COSET_BUDGET) -> int:
    """Order of W+/<<relators>>, raising BudgetExhausted when it does not close."""
    table = todd_coxeter(presentation, (), budget)
    if not table.is_complete:
        raise BudgetExhausted(budget, str(presentation))
    return table.order


# ---------------------------------------------------------------------------
# Abelian invariants
# ---------------------------------------------------------------------------


def _invariant_chain(matrix: Matrix) -> List[int]:
    """Nontrivial invariant factors of a relation matrix, free factors as trailing 0."""
    if matrix.rows == 0:
        return [0] * matrix.cols
    factors = [abs(int(f)) for f in invariant_factors(matrix, domain=ZZ)]
    factors += [0] * (matrix.cols - len(factors))
    return [f for f in factors if f != 1]


def relator_matrix(presentation: Presentation) -> Matrix:
    rows = [w.exponent_sums(presentation.generator_count) for w in presentation.all_relators()]
    if not rows:
        return Matrix.zeros(0, presentation.generator_count)
    return Matrix(rows)


def abelian_invariants(source: Presentation | PermutationGroup) -> List[int]:
    """Invariant factors of the abelianization.

    Presentations go through the relator exponent matrix; permutation groups
    through the primary invariants of their derived quotient.
    """
    if isinstance(source, PermutationGroup):
        primary = [] if source.is_trivial else source.abelian_invariants()
        if not primary:
            return []
        return _invariant_chain(Matrix.diag(*primary))
    return _invariant_chain(relator_matrix(source))
