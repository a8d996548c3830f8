"""Tests for words, presentations and coset enumeration."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest
from sympy.combinatorics.group_constructs import DirectProduct
from sympy.combinatorics.named_groups import AlternatingGroup, CyclicGroup

PROJECT_ROOT = Path(__file__).resolve().parent
SRC_DIR = PROJECT_ROOT / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from kernel_fp import (  # noqa: E402
    BudgetExhausted,
    Presentation,
    TableStatus,
    Word,
    abelian_invariants,
    dual_word,
    enantiomorph_word,
    free_reduce,
    quotient_order,
    to_fp_group,
    todd_coxeter,
)

S1, S2 = Word.generator(1), Word.generator(2)


@pytest.fixture(scope="session")
def tetrahedral():
    return Presentation(3, (Word.generator(1, 3), Word.generator(2, 3)))


@pytest.fixture(scope="session")
def square_tiling():
    return Presentation(3, (Word.generator(1, 4), Word.generator(2, 4)))


def test_words_are_freely_reduced():
    """Adjacent inverse letters cancel on construction and reduction is idempotent."""
    word = Word((1, 2, -2, -1, 3))
    assert word.letters == (3,)
    assert free_reduce(word) == word
    assert free_reduce([1, -1]) == Word.identity()
    assert not Word.of(2, -2)


def test_word_arithmetic_and_text():
    """Products, powers and inverses stay reduced and print in exponent form."""
    word = S1 * S1 * S2.inverse()
    assert str(word) == "s1^2 s2^-1"
    assert word * word.inverse() == Word.identity()
    assert (S1 * S2) ** -1 == S2.inverse() * S1.inverse()
    assert str(Word.identity()) == "1"
    with pytest.raises(ValueError):
        Word((0,))


def test_enantiomorph_is_an_involution():
    """Mirroring a word twice returns it."""
    words = [S1, S2, S1 * S2 ** 3, (S1.inverse() * S2) ** 2 * Word.generator(3)]
    for word in words:
        assert enantiomorph_word(enantiomorph_word(word)) == word
    assert enantiomorph_word(S2) == Word.of(1, 1, 2)


def test_dual_is_an_involution():
    """The dual map reverses and inverts the generators."""
    word = Word.of(1, 2, 2, -3)
    assert dual_word(word, 4) == Word.of(-3, -2, -2, 1)
    assert dual_word(dual_word(word, 4), 4) == word


def test_presentation_validates_relators():
    """Relators must be nonempty and use generators of the given rank."""
    with pytest.raises(ValueError):
        Presentation(3, (Word.generator(3),))
    with pytest.raises(ValueError):
        Presentation(3, (Word.of(1, -1),))
    with pytest.raises(ValueError):
        Presentation(1, ())
    duplicated = Presentation(3, (S1 ** 3, S1 ** 3))
    assert len(duplicated.relators) == 1
    assert len(Presentation(4).string_relators()) == 3


def test_enumeration_of_the_tetrahedral_group(tetrahedral):
    """{3,3} closes at 12 cosets and sigma_1 has index 4."""
    table = todd_coxeter(tetrahedral)
    assert table.status is TableStatus.COMPLETE
    assert table.order == 12
    assert quotient_order(tetrahedral) == 12
    assert todd_coxeter(tetrahedral, [S1]).order == 4
    actions = table.generator_actions()
    assert sorted(actions[0]) == list(range(12))


def test_fp_group_and_standard_table(tetrahedral):
    """The finitely presented group has the enumerated order and rows come back standardized."""
    group = to_fp_group(tetrahedral)
    assert len(group.generators) == 2
    assert group.order() == 12
    table = todd_coxeter(tetrahedral)
    assert table.rows[0][0] == 1
    assert table.cosets_defined >= 12

def test_enumeration_is_deterministic(tetrahedral):
    """Two runs on the same input give identical tables."""
    assert todd_coxeter(tetrahedral).rows == todd_coxeter(tetrahedral).rows


def test_budget_overrun_is_a_status(square_tiling):
    """The infinite {4,4} group reports an exhausted budget instead of raising."""
    table = todd_coxeter(square_tiling, budget=1000)
    assert table.status is TableStatus.BUDGET_EXHAUSTED
    assert table.order is None
    with pytest.raises(BudgetExhausted):
        table.generator_actions()
    with pytest.raises(BudgetExhausted):
        quotient_order(square_tiling, budget=1000)
    with pytest.raises(ValueError):
        todd_coxeter(square_tiling, budget=0)


def test_abelian_invariants(tetrahedral, square_tiling):
    """Smith form of the relator matrix and the derived quotient agree on A4."""
    assert abelian_invariants(tetrahedral) == [3]
    assert abelian_invariants(AlternatingGroup(4)) == [3]
    assert abelian_invariants(square_tiling) == [2, 4]
    assert abelian_invariants(Presentation(3)) == [2, 0]


def test_abelian_invariants_form_a_divisibility_chain():
    """Primary invariants of a permutation group are merged into invariant factors."""
    assert abelian_invariants(CyclicGroup(6)) == [6]
    assert abelian_invariants(DirectProduct(CyclicGroup(2), CyclicGroup(4))) == [2, 4]
    assert abelian_invariants(CyclicGroup(1)) == []
    assert abelian_invariants(Presentation(3, (Word.generator(1, 6), Word.generator(2, 2)))) == [2, 2]
