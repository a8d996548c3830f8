"""Tests for the permutation-group helpers."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import AlternatingGroup, CyclicGroup, SymmetricGroup

PROJECT_ROOT = Path(__file__).resolve().parent
SRC_DIR = PROJECT_ROOT / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from kernel_fp import Word  # noqa: E402
from permcore import (  # noqa: E402
    KernelConsistencyError,
    ResourceLimitError,
    coset_action,
    direct_sum,
    evaluate_word,
    fingerprints_differ,
    group_fingerprint,
    intersection,
    is_normal_subgroup,
    is_simple,
    kernel,
    make_group,
    normal_closure,
    order,
    restrict,
)


def _sym(points, degree=4):
    a, b, *rest = points
    gens = [Permutation(a, b, size=degree)]
    if rest:
        gens.append(Permutation(*points, size=degree))
    return PermutationGroup(gens)


def test_evaluate_word_uses_right_action():
    """A word is evaluated left to right, first letter applied first."""
    a = Permutation(0, 1, size=3)
    b = Permutation(1, 2, size=3)
    assert evaluate_word(Word.of(1, 2), [a, b]) == a * b
    assert evaluate_word(Word.of(-1), [a, b]) == ~a
    assert evaluate_word(Word.identity(), [a, b]).is_Identity


def test_direct_sum_and_restrict():
    """A diagonal element restricts back to each factor."""
    left = Permutation(0, 1, 2)
    right = Permutation(0, 1, size=2)
    summed = direct_sum(left, right)
    assert summed.size == 5
    assert restrict(summed, 0, 3) == left
    assert restrict(summed, 3, 5) == right
    with pytest.raises(ValueError):
        restrict(Permutation(0, 3, size=4), 0, 2)


def test_intersection_methods_agree():
    """Sym{0,1,2} meets Sym{1,2,3} in Sym{1,2} by either method."""
    first = _sym([0, 1, 2])
    second = _sym([1, 2, 3])
    assert order(first) == 6
    for method in ("auto", "coset", "backtrack"):
        assert order(intersection(first, second, method=method)) == 2
    with pytest.raises(ValueError):
        intersection(first, second, method="bogus")


def test_intersection_of_nested_groups():
    """A subgroup intersects its overgroup in itself."""
    small = CyclicGroup(4)
    big = SymmetricGroup(4)
    assert order(intersection(small, big)) == 4


def test_coset_action():
    """S3 acts on the three cosets of a transposition subgroup."""
    group = SymmetricGroup(3)
    sub = PermutationGroup([Permutation(0, 1, size=3)])
    images = coset_action(group.generators, sub, limit=10)
    assert all(image.size == 3 for image in images)
    assert order(make_group(images, 3)) == 6
    with pytest.raises(ResourceLimitError):
        coset_action(group.generators, sub, limit=2)


def test_normal_closure_and_normality():
    """The double transpositions close to the Klein group inside S4."""
    s4 = SymmetricGroup(4)
    klein = normal_closure(s4, [Permutation(0, 1)(2, 3)])
    assert order(klein) == 4
    assert is_normal_subgroup(klein, s4)
    assert not is_normal_subgroup(PermutationGroup([Permutation(0, 1, size=4)]), s4)


def test_kernel_checks_quotient_order():
    """A kernel disagreeing with the enumerated quotient order raises."""
    s3 = SymmetricGroup(3)
    rotations = kernel(s3, [Permutation(0, 1, 2)], quotient_order=2)
    assert order(rotations) == 3
    with pytest.raises(KernelConsistencyError):
        kernel(s3, [Permutation(2)], quotient_order=2)


def test_simplicity():
    """Prime cyclic groups and A5 are simple; S4, C4 and the trivial group are not."""
    assert is_simple(CyclicGroup(5))
    assert is_simple(AlternatingGroup(5))
    assert not is_simple(CyclicGroup(4))
    assert not is_simple(SymmetricGroup(4))
    assert not is_simple(make_group([], 3))
    with pytest.raises(ResourceLimitError):
        is_simple(SymmetricGroup(5), bound=10)


def test_fingerprints():
    """Fingerprints separate C5 from A5 but not A5 from itself."""
    cyclic = group_fingerprint(CyclicGroup(5))
    assert cyclic == {"order": 5, "abelian_invariants": [5], "simple": True}
    a5 = group_fingerprint(AlternatingGroup(5))
    assert a5["abelian_invariants"] == []
    assert fingerprints_differ(cyclic, a5)
    assert not fingerprints_differ(a5, group_fingerprint(AlternatingGroup(5)))
