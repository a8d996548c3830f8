"""Permutation-group services on top of sympy's Schreier-Sims machinery.

Every group here is a :class:`sympy.combinatorics.PermutationGroup`. Elements
act on the right: ``p * q`` applies ``p`` first, so a word evaluates to the
left-to-right product of its letter images.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from sympy import isprime
from sympy.combinatorics import Permutation, PermutationGroup

from kernel_fp import Word, abelian_invariants

LOGGER = logging.getLogger(__name__)

DEFAULT_COSET_INDEX_LIMIT = 100_000
DEFAULT_SIMPLICITY_BOUND = 10_000_000
DEFAULT_INTERSECTION_INDEX_BOUND = 2_000_000


class ResourceLimitError(RuntimeError):
    """A permutation computation would exceed a configured size bound."""


class KernelConsistencyError(AssertionError):
    """Normal-closure order disagrees with the enumerated quotient order."""


def identity(degree: int) -> Permutation:
    return Permutation(list(range(max(degree, 1))))


def make_group(generators: Iterable[Permutation], degree: Optional[int] = None) -> PermutationGroup:
    gens = [g for g in generators if not g.is_Identity]
    if not gens:
        size = degree if degree is not None else 1
        return PermutationGroup([identity(size)])
    return PermutationGroup(gens)


def group_degree(group: PermutationGroup) -> int:
    return group.degree


def order(group: PermutationGroup) -> int:
    return int(group.order())


def evaluate_word(word: Word, images: Sequence[Permutation]) -> Permutation:
    """Image of ``word`` under sigma_i -> images[i-1]."""
    degree = images[0].size if images else 1
    result = identity(degree)
    for letter in word.letters:
        image = images[abs(letter) - 1]
        result = result * (image if letter > 0 else ~image)
    return result


def from_image_list(image: Sequence[int]) -> Permutation:
    return Permutation(list(image))


def direct_sum(left: Permutation, right: Permutation) -> Permutation:
    """Act by ``left`` on the first block and ``right`` on a shifted second block."""
    shift = left.size
    return Permutation(list(left.array_form) + [x + shift for x in right.array_form])


def diagonal_images(
    left: Sequence[Permutation], right: Sequence[Permutation]
) -> List[Permutation]:
    if len(left) != len(right):
        raise ValueError("diagonal images need generator lists of equal length")
    return [direct_sum(a, b) for a, b in zip(left, right)]


def restrict(perm: Permutation, start: int, stop: int) -> Permutation:
    """Restriction of ``perm`` to the invariant block ``[start, stop)``, renumbered from 0."""
    images = [perm.array_form[i] - start for i in range(start, stop)]
    if any(x < 0 or x >= stop - start for x in images):
        raise ValueError(f"block [{start}, {stop}) is not invariant under {perm}")
    return Permutation(images)


def restrict_group(group: PermutationGroup, start: int, stop: int) -> PermutationGroup:
    return make_group((restrict(g, start, stop) for g in group.generators), stop - start)


def is_subgroup(small: PermutationGroup, big: PermutationGroup) -> bool:
    return all(big.contains(g, strict=False) for g in small.generators)


# ---------------------------------------------------------------------------
# Cosets
# ---------------------------------------------------------------------------


def coset_key(subgroup: PermutationGroup, element: Permutation) -> Tuple[int, ...]:
    """Canonical key of the right coset ``subgroup * element``.

    The key is the array form of the coset member whose base images are
    lexicographically least, found level by level down the stabilizer chain.
    """
    base = subgroup.base
    transversals = subgroup.basic_transversals
    orbits = subgroup.basic_orbits
    current = element
    for level, point in enumerate(base):
        best = None
        best_image = None
        for delta in orbits[level]:
            image = current.array_form[delta]
            if best_image is None or image < best_image:
                best_image = image
                best = delta
        if best != point:
            current = transversals[level][best] * current
    return tuple(current.array_form)


def coset_action(
    generators: Sequence[Permutation], subgroup: PermutationGroup, limit: int
) -> List[Permutation]:
    """Permutation action of ``generators`` on the right cosets of ``subgroup``.

    Cosets are numbered in breadth-first order from the subgroup itself.
    """
    degree = generators[0].size
    start = identity(degree)
    keys: Dict[Hashable, int] = {coset_key(subgroup, start): 0}
    reps = [start]
    images: List[List[int]] = [[] for _ in generators]
    position = 0
    while position < len(reps):
        rep = reps[position]
        for k, gen in enumerate(generators):
            moved = rep * gen
            key = coset_key(subgroup, moved)
            target = keys.get(key)
            if target is None:
                target = len(reps)
                keys[key] = target
                reps.append(moved)
                if len(reps) > limit:
                    raise ResourceLimitError(
                        f"coset action exceeds the index limit of {limit}"
                    )
            images[k].append(target)
        position += 1
    return [Permutation(image) for image in images]


# ---------------------------------------------------------------------------
# Intersections
# ---------------------------------------------------------------------------


def _intersection_by_coset_action(
    acting: PermutationGroup, other: PermutationGroup, limit: int
) -> PermutationGroup:
    degree = acting.degree
    start = identity(degree)
    reps: Dict[Hashable, Permutation] = {coset_key(other, start): start}
    queue = [start]
    found = make_group([], degree)
    position = 0
    while position < len(queue):
        rep = queue[position]
        position += 1
        for gen in acting.generators:
            moved = rep * gen
            key = coset_key(other, moved)
            known = reps.get(key)
            if known is None:
                reps[key] = moved
                queue.append(moved)
                if len(reps) > limit:
                    raise ResourceLimitError(f"orbit of the coset exceeds {limit}")
                continue
            schreier = moved * ~known
            if not schreier.is_Identity and not found.contains(schreier, strict=False):
                found = make_group(list(found.generators) + [schreier], degree)
    return found


def _intersection_by_backtrack(
    searched: PermutationGroup, other: PermutationGroup, bound: int
) -> PermutationGroup:
    if order(searched) > bound:
        raise ResourceLimitError(
            f"backtrack intersection over a group of order {order(searched)} exceeds {bound}"
        )
    prop: Callable[[Permutation], bool] = lambda g: other.contains(g, strict=False)
    return searched.subgroup_search(prop)


def intersection(
    first: PermutationGroup,
    second: PermutationGroup,
    index_limit: int = DEFAULT_COSET_INDEX_LIMIT,
    method: str = "auto",
    backtrack_bound: int = DEFAULT_INTERSECTION_INDEX_BOUND,
) -> PermutationGroup:
    """Intersection of two subgroups of a common symmetric group.

    ``method`` is ``"auto"``, ``"coset"`` or ``"backtrack"``; the automatic
    choice tries the coset-action method and falls back to backtracking when
    the orbit outgrows ``index_limit``.
    """
    if first.degree != second.degree:
        raise ValueError("intersection needs groups of the same degree")
    if method not in ("auto", "coset", "backtrack"):
        raise ValueError(f"unknown intersection method {method!r}")
    if method == "auto":
        if is_subgroup(first, second):
            return first
        if is_subgroup(second, first):
            return second
    acting, other = (first, second) if order(first) <= order(second) else (second, first)
    if method == "backtrack":
        return _intersection_by_backtrack(acting, other, backtrack_bound)
    try:
        return _intersection_by_coset_action(acting, other, index_limit)
    except ResourceLimitError:
        if method == "coset":
            raise
        LOGGER.info("Coset orbit over %d; intersecting by backtrack search", index_limit)
        return _intersection_by_backtrack(acting, other, backtrack_bound)


# ---------------------------------------------------------------------------
# Normal structure
# ---------------------------------------------------------------------------


def normal_closure(group: PermutationGroup, elements: Iterable[Permutation]) -> PermutationGroup:
    """Smallest normal subgroup of ``group`` containing ``elements``."""
    degree = group.degree
    queue = [e for e in elements if not e.is_Identity]
    closure = make_group([], degree)
    gens: List[Permutation] = []
    for element in queue:
        if not closure.contains(element, strict=False):
            gens.append(element)
            closure = make_group(gens, degree)
    queue = list(gens)
    position = 0
    while position < len(queue):
        element = queue[position]
        position += 1
        for g in group.generators:
            conjugate = ~g * element * g
            if not closure.contains(conjugate, strict=False):
                gens.append(conjugate)
                queue.append(conjugate)
                closure = make_group(gens, degree)
    return closure


def kernel(
    group: PermutationGroup,
    relator_images: Iterable[Permutation],
    quotient_order: Optional[int] = None,
) -> PermutationGroup:
    """Kernel of the map onto ``group`` modulo extra relators.

    When the quotient order is known from an enumeration it must agree with
    ``|group| / |kernel|``.
    """
    closure = normal_closure(group, relator_images)
    if quotient_order is not None and order(group) != order(closure) * quotient_order:
        raise KernelConsistencyError(
            f"kernel of order {order(closure)} in a group of order {order(group)} "
            f"does not match quotient order {quotient_order}"
        )
    return closure


def is_normal_subgroup(sub: PermutationGroup, group: PermutationGroup) -> bool:
    if not is_subgroup(sub, group):
        return False
    return all(
        sub.contains(~g * h * g, strict=False) for g in group.generators for h in sub.generators
    )


def conjugacy_class_representatives(group: PermutationGroup) -> List[Permutation]:
    seen = set()
    reps = []
    for element in group.generate(af=False):
        key = tuple(element.array_form)
        if key in seen:
            continue
        reps.append(element)
        orbit = [element]
        seen.add(key)
        position = 0
        while position < len(orbit):
            current = orbit[position]
            position += 1
            for g in group.generators:
                conjugate = ~g * current * g
                conj_key = tuple(conjugate.array_form)
                if conj_key not in seen:
                    seen.add(conj_key)
                    orbit.append(conjugate)
    return reps


def is_simple(group: PermutationGroup, bound: int = DEFAULT_SIMPLICITY_BOUND) -> bool:
    """Simplicity test; the trivial group is not simple."""
    size = order(group)
    if size > bound:
        raise ResourceLimitError(f"simplicity test on a group of order {size} exceeds {bound}")
    if size == 1:
        return False
    if group.is_abelian:
        return bool(isprime(size))
    if order(group.derived_subgroup()) != size:
        return False
    for rep in conjugacy_class_representatives(group):
        if rep.is_Identity:
            continue
        if order(normal_closure(group, [rep])) != size:
            return False
    return True


def group_fingerprint(group: PermutationGroup, bound: int = DEFAULT_SIMPLICITY_BOUND) -> Dict[str, object]:
    """Isomorphism invariants used to certify that two groups differ."""
    size = order(group)
    return {
        "order": size,
        "abelian_invariants": abelian_invariants(group),
        "simple": is_simple(group, bound) if size <= bound else None,
    }


def fingerprints_differ(first: Dict[str, object], second: Dict[str, object]) -> bool:
    for key in ("order", "abelian_invariants", "simple"):
        if first.get(key) is None or second.get(key) is None:
            continue
        if first[key] != second[key]:
            return True
    return False
