"""Rotation systems: finite string rotation groups and their polytope data."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation, PermutationGroup

from kernel_fp import (
    DEFAULT_COSET_BUDGET,
    Presentation,
    Word,
    enantiomorph_word,
    tau_word,
    todd_coxeter,
)
from permcore import (
    DEFAULT_COSET_INDEX_LIMIT,
    diagonal_images,
    evaluate_word,
    from_image_list,
    identity,
    intersection,
    make_group,
    order,
)

LOGGER = logging.getLogger(__name__)


class UnknownStatusError(ValueError):
    """An operation needs a finite realization but the system has none."""


class NotPolytopalError(ValueError):
    """The system fails the intersection property."""

    def __init__(self, name: str, witness: Tuple[FrozenSet[int], FrozenSet[int]]) -> None:
        self.witness = witness
        first, second = (sorted(s) for s in witness)
        super().__init__(
            f"{name or 'rotation system'} is not polytopal: "
            f"G_I and G_J intersect beyond G_(I&J) for I={first}, J={second}"
        )


class Status(str, Enum):
    FINITE = "finite"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RotationSystem:
    """A string rotation group given by a presentation and, when finite, a realization.

    ``presentation_complete`` is False when the relators are only known to hold
    (mixes, sections, searched groups before their presentation is frozen).
    """

    presentation: Presentation
    images: Optional[Tuple[Permutation, ...]] = None
    status: Status = Status.FINITE
    presentation_complete: bool = True
    name: str = ""
    coset_budget: int = field(default=DEFAULT_COSET_BUDGET, compare=False)

    def __post_init__(self) -> None:
        if self.status is Status.FINITE:
            if self.images is None or len(self.images) != self.presentation.generator_count:
                raise ValueError("a finite rotation system needs one image per generator")
        elif self.images is not None:
            raise ValueError("an unknown-status rotation system carries no realization")

    @property
    def rank(self) -> int:
        return self.presentation.rank

    @property
    def is_finite(self) -> bool:
        return self.status is Status.FINITE

    @property
    def degree(self) -> int:
        self.require_finite("degree")
        return self.images[0].size

    @cached_property
    def group(self) -> PermutationGroup:
        self.require_finite("group")
        return make_group(self.images, self.images[0].size)

    @cached_property
    def order(self) -> int:
        return order(self.group)

    @cached_property
    def schlafli_type(self) -> Tuple[int, ...]:
        self.require_finite("type")
        return tuple(int(image.order()) for image in self.images)

    def require_finite(self, what: str) -> None:
        if not self.is_finite:
            raise UnknownStatusError(
                f"{what} of {self.name or 'rotation system'} needs a finite realization"
            )

    def evaluate(self, word: Word) -> Permutation:
        self.require_finite("evaluation")
        return evaluate_word(word, self.images)

    def satisfies(self, word: Word) -> bool:
        return self.evaluate(word).is_Identity

    def renamed(self, name: str) -> "RotationSystem":
        return replace(self, name=name)

    def describe(self) -> str:
        if not self.is_finite:
            return f"{self.name or 'system'} (rank {self.rank}, status unknown)"
        return f"{self.name or 'system'} (rank {self.rank}, order {self.order})"


def make(
    rank: int,
    relators: Iterable[Word],
    budget: int = DEFAULT_COSET_BUDGET,
    name: str = "",
) -> RotationSystem:
    """Enumerate W+ modulo ``relators`` and realize it on its own elements."""
    if rank < 3:
        raise ValueError(f"rotation systems start at rank 3, got {rank}")
    return from_presentation(Presentation(rank, tuple(relators)), budget, name)


def from_presentation(
    presentation: Presentation, budget: int = DEFAULT_COSET_BUDGET, name: str = ""
) -> RotationSystem:
    table = todd_coxeter(presentation, (), budget)
    if not table.is_complete:
        LOGGER.warning("%s did not close within %d cosets; status unknown", name or presentation, budget)
        return RotationSystem(
            presentation, None, Status.UNKNOWN, True, name, coset_budget=budget
        )
    images = tuple(from_image_list(image) for image in table.generator_actions())
    LOGGER.info("Built %s of order %d", name or presentation, table.order)
    return RotationSystem(presentation, images, Status.FINITE, True, name, coset_budget=budget)


def from_realization(
    rank: int,
    images: Sequence[Permutation],
    relators: Iterable[Word] = (),
    complete: bool = False,
    name: str = "",
) -> RotationSystem:
    """Wrap permutation images, checking the string relations and the given relators."""
    images = tuple(images)
    presentation = Presentation(rank, tuple(relators))
    for relator in presentation.all_relators():
        if not evaluate_word(relator, images).is_Identity:
            raise ValueError(f"relator {relator} does not hold in the realization of {name}")
    return RotationSystem(presentation, images, Status.FINITE, complete, name)


# ---------------------------------------------------------------------------
# Distinguished subgroups
# ---------------------------------------------------------------------------


def tau(system: RotationSystem, i: int, j: int) -> Permutation:
    """sigma_i ... sigma_j, with tau(0, j) and tau(i, n) the identity."""
    n = system.rank
    if i == 0 or j == n:
        if not (0 <= i <= n and 0 <= j <= n):
            raise IndexError(f"tau({i}, {j}) out of range for rank {n}")
        return identity(system.degree)
    if not 1 <= i <= j <= n - 1:
        raise IndexError(f"tau({i}, {j}) needs 1 <= i <= j <= {n - 1}")
    return system.evaluate(tau_word(i, j))


def subgroup_GI(system: RotationSystem, indices: Iterable[int]) -> PermutationGroup:
    """Gamma+_I, generated by tau(i, j) with i-1 and j in I."""
    n = system.rank
    index_set = {k for k in indices}
    if any(k < -1 or k > n for k in index_set):
        raise IndexError(f"indices must lie in -1..{n}")
    index_set &= set(range(n))
    gens = [
        tau(system, i, j)
        for i in range(1, n)
        for j in range(i, n)
        if (i - 1) in index_set and j in index_set
    ]
    return make_group(gens, system.degree)


@dataclass(frozen=True)
class IntersectionResult:
    holds: bool
    witness: Optional[Tuple[FrozenSet[int], FrozenSet[int]]] = None
    method: str = "exhaustive"
    pairs_checked: int = 0

    def to_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            witness = [sorted(part) for part in self.witness]
        return {"holds": self.holds, "witness": witness, "method": self.method}


def _subsets(n: int) -> List[FrozenSet[int]]:
    points = range(n)
    result = []
    for size in range(n + 1):
        result.extend(frozenset(c) for c in combinations(points, size))
    return result


def _exhaustive_intersection_check(
    system: RotationSystem, index_limit: int
) -> IntersectionResult:
    subsets = _subsets(system.rank)
    groups = {subset: subgroup_GI(system, subset) for subset in subsets}
    checked = 0
    for first, second in combinations(subsets, 2):
        if first <= second or second <= first:
            continue
        checked += 1
        meet = order(groups[first & second])
        common = order(intersection(groups[first], groups[second], index_limit))
        if common != meet:
            LOGGER.info(
                "Intersection property fails for %s at I=%s, J=%s",
                system.name,
                sorted(first),
                sorted(second),
            )
            return IntersectionResult(False, (first, second), "exhaustive", checked)
    return IntersectionResult(True, None, "exhaustive", checked)


def _inductive_intersection_check(
    system: RotationSystem, index_limit: int
) -> Optional[IntersectionResult]:
    n = system.rank
    if not check_intersection_property(facet_system(system), index_limit).holds:
        return None
    if not check_intersection_property(vertex_figure_system(system), index_limit).holds:
        return None
    facet_group = subgroup_GI(system, range(0, n - 1))
    vertex_group = subgroup_GI(system, range(1, n))
    middle = subgroup_GI(system, range(1, n - 1))
    common = intersection(facet_group, vertex_group, index_limit)
    if order(common) != order(middle):
        return None
    return IntersectionResult(True, None, "inductive", 1)


def check_intersection_property(
    system: RotationSystem,
    index_limit: int = DEFAULT_COSET_INDEX_LIMIT,
    method: str = "auto",
) -> IntersectionResult:
    """Decide polytopality; a failure carries a violating pair (I, J)."""
    system.require_finite("intersection property")
    if system.rank <= 2:
        return IntersectionResult(True, None, "trivial", 0)
    if method not in ("auto", "exhaustive", "inductive"):
        raise ValueError(f"unknown method {method!r}")
    if method == "inductive" or (method == "auto" and system.rank >= 5):
        result = _inductive_intersection_check(system, index_limit)
        if result is not None:
            return result
        LOGGER.debug("Inductive test inconclusive for %s; checking all pairs", system.name)
    return _exhaustive_intersection_check(system, index_limit)


def require_polytopal(system: RotationSystem, index_limit: int = DEFAULT_COSET_INDEX_LIMIT) -> None:
    result = check_intersection_property(system, index_limit)
    if not result.holds:
        raise NotPolytopalError(system.name, result.witness)


# ---------------------------------------------------------------------------
# Faces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FaceData:
    schlafli_type: Tuple[int, ...]
    face_vector: Tuple[int, ...]
    flags: int

    def to_dict(self) -> dict:
        return {
            "type": list(self.schlafli_type),
            "face_vector": list(self.face_vector),
            "flags": self.flags,
        }


def face_data(
    system: RotationSystem,
    index_limit: int = DEFAULT_COSET_INDEX_LIMIT,
    assume_polytopal: bool = False,
) -> FaceData:
    """Type, i-face counts and flag count; refuses non-polytopal systems."""
    if not assume_polytopal:
        require_polytopal(system, index_limit)
    n = system.rank
    size = system.order
    everything = set(range(n))
    counts = tuple(size // order(subgroup_GI(system, everything - {i})) for i in range(n))
    return FaceData(system.schlafli_type, counts, 2 * size)


# ---------------------------------------------------------------------------
# Mirror images, duals and sections
# ---------------------------------------------------------------------------


def mirror_images(images: Sequence[Permutation]) -> Tuple[Permutation, ...]:
    first = images[0]
    mirrored = [~first]
    if len(images) > 1:
        mirrored.append(first * first * images[1])
        mirrored.extend(images[2:])
    return tuple(mirrored)


def enantiomorph(system: RotationSystem) -> RotationSystem:
    """Mirror image; mirroring twice returns the original system."""
    name = f"mirror({system.name})" if system.name else ""
    if system.name.startswith("mirror(") and system.name.endswith(")"):
        name = system.name[len("mirror(") : -1]
    images = mirror_images(system.images) if system.is_finite else None
    return RotationSystem(
        system.presentation.mirrored(),
        images,
        system.status,
        system.presentation_complete,
        name,
        coset_budget=system.coset_budget,
    )


def dual(system: RotationSystem) -> RotationSystem:
    """Dual system via sigma_i -> sigma_{n-i}^-1."""
    images = None
    if system.is_finite:
        images = tuple(~image for image in reversed(system.images))
    return RotationSystem(
        system.presentation.dualized(),
        images,
        system.status,
        system.presentation_complete,
        f"dual({system.name})" if system.name else "",
        coset_budget=system.coset_budget,
    )


def facet_system(system: RotationSystem) -> RotationSystem:
    """Rotation system of the facet, generated by sigma_1 .. sigma_{n-2}."""
    n = system.rank
    relators = tuple(w for w in system.presentation.relators if not w.involves(n - 1))
    images = system.images[: n - 2] if system.is_finite else None
    return RotationSystem(
        Presentation(n - 1, relators),
        images,
        system.status,
        False,
        f"facet({system.name})" if system.name else "",
        coset_budget=system.coset_budget,
    )


def vertex_figure_system(system: RotationSystem) -> RotationSystem:
    """Rotation system of the vertex figure, generated by sigma_2 .. sigma_{n-1}."""
    n = system.rank
    relators = tuple(
        Word(tuple(letter - 1 if letter > 0 else letter + 1 for letter in w.letters))
        for w in system.presentation.relators
        if not w.involves(1)
    )
    images = system.images[1:] if system.is_finite else None
    return RotationSystem(
        Presentation(n - 1, relators),
        images,
        system.status,
        False,
        f"vertex_figure({system.name})" if system.name else "",
        coset_budget=system.coset_budget,
    )


def reflection_to_rotation_word(reflections: Sequence[int]) -> Word:
    """Rewrite an even-length word in rho_0..rho_{n-1} over the sigma letters.

    Consecutive pairs rho_a rho_b become tau(a+1, b) for a < b and its inverse
    for a > b; repeated letters cancel.
    """
    if len(reflections) % 2:
        raise ValueError("a reflection word must have even length to lie in the rotation subgroup")
    result = Word.identity()
    for a, b in zip(reflections[0::2], reflections[1::2]):
        if a < 0 or b < 0:
            raise ValueError("reflection indices are nonnegative")
        if a < b:
            result = result * tau_word(a + 1, b)
        elif a > b:
            result = result * tau_word(b + 1, a).inverse()
    return result


# ---------------------------------------------------------------------------
# Regularity and covering
# ---------------------------------------------------------------------------


def _mix_order(first: Sequence[Permutation], second: Sequence[Permutation]) -> int:
    images = diagonal_images(first, second)
    return order(make_group(images, images[0].size))


def is_directly_regular(system: RotationSystem) -> bool:
    """True exactly when the system is isomorphic to its enantiomorph."""
    system.require_finite("direct regularity")
    if system.rank == 2:
        return True
    if system.presentation_complete:
        return all(system.satisfies(enantiomorph_word(w)) for w in system.presentation.relators)
    return _mix_order(system.images, mirror_images(system.images)) == system.order


def covers(
    cover: RotationSystem,
    target: RotationSystem,
    witness: Optional[RotationSystem] = None,
) -> bool:
    """True when ``cover`` naturally covers ``target``.

    For an unknown-status target only refutation is possible, through a finite
    ``witness`` that the target itself covers.
    """
    if cover.rank != target.rank:
        raise ValueError(f"rank mismatch: {cover.rank} vs {target.rank}")
    if target.is_finite:
        if cover.presentation_complete:
            return all(target.satisfies(w) for w in cover.presentation.all_relators())
        if cover.is_finite:
            return _mix_order(cover.images, target.images) == cover.order
        raise UnknownStatusError(
            f"cannot decide whether {cover.name} covers {target.name} without a presentation"
        )
    if witness is None:
        raise UnknownStatusError(f"{target.name or 'target'} has unknown status; supply a witness")
    witness.require_finite("witness")
    if not covers(target, witness):
        raise ValueError(f"{witness.name} is not a quotient of {target.name}")
    if not covers(cover, witness):
        return False
    raise UnknownStatusError(
        f"witness {witness.name} does not refute that {cover.name} covers {target.name}"
    )
