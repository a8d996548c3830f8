"""Mix, comix and chirality groups of rotation systems."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from sympy.combinatorics import PermutationGroup

from kernel_fp import (
    BudgetExhausted,
    Presentation,
    abelian_invariants,
    enantiomorph_word,
)
from permcore import (
    DEFAULT_COSET_INDEX_LIMIT,
    DEFAULT_SIMPLICITY_BOUND,
    coset_action,
    diagonal_images,
    evaluate_word,
    is_simple,
    kernel,
    make_group,
    order,
    restrict_group,
)
from rotgroup import (
    RotationSystem,
    Status,
    UnknownStatusError,
    enantiomorph,
    from_presentation,
    mirror_images,
)

LOGGER = logging.getLogger(__name__)

KNOWN_SIMPLE_ORDERS = {
    60: "A5",
    168: "PSL(2,7)",
    360: "A6",
    504: "PSL(2,8)",
    660: "PSL(2,11)",
    1092: "PSL(2,13)",
    2520: "A7",
}


class ProductFormulaError(AssertionError):
    """|mix| * |comix| disagrees with the product of the factor orders."""


@dataclass(frozen=True)
class MixResult:
    """The mix together with the blocks of its domain carrying each factor."""

    system: RotationSystem
    factors: Tuple[RotationSystem, RotationSystem]
    blocks: Tuple[Tuple[int, int], Tuple[int, int]] = ((0, 0), (0, 0))

    def projection_kernel(self, factor: int) -> PermutationGroup:
        """Elements of the mix acting trivially on the given factor's block."""
        start, stop = self.blocks[factor]
        return self.system.group.pointwise_stabilizer(list(range(start, stop)))


def _mix_name(first: RotationSystem, second: RotationSystem, symbol: str) -> str:
    return f"({first.name or '?'} {symbol} {second.name or '?'})"


def _holding_relators(images, *systems: RotationSystem):
    kept = []
    for system in systems:
        for relator in system.presentation.relators:
            if evaluate_word(relator, images).is_Identity:
                kept.append(relator)
    return tuple(kept)


def mix(
    first: RotationSystem,
    second: RotationSystem,
    verify: bool = False,
    budget: Optional[int] = None,
) -> MixResult:
    """Diagonal subgroup of the direct product, acting on the disjoint union.

    The mix presentation lists only relators of either factor that hold in
    it, so it is flagged incomplete.
    """
    if first.rank != second.rank:
        raise ValueError(f"cannot mix ranks {first.rank} and {second.rank}")
    name = _mix_name(first, second, "<>")
    if not (first.is_finite and second.is_finite):
        LOGGER.info("Mix %s stays symbolic: a factor has unknown status", name)
        presentation = Presentation(first.rank, ())
        symbolic = RotationSystem(presentation, None, Status.UNKNOWN, False, name)
        return MixResult(symbolic, (first, second))
    images = tuple(diagonal_images(first.images, second.images))
    relators = _holding_relators(images, first, second)
    system = RotationSystem(
        Presentation(first.rank, relators), images, Status.FINITE, False, name
    )
    split = first.degree
    result = MixResult(system, (first, second), ((0, split), (split, split + second.degree)))
    LOGGER.info("Mix %s has order %d", name, system.order)
    if verify:
        verify_product_formula(first, second, budget=budget, mixed=result)
    return result


def comix(
    first: RotationSystem,
    second: RotationSystem,
    budget: Optional[int] = None,
    index_limit: int = DEFAULT_COSET_INDEX_LIMIT,
) -> RotationSystem:
    """Largest common quotient.

    With both presentations complete this is an enumeration of the union of
    the relators; otherwise the first factor is divided by the kernel of its
    mix with the second.
    """
    if first.rank != second.rank:
        raise ValueError(f"cannot comix ranks {first.rank} and {second.rank}")
    name = _mix_name(first, second, "[]")
    if first.presentation_complete and second.presentation_complete:
        presentation = first.presentation.with_relators(second.presentation.relators)
        limit = budget if budget is not None else min(first.coset_budget, second.coset_budget)
        return from_presentation(presentation, limit, name)
    if not (first.is_finite and second.is_finite):
        raise UnknownStatusError(f"comix {name} needs presentations or finite realizations")
    mixed = mix(first, second)
    start, stop = mixed.blocks[1]
    residual = mixed.system.group.pointwise_stabilizer(list(range(start, stop)))
    factor_kernel = restrict_group(residual, *mixed.blocks[0])
    LOGGER.debug("Comix %s: kernel of order %d in the first factor", name, order(factor_kernel))
    images = tuple(coset_action(first.images, factor_kernel, index_limit))
    relators = first.presentation.relators + second.presentation.relators
    return RotationSystem(
        Presentation(first.rank, relators), images, Status.FINITE, False, name
    )


@dataclass(frozen=True)
class ProductFormulaCheck:
    mix_order: int
    comix_order: int
    first_order: int
    second_order: int

    @property
    def holds(self) -> bool:
        return self.mix_order * self.comix_order == self.first_order * self.second_order


def verify_product_formula(
    first: RotationSystem,
    second: RotationSystem,
    budget: Optional[int] = None,
    mixed: Optional[MixResult] = None,
) -> ProductFormulaCheck:
    """Cross-check |mix| * |comix| = |first| * |second| between the two routes."""
    first.require_finite("product formula")
    second.require_finite("product formula")
    mixed = mixed or mix(first, second)
    common = comix(first, second, budget=budget)
    if not common.is_finite:
        raise BudgetExhausted(budget or first.coset_budget, common.name)
    check = ProductFormulaCheck(mixed.system.order, common.order, first.order, second.order)
    if not check.holds:
        raise ProductFormulaError(
            f"{mixed.system.name}: {check.mix_order} * {check.comix_order} != "
            f"{check.first_order} * {check.second_order}"
        )
    return check


# ---------------------------------------------------------------------------
# Chirality groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChiralityReport:
    order: Optional[int]
    abelian_invariants: Optional[List[int]]
    simple: Optional[bool]
    totally_chiral: Optional[bool]
    comix_order: Optional[int]
    route: str
    label: Optional[str] = None
    group: Optional[PermutationGroup] = field(default=None, compare=False, repr=False)

    @property
    def directly_regular(self) -> Optional[bool]:
        return None if self.order is None else self.order == 1

    def to_dict(self) -> Dict[str, object]:
        return {
            "order": self.order if self.order is not None else "unknown",
            "abelian_invariants": self.abelian_invariants,
            "simple": self.simple,
            "totally_chiral": self.totally_chiral,
            "comix_with_mirror_order": self.comix_order,
            "route": self.route,
            "label": self.label,
        }


def heuristic_label(size: int, simple: Optional[bool], invariants: Optional[List[int]]) -> Optional[str]:
    """Best-effort isomorphism-class name, never used as a proof."""
    if size == 1:
        return "1"
    if invariants == [size]:
        return f"C{size}"
    if simple and size in KNOWN_SIMPLE_ORDERS:
        return KNOWN_SIMPLE_ORDERS[size]
    return None


def chirality_kernel_by_realization(system: RotationSystem) -> PermutationGroup:
    """Kernel of the minimal regular cover onto the mirror image, seen inside the system."""
    images = diagonal_images(system.images, mirror_images(system.images))
    cover = make_group(images, images[0].size)
    degree = system.degree
    residual = cover.pointwise_stabilizer(list(range(degree, 2 * degree)))
    return restrict_group(residual, 0, degree)


def chirality_group(
    system: RotationSystem,
    budget: Optional[int] = None,
    simplicity_bound: int = DEFAULT_SIMPLICITY_BOUND,
) -> ChiralityReport:
    """X(P): normal closure of the mirrored relators inside the rotation group."""
    if not system.is_finite:
        common = None
        if system.presentation_complete:
            quotient = comix(system, enantiomorph(system), budget=budget)
            common = quotient.order if quotient.is_finite else None
        return ChiralityReport(None, None, None, None, common, "unknown")

    if system.presentation_complete:
        quotient = comix(system, enantiomorph(system), budget=budget)
        if not quotient.is_finite:
            raise BudgetExhausted(budget or system.coset_budget, quotient.name)
        mirrored = [system.evaluate(enantiomorph_word(w)) for w in system.presentation.relators]
        group = kernel(system.group, mirrored, quotient_order=quotient.order)
        route = "presentation"
        common = quotient.order
    else:
        group = chirality_kernel_by_realization(system)
        route = "realization"
        common = system.order // order(group)

    size = order(group)
    invariants = abelian_invariants(group)
    simple = is_simple(group, simplicity_bound) if size <= simplicity_bound else None
    report = ChiralityReport(
        size,
        invariants,
        simple,
        size == system.order,
        common,
        route,
        heuristic_label(size, simple, invariants),
        group,
    )
    LOGGER.info("Chirality group of %s has order %d via %s", system.name, size, route)
    return report


def minimal_regular_cover(system: RotationSystem) -> RotationSystem:
    """P <> mirror(P), the smallest directly regular cover."""
    cover = mix(system, enantiomorph(system)).system
    return cover.renamed(f"cover({system.name})" if system.name else "")


def maximal_regular_quotient(system: RotationSystem, budget: Optional[int] = None) -> RotationSystem:
    """P [] mirror(P), the largest directly regular quotient."""
    quotient = comix(system, enantiomorph(system), budget=budget)
    return quotient.renamed(f"quotient({system.name})" if system.name else "")

