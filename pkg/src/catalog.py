"""Constructors for the polytope families used as mixing material."""

from __future__ import annotations

import argparse
import json
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from sympy.combinatorics import Permutation

from kernel_fp import (
    DEFAULT_COSET_BUDGET,
    BudgetExhausted,
    Presentation,
    Word,
    enantiomorph_word,
    todd_coxeter,
)
from permcore import diagonal_images, evaluate_word, identity, make_group, order
from rotgroup import (
    RotationSystem,
    Status,
    check_intersection_property,
    from_presentation,
    from_realization,
    is_directly_regular,
    mirror_images,
    reflection_to_rotation_word,
    dual,
)

LOGGER = logging.getLogger(__name__)

S6_FREEZE_BUDGET = 50_000
S6_MAX_WORD_LENGTH = 4


class CatalogError(ValueError):
    """Bad family parameters or a construction that fails its order check."""


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    parameters: Tuple[object, ...]

    @property
    def reference(self) -> str:
        if not self.parameters:
            return self.tag
        inner = ",".join(str(p) for p in self.parameters)
        return f"{self.tag}({inner})"


# ---------------------------------------------------------------------------
# Toroidal maps
# ---------------------------------------------------------------------------


def _check_toroid_parameters(b: int, c: int) -> None:
    if b < 0 or c < 0 or (b == 0 and c == 0):
        raise CatalogError(f"toroid parameters need b, c >= 0 not both 0, got ({b},{c})")


def _build_checked(
    rank: int,
    conventions: Sequence[Tuple[str, Sequence[Word]]],
    expected: int,
    name: str,
    budget: int,
) -> RotationSystem:
    closed = False
    for label, relators in conventions:
        system = from_presentation(Presentation(rank, tuple(relators)), budget, name)
        closed = closed or system.is_finite
        if system.is_finite and system.order == expected:
            if label != conventions[0][0]:
                LOGGER.warning("%s built with the %s translation convention", name, label)
            return system
        LOGGER.debug(
            "%s: %s convention gave %s, expected %d",
            name,
            label,
            system.order if system.is_finite else "unknown",
            expected,
        )
    if not closed:
        raise BudgetExhausted(budget, name)
    raise CatalogError(f"{name}: no relator convention reaches the expected order {expected}")


def toroid44(b: int, c: int, budget: int = DEFAULT_COSET_BUDGET) -> RotationSystem:
    """The toroidal map {4,4}_(b,c), of order 4(b^2 + c^2)."""
    _check_toroid_parameters(b, c)
    s1, s2 = Word.generator(1), Word.generator(2)
    t1 = s1 * s2.inverse()
    types = [Word.generator(1, 4), Word.generator(2, 4)]
    conventions = [
        ("standard", types + [t1**b * (s1.inverse() * s2) ** c]),
        ("alternate", types + [t1**b * (s2.inverse() * s1) ** c]),
    ]
    return _build_checked(3, conventions, 4 * (b * b + c * c), f"toroid44({b},{c})", budget)


def toroid36(b: int, c: int, budget: int = DEFAULT_COSET_BUDGET) -> RotationSystem:
    """The toroidal map {3,6}_(b,c), of order 6(b^2 + bc + c^2)."""
    _check_toroid_parameters(b, c)
    s1, s2 = Word.generator(1), Word.generator(2)
    t1 = s1.inverse() * s2 * s2
    types = [Word.generator(1, 3), Word.generator(2, 6)]
    conventions = [
        ("standard", types + [t1**b * (s2 * t1 * s2.inverse()) ** c]),
        ("alternate", types + [t1**b * (s2.inverse() * t1 * s2) ** c]),
    ]
    expected = 6 * (b * b + b * c + c * c)
    return _build_checked(3, conventions, expected, f"toroid36({b},{c})", budget)


def toroid63(b: int, c: int, budget: int = DEFAULT_COSET_BUDGET) -> RotationSystem:
    return dual(toroid36(b, c, budget)).renamed(f"toroid63({b},{c})")


# ---------------------------------------------------------------------------
# Cubic toroids
# ---------------------------------------------------------------------------


def cubic_toroid_flag_count(n: int, s: int, k: int) -> int:
    return 2 ** (n + k - 2) * factorial(n - 1) * s ** (n - 1)


def cubic_toroid_order(n: int, s: int, k: int) -> int:
    """Rotation-group order, half the flag count."""
    return cubic_toroid_flag_count(n, s, k) // 2


def _cubic_translation(n: int, s: int, k: int) -> List[int]:
    up = list(range(n))
    if k == 1:
        return (up + list(range(n - 2, 0, -1))) * s
    if k == 2:
        return (up + list(range(n - 2, 1, -1))) * (2 * s)
    return up * ((n - 1) * s)


def cubic_toroid(n: int, s: int, k: int, budget: int = DEFAULT_COSET_BUDGET) -> RotationSystem:
    """The cubic toroid {4, 3^(n-3), 4}_(s^k, 0^(n-k-1)) of rank n."""
    if n < 3 or s < 2 or k not in {1, 2, n - 1}:
        raise CatalogError(f"cubic toroid needs n >= 3, s >= 2, k in {{1, 2, n-1}}; got ({n},{s},{k})")
    relators = [Word.generator(1, 4), Word.generator(n - 1, 4)]
    relators += [Word.generator(i, 3) for i in range(2, n - 1)]
    translation = reflection_to_rotation_word(_cubic_translation(n, s, k))
    relators += [translation, enantiomorph_word(translation)]
    name = f"cubic_toroid({n},{s},{k})"
    return _build_checked(n, [("standard", relators)], cubic_toroid_order(n, s, k), name, budget)


# ---------------------------------------------------------------------------
# Universal systems and simplices
# ---------------------------------------------------------------------------


def universal(*type_vector: int, budget: int = DEFAULT_COSET_BUDGET) -> RotationSystem:
    """Rotation group of the universal polytope {p_1, ..., p_(n-1)}."""
    if len(type_vector) < 2 or any(p < 2 for p in type_vector):
        raise CatalogError(f"universal needs at least two entries >= 2, got {type_vector}")
    relators = [Word.generator(i + 1, p) for i, p in enumerate(type_vector)]
    name = "universal(" + ",".join(str(p) for p in type_vector) + ")"
    return from_presentation(Presentation(len(type_vector) + 1, tuple(relators)), budget, name)


def simplex(n: int, budget: int = DEFAULT_COSET_BUDGET) -> RotationSystem:
    if n < 3:
        raise CatalogError(f"simplex rank must be at least 3, got {n}")
    system = universal(*([3] * (n - 1)), budget=budget).renamed(f"simplex({n})")
    expected = factorial(n + 1) // 2
    if system.is_finite and system.order != expected:
        raise CatalogError(f"simplex({n}) has order {system.order}, expected {expected}")
    return system


# ---------------------------------------------------------------------------
# Trivial extensions
# ---------------------------------------------------------------------------


def trivial_extension(system: RotationSystem) -> RotationSystem:
    """Directly regular {K, 2}: adjoin sigma_n with sigma_n^2 = 1.

    Realized on two copies of the domain; sigma_n swaps the copies and conjugates
    by the reflection twist sigma_(n-1) -> sigma_(n-1)^-1,
    sigma_(n-2) -> sigma_(n-1)^-1 sigma_(n-2)^-1 sigma_(n-1).
    """
    system.require_finite("trivial extension")
    if not is_directly_regular(system):
        raise CatalogError(f"{system.name} is chiral; trivial extensions need a directly regular input")
    n = system.rank
    images = list(system.images)
    last, before = images[-1], images[-2]
    twisted = images[:-2] + [~last * ~before * last, ~last]
    lifted = diagonal_images(images, twisted)
    degree = system.degree
    swap = Permutation(list(range(degree, 2 * degree)) + list(range(degree)))
    new_images = tuple(lifted) + (swap,)

    relators = list(system.presentation.relators)
    relators.append(Word.generator(n, 2))
    for i in range(1, n - 2):
        relators.append(Word.of(i, n, -i, -n))
    name = f"trivial_extension({system.name})" if system.name else ""
    extended = from_realization(
        n + 1, new_images, relators, complete=system.presentation_complete, name=name
    )
    if extended.order != 2 * system.order:
        raise CatalogError(
            f"{name}: realization has order {extended.order}, expected {2 * system.order}"
        )
    return extended


# ---------------------------------------------------------------------------
# Searched groups
# ---------------------------------------------------------------------------


def _lexicographic_elements(degree: int, even_only: bool = False) -> List[Permutation]:
    elements = (Permutation(list(p)) for p in permutations(range(degree)))
    if even_only:
        return [p for p in elements if p.is_even]
    return list(elements)


def _mirror_cover_order(images: Sequence[Permutation]) -> int:
    cover = diagonal_images(images, mirror_images(images))
    return order(make_group(cover, cover[0].size))


def _s6_candidates() -> Iterator[Tuple[Permutation, ...]]:
    elements = _lexicographic_elements(6)
    involutions = [p for p in elements if p.order() == 2]
    for s1 in elements:
        if s1.order() != 3:
            continue
        for lam in involutions:
            s2 = ~s1 * lam
            if s2.order() != 4:
                continue
            for mu in involutions:
                s3 = ~s2 * mu
                if s3.order() != 4 or not ((s1 * s2 * s3) ** 2).is_Identity:
                    continue
                for nu in involutions:
                    s4 = ~s3 * nu
                    if s4.order() != 3:
                        continue
                    if not ((s2 * s3 * s4) ** 2).is_Identity:
                        continue
                    if not ((s1 * s2 * s3 * s4) ** 2).is_Identity:
                        continue
                    yield s1, s2, s3, s4


def _reduced_words(generators: int, length: int) -> Iterator[Word]:
    letters = []
    for i in range(1, generators + 1):
        letters.extend((i, -i))
    for combo in product(letters, repeat=length):
        if any(combo[k] == -combo[k + 1] for k in range(length - 1)):
            continue
        if length > 1 and combo[0] == -combo[-1]:
            continue
        yield Word(combo)


def _cyclic_key(word: Word) -> Tuple[int, ...]:
    forms = []
    for candidate in (word.letters, word.inverse().letters):
        for shift in range(len(candidate)):
            forms.append(candidate[shift:] + candidate[:shift])
    return min(forms)


def _freeze_presentation(
    rank: int, images: Sequence[Permutation], target: int, budget: int
) -> Presentation:
    relators = [Word.generator(i + 1, int(img.order())) for i, img in enumerate(images)]
    seen = set()
    for length in range(2, S6_MAX_WORD_LENGTH + 1):
        for word in _reduced_words(rank - 1, length):
            key = _cyclic_key(word)
            if key in seen or key != word.letters:
                continue
            seen.add(key)
            power = int(evaluate_word(word, images).order())
            relators.append(word**power)
        presentation = Presentation(rank, tuple(relators))
        table = todd_coxeter(presentation, (), budget)
        LOGGER.debug(
            "Power relators up to length %d: %s", length, table.order if table.is_complete else "open"
        )
        if table.is_complete and table.order == target:
            return presentation
    LOGGER.info("Power relators do not close; adding Cayley graph relators")
    presentation = Presentation(rank, tuple(relators) + _cayley_relators(images))
    table = todd_coxeter(presentation, (), budget)
    if not (table.is_complete and table.order == target):
        raise CatalogError(f"relators collected from the realization do not present order {target}")
    return presentation


def _cayley_relators(images: Sequence[Permutation]) -> Tuple[Word, ...]:
    """One relator per non-tree edge of a breadth-first spanning tree of the Cayley graph."""
    start = identity(images[0].size)
    words: Dict[Permutation, Word] = {start: Word.identity()}
    queue = [start]
    relators = []
    for element in queue:
        for index, generator in enumerate(images, start=1):
            target = element * generator
            path = words[element] * Word.generator(index)
            if target not in words:
                words[target] = path
                queue.append(target)
                continue
            relator = path * words[target].inverse()
            if relator:
                relators.append(relator)
    return tuple(relators)


@lru_cache(maxsize=1)
def s6_polytope_3443() -> RotationSystem:
    """Chiral polytope of type {3,4,4,3} with rotation group S6.

    The first generator tuple in lexicographic order that passes every check
    is frozen together with a presentation confirmed by enumeration.
    """
    name = "s6_3443"
    for images in _s6_candidates():
        group = make_group(images, 6)
        if order(group) != 720:
            continue
        if _mirror_cover_order(images) != 720 * 360:
            continue
        system = from_realization(5, images, (), complete=False, name=name)
        if not check_intersection_property(system).holds:
            continue
        LOGGER.info("Found %s generators %s", name, [p.array_form for p in images])
        presentation = _freeze_presentation(5, images, 720, S6_FREEZE_BUDGET)
        return RotationSystem(presentation, images, Status.FINITE, True, name)
    raise CatalogError("search over S6 found no chiral {3,4,4,3} polytope")


@lru_cache(maxsize=None)
def alternating_chiral_map(degree: int = 8) -> RotationSystem:
    """First chiral polyhedron, in lexicographic order, with rotation group A_degree.

    A chiral system with a simple rotation group is totally chiral.
    """
    if degree < 5:
        raise CatalogError("alternating groups below A5 are not simple")
    target = factorial(degree) // 2
    elements = _lexicographic_elements(degree, even_only=True)
    involutions = [p for p in elements if p.order() == 2]
    name = f"alternating_chiral_map({degree})"
    for s1 in elements:
        if s1.order() < 3:
            continue
        powers1 = {s1**k for k in range(1, s1.order())}
        for lam in involutions:
            s2 = ~s1 * lam
            if s2.order() < 3:
                continue
            if any(s2**k in powers1 for k in range(1, s2.order())):
                continue
            group = make_group([s1, s2], degree)
            if not group.is_transitive() or order(group) != target:
                continue
            images = (s1, s2)
            if _mirror_cover_order(images) != target * target:
                continue
            LOGGER.info("Found %s generators %s", name, [s1.array_form, s2.array_form])
            return from_realization(3, images, (), complete=False, name=name)
    raise CatalogError(f"no chiral polyhedron with rotation group A{degree}")


# ---------------------------------------------------------------------------
# References
# ---------------------------------------------------------------------------

FAMILIES: Dict[str, Callable[..., RotationSystem]] = {
    "toroid44": toroid44,
    "toroid36": toroid36,
    "toroid63": toroid63,
    "cubic_toroid": cubic_toroid,
    "universal": universal,
    "simplex": simplex,
    "trivial_extension": trivial_extension,
    "s6_3443": s6_polytope_3443,
    "alternating_chiral_map": alternating_chiral_map,
}

FAMILY_HELP = {
    "toroid44": "toroid44(b,c): toroidal map {4,4}_(b,c)",
    "toroid36": "toroid36(b,c): toroidal map {3,6}_(b,c)",
    "toroid63": "toroid63(b,c): dual of toroid36(b,c)",
    "cubic_toroid": "cubic_toroid(n,s,k): {4,3^(n-3),4}_(s^k,0^(n-k-1)), k in 1, 2, n-1",
    "universal": "universal(p1,...,pn-1): universal type {p1,...,pn-1}",
    "simplex": "simplex(n): rank-n simplex, rotation group A_(n+1)",
    "trivial_extension": "trivial_extension(ref): directly regular {K,2} over a catalog reference",
    "s6_3443": "s6_3443: chiral {3,4,4,3} with rotation group S6",
    "alternating_chiral_map": "alternating_chiral_map(m): totally chiral polyhedron with group A_m",
}

_REFERENCE = re.compile(r"^\s*([a-z0-9_]+)\s*(?:\((.*)\))?\s*$", re.IGNORECASE)


def _split_arguments(text: str) -> List[str]:
    parts, depth, current = [], 0, []
    for char in text:
        if char == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
            continue
        depth += char == "("
        depth -= char == ")"
        current.append(char)
    tail = "".join(current).strip()
    if tail:
        parts.append(tail)
    return parts


def parse_reference(reference: str) -> FamilySpec:
    text = reference.strip()
    if text.startswith("catalog:"):
        text = text[len("catalog:") :]
    match = _REFERENCE.match(text)
    if not match or match.group(1) not in FAMILIES:
        raise CatalogError(f"unknown catalog reference {reference!r}")
    tag, inner = match.group(1), match.group(2)
    if tag == "trivial_extension":
        if not inner:
            raise CatalogError("trivial_extension needs a catalog reference argument")
        return FamilySpec(tag, (inner.strip(),))
    arguments = _split_arguments(inner) if inner else []
    try:
        values = tuple(int(a) for a in arguments)
    except ValueError as exc:
        raise CatalogError(f"parameters of {tag} must be integers: {inner!r}") from exc
    return FamilySpec(tag, values)


def resolve(reference: str, budget: int = DEFAULT_COSET_BUDGET) -> RotationSystem:
    """Build the rotation system named by a catalog reference such as ``toroid44(1,2)``."""
    spec = parse_reference(reference)
    LOGGER.debug("Resolving %s", spec.reference)
    if spec.tag == "trivial_extension":
        return trivial_extension(resolve(spec.parameters[0], budget))
    builder = FAMILIES[spec.tag]
    try:
        if spec.tag in {"s6_3443", "alternating_chiral_map"}:
            return builder(*spec.parameters)
        return builder(*spec.parameters, budget=budget)
    except TypeError as exc:
        raise CatalogError(f"wrong number of parameters for {spec.tag}: {FAMILY_HELP[spec.tag]}") from exc


def is_reference(text: str) -> bool:
    try:
        parse_reference(text)
    except CatalogError:
        return False
    return True


def _parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Build a catalog rotation system.")
    parser.add_argument("reference", nargs="?", help="Catalog reference, e.g. toroid44(1,2).")
    parser.add_argument("--list", action="store_true", help="List the catalog families.")
    return parser.parse_args()


def main() -> None:
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
    )
    args = _parse_args()
    if args.list or not args.reference:
        for tag in sorted(FAMILY_HELP):
            print(FAMILY_HELP[tag])
        return
    system = resolve(args.reference)
    summary = {"name": system.name, "rank": system.rank, "status": system.status.value}
    if system.is_finite:
        summary.update({"order": system.order, "type": list(system.schlafli_type)})
    print(json.dumps(summary, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
