"""Theorem-based certificates for mixes of rotation systems.

Each criterion checks the hypotheses of a known result on the factors and
returns a :class:`Certificate` carrying every number it looked at. A failed
hypothesis gives an ``INCONCLUSIVE`` certificate that names it; nothing is
assumed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from math import factorial, gcd
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import nextprime

from kernel_fp import BudgetExhausted
from mixer import (
    ChiralityReport,
    chirality_group,
    maximal_regular_quotient,
    minimal_regular_cover,
    mix,
)
from permcore import (
    ResourceLimitError,
    fingerprints_differ,
    group_fingerprint,
    is_normal_subgroup,
    is_simple,
    order,
    restrict_group,
)
from rotgroup import (
    RotationSystem,
    check_intersection_property,
    covers,
    facet_system,
    is_directly_regular,
    vertex_figure_system,
)
from catalog import cubic_toroid_order, simplex, trivial_extension

LOGGER = logging.getLogger(__name__)

# Largest |first| * |second| for which a conclusion is recomputed on the mix.
DEFAULT_CROSS_CHECK_BOUND = 500_000


class BiconditionalError(AssertionError):
    """The two sides of the regular-mix equivalence disagree."""


class CertificateMismatchError(AssertionError):
    """A certified conclusion is contradicted by direct computation."""


class Conclusion(str, Enum):
    POLYTOPAL = "polytopal"
    CHIRAL = "chiral"
    CHIRALITY_GROUP_EQUALS = "chirality_group_equals"
    DIVIDES_BOUND = "divides_bound"
    INFINITE_CHIRALITY_GROUP = "infinite_chirality_group"
    INCONCLUSIVE = "inconclusive"


Premise = Tuple[str, object]


@dataclass(frozen=True)
class Certificate:
    conclusion: Conclusion
    theorem_tag: str
    premises: Tuple[Premise, ...] = ()
    statement: str = ""
    subject: str = ""
    value: Optional[object] = None
    cross_check: Optional[str] = None

    @property
    def conclusive(self) -> bool:
        return self.conclusion is not Conclusion.INCONCLUSIVE

    def premise(self, name: str) -> object:
        for key, value in self.premises:
            if key == name:
                return value
        raise KeyError(name)

    def to_dict(self) -> Dict[str, object]:
        return {
            "conclusion": self.conclusion.value,
            "theorem": self.theorem_tag,
            "premises": {key: value for key, value in self.premises},
            "statement": self.statement,
            "subject": self.subject,
            "value": self.value,
            "cross_check": self.cross_check,
        }


def _certify(
    conclusion: Conclusion,
    tag: str,
    subject: str,
    premises: Sequence[Premise],
    statement: str,
    value: Optional[object] = None,
) -> Certificate:
    LOGGER.info("%s: %s by %s", subject, conclusion.value, tag)
    return Certificate(conclusion, tag, tuple(premises), statement, subject, value)


def _inconclusive(tag: str, subject: str, premises: Sequence[Premise], reason: str) -> Certificate:
    LOGGER.debug("%s: %s inconclusive (%s)", subject, tag, reason)
    return Certificate(Conclusion.INCONCLUSIVE, tag, tuple(premises), reason, subject)


def _pair_name(first: RotationSystem, second: RotationSystem) -> str:
    return f"{first.name or '?'} <> {second.name or '?'}"


@lru_cache(maxsize=128)
def _chirality(system: RotationSystem) -> ChiralityReport:
    return chirality_group(system)


@lru_cache(maxsize=128)
def _polytopal(system: RotationSystem) -> bool:
    return check_intersection_property(system).holds


def _same_rank(first: RotationSystem, second: RotationSystem) -> None:
    if first.rank != second.rank:
        raise ValueError(f"cannot compare ranks {first.rank} and {second.rank}")


# ---------------------------------------------------------------------------
# Polytopality
# ---------------------------------------------------------------------------


def criterion_coprime(first: RotationSystem, second: RotationSystem) -> Certificate:
    """Polytopality from coprime Schlafli types.

    Coprime entries everywhere also make the mix the direct product of the
    factor groups; the realized mix order is checked against that. Coprime
    middle entries (ranks 4 and up) are enough for polytopality alone.
    """
    _same_rank(first, second)
    tag = "coprime-type"
    subject = _pair_name(first, second)
    if not (first.is_finite and second.is_finite):
        return _inconclusive(tag, subject, [("types_known", False)], "a factor has unknown type")
    p, q = first.schlafli_type, second.schlafli_type
    gcds = [gcd(a, b) for a, b in zip(p, q)]
    premises: List[Premise] = [("first_type", list(p)), ("second_type", list(q)), ("gcds", gcds)]
    factors_polytopal = _polytopal(first) and _polytopal(second)
    premises.append(("factors_polytopal", factors_polytopal))
    if not factors_polytopal:
        return _inconclusive(tag, subject, premises, "a factor fails the intersection property")

    if all(g == 1 for g in gcds):
        mixed_order = mix(first, second).system.order
        product = first.order * second.order
        premises += [("mix_order", mixed_order), ("product_of_orders", product)]
        if mixed_order != product:
            raise CertificateMismatchError(
                f"{subject}: coprime types but mix order {mixed_order} != {product}"
            )
        mixed_type = [a * b for a, b in zip(p, q)]
        return _certify(
            Conclusion.POLYTOPAL,
            tag,
            subject,
            premises,
            f"mix is a polytope of type {{{','.join(map(str, mixed_type))}}} "
            "whose rotation group is the direct product of the factors",
            {"type": mixed_type, "order": mixed_order},
        )
    middle = gcds[1:-1]
    if first.rank >= 4 and all(g == 1 for g in middle):
        return _certify(
            Conclusion.POLYTOPAL,
            "coprime-middle-type",
            subject,
            premises,
            "middle type entries are coprime, so the mix is a polytope",
        )
    return _inconclusive(tag, subject, premises, "type entries share a factor")


def criterion_polyhedra(first: RotationSystem, second: RotationSystem) -> Certificate:
    """Any two polyhedra mix to a polyhedron."""
    _same_rank(first, second)
    tag = "polyhedra"
    subject = _pair_name(first, second)
    premises: List[Premise] = [("rank", first.rank)]
    if first.rank != 3:
        return _inconclusive(tag, subject, premises, "only applies to rank 3")
    if not (first.is_finite and second.is_finite):
        return _inconclusive(tag, subject, premises, "a factor has unknown status")
    factors_polytopal = _polytopal(first) and _polytopal(second)
    premises.append(("factors_polytopal", factors_polytopal))
    if not factors_polytopal:
        return _inconclusive(tag, subject, premises, "a factor fails the intersection property")
    return _certify(Conclusion.POLYTOPAL, tag, subject, premises, "mix is a polyhedron")


def criterion_facets_cover(first: RotationSystem, second: RotationSystem) -> Certificate:
    _same_rank(first, second)
    tag = "facets-cover"
    subject = _pair_name(first, second)
    if not (first.is_finite and second.is_finite):
        return _inconclusive(tag, subject, [], "a factor has unknown status")
    facets = facet_system(first), facet_system(second)
    figures = vertex_figure_system(first), vertex_figure_system(second)
    premises: List[Premise] = [
        ("first_facets_cover_second", covers(facets[0], facets[1])),
        ("second_facets_cover_first", covers(facets[1], facets[0])),
        ("first_vertex_figures_cover_second", covers(figures[0], figures[1])),
        ("second_vertex_figures_cover_first", covers(figures[1], figures[0])),
    ]
    if not any(value for _, value in premises):
        return _inconclusive(tag, subject, premises, "neither facets nor vertex figures cover")
    factors_polytopal = _polytopal(first) and _polytopal(second)
    premises.append(("factors_polytopal", factors_polytopal))
    if not factors_polytopal:
        return _inconclusive(tag, subject, premises, "a factor fails the intersection property")
    return _certify(
        Conclusion.POLYTOPAL,
        tag,
        subject,
        premises,
        "one factor's facets or vertex figures cover the other's, so the mix is a polytope",
    )


def certify_polytopality(first: RotationSystem, second: RotationSystem) -> Certificate:
    """First conclusive polytopality criterion, or the coprime verdict."""
    attempts = [criterion_coprime(first, second)]
    if attempts[0].conclusive:
        return attempts[0]
    for criterion in (criterion_polyhedra, criterion_facets_cover):
        result = criterion(first, second)
        if result.conclusive:
            return result
    return attempts[0]


# ---------------------------------------------------------------------------
# Chirality
# ---------------------------------------------------------------------------


def divisibility_from_orders(
    first_chirality: int,
    second_order: int,
    second_chirality: int = 1,
    first_order: Optional[int] = None,
    subject: str = "",
) -> Certificate:
    """The divisibility criterion evaluated on group orders alone."""
    tag = "chiral-mix-criterion"
    if first_chirality == 1 and second_chirality == 1:
        raise ValueError(f"{subject or 'pair'}: both factors are directly regular")
    premises: List[Premise] = [
        ("first_chirality_order", first_chirality),
        ("second_order", second_order),
        ("first_chirality_divides_second_order", second_order % first_chirality == 0),
    ]
    fires = second_order % first_chirality != 0
    if first_order is not None:
        premises += [
            ("second_chirality_order", second_chirality),
            ("first_order", first_order),
            ("second_chirality_divides_first_order", first_order % second_chirality == 0),
        ]
        fires = fires or first_order % second_chirality != 0
    if not fires:
        return _inconclusive(tag, subject, premises, "each chirality order divides the other group order")
    return _certify(Conclusion.CHIRAL, tag, subject, premises, "mix is chiral")


def criterion_chirality_divisibility(
    first: RotationSystem,
    second: RotationSystem,
    cross_check: bool = False,
) -> Certificate:
    """Chiral mix when a chirality group order fails to divide the other group order.

    Two directly regular factors are rejected with ``ValueError``.
    """
    _same_rank(first, second)
    subject = _pair_name(first, second)
    if not (first.is_finite and second.is_finite):
        return _inconclusive("chiral-mix-criterion", subject, [], "a factor has unknown status")
    x1, x2 = _chirality(first), _chirality(second)
    if x1.order == 1 and x2.order == 1:
        raise ValueError(f"{subject}: both factors are directly regular")

    if x1.totally_chiral and x2.totally_chiral and first.order != second.order:
        premises = [
            ("first_totally_chiral", True),
            ("second_totally_chiral", True),
            ("first_order", first.order),
            ("second_order", second.order),
        ]
        certificate = _certify(
            Conclusion.CHIRAL,
            "totally-chiral-orders",
            subject,
            premises,
            "totally chiral factors of different orders mix to a chiral polytope",
        )
    else:
        certificate = divisibility_from_orders(
            x1.order, second.order, x2.order, first.order, subject
        )
    if cross_check and certificate.conclusive:
        if is_directly_regular(mix(first, second).system):
            raise CertificateMismatchError(f"{subject}: certified chiral but the mix is directly regular")
        certificate = replace(certificate, cross_check="mix is not directly regular")
    return certificate


def chirality_lower_bound(
    first: RotationSystem,
    second: RotationSystem,
    cross_check_bound: int = DEFAULT_CROSS_CHECK_BOUND,
) -> Certificate:
    """Two divisors of |X(first <> second)| read off the factors."""
    _same_rank(first, second)
    tag = "chirality-group-size"
    subject = _pair_name(first, second)
    if not (first.is_finite and second.is_finite):
        return _inconclusive(tag, subject, [], "a factor has unknown status")
    x1, x2 = _chirality(first).order, _chirality(second).order
    g1, g2 = gcd(x1, second.order), gcd(x2, first.order)
    divisors = [x1 // g1, x2 // g2]
    premises: List[Premise] = [
        ("first_chirality_order", x1),
        ("second_order", second.order),
        ("first_gcd", g1),
        ("second_chirality_order", x2),
        ("first_order", first.order),
        ("second_gcd", g2),
    ]
    certificate = _certify(
        Conclusion.DIVIDES_BOUND,
        tag,
        subject,
        premises,
        f"|X(mix)| is divisible by {divisors[0]} and by {divisors[1]}",
        {"divisors": divisors},
    )
    if first.order * second.order <= cross_check_bound:
        actual = _chirality(mix(first, second).system).order
        if any(actual % d for d in divisors):
            raise CertificateMismatchError(f"{subject}: |X(mix)| = {actual} misses {divisors}")
        certificate = replace(certificate, cross_check=f"|X(mix)| = {actual}")
    return certificate


def _safe_simple(system: RotationSystem) -> Optional[bool]:
    try:
        return is_simple(system.group)
    except ResourceLimitError:
        return None


def criterion_simple_chirality(
    chiral: RotationSystem,
    regular: RotationSystem,
    cross_check: bool = False,
) -> Certificate:
    """Chirality-group transfer through simple groups.

    Tried in order: a simple chirality group not dividing a directly regular
    partner's order; a directly regular partner with a simple rotation group
    not isomorphic to X; a chiral partner with such a group. Non-isomorphism
    is only certified by differing fingerprints.
    """
    _same_rank(chiral, regular)
    tag = "simple-chirality"
    subject = _pair_name(chiral, regular)
    if not (chiral.is_finite and regular.is_finite):
        return _inconclusive(tag, subject, [], "a factor has unknown status")
    x = _chirality(chiral)
    premises: List[Premise] = [("chirality_order", x.order), ("chirality_simple", x.simple)]
    if x.order == 1:
        return _inconclusive(tag, subject, premises, "first factor is directly regular")
    partner_regular = _chirality(regular).order == 1
    premises += [("second_directly_regular", partner_regular), ("second_order", regular.order)]

    certificate = None
    if x.simple and partner_regular and regular.order % x.order != 0:
        certificate = _certify(
            Conclusion.CHIRALITY_GROUP_EQUALS,
            "simple-chirality-group",
            subject,
            premises,
            "mix is chiral and X(mix) = X(first)",
            group_fingerprint(x.group),
        )
    else:
        partner_simple = _safe_simple(regular)
        premises.append(("second_group_simple", partner_simple))
        if partner_simple:
            fp_x = group_fingerprint(x.group)
            fp_q = group_fingerprint(regular.group)
            differ = fingerprints_differ(fp_x, fp_q)
            premises += [
                ("chirality_fingerprint", fp_x),
                ("second_group_fingerprint", fp_q),
                ("fingerprints_differ", differ),
            ]
            if differ and partner_regular:
                certificate = _certify(
                    Conclusion.CHIRALITY_GROUP_EQUALS,
                    "simple-rotation-group-regular",
                    subject,
                    premises,
                    "mix is chiral and X(mix) = X(first)",
                    fp_x,
                )
            elif differ:
                certificate = _certify(
                    Conclusion.CHIRAL,
                    "simple-rotation-group",
                    subject,
                    premises,
                    "mix is chiral",
                )
    if certificate is None:
        return _inconclusive(tag, subject, premises, "no simple-group hypothesis holds")
    if cross_check:
        certificate = _cross_check_chirality(certificate, chiral, regular, x)
    return certificate


def _cross_check_chirality(
    certificate: Certificate,
    chiral: RotationSystem,
    regular: RotationSystem,
    x: ChiralityReport,
) -> Certificate:
    actual = _chirality(mix(chiral, regular).system)
    if actual.order == 1:
        raise CertificateMismatchError(f"{certificate.subject}: mix is directly regular")
    if certificate.conclusion is Conclusion.CHIRALITY_GROUP_EQUALS:
        if fingerprints_differ(group_fingerprint(actual.group), group_fingerprint(x.group)):
            raise CertificateMismatchError(
                f"{certificate.subject}: |X(mix)| = {actual.order}, expected {x.order}"
            )
    return replace(certificate, cross_check=f"|X(mix)| = {actual.order}")


def simplex_transfer(chiral: RotationSystem, cross_check: bool = False) -> Certificate:
    """Mixing with the simplex of the same rank keeps X unless X is A_(n+1)."""
    n = chiral.rank
    subject = f"{chiral.name or '?'} <> simplex({n})"
    if n < 4:
        return _inconclusive("simplex-transfer", subject, [("rank", n)], "needs rank at least 4")
    certificate = criterion_simple_chirality(chiral, simplex(n), cross_check=cross_check)
    if not certificate.conclusive:
        return replace(certificate, theorem_tag="simplex-transfer")
    return replace(
        certificate,
        conclusion=Conclusion.CHIRALITY_GROUP_EQUALS,
        theorem_tag="simplex-transfer",
        statement=f"mix with simplex({n}) is chiral and X(mix) = X(first)",
    )


def toroid_mixing_instances(
    chirality_order: int,
    rank: int,
    k: int = 1,
    count: int = 3,
    subject: str = "",
) -> List[Certificate]:
    """Divisibility certificates against cubic toroids for the first qualifying primes.

    The premise is that |X| does not divide 2^(n+k-2) (n-1)!. Each prime s not
    dividing |X| then gives a cubic toroid whose group order |X| fails to divide.
    """
    if rank < 3 or k not in {1, 2, rank - 1}:
        raise ValueError(f"cubic toroids need rank >= 3 and k in 1, 2, n-1; got ({rank},{k})")
    if chirality_order <= 1:
        raise ValueError("toroid mixing needs a chiral polytope")
    bound = 2 ** (rank + k - 2) * factorial(rank - 1)
    base: List[Premise] = [
        ("chirality_order", chirality_order),
        ("rank", rank),
        ("k", k),
        ("factor", bound),
        ("chirality_divides_factor", bound % chirality_order == 0),
    ]
    if bound % chirality_order == 0:
        return [_inconclusive("toroid-mixing", subject, base, "|X| divides the toroid factor")]

    certificates = []
    s = 1
    while len(certificates) < count:
        s = int(nextprime(s))
        if chirality_order % s == 0:
            continue
        toroid_order = cubic_toroid_order(rank, s, k)
        premises = base + [("s", s), ("toroid_order", toroid_order)]
        if toroid_order % chirality_order == 0:
            raise CertificateMismatchError(f"|X| = {chirality_order} divides {toroid_order} for s = {s}")
        certificates.append(
            _certify(
                Conclusion.CHIRAL,
                "toroid-mixing",
                f"{subject or '?'} <> cubic_toroid({rank},{s},{k})",
                premises,
                f"{chirality_order} does not divide {toroid_order}, so the mix is chiral",
                {"s": s},
            )
        )
    return certificates


def chirality_subgroup_check(chiral: RotationSystem, regular: RotationSystem) -> Dict[str, object]:
    """X(chiral <> regular) projects onto a normal subgroup of X(chiral)."""
    mixed = mix(chiral, regular)
    x_mix = _chirality(mixed.system)
    x_chiral = _chirality(chiral)
    projected = restrict_group(x_mix.group, *mixed.blocks[0])
    result = {
        "mix_chirality_order": x_mix.order,
        "chirality_order": x_chiral.order,
        "divides": x_chiral.order % x_mix.order == 0,
        "normal": is_normal_subgroup(projected, x_chiral.group),
        "projection_order": order(projected),
    }
    LOGGER.debug("Chirality subgroup check for %s: %s", mixed.system.name, result)
    return result


# ---------------------------------------------------------------------------
# Extensions
# ---------------------------------------------------------------------------


def _facets_directly_regular(system: RotationSystem) -> Optional[bool]:
    if system.rank == 3:
        return True
    if not system.is_finite:
        return None
    return is_directly_regular(facet_system(system))


def extension_chirality_hypothesis(system: RotationSystem, budget: Optional[int] = None) -> Certificate:
    """Infinite chirality group of the universal extension U(K).

    Fires when the last generator of K is trivial, or equal to the one before
    it, in the largest directly regular quotient of K. Raises
    ``BudgetExhausted`` when that quotient does not close.
    """
    tag = "extension-chirality"
    subject = f"U({system.name or '?'})"
    premises: List[Premise] = []
    if system.is_finite:
        chiral = not is_directly_regular(system)
        premises.append(("chiral", chiral))
        if not chiral:
            return _inconclusive(tag, subject, premises, "K is directly regular")
    facets_regular = _facets_directly_regular(system)
    premises.append(("facets_directly_regular", facets_regular))
    if not facets_regular:
        return _inconclusive(tag, subject, premises, "facets of K are not known to be directly regular")

    quotient = maximal_regular_quotient(system, budget=budget)
    if not quotient.is_finite:
        raise BudgetExhausted(budget or system.coset_budget, quotient.name)
    r = system.rank
    last, before = quotient.images[r - 2], quotient.images[r - 3]
    last_trivial = last.is_Identity
    equals_previous = last == before
    premises += [
        ("quotient_order", quotient.order),
        ("last_generator_trivial", last_trivial),
        ("last_equals_previous", equals_previous),
    ]
    if not (last_trivial or equals_previous):
        return _inconclusive(tag, subject, premises, "neither generator identity holds in the quotient")
    return _certify(
        Conclusion.INFINITE_CHIRALITY_GROUP,
        tag,
        subject,
        premises,
        f"X({subject}) is infinite, and {subject} <> Q is chiral with an infinite "
        "chirality group for every finite directly regular Q",
        {"mixes_with": "every finite directly regular polytope"},
    )


def infinite_extension_mix(extension: Certificate, regular: RotationSystem) -> Certificate:
    """Instantiate a fired extension certificate for one finite directly regular partner."""
    tag = "infinite-extensions"
    subject = f"{extension.subject} <> {regular.name or '?'}"
    premises: List[Premise] = [("extension_certificate", extension.conclusion.value)]
    if extension.conclusion is not Conclusion.INFINITE_CHIRALITY_GROUP:
        return _inconclusive(tag, subject, premises, "extension hypothesis did not fire")
    if not regular.is_finite:
        return _inconclusive(tag, subject, premises, "partner is not finite")
    partner_regular = is_directly_regular(regular)
    premises += [("partner_order", regular.order), ("partner_directly_regular", partner_regular)]
    if not partner_regular:
        return _inconclusive(tag, subject, premises, "partner is chiral")
    return _certify(
        Conclusion.INFINITE_CHIRALITY_GROUP,
        tag,
        subject,
        premises,
        f"{subject} is chiral with an infinite chirality group",
    )


def pseudo_extension_setup(
    system: RotationSystem,
) -> Tuple[Optional[RotationSystem], Certificate]:
    """Build Q = {K <> mirror(K), 2} for a totally chiral K and certify U(K) <> Q.

    Returns ``(None, certificate)`` when a premise fails.
    """
    tag = "pseudo-extension"
    subject = f"U({system.name or '?'})"
    if not system.is_finite:
        return None, _inconclusive(tag, subject, [("finite", False)], "K must be finite")
    report = _chirality(system)
    premises: List[Premise] = [
        ("order", system.order),
        ("chirality_order", report.order),
        ("totally_chiral", report.totally_chiral),
    ]
    if not report.totally_chiral:
        return None, _inconclusive(tag, subject, premises, "K is not totally chiral")
    facets_regular = _facets_directly_regular(system)
    premises.append(("facets_directly_regular", facets_regular))
    if not facets_regular:
        return None, _inconclusive(tag, subject, premises, "facets of K are not directly regular")

    cover = minimal_regular_cover(system)
    extension = trivial_extension(cover)
    extension_type = list(extension.schlafli_type)
    ends_in_two = extension_type[-1] == 2
    facets_cover = covers(facet_system(extension), system)
    premises += [
        ("cover_order", cover.order),
        ("extension_order", extension.order),
        ("extension_type", extension_type),
        ("type_ends_in_2", ends_in_two),
        ("extension_facets_cover_K", facets_cover),
    ]
    if not (ends_in_two and facets_cover):
        return extension, _inconclusive(tag, subject, premises, "constructed Q misses its shape")
    certificate = _certify(
        Conclusion.CHIRAL,
        tag,
        f"{subject} <> {extension.name or 'Q'}",
        premises,
        f"{subject} <> Q is a chiral polytope with directly regular facets",
    )
    return extension, certificate


# ---------------------------------------------------------------------------
# Regular mixes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegularMixCheck:
    mix_directly_regular: bool
    covers_first_cover: bool
    covers_second_cover: bool

    @property
    def covers_both(self) -> bool:
        return self.covers_first_cover and self.covers_second_cover

    def to_dict(self) -> Dict[str, bool]:
        return {
            "mix_directly_regular": self.mix_directly_regular,
            "covers_first_cover": self.covers_first_cover,
            "covers_second_cover": self.covers_second_cover,
        }


def regular_mix_equivalence(first: RotationSystem, second: RotationSystem) -> RegularMixCheck:
    """Direct regularity of the mix against covering both minimal regular covers."""
    _same_rank(first, second)
    first.require_finite("regular mix check")
    second.require_finite("regular mix check")
    mixed = mix(first, second).system
    check = RegularMixCheck(
        is_directly_regular(mixed),
        covers(mixed, minimal_regular_cover(first)),
        covers(mixed, minimal_regular_cover(second)),
    )
    if check.mix_directly_regular != check.covers_both:
        raise BiconditionalError(f"{mixed.name}: {check.to_dict()}")
    return check


def certify_pair(
    first: RotationSystem,
    second: RotationSystem,
    cross_check: bool = False,
) -> List[Certificate]:
    """Every criterion that applies to the pair, conclusive or not."""
    certificates = [certify_polytopality(first, second)]
    if not (first.is_finite and second.is_finite):
        return certificates
    x1, x2 = _chirality(first), _chirality(second)
    if x1.order == 1 and x2.order == 1:
        return certificates
    certificates.append(criterion_chirality_divisibility(first, second, cross_check=cross_check))
    certificates.append(chirality_lower_bound(first, second))
    if x1.order != 1:
        certificates.append(criterion_simple_chirality(first, second, cross_check=cross_check))
    if x2.order != 1:
        certificates.append(criterion_simple_chirality(second, first, cross_check=cross_check))
    return certificates
