"""Machine-readable reports for single systems and pairs.

Field names are documented in ``docs/report_format.md``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from criteria import (
    Certificate,
    certify_pair,
    extension_chirality_hypothesis,
    simplex_transfer,
)
from mixer import chirality_group, comix, mix, verify_product_formula
from permcore import ResourceLimitError
from rotgroup import (
    NotPolytopalError,
    RotationSystem,
    check_intersection_property,
    face_data,
    is_directly_regular,
)
from settings import Settings

LOGGER = logging.getLogger(__name__)

UNKNOWN = "unknown"


def serialize_report(report: Any) -> str:
    """Sorted-key, indented, ASCII JSON with a trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


@dataclass
class ClassificationReport:
    name: str
    rank: int
    status: str
    order: Optional[int] = None
    schlafli_type: Optional[List[int]] = None
    face_vector: Optional[List[int]] = None
    flags: Optional[int] = None
    intersection: Optional[Dict[str, Any]] = None
    directly_regular: Optional[bool] = None
    chirality: Dict[str, Any] = field(default_factory=dict)
    certificates: List[Certificate] = field(default_factory=list)

    def check_consistency(self) -> None:
        if self.order is None:
            return
        if self.flags != 2 * self.order:
            raise AssertionError(f"{self.name}: flags {self.flags} != 2 * {self.order}")
        for count in self.face_vector or []:
            if self.order % count:
                raise AssertionError(f"{self.name}: face count {count} does not divide {self.order}")

    def to_dict(self) -> Dict[str, Any]:
        def known(value):
            return UNKNOWN if value is None else value

        return {
            "name": self.name,
            "rank": self.rank,
            "status": self.status,
            "order": known(self.order),
            "type": known(self.schlafli_type),
            "face_vector": known(self.face_vector),
            "flags": known(self.flags),
            "intersection_property": known(self.intersection),
            "directly_regular": known(self.directly_regular),
            "chirality_group": self.chirality,
            "certificates": [c.to_dict() for c in self.certificates],
        }


def _system_certificates(system: RotationSystem, settings: Settings) -> List[Certificate]:
    certificates = [extension_chirality_hypothesis(system, budget=settings.coset_budget)]
    if system.rank >= 4:
        try:
            certificates.append(simplex_transfer(system))
        except ResourceLimitError as exc:
            LOGGER.warning("Skipping the simplex transfer for %s: %s", system.name, exc)
    return certificates


def classify(system: RotationSystem, settings: Optional[Settings] = None) -> ClassificationReport:
    """Order, type, faces, regularity and chirality group of one system.

    Raises ``NotPolytopalError`` when the intersection property fails.
    """
    settings = settings or Settings()
    if not system.is_finite:
        report = chirality_group(system, budget=settings.coset_budget)
        LOGGER.warning("%s has unknown status; reporting what the presentation gives", system.name)
        return ClassificationReport(
            system.name, system.rank, system.status.value, chirality=report.to_dict()
        )

    intersection = check_intersection_property(system, settings.coset_index_limit)
    if not intersection.holds:
        raise NotPolytopalError(system.name, intersection.witness)
    faces = face_data(system, settings.coset_index_limit, assume_polytopal=True)
    chirality = chirality_group(
        system, budget=settings.coset_budget, simplicity_bound=settings.simplicity_bound
    )
    report = ClassificationReport(
        system.name,
        system.rank,
        system.status.value,
        system.order,
        list(faces.schlafli_type),
        list(faces.face_vector),
        faces.flags,
        intersection.to_dict(),
        chirality.order == 1,
        chirality.to_dict(),
    )
    if chirality.order != 1:
        report.certificates = _system_certificates(system, settings)
    report.check_consistency()
    LOGGER.info("Classified %s: order %d, chirality group %d", system.name, system.order, chirality.order)
    return report


def mix_report(
    first: RotationSystem,
    second: RotationSystem,
    settings: Optional[Settings] = None,
    faces: bool = False,
    polytopality: bool = False,
    certificates: bool = True,
) -> Dict[str, Any]:
    """Mix and comix orders, the product formula and the applicable certificates."""
    settings = settings or Settings()
    mixed = mix(first, second).system
    report: Dict[str, Any] = {
        "first": first.name,
        "second": second.name,
        "mix": {"name": mixed.name, "status": mixed.status.value},
    }
    if not mixed.is_finite:
        report["mix"]["order"] = UNKNOWN
        return report

    report["mix"].update(
        {
            "order": mixed.order,
            "type": list(mixed.schlafli_type),
            "directly_regular": is_directly_regular(mixed),
        }
    )
    check = verify_product_formula(first, second, budget=settings.coset_budget)
    report["comix_order"] = check.comix_order
    report["product_formula"] = {
        "mix_order": check.mix_order,
        "comix_order": check.comix_order,
        "first_order": check.first_order,
        "second_order": check.second_order,
        "holds": check.holds,
    }
    if polytopality or faces:
        result = check_intersection_property(mixed, settings.coset_index_limit)
        report["mix"]["intersection_property"] = result.to_dict()
        if faces and result.holds:
            report["mix"].update(
                face_data(mixed, settings.coset_index_limit, assume_polytopal=True).to_dict()
            )
    if certificates:
        report["certificates"] = [c.to_dict() for c in certify_pair(first, second)]
    return report


def comix_report(
    first: RotationSystem, second: RotationSystem, settings: Optional[Settings] = None
) -> Dict[str, Any]:
    settings = settings or Settings()
    common = comix(first, second, budget=settings.coset_budget, index_limit=settings.coset_index_limit)
    report: Dict[str, Any] = {
        "first": first.name,
        "second": second.name,
        "comix": {"name": common.name, "status": common.status.value},
    }
    if common.is_finite:
        report["comix"].update(
            {
                "order": common.order,
                "directly_regular": is_directly_regular(common),
                "generators_equal": [
                    [i + 1, j + 1]
                    for i in range(len(common.images))
                    for j in range(i + 1, len(common.images))
                    if common.images[i] == common.images[j]
                ],
                "trivial_generators": [
                    i + 1 for i, image in enumerate(common.images) if image.is_Identity
                ],
            }
        )
    else:
        report["comix"]["order"] = UNKNOWN
    return report


def chirality_report(system: RotationSystem, settings: Optional[Settings] = None) -> Dict[str, Any]:
    settings = settings or Settings()
    report = chirality_group(
        system, budget=settings.coset_budget, simplicity_bound=settings.simplicity_bound
    )
    return {"name": system.name, "chirality_group": report.to_dict()}


def certify_report(
    first: RotationSystem, second: RotationSystem, cross_check: bool = False
) -> Dict[str, Any]:
    certificates = certify_pair(first, second, cross_check=cross_check)
    return {
        "first": first.name,
        "second": second.name,
        "certificates": [c.to_dict() for c in certificates],
    }

