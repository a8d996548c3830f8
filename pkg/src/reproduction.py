"""Acceptance suite: recompute the published values and tabulate them."""

from __future__ import annotations

import json
import logging
import random
from itertools import combinations
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import pandas as pd

from catalog import alternating_chiral_map, resolve
from criteria import (
    BiconditionalError,
    chirality_subgroup_check,
    criterion_chirality_divisibility,
    criterion_coprime,
    extension_chirality_hypothesis,
    pseudo_extension_setup,
    regular_mix_equivalence,
    toroid_mixing_instances,
)
from kernel_fp import BudgetExhausted, Word, enantiomorph_word
from mixer import ProductFormulaError, chirality_group, mix, verify_product_formula
from permcore import is_simple
from rotgroup import (
    RotationSystem,
    UnknownStatusError,
    check_intersection_property,
    face_data,
    is_directly_regular,
)
from settings import Settings

LOGGER = logging.getLogger(__name__)

BASE_DIR = Path(__file__).resolve().parents[1]
DEFAULT_CHECKS_PATH = BASE_DIR / "configs" / "reproduction_checks.json"
DEFAULT_SAMPLE_PATH = BASE_DIR / "configs" / "catalog_sample.json"

COLUMNS = ["check", "quantity", "published", "computed", "status"]
PASSING = {"pass", "discrepancy"}
RANDOM_WORD_SEED = 20240
RANK4_ENTRIES = [
    "simplex(4)",
    "universal(3,4,3)",
    "cubic_toroid(4,2,1)",
    "cubic_toroid(4,2,3)",
    "trivial_extension(universal(3,3))",
    "trivial_extension(toroid44(1,1))",
]
CHIRAL_REGULAR_PAIRS = [
    ("toroid44(1,2)", "toroid44(1,0)"),
    ("toroid44(2,3)", "toroid44(1,1)"),
    ("toroid44(2,1)", "universal(3,5)"),
    ("toroid36(1,2)", "toroid36(1,0)"),
    ("toroid63(1,2)", "universal(3,3)"),
]


def load_catalog_sample(path: Path | str = DEFAULT_SAMPLE_PATH) -> List[str]:
    with Path(path).open("r", encoding="utf-8") as handle:
        return list(json.load(handle)["entries"])


def _load_checks(path: Path) -> List[Dict[str, Any]]:
    with path.open("r", encoding="utf-8") as handle:
        return list(json.load(handle)["checks"])


def random_word(rng: random.Random, generators: int, max_length: int = 20) -> Word:
    length = rng.randint(0, max_length)
    return Word(tuple(rng.choice((1, -1)) * rng.randint(1, generators) for _ in range(length)))


class ReproductionSuite:
    """Runs every configured check and collects one row per published quantity."""

    def __init__(
        self,
        settings: Optional[Settings] = None,
        checks_path: Path | str = DEFAULT_CHECKS_PATH,
        sample_path: Path | str = DEFAULT_SAMPLE_PATH,
    ) -> None:
        self.settings = settings or Settings()
        self.checks = _load_checks(Path(checks_path))
        self.sample = load_catalog_sample(sample_path)
        self._systems: Dict[str, RotationSystem] = {}
        self._runners: Dict[str, Callable[[], Dict[str, Any]]] = {
            "catalog": self.check_catalog,
            "s6_polytope": self.check_s6_polytope,
            "mix_2332": lambda: self.check_s6_mix("universal(2,3,3,2)"),
            "mix_2333": lambda: self.check_s6_mix("universal(2,3,3,3)"),
            "toroid_chirality": self.check_toroid_chirality,
            "cubic_toroids": self.check_cubic_toroids,
            "product_formula": self.check_product_formula,
            "properties": self.check_properties,
            "extensions": self.check_extensions,
            "toroid_mixing": self.check_toroid_mixing,
        }

    def system(self, reference: str) -> RotationSystem:
        if reference not in self._systems:
            self._systems[reference] = resolve(reference, budget=self.settings.coset_budget)
        return self._systems[reference]

    # -- checks ------------------------------------------------------------

    def check_catalog(self) -> Dict[str, Any]:
        universal_2332 = self.system("universal(2,3,3,2)")
        tetra = self.system("simplex(4)")
        return {
            "universal(2,3,3,2) order": universal_2332.order,
            "simplex(4) order": tetra.order,
            "simplex(4) simple": is_simple(tetra.group, self.settings.simplicity_bound),
        }

    def check_s6_polytope(self) -> Dict[str, Any]:
        polytope = self.system("s6_3443")
        report = chirality_group(polytope, simplicity_bound=self.settings.simplicity_bound)
        return {
            "order": polytope.order,
            "type": list(polytope.schlafli_type),
            "directly regular": is_directly_regular(polytope),
            "chirality group order": report.order,
            "chirality group simple": report.simple,
        }

    def check_s6_mix(self, partner_reference: str) -> Dict[str, Any]:
        polytope = self.system("s6_3443")
        partner = self.system(partner_reference)
        mixed = mix(polytope, partner).system
        polytopal = criterion_coprime(polytope, partner)
        faces = face_data(mixed, self.settings.coset_index_limit, assume_polytopal=polytopal.conclusive)
        formula = verify_product_formula(polytope, partner, budget=self.settings.coset_budget)
        computed = {
            "type": list(faces.schlafli_type),
            "face vector": list(faces.face_vector),
            "flags": faces.flags,
            "flags equal twice the order": faces.flags == 2 * mixed.order,
            "product formula": formula.holds,
            "polytopality certificate": polytopal.theorem_tag if polytopal.conclusive else "inconclusive",
            "chirality certificate": criterion_chirality_divisibility(polytope, partner).conclusion.value,
        }
        if partner_reference == "universal(2,3,3,2)":
            report = chirality_group(mixed, simplicity_bound=self.settings.simplicity_bound)
            computed["mix chirality group order"] = report.order
            computed["mix chirality group simple"] = report.simple
        return computed

    def check_toroid_chirality(self) -> Dict[str, Any]:
        computed: Dict[str, Any] = {}
        for b, c in ((1, 2), (2, 3), (1, 4)):
            report = chirality_group(self.system(f"toroid44({b},{c})"))
            computed[f"X(toroid44({b},{c})) order"] = report.order
            computed[f"X(toroid44({b},{c})) invariants"] = report.abelian_invariants
        holds = True
        for b in range(0, 11):
            for c in range(0, 11):
                if (b, c) == (0, 0) or b * b + c * c > 100:
                    continue
                holds = holds and self.system(f"toroid44({b},{c})").order == 4 * (b * b + c * c)
        computed["order formula for b^2+c^2 <= 100"] = holds
        return computed

    def check_cubic_toroids(self) -> Dict[str, Any]:
        computed = {}
        for n, s, k in ((4, 2, 1), (4, 3, 1), (4, 2, 3), (5, 2, 1)):
            computed[f"flags of cubic_toroid({n},{s},{k})"] = 2 * self.system(f"cubic_toroid({n},{s},{k})").order
        return computed

    def check_product_formula(self) -> Dict[str, Any]:
        holding = 0
        for first, second in combinations(self.sample, 2):
            try:
                verify_product_formula(self.system(first), self.system(second), self.settings.coset_budget)
            except ProductFormulaError as exc:
                LOGGER.error("%s", exc)
                continue
            holding += 1
        return {"pairs holding": holding}

    def check_properties(self) -> Dict[str, Any]:
        rng = random.Random(RANDOM_WORD_SEED)
        words = [random_word(rng, 4) for _ in range(1000)]
        involution = sum(enantiomorph_word(enantiomorph_word(w)) == w for w in words)

        systems = [self.system(ref) for ref in self.sample]
        trivial_iff_regular = sum(
            (chirality_group(s).order == 1) == is_directly_regular(s) for s in systems
        )

        equivalence = 0
        for first, second in list(combinations(systems, 2))[:20]:
            try:
                regular_mix_equivalence(first, second)
            except BiconditionalError as exc:
                LOGGER.error("%s", exc)
                continue
            equivalence += 1

        subgroup = 0
        for chiral, regular in CHIRAL_REGULAR_PAIRS:
            result = chirality_subgroup_check(self.system(chiral), self.system(regular))
            subgroup += bool(result["divides"] and result["normal"])

        agree = 0
        for reference in RANK4_ENTRIES:
            entry = self.system(reference)
            exhaustive = check_intersection_property(entry, self.settings.coset_index_limit, "exhaustive")
            inductive = check_intersection_property(entry, self.settings.coset_index_limit, "inductive")
            agree += exhaustive.holds == inductive.holds

        orders = 0
        for a, b, c in list(combinations(systems[:7], 3))[:10]:
            commutative = mix(a, b).system.order == mix(b, a).system.order
            left = mix(mix(a, b).system, c).system.order
            right = mix(a, mix(b, c).system).system.order
            orders += commutative and left == right

        return {
            "enantiomorph involution": involution,
            "trivial chirality group iff directly regular": trivial_iff_regular,
            "regular-mix equivalence": equivalence,
            "chirality subgroup of a regular mix": subgroup,
            "intersection methods agree": agree,
            "mix order commutative and associative": orders,
        }

    def check_extensions(self) -> Dict[str, Any]:
        certificate = extension_chirality_hypothesis(
            self.system("toroid44(1,2)"), budget=self.settings.coset_budget
        )
        _, setup = pseudo_extension_setup(alternating_chiral_map(8))
        return {
            "fires for toroid44(1,2)": certificate.conclusive,
            "maximal regular quotient order": certificate.premise("quotient_order"),
            "last generator equals previous": certificate.premise("last_equals_previous"),
            "pseudo-extension premises verified": setup.conclusive,
        }

    def check_toroid_mixing(self) -> Dict[str, Any]:
        polytope = self.system("s6_3443")
        size = chirality_group(polytope).order
        certificates = toroid_mixing_instances(size, polytope.rank, 1, subject=polytope.name)
        fired = [c for c in certificates if c.conclusive]
        return {
            "chirality group divides the toroid factor": certificates[0].premise("chirality_divides_factor"),
            "qualifying primes": [c.premise("s") for c in fired],
        }

    # -- driver ------------------------------------------------------------

    def run(self, only: Optional[Sequence[str]] = None) -> pd.DataFrame:
        rows: List[Dict[str, Any]] = []
        for check in self.checks:
            if only and check["id"] not in only:
                continue
            rows.extend(self._run_check(check))
        return pd.DataFrame(rows, columns=COLUMNS)

    def _run_check(self, check: Dict[str, Any]) -> List[Dict[str, Any]]:
        check_id = check["id"]
        expected: Dict[str, Any] = check["expected"]
        discrepancies: Dict[str, str] = check.get("known_discrepancies", {})
        LOGGER.info("Running check %s: %s", check_id, check.get("description", ""))
        try:
            computed = self._runners[check_id]()
        except (BudgetExhausted, UnknownStatusError) as exc:
            LOGGER.warning("Check %s ran out of budget: %s", check_id, exc)
            return [self._row(check_id, q, v, "budget exhausted", "budget") for q, v in expected.items()]
        except Exception as exc:
            LOGGER.exception("Check %s failed", check_id)
            error = f"error: {type(exc).__name__}: {exc}"
            return [self._row(check_id, q, v, error, "fail") for q, v in expected.items()]

        rows = []
        consistent = all(
            computed.get(q) == v for q, v in expected.items() if q not in discrepancies
        )
        for quantity, published in expected.items():
            value = computed.get(quantity)
            if value == published:
                status = "pass"
            elif quantity in discrepancies and consistent:
                status = "discrepancy"
                LOGGER.warning(
                    "%s %s: published %s, computed %s (%s)",
                    check_id,
                    quantity,
                    published,
                    value,
                    discrepancies[quantity],
                )
            else:
                status = "fail"
                LOGGER.error("%s %s: published %s, computed %s", check_id, quantity, published, value)
            rows.append(self._row(check_id, quantity, published, value, status))
        return rows

    @staticmethod
    def _row(check_id: str, quantity: str, published: Any, computed: Any, status: str) -> Dict[str, Any]:
        return {
            "check": check_id,
            "quantity": quantity,
            "published": _render(published),
            "computed": _render(computed),
            "status": status,
        }


def _render(value: Any) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value)


def suite_passed(frame: pd.DataFrame) -> bool:
    return bool(frame["status"].isin(PASSING).all())


def render_summary(frame: pd.DataFrame) -> str:
    return frame.to_string(index=False) + "\n"


def export_xlsx(frame: pd.DataFrame, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_excel(path, index=False, sheet_name="reproduction", engine="openpyxl")
    LOGGER.info("Reproduction table saved to %s", path)
    return path
