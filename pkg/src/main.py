"""CLI for the chiral polytope mixing toolkit."""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from catalog import FAMILY_HELP, CatalogError, is_reference, parse_reference, resolve
from criteria import (
    Conclusion,
    extension_chirality_hypothesis,
    pseudo_extension_setup,
    simplex_transfer,
    toroid_mixing_instances,
)
from document_generator import DocumentGenerator
from kernel_fp import BudgetExhausted
from mixer import chirality_group
from presentation_parser import PresentationParseError, load_presentation_file
from reports import (
    certify_report,
    chirality_report,
    classify,
    comix_report,
    mix_report,
    serialize_report,
)
from reproduction import PASSING, ReproductionSuite, export_xlsx, render_summary, suite_passed
from rotgroup import (
    NotPolytopalError,
    RotationSystem,
    Status,
    UnknownStatusError,
    from_presentation,
    is_directly_regular,
)
from settings import Settings, load_settings

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_NOT_POLYTOPAL = 4
EXIT_REPRODUCE_FAILED = 5


def load_system(spec: str, settings: Settings) -> RotationSystem:
    """A catalog reference such as ``toroid44(1,2)`` or a presentation file path."""
    if is_reference(spec):
        return resolve(spec, budget=settings.coset_budget)
    path = Path(spec)
    if path.exists():
        presentation = load_presentation_file(path)
        return from_presentation(presentation, settings.coset_budget, path.stem)
    raise CatalogError(f"{spec!r} is neither a catalog reference nor an existing file")


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (PresentationParseError, CatalogError)):
        return EXIT_PARSE
    if isinstance(exc, (BudgetExhausted, UnknownStatusError)):
        return EXIT_BUDGET
    if isinstance(exc, NotPolytopalError):
        return EXIT_NOT_POLYTOPAL
    return EXIT_ERROR


def _classify_one(job: Tuple[str, Settings]) -> Tuple[int, Any]:
    spec, settings = job
    try:
        report = classify(load_system(spec, settings), settings).to_dict()
    except Exception as exc:  # reported in input order by the caller
        return exit_code_for(exc), f"{spec}: {exc}"
    return (EXIT_BUDGET if report["status"] == Status.UNKNOWN.value else EXIT_OK), report


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_classify(args: argparse.Namespace, settings: Settings) -> int:
    jobs = [(spec, settings) for spec in args.systems]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as executor:
            results = list(executor.map(_classify_one, jobs))
    else:
        results = [_classify_one(job) for job in jobs]

    reports = []
    worst = EXIT_OK
    for code, payload in results:
        if isinstance(payload, dict):
            reports.append(payload)
        else:
            LOGGER.error("%s", payload)
        worst = worst or code
    if reports:
        print(serialize_report(reports[0] if len(args.systems) == 1 else reports), end="")
    return worst


def cmd_mix(args: argparse.Namespace, settings: Settings) -> int:
    first, second = load_system(args.first, settings), load_system(args.second, settings)
    report = mix_report(
        first,
        second,
        settings,
        faces=args.faces,
        polytopality=args.polytopality,
        certificates=not args.no_certificates,
    )
    print(serialize_report(report), end="")
    return EXIT_OK


def cmd_comix(args: argparse.Namespace, settings: Settings) -> int:
    first, second = load_system(args.first, settings), load_system(args.second, settings)
    print(serialize_report(comix_report(first, second, settings)), end="")
    return EXIT_OK


def cmd_chirality(args: argparse.Namespace, settings: Settings) -> int:
    system = load_system(args.system, settings)
    print(serialize_report(chirality_report(system, settings)), end="")
    return EXIT_OK


def _single_system_certificates(system: RotationSystem, settings: Settings, primes: int) -> Dict[str, Any]:
    certificates = [extension_chirality_hypothesis(system, budget=settings.coset_budget)]
    extension_reference: Optional[str] = None
    if system.is_finite and not is_directly_regular(system):
        extension, setup = pseudo_extension_setup(system)
        certificates.append(setup)
        if extension is not None and setup.conclusion is Conclusion.CHIRAL:
            extension_reference = extension.name
        if system.rank >= 4:
            certificates.append(simplex_transfer(system))
        size = chirality_group(system, budget=settings.coset_budget).order
        certificates.extend(toroid_mixing_instances(size, system.rank, 1, primes, system.name))
    report: Dict[str, Any] = {
        "name": system.name,
        "certificates": [c.to_dict() for c in certificates],
    }
    if extension_reference:
        report["pseudo_extension_partner"] = extension_reference
    return report


def cmd_certify(args: argparse.Namespace, settings: Settings) -> int:
    first = load_system(args.first, settings)
    if args.second:
        second = load_system(args.second, settings)
        report = certify_report(first, second, cross_check=args.cross_check)
    else:
        report = _single_system_certificates(first, settings, args.primes)
    print(serialize_report(report), end="")
    return EXIT_OK


def catalog_frame(references: Sequence[str], settings: Settings) -> pd.DataFrame:
    rows: List[Dict[str, Any]] = []
    for reference in references:
        spec = parse_reference(reference)
        system = resolve(reference, budget=settings.coset_budget)
        finite = system.is_finite
        rows.append(
            {
                "tag": spec.tag,
                "parameters": ",".join(str(p) for p in spec.parameters),
                "order": system.order if finite else "unknown",
                "type": "{" + ",".join(map(str, system.schlafli_type)) + "}" if finite else "unknown",
                "directly regular": is_directly_regular(system) if finite else "unknown",
            }
        )
    return pd.DataFrame(rows, columns=["tag", "parameters", "order", "type", "directly regular"])


def cmd_catalog(args: argparse.Namespace, settings: Settings) -> int:
    if not args.references:
        frame = pd.DataFrame(
            [{"tag": tag, "usage": FAMILY_HELP[tag]} for tag in sorted(FAMILY_HELP)]
        )
    else:
        frame = catalog_frame(args.references, settings)
    print(frame.to_string(index=False))
    return EXIT_OK


def cmd_reproduce(args: argparse.Namespace, settings: Settings) -> int:
    suite = ReproductionSuite(settings)
    frame = suite.run(only=args.only)
    print(render_summary(frame), end="")
    if args.xlsx:
        export_xlsx(frame, args.xlsx)
    if args.docx:
        DocumentGenerator().create_reproduction_document(frame, args.docx)
    if not suite_passed(frame):
        LOGGER.error("%d reproduction rows failed", int((~frame["status"].isin(PASSING)).sum()))
        return EXIT_REPRODUCE_FAILED
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "mix": cmd_mix,
    "comix": cmd_comix,
    "chirality": cmd_chirality,
    "certify": cmd_certify,
    "catalog": cmd_catalog,
    "reproduce": cmd_reproduce,
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="Log at DEBUG level.")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="Log warnings and errors only.")
    common.add_argument("--budget", type=int, help="Maximum cosets per enumeration.")
    common.add_argument(
        "--coset-index-limit",
        type=int,
        help="Largest orbit for coset-action intersections and quotients.",
    )
    common.add_argument("--simplicity-bound", type=int, help="Largest group order tested for simplicity.")
    common.add_argument("--settings", type=Path, help="JSON settings file (default configs/settings.json).")
    return common


def _parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    common = _common_options()
    parser = argparse.ArgumentParser(
        description="Mix, comix and chirality groups of chiral and directly regular polytopes.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    classify_parser = sub.add_parser("classify", parents=[common], help="Classify rotation systems.")
    classify_parser.add_argument("systems", nargs="+", help="Catalog references or presentation files.")
    classify_parser.add_argument("--jobs", type=int, default=1, help="Worker processes for a batch.")

    mix_parser = sub.add_parser("mix", parents=[common], help="Mix two systems.")
    mix_parser.add_argument("first")
    mix_parser.add_argument("second")
    mix_parser.add_argument("--faces", action="store_true", help="Add face vector and flag count.")
    mix_parser.add_argument("--polytopality", action="store_true", help="Check the intersection property.")
    mix_parser.add_argument("--no-certificates", action="store_true", help="Skip the criteria.")

    comix_parser = sub.add_parser("comix", parents=[common], help="Comix of two systems.")
    comix_parser.add_argument("first")
    comix_parser.add_argument("second")

    chirality_parser = sub.add_parser("chirality", parents=[common], help="Chirality group of a system.")
    chirality_parser.add_argument("system")

    certify_parser = sub.add_parser(
        "certify", parents=[common], help="Apply the criteria to a pair, or the extension criteria to one system."
    )
    certify_parser.add_argument("first")
    certify_parser.add_argument("second", nargs="?")
    certify_parser.add_argument("--cross-check", action="store_true", help="Recompute conclusions on the mix.")
    certify_parser.add_argument("--primes", type=int, default=3, help="Cubic-toroid primes to report.")

    catalog_parser = sub.add_parser("catalog", parents=[common], help="List families or build entries.")
    catalog_parser.add_argument("references", nargs="*")

    reproduce_parser = sub.add_parser("reproduce", parents=[common], help="Run the acceptance suite.")
    reproduce_parser.add_argument("--only", nargs="+", help="Check ids to run.")
    reproduce_parser.add_argument("--xlsx", type=Path, help="Also write the table to an Excel file.")
    reproduce_parser.add_argument("--docx", type=Path, help="Also write the table to a Word document.")
    return parser.parse_args(argv)


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if getattr(args, "verbose", False):
        level = logging.DEBUG
    elif getattr(args, "quiet", False):
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = _parse_args(argv)
    _configure_logging(args)
    overrides = {
        "coset_budget": getattr(args, "budget", None),
        "coset_index_limit": getattr(args, "coset_index_limit", None),
        "simplicity_bound": getattr(args, "simplicity_bound", None),
    }
    try:
        settings = load_settings(getattr(args, "settings", None), overrides)
        return COMMANDS[args.command](args, settings)
    except (PresentationParseError, CatalogError, BudgetExhausted, UnknownStatusError, NotPolytopalError) as exc:
        LOGGER.error("%s", exc)
        return exit_code_for(exc)
    except Exception:
        LOGGER.exception("Command %s failed", args.command)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
