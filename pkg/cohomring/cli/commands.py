import argparse
import sys
from pathlib import Path
from typing import List, Optional

from cohomring.core.config import settings
from cohomring.core.exceptions import EngineError, SpecValidationError, VerificationMismatchError
from cohomring.services.cohomology_service import cohomology_service
from cohomring.services.presentation_service import presentation_service
from cohomring.services.report_service import REPORT_FORMATS, report_service
from cohomring.services.spec_service import spec_service
from cohomring.services.verification_service import verification_service
import logging

logger = logging.getLogger(__name__)

EXIT_OK = 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohomring",
        description="Rational equivariant cohomology rings of cohomogeneity-one actions",
    )
    parser.add_argument("--log-level", default=None, help="Override LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", help="Present (and optionally verify) one spec file")
    run_parser.add_argument("spec", help="Path to a spec file, or the name of a bundled spec")
    run_parser.add_argument("--max-degree", type=int, default=None, help="Truncation degree N")
    run_parser.add_argument("--verify", action="store_true", help="Compare against the degreewise oracle")
    run_parser.add_argument("--trials", type=int, default=None, help="Product spot-check trials")
    run_parser.add_argument("--seed", type=int, default=None, help="Spot-check random seed")
    run_parser.add_argument("--workers", type=int, default=None, help="Threads for degreewise tables")
    run_parser.add_argument("--format", choices=REPORT_FORMATS, default="text")
    run_parser.add_argument("--out", type=Path, default=None, help="Write the report here instead of stdout")

    commands.add_parser("list", help="List the bundled spec names")
    return parser


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def run(args: argparse.Namespace) -> int:
    """Load, validate, present and optionally verify one spec; returns the exit status."""
    truncation = settings.max_degree if args.max_degree is None else args.max_degree
    if args.workers is not None:
        settings.workers = args.workers
    try:
        spec = spec_service.load(args.spec)

        validation = cohomology_service.validate(spec, truncation)
        if not validation.passed:
            sys.stderr.write(report_service.render_validation(validation))
            raise SpecValidationError(validation.summary(), report=validation)

        presentation = presentation_service.present(spec, truncation)
        verification = None
        if args.verify:
            verification = verification_service.verify(
                spec, truncation, trials=args.trials, seed=args.seed, presentation=presentation
            )

        if args.format == "machine":
            text = report_service.render_machine(spec, presentation, verification)
        else:
            text = report_service.render_text(spec, presentation, verification)
        _emit(text, args.out)

        if verification is not None and not verification.passed:
            raise VerificationMismatchError(
                f"{spec.name}: verification failed (first mismatch at degree {verification.first_mismatch})",
                report=verification,
            )
        return EXIT_OK
    except EngineError as e:
        sys.stderr.write(f"error: {e.detail}\n")
        return e.exit_code


def list_specs(args: argparse.Namespace) -> int:
    for name in spec_service.list_bundled():
        sys.stdout.write(f"{name}\n")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        logging.getLogger().setLevel(args.log_level.upper())
    if args.command == "list":
        return list_specs(args)
    return run(args)
