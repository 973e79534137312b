"""
Command-line surface: classgroup, hpoly, roots, predict and sweep

Exit statuses: 0 success, 1 usage error, 2 validation error,
3 prediction disagreement, 4 runtime failure (precision or I/O).
"""
import argparse
import asyncio
import logging
import sys
from typing import Any, Callable, Dict, Optional, Sequence

from classgroup.forms import make_discriminant
from classgroup.table import enumerate_class_group
from criterion.conditions import predict
from database.cache import PolyCacheManager
from harness import reporting
from harness.sweep import SweepManager, build_record
from utils.config import OUTPUT_FORMATS, Config
from utils.error_handler import (
    EXIT_DISAGREEMENT,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    CMRootsError,
    cli_error_handler,
    global_error_handler,
)
from utils.logger import setup_logger

logger = logging.getLogger(__name__)


class CLIArgumentParser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with status 1"""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> CLIArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=OUTPUT_FORMATS, default=None,
                        help='Output format (default from config, normally json)')
    common.add_argument('--out', default=None, help='Write the report to this file instead of stdout')
    common.add_argument('--cache', default=None, help='Class polynomial cache file (default ./hpoly.cache)')
    common.add_argument('--config', default=None, help='Path to a YAML config file')
    common.add_argument('--log-level', default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                        help='Logging level (default from config)')

    parser = CLIArgumentParser(
        prog='cmroots',
        description='Class groups, Hilbert class polynomials and their roots at inert primes',
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    classgroup = subparsers.add_parser('classgroup', parents=[common],
                                       help='Reduced forms, 2-torsion and genus count of discriminant D')
    classgroup.add_argument('-D', '--disc', type=int, required=True, help='Negative discriminant')

    hpoly = subparsers.add_parser('hpoly', parents=[common], help='Hilbert class polynomial H_D')
    hpoly.add_argument('-D', '--disc', type=int, required=True, help='Negative discriminant')

    roots = subparsers.add_parser('roots', parents=[common],
                                  help='Roots of H_D mod p compared with the prediction')
    roots.add_argument('-D', '--disc', type=int, required=True, help='Negative discriminant')
    roots.add_argument('-p', '--prime', type=int, required=True, help='Prime p > 3')

    predict_parser = subparsers.add_parser('predict', parents=[common],
                                           help='Criterion prediction for (D, p)')
    predict_parser.add_argument('-D', '--disc', type=int, required=True, help='Negative discriminant')
    predict_parser.add_argument('-p', '--prime', type=int, required=True, help='Prime p > 3')

    sweep = subparsers.add_parser('sweep', parents=[common],
                                  help='Check every inert pair |D| < p up to the given bounds')
    sweep.add_argument('--max-disc', type=int, required=True, help='Largest |D| to include')
    sweep.add_argument('--max-prime', type=int, required=True, help='Largest prime to include')
    sweep.add_argument('--list-roots', action='store_true', help='Include the roots in every record')
    sweep.add_argument('--workers', type=int, default=None, help='Parallel workers (default from config)')

    return parser


def _check_sweep_args(parser: CLIArgumentParser, args: argparse.Namespace, config: Config) -> None:
    if not 3 <= args.max_disc <= config.max_disc_cap:
        parser.error(f"--max-disc must be between 3 and {config.max_disc_cap}")
    if not 5 <= args.max_prime <= config.max_prime_cap:
        parser.error(f"--max-prime must be between 5 and {config.max_prime_cap}")
    if args.workers is not None and args.workers < 1:
        parser.error("--workers must be at least 1")


def _emit(
    args: argparse.Namespace,
    config: Config,
    payload: Dict[str, Any],
    csv_text: Callable[[], str],
    plain_text: Callable[[], str],
) -> None:
    fmt = args.format or config.default_format
    if fmt == 'json':
        text = reporting.to_json(payload)
    elif fmt == 'csv':
        text = csv_text()
    else:
        text = plain_text()
    reporting.write_output(text, args.out)


def _cache(args: argparse.Namespace, config: Config) -> PolyCacheManager:
    return PolyCacheManager(args.cache or config.cache_path)


@cli_error_handler(context="classgroup")
def cmd_classgroup(args: argparse.Namespace, config: Config) -> int:
    table = enumerate_class_group(make_discriminant(args.disc))
    _emit(
        args, config, table.to_dict(),
        lambda: reporting.to_csv(reporting.class_group_rows(table), ('D', 'a', 'b', 'c', 'two_torsion')),
        lambda: reporting.format_class_group(table),
    )
    return EXIT_OK


@cli_error_handler(context="hpoly")
def cmd_hpoly(args: argparse.Namespace, config: Config) -> int:
    disc = make_discriminant(args.disc)
    polynomial, cached = _cache(args, config).get_or_compute(disc.value, config.precision_retries)
    logger.info(f"H_{disc.value} {'served from cache' if cached else 'computed and cached'}")

    payload = {'D': disc.value}
    payload.update(polynomial.to_dict())
    _emit(
        args, config, payload,
        lambda: reporting.to_csv(reporting.polynomial_rows(disc.value, polynomial), ('D', 'power', 'coefficient')),
        lambda: reporting.format_polynomial(disc.value, polynomial),
    )
    return EXIT_OK


@cli_error_handler(context="roots")
def cmd_roots(args: argparse.Namespace, config: Config) -> int:
    disc = make_discriminant(args.disc)
    report = predict(disc, args.prime)
    table = enumerate_class_group(disc)
    polynomial, _ = _cache(args, config).get_or_compute(disc.value, config.precision_retries)
    record = build_record(
        table, polynomial, args.prime,
        list_roots=True, listing_cap=config.root_listing_cap,
    )

    payload = record.to_dict()
    payload['applicable'] = report.applicable
    payload['reason'] = report.reason
    payload['per_ell'] = [c.to_dict() for c in report.per_ell]
    _emit(
        args, config, payload,
        lambda: reporting.records_to_csv([record]),
        lambda: reporting.format_record(record) + reporting.format_criterion(report),
    )

    if record.agreement is False:
        logger.error(f"Observed and predicted root counts disagree for D={disc.value}, p={args.prime}")
        return EXIT_DISAGREEMENT
    return EXIT_OK


@cli_error_handler(context="predict")
def cmd_predict(args: argparse.Namespace, config: Config) -> int:
    report = predict(make_discriminant(args.disc), args.prime)
    _emit(
        args, config, report.to_dict(),
        lambda: reporting.to_csv(reporting.criterion_rows(report), reporting.CRITERION_FIELDS),
        lambda: reporting.format_criterion(report),
    )
    return EXIT_OK


@cli_error_handler(context="sweep")
def cmd_sweep(args: argparse.Namespace, config: Config) -> int:
    manager = SweepManager(config, _cache(args, config), max_workers=args.workers)
    report = asyncio.run(manager.run(args.max_disc, args.max_prime, list_roots=args.list_roots))

    _emit(
        args, config, report.to_dict(),
        lambda: reporting.records_to_csv(report.records),
        lambda: reporting.format_sweep(report),
    )
    logger.info(f"Summary: {reporting.summary_line(report)}")
    return EXIT_OK if report.all_agree else EXIT_DISAGREEMENT


COMMANDS: Dict[str, Callable[[argparse.Namespace, Config], int]] = {
    'classgroup': cmd_classgroup,
    'hpoly': cmd_hpoly,
    'roots': cmd_roots,
    'predict': cmd_predict,
    'sweep': cmd_sweep,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, configure logging and dispatch; returns the exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = Config(args.config)
    except CMRootsError as e:
        global_error_handler.log_error(e, "config")
        return EXIT_VALIDATION

    setup_logger(
        log_level=args.log_level or config.log_level,
        log_dir=config.log_dir,
        log_to_file=config.log_to_file,
    )

    if args.command == 'sweep':
        try:
            _check_sweep_args(parser, args, config)
        except SystemExit as e:
            return int(e.code or 0)

    return COMMANDS[args.command](args, config)
