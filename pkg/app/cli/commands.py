"""
Command-line commands

Exit statuses: 0 success or "true", 1 negative answer (check false,
verify mismatch), 2 usage or parse error, 3 carrier budget exceeded,
4 internal error.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import EXIT_INTERNAL, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, SubtypingError
from app.core.logging_config import setup_logging
from app.models.schemas import CliConfig, ExportFormat
from app.services.construction_service import ConstructionService
from app.utils.metrics import exposition
from app.utils.serializers import export, to_dot, to_json

logger = logging.getLogger(__name__)


def write_output(text: str, path: Optional[Path]) -> None:
    """Write a document to ``path``, or to stdout when no path is given"""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("Wrote document", extra={"path": str(path), "bytes": len(text)})


def make_config(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        input_path=getattr(args, "input", None),
        iterations=getattr(args, "iterations", settings.DEFAULT_ITERATIONS),
        format=getattr(args, "format", settings.DEFAULT_FORMAT),
        output=getattr(args, "output", None),
        budget=getattr(args, "budget", settings.CARRIER_BUDGET),
        demo=getattr(args, "selector", None),
        stage=getattr(args, "stage", "jsm"),
        machine_readable=getattr(args, "json", False),
        numeric_labels=getattr(args, "numeric_labels", False),
    )


def cmd_build(config: CliConfig, args: argparse.Namespace) -> int:
    service = ConstructionService(budget=config.budget)
    table = service.load_table(config.input_path)
    relation = service.build(table, config.iterations, stage=config.stage)
    document = export(relation, config.format, numeric_labels=config.numeric_labels)
    write_output(document.payload, config.output)
    return EXIT_OK


def cmd_check(config: CliConfig, args: argparse.Namespace) -> int:
    service = ConstructionService(budget=config.budget)
    table = service.load_table(config.input_path)
    verdict = service.check(table, args.left, args.right)
    print("true" if verdict else "false")
    return EXIT_OK if verdict else EXIT_NEGATIVE


def cmd_stats(config: CliConfig, args: argparse.Namespace) -> int:
    service = ConstructionService(budget=config.budget)
    table = service.load_table(config.input_path)
    rows = service.stats(table, config.iterations)
    if config.machine_readable:
        print(json.dumps([row.model_dump() for row in rows], indent=2))
    else:
        print(f"{'iteration':>9}  {'types':>7}  {'new':>7}  {'edges':>7}")
        for row in rows:
            print(f"{row.iteration:>9}  {row.carrier_size:>7}  {row.new_types:>7}  {row.hasse_edges:>7}")
    if args.metrics:
        sys.stdout.write(exposition())
    return EXIT_OK


def cmd_verify(config: CliConfig, args: argparse.Namespace) -> int:
    service = ConstructionService(budget=config.budget)
    table = service.load_table(config.input_path)
    report = service.verify(table, config.iterations)
    if report.ok:
        print(f"ok: iterations 0..{config.iterations} agree with the containment oracle")
        return EXIT_OK
    print(f"mismatch: {report.mismatch.describe()}")
    return EXIT_NEGATIVE


def cmd_demo(config: CliConfig, args: argparse.Namespace) -> int:
    service = ConstructionService(budget=config.budget)
    figures = service.demo(config.demo)
    main_name, main_relation = next(iter(figures.items()))
    # Main figure only
    if config.output is None:
        write_output(to_dot(main_relation, name=main_name.replace("-", "_")), None)
        write_output(to_json(main_relation), None)
        return EXIT_OK
    for name, relation in figures.items():
        write_output(to_dot(relation, name=name.replace("-", "_")), config.output / f"{name}.dot")
        write_output(to_json(relation), config.output / f"{name}.json")
    return EXIT_OK


COMMANDS: Dict[str, Callable[[CliConfig, argparse.Namespace], int]] = {
    "build": cmd_build,
    "check": cmd_check,
    "stats": cmd_stats,
    "verify": cmd_verify,
    "demo": cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=settings.PROG_NAME, description=settings.DESCRIPTION)
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    parser.add_argument("--log-level", default=None, help="Logging level (default from LOG_LEVEL)")
    parser.add_argument("--log-format", choices=["plain", "json"], default=None, help="Log record format")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_input(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("-i", "--input", type=Path, required=True, help="Class declaration file (.sub)")

    def add_iterations(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("-n", "--iterations", type=int, default=settings.DEFAULT_ITERATIONS,
                         help="Number of construction steps")

    def add_budget(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--budget", type=int, default=settings.CARRIER_BUDGET, help="Maximum carrier size")

    build = commands.add_parser("build", help="Construct the relation and export it")
    add_input(build)
    add_iterations(build)
    build.add_argument("--format", choices=[f.value for f in ExportFormat], default=settings.DEFAULT_FORMAT)
    build.add_argument("-o", "--output", type=Path, default=None, help="Output file (default stdout)")
    add_budget(build)
    build.add_argument("--stage", choices=["copy", "flip", "flat", "jsm"], default="jsm",
                       help="Export one morphism's output over iteration n-1 instead of the merged relation")
    build.add_argument("--numeric-labels", action="store_true", help="Label DOT nodes with their type ids")

    check = commands.add_parser("check", help="Decide whether LEFT is a subtype of RIGHT")
    add_input(check)
    check.add_argument("left", help="Subtype candidate, e.g. 'C<N>'")
    check.add_argument("right", help="Supertype candidate, e.g. 'C<? <: C<?>>'")

    stats = commands.add_parser("stats", help="Carrier and edge counts per iteration")
    add_input(stats)
    add_iterations(stats)
    add_budget(stats)
    stats.add_argument("--json", action="store_true", help="Machine-readable output")
    stats.add_argument("--metrics", action="store_true", help="Append Prometheus metrics")

    verify = commands.add_parser("verify", help="Cross-check the construction against the oracle")
    add_input(verify)
    add_iterations(verify)
    add_budget(verify)

    demo = commands.add_parser("demo", help="Run a built-in example and export its figures")
    demo.add_argument("selector", type=int, choices=[1, 2], help="Example number")
    demo.add_argument("-o", "--output", type=Path, default=None, help="Output directory (default stdout)")
    add_budget(demo)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    setup_logging(level=args.log_level, fmt=args.log_format)

    # Map errors to exit statuses
    try:
        config = make_config(args)
        return COMMANDS[args.command](config, args)
    except SubtypingError as e:
        print(f"{settings.PROG_NAME}: error: {e}", file=sys.stderr)
        return e.exit_status
    except ValidationError as e:
        print(f"{settings.PROG_NAME}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as e:
        print(f"{settings.PROG_NAME}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Command {args.command} failed: {e}", exc_info=True)
        print(f"{settings.PROG_NAME}: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
