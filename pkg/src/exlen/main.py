"""
Command-line front end for exlen.

Entry point for validating presentations, enumerating torsion classes,
checking lattice and τ-tilting properties, and replaying the bundled corpus.
"""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from dotenv import load_dotenv
from pydantic import ValidationError

from .commands.category import run_semibricks, run_simples, run_strata, run_validate
from .commands.lattice import run_check, run_hasse, run_intervals, run_tors
from .commands.report import run_report, run_selftest
from .commands.tautilt import run_tautilt
from .errors import ExitCode, ExlenError, ValidationFailed
from .models import CommandOutput, RunConfig

logger = logging.getLogger(__name__)

COMMANDS: Dict[str, Callable[[RunConfig], CommandOutput]] = {
    "validate": run_validate,
    "strata": run_strata,
    "simples": run_simples,
    "semibricks": run_semibricks,
    "tors": run_tors,
    "hasse": run_hasse,
    "check": run_check,
    "intervals": run_intervals,
    "tautilt": run_tautilt,
    "report": run_report,
    "selftest": run_selftest,
}

ENV_DEFAULTS = {
    "max_indecs": ("EXLEN_MAX_INDECS", 22),
    "mult_cap": ("EXLEN_MULT_CAP", 3),
    "sd_bound": ("EXLEN_SD_BOUND", 4),
    "jobs": ("EXLEN_JOBS", 1),
}


class UsageError(Exception):
    """Bad command line or environment override."""


class ArgumentParser(argparse.ArgumentParser):
    """argparse with the usage exit code instead of argparse's own."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE, f"{self.prog}: error: {message}\n")


def parse_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {value!r}")


def env_defaults() -> Dict[str, int]:
    """Integer defaults, overridden by EXLEN_* variables from the environment or .env."""
    load_dotenv()
    defaults = {}
    for field_name, (variable, fallback) in ENV_DEFAULTS.items():
        raw = os.getenv(variable)
        if raw is None or raw == "":
            defaults[field_name] = fallback
            continue
        try:
            value = int(raw)
        except ValueError:
            raise UsageError(f"{variable}={raw!r} is not an integer") from None
        if value < 1:
            raise UsageError(f"{variable}={raw!r} must be at least 1")
        defaults[field_name] = value
    return defaults


def build_parser(defaults: Dict[str, int]) -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", type=Path, help="Write stdout text to this file")
    common.add_argument("--json", dest="json_output", action="store_true", help="Emit structured JSON")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    common.add_argument("--jobs", type=int, default=defaults["jobs"], help="Parallel enumeration workers")
    common.add_argument("--max-indecs", type=int, default=defaults["max_indecs"], help="Enumeration bound")
    common.add_argument("--mult-cap", type=int, default=defaults["mult_cap"],
                        help="Multiplicity cap for filtration search")
    common.add_argument("--sd-bound", type=int, default=defaults["sd_bound"],
                        help="Subset bound for complete semidistributivity")
    common.add_argument("--stable-only", type=parse_bool, default=True,
                        help="Use only stable conflations for filtration lengths")

    parser = ArgumentParser(prog="exlen", description="Finite extriangulated length categories.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
    for name in COMMANDS:
        sub = commands.add_parser(name, parents=[common], help=f"{name} command")
        if name == "selftest":
            sub.add_argument("--corpus-dir", type=Path, help="Corpus root (default: bundled corpus)")
        else:
            sub.add_argument("input", type=Path, help="Corpus document (JSON)")
        if name in ("tors", "semibricks"):
            sub.add_argument("--count", action="store_true", help="Print only the total")
        if name == "tors":
            sub.add_argument("--pairs", action="store_true", help="Print torsion pairs")
        if name == "hasse":
            sub.add_argument("--dot", type=Path, help="Write Graphviz DOT here")
        if name == "tautilt":
            sub.add_argument("--table", action="store_true", help="Tab-separated pairing table")
        if name == "simples":
            sub.add_argument("--sub", help="Comma-separated ids of the subcategory (default: all)")
    return parser


def parse_config(argv: Optional[List[str]] = None) -> Tuple[RunConfig, int]:
    """Parse the command line into a RunConfig and a verbosity; usage problems raise UsageError."""
    parser = build_parser(env_defaults())
    args = parser.parse_args(argv)
    options = vars(args)
    verbose = options.pop("verbose")
    if "sub" in options:
        options["sub"] = [ident.strip() for ident in (options["sub"] or "").split(",") if ident.strip()] or None
    try:
        config = RunConfig(**options)
    except ValidationError as e:
        raise UsageError("; ".join(f"--{'-'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())) from None
    if config.input is not None and not config.input.is_file():
        raise UsageError(f"input file {config.input} does not exist")
    return config, verbose


def configure_logging(verbose: int) -> None:
    level = os.getenv("EXLEN_LOG_LEVEL", "WARNING").upper()
    if verbose == 1:
        level = "INFO"
    elif verbose >= 2:
        level = "DEBUG"
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )


def emit(config: RunConfig, output: CommandOutput) -> None:
    text = output.model_dump_json(indent=2) + "\n" if config.json_output else output.text
    if config.output:
        config.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(config: RunConfig) -> int:
    """
    Dispatch one command and emit its output.

    Returns:
        Process exit status
    """
    try:
        output = COMMANDS[config.command](config)
    except ValidationFailed as e:
        print(f"exlen: {e}", file=sys.stderr)
        for violation in e.violations:
            print(f"  {violation.rule} at {violation.location}: {violation.detail}", file=sys.stderr)
        return int(e.exit_code)
    except ExlenError as e:
        print(f"exlen: {e}", file=sys.stderr)
        return int(e.exit_code)
    emit(config, output)
    return int(output.exit_code)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        config, verbose = parse_config(argv)
    except UsageError as e:
        print(f"exlen: error: {e}", file=sys.stderr)
        return int(ExitCode.USAGE)
    configure_logging(verbose)
    logger.info(f"Running {config.command}")
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
