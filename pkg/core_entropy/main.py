"""
Command line front end for the core entropy engine
"""

import argparse
import sys
from typing import Callable, Dict, List, Optional

import structlog
from pydantic import ValidationError

from core_entropy.commands.entropy import census_command, entropy_command
from core_entropy.commands.experiments import feigenbaum_command, monotonicity_command, scan_command
from core_entropy.commands.output import Artifact, emit
from core_entropy.commands.renorm import renorm_command
from core_entropy.commands.symbolic import address_command, kneading_command
from core_entropy.core.exceptions import CoreEntropyError, InvalidSequenceError, PostconditionError, SequenceParseError
from core_entropy.core.logging import configure_logging
from core_entropy.schemas.run_config import Command, OutputFormat, RunConfig

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

LOGGING_FLAGS = {"verbose", "quiet"}

COMMANDS: Dict[Command, Callable[[RunConfig], Artifact]] = {
    Command.KNEADING: kneading_command,
    Command.ADDRESS: address_command,
    Command.ENTROPY: entropy_command,
    Command.CENSUS: census_command,
    Command.RENORM: renorm_command,
    Command.SCAN: scan_command,
    Command.FEIGENBAUM: feigenbaum_command,
    Command.MONOTONICITY: monotonicity_command,
}


def run(config: RunConfig) -> int:
    """
    Dispatch one run and emit its artifact

    Returns:
        0 on success, 1 on postcondition failures and sweep violations,
        2 on parse and validation errors
    """
    try:
        artifact = COMMANDS[config.command](config)
    except SequenceParseError as e:
        logger.error("parse error", command=config.command.value, error=str(e), text=e.text, position=e.position)
        return EXIT_USAGE
    except InvalidSequenceError as e:
        logger.error("invalid sequence", command=config.command.value, error=str(e), invariant=e.invariant)
        return EXIT_USAGE
    except ValueError as e:
        logger.error("invalid input", command=config.command.value, error=str(e))
        return EXIT_USAGE
    except PostconditionError as e:
        logger.error("postcondition failed", command=config.command.value, error=str(e), details=e.details)
        return EXIT_FAILURE
    except CoreEntropyError as e:
        logger.error("run failed", command=config.command.value, error=str(e))
        return EXIT_FAILURE

    emit(config, artifact)
    return artifact.exit_code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--angle", help="External angle as p/q")
    common.add_argument("--seq", dest="sequence", help="Kneading sequence as PRE(PER), e.g. 1(10) or (1101*)")
    common.add_argument("--n-max", type=int, help="Census depth (feigenbaum: cascade level)")
    common.add_argument("--max-terms", type=int, help="Internal address truncation")
    common.add_argument("--p-max", type=int, help="Largest renormalization period tried")
    common.add_argument("--m-min", type=int, help="Smallest scan scale")
    common.add_argument("--m-max", type=int, help="Largest scan scale")
    common.add_argument("--offsets", type=int, nargs="+", help="Scan offsets j per scale")
    common.add_argument("--tolerance", type=float, help="Spectral bracket width")
    common.add_argument("--estimate", action="store_true", help="Census growth estimate instead of the exact value")
    common.add_argument("--output", "-o", help="Output path (default: stdout)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)
    common.add_argument("-v", "--verbose", action="count", default=0, help="More log output (repeatable)")
    common.add_argument("-q", "--quiet", action="count", default=0, help="Warnings and errors only")

    parser = argparse.ArgumentParser(
        prog="core-entropy", description="Exact core entropy of quadratic kneading sequences"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("kneading", parents=[common], help="Kneading sequence of an angle")
    subparsers.add_parser("address", parents=[common], help="Internal address")
    subparsers.add_parser("entropy", parents=[common], help="Core entropy")
    subparsers.add_parser("census", parents=[common], help="Precritical counts by depth")
    subparsers.add_parser("renorm", parents=[common], help="Renormalization certificates")
    subparsers.add_parser("scan", parents=[common], help="Hoelder scan and exponent fit")
    subparsers.add_parser("feigenbaum", parents=[common], help="Entropy along the period-doubling cascade")
    monotonicity = subparsers.add_parser(
        "monotonicity", parents=[common], help="Census domination on certified pairs", conflict_handler="resolve"
    )
    monotonicity.add_argument(
        "--seq", dest="sequences", action="append", default=[], help="Corpus member (repeatable)"
    )
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {
        key: value
        for key, value in vars(args).items()
        if value is not None and key not in LOGGING_FLAGS
    }
    return RunConfig(**values)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose - args.quiet, args.command)
    try:
        config = config_from_args(args)
    except ValidationError as e:
        logger.error("invalid configuration", error=str(e))
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
