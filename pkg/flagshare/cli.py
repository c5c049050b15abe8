"""
Command-line front end for flagshare.

Subcommands:
    - verify: Certify a shipped scheme and dump its fault tables
    - search: Find a shared-flag or mutual-flag circuit for a generator group
    - threshold: Estimate logical error rates and the pseudo-threshold
    - tables: Regenerate the census, decoder-comparison and threshold tables
    - codes: List catalog codes (or a JSON code definition)

Exit status is 0 on success, 1 when the operation fails and 2 for usage and
validation errors.
"""

import argparse
import logging
import sys
from typing import List, Optional

from .codes import CATALOG_NAMES
from .config import Config
from .decode import Mode, Procedure
from .errors import ConfigError, FlagshareError
from .montecarlo import TARGETS
from .schemes import DEFAULT_SEED, SCHEME_NAMES, build_scheme
from .utils.decorators import EXIT_FAILURE, EXIT_USAGE
from .utils.logger import Logger

# Initialize logger
logger = logging.getLogger(__name__)

PROCEDURE_NAMES = tuple(p.value for p in Procedure)


def positive_int(text: str) -> int:
    try:
        value = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def unit_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {value}")
    return value


def _scheme_options(parser: argparse.ArgumentParser, default_scheme: Optional[str] = "parallel") -> None:
    parser.add_argument("--code", required=True, choices=CATALOG_NAMES)
    parser.add_argument("--scheme", default=default_scheme, choices=SCHEME_NAMES)
    parser.add_argument("--procedure", choices=PROCEDURE_NAMES,
                        help="decoding procedure; defaults to alg3 for pure-type schemes, alg1 otherwise")
    parser.add_argument("--mode", choices=[m.value for m in Mode])
    parser.add_argument("--scheme-seed", type=int, default=DEFAULT_SEED,
                        help="seed of randomized scheme constructions")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flagshare", description=__doc__.split("\n")[1])
    parser.add_argument("--config", help="JSON configuration file (default $FLAGSHARE_CONFIG or config.json)")
    parser.add_argument("--log-level", help="override the configured log level")
    parser.add_argument("--out", help="output directory")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="certify a scheme against every single fault")
    _scheme_options(verify)
    verify.add_argument("--exrec", action="store_true", help="also certify the transversal-CNOT ex-Rec")

    search = sub.add_parser("search", help="search CNOT orders for a generator group")
    search.add_argument("--code", required=True, choices=CATALOG_NAMES)
    search.add_argument("--group", required=True,
                        help="comma-separated generator names; a mixed-type group is searched as a mutual-flag part "
                             "with the first name as hub")
    search.add_argument("--seed", type=int)
    search.add_argument("--max-iters", type=positive_int)

    threshold = sub.add_parser("threshold", help="estimate logical rates and the pseudo-threshold")
    _scheme_options(threshold)
    threshold.add_argument("--target", default="memory", choices=TARGETS + ("both",))
    threshold.add_argument("--gamma", type=unit_float)
    threshold.add_argument("--p", type=unit_float, nargs="+", help="fixed p grid instead of the bisection")
    threshold.add_argument("--trials", type=positive_int)
    threshold.add_argument("--max-trials", type=positive_int)
    threshold.add_argument("--rounds", type=positive_int, default=1, help="noisy rounds per memory trial")
    threshold.add_argument("--seed", type=int)
    threshold.add_argument("--workers", type=positive_int)

    tables = sub.add_parser("tables", help="regenerate census, decoder-comparison and threshold tables")
    tables.add_argument("--quick", action="store_true", help="few trials per point")
    tables.add_argument("--census-only", action="store_true")
    tables.add_argument("--seed", type=int)
    tables.add_argument("--workers", type=positive_int)

    codes = sub.add_parser("codes", help="list catalog codes")
    codes.add_argument("--file", help="JSON code definition to load and list")
    return parser


def resolve_procedure(args: argparse.Namespace) -> None:
    """
    Fill ``args.procedure`` and ``args.mode`` from each other and the scheme.

    Raises:
        ConfigError: If the two disagree
    """
    if args.mode == Mode.DETECT.value or args.procedure == Procedure.DETECT.value:
        if args.procedure not in (None, Procedure.DETECT.value):
            raise ConfigError(f"--mode detect cannot use --procedure {args.procedure}")
        if args.mode == Mode.CORRECT.value:
            raise ConfigError("--procedure detect needs --mode detect")
        args.procedure, args.mode = Procedure.DETECT.value, Mode.DETECT.value
        return
    if args.procedure is None:
        scheme = build_scheme(args.code, args.scheme, args.scheme_seed)
        if scheme.detection:
            args.procedure, args.mode = Procedure.DETECT.value, Mode.DETECT.value
            return
        args.procedure = (Procedure.ALG3 if scheme.pure_type else Procedure.ALG1).value
    args.mode = Mode.CORRECT.value


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = Config(args.config)
    logging_config = config.get_logging_config()
    Logger().setup(
        log_dir=logging_config['log_dir'],
        level=args.log_level or logging_config['level'],
        max_log_files=logging_config['max_log_files'],
        max_log_size_mb=logging_config['max_log_size_mb']
    )
    args.config_obj = config
    try:
        args.out = config.get("out_dir", args.out)
        if hasattr(args, "procedure"):
            resolve_procedure(args)
    except ConfigError as e:
        parser.print_usage(sys.stderr)
        print(f"flagshare: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FlagshareError as e:
        logger.error(str(e))
        return EXIT_FAILURE

    from . import commands
    try:
        return commands.COMMANDS[args.command](args)
    except KeyboardInterrupt:
        logger.critical("Interrupted")
        return 130
    except Exception as e:
        logger.critical(f"Unexpected error in {args.command}: {str(e)}", exc_info=True)
        return EXIT_FAILURE
