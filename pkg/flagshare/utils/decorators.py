"""
Command decorators for the flagshare CLI.

Available Decorators:
    - logged_command: Logs a command and maps package errors to exit codes
    - certified_scheme_required: Refuses schemes that fail certification

Note:
    Decorated commands take the parsed argparse namespace and return an exit
    status: 0 on success, 1 when the operation failed, 2 for usage and
    validation errors.
"""

import logging
from functools import wraps

from ..decode import Procedure
from ..errors import ConfigError, FlagshareError, UncertifiedSchemeError, UnknownCodeError
from ..schemes import certified

# Initialize logger
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def logged_command(f):
    """
    Log a command's start and end and turn package errors into exit codes.

    Args:
        f (function): Command taking the parsed arguments

    Returns:
        function: Command returning an exit status

    Example:
        @logged_command
        def run(args):
            ...
            return EXIT_OK
    """
    @wraps(f)
    def decorated_function(args, *a, **kw):
        name = getattr(args, "command", f.__name__)
        logger.debug(f"Running {name} with {vars(args)}")
        try:
            status = f(args, *a, **kw)
        except (UnknownCodeError, ConfigError) as e:
            logger.error(f"{name}: {e}")
            return EXIT_USAGE
        except FlagshareError as e:
            logger.error(f"{name} failed: {e}")
            return EXIT_FAILURE
        logger.debug(f"{name} finished with status {status}")
        return status
    return decorated_function


def certified_scheme_required(f):
    """
    Run the command only when ``args.code``/``args.scheme`` certifies under
    ``args.procedure``.

    Raises:
        UncertifiedSchemeError: Through the wrapped call, when certification fails

    Example:
        @logged_command
        @certified_scheme_required
        def run(args):
            ...
    """
    @wraps(f)
    def decorated_function(args, *a, **kw):
        certificate = certified(args.code, args.scheme, Procedure(args.procedure), args.scheme_seed)
        if not certificate.passed:
            logger.warning(
                f"Refusing {certificate.subject}: {len(certificate.bad_locations)} bad locations, "
                f"{len(certificate.collisions)} flag collisions under {certificate.procedure}"
            )
            raise UncertifiedSchemeError(f"{certificate.subject} is not fault-tolerant under {certificate.procedure}")
        logger.debug(f"{certificate.subject} certified under {certificate.procedure}")
        return f(args, *a, **kw)
    return decorated_function
