import sys
import traceback
from functools import wraps

from ietlab.logging import LOGGER

from .exceptions import InternalVerificationFailed, Obstruction, UsageError

EXIT_USAGE = 1
EXIT_OBSTRUCTION = 2


def capture_err(func):
    """Map the error hierarchy onto exit codes for one command handler."""

    @wraps(func)
    def capture(args, _, *rest, **kwargs):
        try:
            return func(args, _, *rest, **kwargs)
        except UsageError as err:
            print(_["usage_error"].format(err), file=sys.stderr)
            return EXIT_USAGE
        except Obstruction as err:
            print(_["obstruction"].format(kind=type(err).__name__, reason=err))
            return EXIT_OBSTRUCTION
        except InternalVerificationFailed as err:
            LOGGER(__name__).error(
                f"{args.command}: {err}\n{''.join(traceback.format_exc())}"
            )
            print(_["internal_error"].format(err), file=sys.stderr)
            return EXIT_USAGE
        except Exception:
            LOGGER(__name__).error(
                f"{args.command} crashed:\n{''.join(traceback.format_exc())}"
            )
            raise

    return capture
