from functools import wraps

import config
from strings import get_string


def language(mystic):
    """Hand the handler the message catalogue of the configured language as ``_``."""

    @wraps(mystic)
    def wrapper(args, **kwargs):
        try:
            _ = get_string(config.LANGUAGE)
        except KeyError:
            _ = get_string("en")
        return mystic(args, _, **kwargs)

    return wrapper
