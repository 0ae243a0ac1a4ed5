from os import getenv

from dotenv import load_dotenv

load_dotenv()


def _int_setting(name: str, default: int, minimum: int = 1) -> int:
    raw = getenv(name, default)
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise SystemExit(f"[ERROR] - {name} must be an integer, got {raw!r}.")
    if value < minimum:
        raise SystemExit(f"[ERROR] - {name} must be at least {minimum}, got {value}.")
    return value


# Default iteration / induction budget of every budgeted operation.
BUDGET = _int_setting("IETLAB_BUDGET", 10000)

# Largest n for which find_strong_reversers enumerates involutions of S_n.
ENUMERATION_BOUND = _int_setting("ENUMERATION_BOUND", 10)

# Word bound of the bounded freeness check.
FREENESS_WORD_BOUND = _int_setting("FREENESS_WORD_BOUND", 5)

WITNESS_LIMIT = _int_setting("WITNESS_LIMIT", 64)

ORDER_SEARCH_LIMIT = _int_setting("ORDER_SEARCH_LIMIT", 64)

NORMALIZE_POWER_LIMIT = _int_setting("NORMALIZE_POWER_LIMIT", 12)

LANGUAGE = getenv("LANGUAGE_CODE", "en")

LOG_LEVEL = getenv("LOG_LEVEL", "WARNING").upper()
if LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
    raise SystemExit(f"[ERROR] - LOG_LEVEL {LOG_LEVEL!r} is not a logging level.")

LOG_FILE = getenv("LOG_FILE", None)

# Witnesses of the symbols used by the builtin example actions.
ALPHA_WITNESS = getenv(
    "ALPHA_WITNESS", "0.41421356237309504880168872420969807856967187537694"
)
BETA_WITNESS = getenv(
    "BETA_WITNESS", "0.30901699437494742410229341718281905886015458990288"
)
