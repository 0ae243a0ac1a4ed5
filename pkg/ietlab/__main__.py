import importlib
import sys

from ietlab import LOGGER, app
from ietlab.plugins import ALL_MODULES


def load_commands():
    for all_module in ALL_MODULES:
        importlib.import_module("ietlab.plugins" + all_module)
    LOGGER("ietlab.plugins").debug(f"{len(app.handlers)} commands loaded")


def main(argv=None) -> int:
    load_commands()
    return app.run(argv)


if __name__ == "__main__":
    sys.exit(main())
