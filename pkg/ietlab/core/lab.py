import argparse
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import config
from strings import helpers

from ..logging import LOGGER
from ..utils.exceptions import UsageError
from .workspace import Workspace

Argument = Tuple[Tuple[str, ...], dict]


def arg(*flags: str, **options) -> Argument:
    return flags, options


def _budget(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"budget must be an integer, not {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Lab:
    """The ``iet-lab`` command registry and dispatcher."""

    def __init__(self):
        LOGGER(__name__).debug("Preparing iet-lab...")
        self.parser = _Parser(
            prog="iet-lab",
            description="Exact computations with interval exchange transformations.",
            epilog=helpers.OVERVIEW,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        self.parser.add_argument(
            "--emit",
            choices=("human", "canonical"),
            default="human",
            help="human readable report or canonical text that parses back",
        )
        self.parser.add_argument(
            "--budget",
            type=_budget,
            default=config.BUDGET,
            help=f"iteration / induction budget (default {config.BUDGET})",
        )
        self.parser.add_argument(
            "--symbol",
            action="append",
            default=[],
            metavar="NAME=WITNESS",
            help="declare a symbol visible in every input",
        )
        self._commands = self.parser.add_subparsers(dest="command", metavar="COMMAND")
        self.handlers: Dict[str, Callable] = {}

    def command(self, name: str, help: str, *arguments: Argument):
        def decorator(func):
            if name in self.handlers:
                raise RuntimeError(f"command {name!r} registered twice")
            sub = self._commands.add_parser(name, help=help, description=help)
            for flags, options in arguments:
                sub.add_argument(*flags, **options)
            sub.set_defaults(handler=func)
            self.handlers[name] = func
            return func

        return decorator

    def reply(self, args, human: str, canonical: Optional[str] = None):
        text = canonical if args.emit == "canonical" and canonical is not None else human
        print(text.rstrip("\n"))

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        argv: List[str] = list(sys.argv[1:] if argv is None else argv)
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as exc:
            # --help
            return exc.code if isinstance(exc.code, int) else 0
        except UsageError as err:
            print(err, file=sys.stderr)
            return 1
        if getattr(args, "handler", None) is None:
            self.parser.print_usage(sys.stderr)
            return 1
        try:
            args.workspace = Workspace.from_declarations(args.symbol)
        except UsageError as err:
            print(f"iet-lab: {err}", file=sys.stderr)
            return 1
        LOGGER(__name__).debug(f"running {args.command} with budget {args.budget}")
        return args.handler(args) or 0
