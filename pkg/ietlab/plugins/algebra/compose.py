from functools import reduce

from ietlab import app
from ietlab.core import gn, iet
from ietlab.core.gn import GnElement, to_iet
from ietlab.core.lab import arg
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err
from ietlab.utils.formatters import format_value


def _common_form(values):
    """Stay in G_n when every operand is a G_n element with the same n."""
    if all(isinstance(v, GnElement) for v in values) and len({v.n for v in values}) == 1:
        return values, gn.compose
    return [to_iet(v) if isinstance(v, GnElement) else v for v in values], iet.compose


def _show(args, _, label, value):
    app.reply(args, _["value_report"].format(label=label, value=format_value(value)), format_value(value))


@app.command(
    "compose",
    "composition of the inputs, the rightmost applied first",
    arg("sources", nargs="+", metavar="F"),
)
@language
@capture_err
def compose_command(args, _):
    values = [args.workspace.value(source) for source in args.sources]
    values, compose = _common_form(values)
    _show(args, _, " o ".join(f"f{i}" for i in range(1, len(values) + 1)), reduce(compose, values))


@app.command("inverse", "inverse of an IET or G_n element", arg("source", metavar="F"))
@language
@capture_err
def inverse_command(args, _):
    value = args.workspace.value(args.source)
    _show(args, _, "f^-1", value.inverse())


@app.command(
    "power",
    "k-th power, k may be negative",
    arg("source", metavar="F"),
    arg("k", type=int),
)
@language
@capture_err
def power_command(args, _):
    value = args.workspace.value(args.source)
    result = gn.power(value, args.k) if isinstance(value, GnElement) else iet.power(value, args.k)
    _show(args, _, f"f^{args.k}", result)
