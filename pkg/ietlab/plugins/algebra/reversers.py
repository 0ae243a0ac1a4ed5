from ietlab import app
from ietlab.core import gn, iet
from ietlab.core.gn import GnElement, to_iet
from ietlab.core.lab import arg
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err
from ietlab.utils.formatters import format_value


@app.command(
    "reversers",
    "the reverser h o f^s built from a reverser h",
    arg("source", metavar="F"),
    arg("reverser", metavar="H"),
    arg("--power", type=int, default=1, metavar="S"),
)
@language
@capture_err
def reversers_command(args, _):
    f = args.workspace.value(args.source)
    h = args.workspace.value(args.reverser)
    if isinstance(f, GnElement) and isinstance(h, GnElement):
        result = gn.reverser_family(f, h, args.power)
    else:
        f, h = (to_iet(v) if isinstance(v, GnElement) else v for v in (f, h))
        result = iet.reverser_family(f, h, args.power)
    text = format_value(result)
    app.reply(args, _["reverser_family_report"].format(power=args.power, value=text), text)
