from ietlab import app
from ietlab.core.lab import arg
from ietlab.core.scalar import format_scalar, parse_scalar
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err


@app.command(
    "eval",
    "image of a point of [0, 1)",
    arg("source", metavar="F"),
    arg("point", metavar="X", help="a scalar such as '1/3' or '1 - alpha'"),
)
@language
@capture_err
def eval_command(args, _):
    f = args.workspace.iet(args.source)
    x = parse_scalar(args.point, args.workspace.table)
    image = format_scalar(f.evaluate(x))
    app.reply(args, _["eval_report"].format(point=format_scalar(x), image=image), image)
