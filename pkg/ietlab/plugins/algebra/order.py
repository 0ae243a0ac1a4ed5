from ietlab import app
from ietlab.core import gn
from ietlab.core.gn import GnElement
from ietlab.core.iet import NotFoundWithinBudget, period
from ietlab.core.lab import arg
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err


@app.command("order", "order of a G_n element, or the period of an IET", arg("source", metavar="F"))
@language
@capture_err
def order_command(args, _):
    value = args.workspace.value(args.source)
    if isinstance(value, GnElement):
        k = gn.order(value)
        if k is gn.INFINITE:
            return app.reply(args, _["order_infinite"], "infinite")
        return app.reply(args, _["order_finite"].format(k), str(k))
    k = period(value, args.budget)
    if isinstance(k, NotFoundWithinBudget):
        return app.reply(args, _["order_unknown"].format(args.budget), "unknown")
    app.reply(args, _["order_finite"].format(k), str(k))


@app.command(
    "rank",
    "rank over Q of the angles of a G_n element, and its A-morphism",
    arg("source", metavar="F"),
)
@language
@capture_err
def rank_command(args, _):
    f = args.workspace.gn(args.source)
    r = gn.rank(f)
    human = "\n".join((_["rank_report"].format(r), _["a_morphism_report"].format(gn.a_morphism(f))))
    app.reply(args, human, str(r))
