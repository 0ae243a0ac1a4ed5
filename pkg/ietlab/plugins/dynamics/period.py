from ietlab import app
from ietlab.core.iet import NotFoundWithinBudget, bp_growth, period
from ietlab.core.lab import arg
from ietlab.core.scalar import format_rational, parse_scalar
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err
from ietlab.utils.exceptions import NotPeriodicWithinBudget


@app.command("period", "least k with f^k = id, searched within the budget", arg("source", metavar="F"))
@language
@capture_err
def period_command(args, _):
    k = period(args.workspace.iet(args.source), args.budget)
    if isinstance(k, NotFoundWithinBudget):
        raise NotPeriodicWithinBudget(_["not_periodic"].format(args.budget))
    app.reply(args, _["period_report"].format(k), str(k))


@app.command(
    "bp-growth",
    "break points of f^n met by the orbit of a point",
    arg("source", metavar="F"),
    arg("point", metavar="X"),
    arg("--steps", type=int, default=20, metavar="N"),
)
@language
@capture_err
def bp_growth_command(args, _):
    f = args.workspace.iet(args.source)
    growth = bp_growth(f, parse_scalar(args.point, args.workspace.table), args.steps)
    counts = " ".join(str(c) for c in growth.counts)
    human = "\n".join((
        _["bp_growth_counts"].format(steps=args.steps, counts=counts),
        _["bp_growth_estimate"].format(format_rational(growth.estimate)),
    ))
    app.reply(args, human, f"{counts}\n{format_rational(growth.estimate)}")
