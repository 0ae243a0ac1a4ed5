from ietlab import app
from ietlab.core import gn, revfact
from ietlab.core.gn import GnElement, to_iet
from ietlab.core.lab import arg
from ietlab.core.scalar import parse_scalar
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err
from ietlab.utils.exceptions import UsageError
from ietlab.utils.formatters import format_value, format_workspace

KINDS = ("two-involutions", "four-involutions", "six-involutions", "two-periodic")


def _reverser(args):
    if not args.reverser:
        raise UsageError(f"factor {args.kind} of an iet needs --reverser H")
    h = args.workspace.value(args.reverser)
    return to_iet(h) if isinstance(h, GnElement) else h


def _six(args):
    if args.p is None or args.delta1 is None or args.r is None:
        raise UsageError("factor six-involutions needs --p, --delta1 and --r")
    delta1 = parse_scalar(args.delta1, args.workspace.table)
    r = parse_scalar(args.r, args.workspace.table)
    if not r.is_rational:
        raise UsageError(f"--r must be rational, got {args.r!r}")
    return revfact.six_involutions_rr(args.p, delta1, r.constant, args.budget)


def _gn_factors(kind, f):
    factors = gn.factor_four_involutions(f) if kind == "four-involutions" else gn.factor_two_periodic(f)
    label = "involutions" if kind == "four-involutions" else "periodic"
    return factors, [gn.order(x) for x in factors], label


def _factors(args):
    if args.kind == "six-involutions":
        result = _six(args)
        return result.factors, result.orders, result.kind
    if args.source is None:
        raise UsageError(f"factor {args.kind} needs an input F")
    value = args.workspace.value(args.source)
    if isinstance(value, GnElement) and args.kind in ("four-involutions", "two-periodic") and not args.reverser:
        return _gn_factors(args.kind, value)
    f = to_iet(value) if isinstance(value, GnElement) else value
    if args.kind == "two-involutions":
        result = revfact.factor_periodic_two_involutions(f, args.budget)
    elif args.kind == "four-involutions":
        result = revfact.factor_reversible_four_involutions(f, _reverser(args), args.budget)
    else:
        result = revfact.factor_two_periodic(f, _reverser(args), args.budget)
    return result.factors, result.orders, result.kind


@app.command(
    "factor",
    "factor into involutions or into maps of finite order",
    arg("kind", choices=KINDS),
    arg("source", nargs="?", metavar="F"),
    arg("--reverser", metavar="H", help="a reverser of f, needed for iet inputs of four-involutions and two-periodic"),
    arg("--p", type=int, help="six-involutions: the first support has length p/(p+1)"),
    arg("--delta1", help="six-involutions: rotation on the first support"),
    arg("--r", help="six-involutions: rational r with delta2 = -p delta1 + r"),
)
@language
@capture_err
def factor_command(args, _):
    factors, orders, kind = _factors(args)
    lines = [_["factor_header"].format(count=len(factors), kind=kind)]
    lines += [
        _["factor_line"].format(index=i, order=k, value=format_value(g))
        for i, (g, k) in enumerate(zip(factors, orders), start=1)
    ]
    bindings = {f"f{i}": g for i, g in enumerate(factors, start=1)}
    app.reply(args, "\n".join(lines), format_workspace(args.workspace.table, bindings))
