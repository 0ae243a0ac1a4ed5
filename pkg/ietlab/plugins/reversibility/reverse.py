from ietlab import app
from ietlab.core import gn, iet
from ietlab.core.gn import GnElement, to_iet
from ietlab.core.iet import period
from ietlab.core.lab import arg
from ietlab.core.perm import parse_permutation
from ietlab.core.revfact import finite_order_reverser
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err
from ietlab.utils.exceptions import ConditionFails, NotAReverser
from ietlab.utils.formatters import format_value, format_workspace


def _pair(args):
    f = args.workspace.value(args.source)
    h = args.workspace.value(args.reverser)
    if isinstance(f, GnElement) and isinstance(h, GnElement) and f.n == h.n:
        return f, h
    return tuple(to_iet(v) if isinstance(v, GnElement) else v for v in (f, h))


def _report_lines(_, report):
    tau = report.reverser_sigma.cycle_string()
    if report.holds:
        lines = [_["tau_header"].format(tau=tau, verdict=_["tau_holds"].format(count=len(report.witnesses)))]
        lines += [_["witness_line"].format(format_value(t)) for t in report.witnesses]
        return lines
    failing = ", ".join(str(o.representative) for o in report.failing_orbits)
    lines = [_["tau_header"].format(tau=tau, verdict=_["tau_fails"].format(orbits=failing))]
    lines += [
        _["orbit_line"].format(orbit=list(o.orbit), case=o.case.value, representative=o.representative)
        for o in report.failing_orbits
    ]
    return lines


def _witnesses(args, witnesses) -> str:
    bindings = {f"t{i}": t for i, t in enumerate(witnesses, start=1)}
    return format_workspace(args.workspace.table, bindings)


@app.command(
    "reverse-check",
    "strong reversers of a G_n element, or whether --reverser H reverses f",
    arg("source", metavar="F"),
    arg("--reverser", metavar="H"),
)
@language
@capture_err
def reverse_check_command(args, _):
    if args.reverser:
        f, h = _pair(args)
        module = gn if isinstance(f, GnElement) else iet
        if not module.is_reversed_by(f, h):
            raise NotAReverser("h o f o h^-1 is not f^-1")
        involution = gn.is_involution(h) if module is gn else iet.compose(h, h).is_identity
        verdict = _["strong_reverser_holds"] if involution else _["reverser_holds"]
        return app.reply(args, verdict, "involution" if involution else "reverser")

    f = args.workspace.gn(args.source)
    reports = gn.find_strong_reversers(f)
    if not reports:
        raise ConditionFails(_["no_reversing_involution"].format(f.n))
    lines = [line for report in reports for line in _report_lines(_, report)]
    witnesses = [t for report in reports for t in report.witnesses]
    if not witnesses:
        raise ConditionFails("\n".join([_["not_strongly_reversible"]] + lines))
    app.reply(args, "\n".join(lines), _witnesses(args, witnesses))


@app.command(
    "reverse-construct",
    "involutions with permutation tau reversing a G_n element",
    arg("source", metavar="F"),
    arg("--tau", required=True, help="images such as '4 3 2 1' or cycles such as '(1 4)(2 3)'"),
    arg("--enumerate", action="store_true", help="sample several admissible angles per orbit"),
)
@language
@capture_err
def reverse_construct_command(args, _):
    f = args.workspace.gn(args.source)
    tau = parse_permutation(args.tau, f.n)
    policy = "enumerate" if args.enumerate else "default"
    report = gn.strong_reversibility_by(f, tau, policy)
    if not report.holds:
        failing = ", ".join(str(o.representative) for o in report.failing_orbits)
        raise ConditionFails("\n".join([_["condition_fails"].format(failing)] + _report_lines(_, report)[1:]))
    app.reply(args, "\n".join(_report_lines(_, report)), _witnesses(args, report.witnesses))


@app.command(
    "strengthen",
    "an involution reversing f (G_n), or a reverser of finite order (IET), from a reverser h",
    arg("source", metavar="F"),
    arg("reverser", metavar="H"),
)
@language
@capture_err
def strengthen_command(args, _):
    f, h = _pair(args)
    if isinstance(f, GnElement):
        t = gn.strengthen_reverser(f, h)
        return app.reply(args, _["strengthened"].format(format_value(t)), format_value(t))
    g = finite_order_reverser(f, h, args.budget)
    text = format_value(g)
    app.reply(args, _["finite_order_reverser"].format(order=period(g, args.budget), value=text), text)
