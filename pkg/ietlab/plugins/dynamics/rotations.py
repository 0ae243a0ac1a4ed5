from ietlab import app
from ietlab.core.lab import arg
from ietlab.core.pl import normalize_restricted_rotations
from ietlab.core.revfact import rr_non_reversibility_certificate, three_iet_analysis
from ietlab.core.saf import format_wedge
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err
from ietlab.utils.formatters import format_value, format_workspace


@app.command(
    "normalize-rr",
    "conjugate a product of irrational restricted rotations into G_n",
    arg("source", metavar="F"),
)
@language
@capture_err
def normalize_rr_command(args, _):
    R, F = normalize_restricted_rotations(args.workspace.iet(args.source))
    human = "\n".join((
        _["normalize_rr_map"].format(R),
        _["normalize_rr_result"].format(format_value(F)),
    ))
    app.reply(args, human, format_value(F))


@app.command(
    "three-iet",
    "SAF zero against periodicity for an exchange of at most three intervals",
    arg("source", metavar="F"),
)
@language
@capture_err
def three_iet_command(args, _):
    report = three_iet_analysis(args.workspace.iet(args.source), args.budget)
    lines = [_["three_iet_saf"].format(format_wedge(report.saf_value))]
    if not report.saf_zero:
        lines.append(_["three_iet_not_periodic"])
        return app.reply(args, "\n".join(lines))
    if report.anomaly:
        lines.append(_["three_iet_anomaly"].format(args.budget))
        return app.reply(args, "\n".join(lines))
    pair = report.involution_pair
    lines.append(_["three_iet_periodic"].format(report.period))
    lines += [
        _["factor_line"].format(index=i, order=k, value=format_value(g))
        for i, (g, k) in enumerate(zip(pair.factors, pair.orders), start=1)
    ]
    bindings = {f"f{i}": g for i, g in enumerate(pair.factors, start=1)}
    app.reply(args, "\n".join(lines), format_workspace(args.workspace.table, bindings))


@app.command(
    "rr-certificate",
    "non-reversibility certificate for two restricted rotations",
    arg("source", metavar="F"),
)
@language
@capture_err
def rr_certificate_command(args, _):
    certificate = rr_non_reversibility_certificate(args.workspace.iet(args.source))
    app.reply(args, _["rr_certificate"].format(certificate.argument))
