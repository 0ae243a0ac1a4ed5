from ietlab import app
from ietlab.core.lab import arg
from ietlab.core.saf import format_wedge, machine_form, saf, wedge_normal_form
from ietlab.core.scalar import format_rational
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err


@app.command("saf", "SAF invariant in wedge normal form", arg("source", metavar="F"))
@language
@capture_err
def saf_command(args, _):
    value = saf(args.workspace.iet(args.source))
    basis = wedge_normal_form(value).basis
    # one "u v q" line per nonzero coefficient of u ^ v
    entries = [f"{basis[i]} {basis[j]} {format_rational(q)}" for i, j, q in machine_form(value)]
    app.reply(args, _["saf_report"].format(format_wedge(value)), "\n".join(entries) or "0")
