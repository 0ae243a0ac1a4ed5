from ietlab import app
from ietlab.core.decompose import Minimal, Periodic, decompose
from ietlab.core.lab import arg
from ietlab.core.scalar import format_scalar
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err


def _line(_, component) -> str:
    kind, support = component.kind, str(component.support)
    if isinstance(kind, Periodic):
        return _["component_periodic"].format(support=support, period=kind.period)
    if isinstance(kind, Minimal):
        certificate = kind.certificate
        lo, hi = certificate.interval
        return _["component_minimal"].format(
            support=support,
            permutation=certificate.permutation,
            rank=certificate.q_rank_value,
            lo=format_scalar(lo),
            hi=format_scalar(hi),
        )
    return _["component_unresolved"].format(support=support, steps=kind.budget_spent)


@app.command("decompose", "periodic and minimal components of an IET", arg("source", metavar="F"))
@language
@capture_err
def decompose_command(args, _):
    result = decompose(args.workspace.iet(args.source), args.budget)
    human = [_["decompose_header"].format(len(result.components))]
    human += [_line(_, c) for c in result.components]
    canonical = [f"{c.support}\t{c.kind}" for c in result.components]
    app.reply(args, "\n".join(human), "\n".join(canonical))
