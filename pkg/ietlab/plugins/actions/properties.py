from ietlab import app
from ietlab.core.actions import (
    FixedPoint,
    NotFaithful,
    NotMinimalEvidence,
    Unknown,
    bounded_freeness,
    bs_faithfulness,
    minimality_certificate,
)
from ietlab.core.lab import arg
from ietlab.core.scalar import format_scalar
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err
from ietlab.utils.formatters import format_word


@app.command("faithful", "faithfulness of an action of <a, b | b a b^-1 = a^-1>", arg("source", metavar="A"))
@language
@capture_err
def faithful_command(args, _):
    verdict = bs_faithfulness(args.workspace.action(args.source), args.budget)
    if isinstance(verdict, NotFaithful):
        word = format_word(verdict.witness)
        return app.reply(args, _["not_faithful"].format(word), f"not-faithful {word}")
    if isinstance(verdict, Unknown):
        return app.reply(args, _["faithful_unknown"].format(verdict.reason), "unknown")
    app.reply(args, _["faithful"], "faithful")


@app.command(
    "free",
    "search words up to a bound for a fixed point",
    arg("source", metavar="A"),
    arg("--bound", type=int, default=None, metavar="N"),
)
@language
@capture_err
def free_command(args, _):
    verdict = bounded_freeness(args.workspace.action(args.source), args.bound)
    if isinstance(verdict, FixedPoint):
        word, point = format_word(verdict.word), format_scalar(verdict.point)
        return app.reply(args, _["fixed_point"].format(word=word, point=point), f"fixed {word}\t{point}")
    app.reply(args, _["no_fixed_point"].format(verdict.words_checked), f"free {verdict.words_checked}")


@app.command(
    "minimal",
    "minimality certificate of an action by elements of G_n",
    arg("source", metavar="A"),
    arg("--blocks", type=int, default=None, metavar="N", help="n, when the generators are given as iets"),
)
@language
@capture_err
def minimal_command(args, _):
    action = args.workspace.action(args.source)
    verdict = minimality_certificate(action, args.blocks)
    if isinstance(verdict, NotMinimalEvidence):
        lines = [_["not_minimal"].format(verdict.reason)]
        if verdict.invariant is not None:
            lines.append(_["invariant_set"].format(verdict.invariant))
        return app.reply(args, "\n".join(lines), f"not-minimal\t{verdict.invariant or ''}")
    blocks = args.blocks or next(iter(action.gn.values())).n
    lines = [_["minimal_certificate"].format(blocks=blocks, rank=verdict.angle_rank)]
    lines += [
        _["stabilizer_line"].format(word=format_word(w), angle=format_scalar(a))
        for w, a in zip(verdict.stabilizer_generators, verdict.angles)
    ]
    app.reply(args, "\n".join(lines), f"minimal\t{verdict.angle_rank}")
