from ietlab import app
from ietlab.core.actions import BS_RELATION, builtin_examples, example_table, normalize_free_bs_action
from ietlab.core.lab import arg
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err
from ietlab.utils.exceptions import UsageError
from ietlab.utils.formatters import format_value, format_workspace

EXAMPLES = ("bs11_flat", "bs11_minimal", "c1")


@app.command("examples", "print a builtin action file", arg("name", choices=EXAMPLES))
@language
@capture_err
def examples_command(args, _):
    table = example_table()
    action = builtin_examples(table)[args.name]
    text = format_workspace(table, action.gn, action.relations)
    app.reply(args, text, text)


@app.command(
    "normalize-action",
    "conjugate a free action of <a, b | b a b^-1 = a^-1> into G_n",
    arg("source", metavar="A"),
)
@language
@capture_err
def normalize_action_command(args, _):
    action = args.workspace.action(args.source)
    if set(action.names) != {"a", "b"}:
        raise UsageError(f"expected generators a and b, found {', '.join(action.names)}")
    result = normalize_free_bs_action(action.generator("a"), action.generator("b"), args.budget)
    lines = [
        _["normalized_action"].format(power=result.power, map=result.R),
        _["value_report"].format(label="a", value=format_value(result.F)),
        _["value_report"].format(label="b", value=format_value(result.H)),
    ]
    canonical = format_workspace(args.workspace.table, {"a": result.F, "b": result.H}, [BS_RELATION])
    app.reply(args, "\n".join(lines), canonical)
