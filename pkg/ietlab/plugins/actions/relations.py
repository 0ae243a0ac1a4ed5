from ietlab import app
from ietlab.core.actions import check_relations
from ietlab.core.lab import arg
from ietlab.utils.decorators.language import language
from ietlab.utils.errors import capture_err
from ietlab.utils.exceptions import RelationNotSatisfied
from ietlab.utils.formatters import format_word


@app.command("relations", "check every relation of an action file", arg("source", metavar="A"))
@language
@capture_err
def relations_command(args, _):
    action = args.workspace.action(args.source)
    failing = [w for w, ok in zip(action.relations, check_relations(action)) if not ok]
    if failing:
        lines = [f"{len(failing)} of {len(action.relations)} relation(s) fail"]
        lines += [_["relation_fails"].format(format_word(w)) for w in failing]
        raise RelationNotSatisfied("\n".join(lines))
    app.reply(args, _["relations_hold"], "ok")
