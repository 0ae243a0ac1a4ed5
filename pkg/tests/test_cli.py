import io
from functools import reduce

import pytest

from conftest import WITNESSES
from ietlab.core import gn
from ietlab.core.workspace import Workspace

ALPHA = f"alpha={WITNESSES['alpha']}"
ROTATION = "iet breakpoints= 0, 1 - alpha translations= alpha, alpha - 1"
KERNEL = "gn n=2 sigma=1 2 alpha=alpha, -alpha"


@pytest.fixture
def flat_file(cli, tmp_path):
    code, out, _ = cli("examples", "bs11_flat")
    assert code == 0
    path = tmp_path / "flat.act"
    path.write_text(out, encoding="utf8")
    return path


def test_help(cli):
    code, out, _ = cli("--help")
    assert code == 0
    assert "four-involutions" in out
    assert "Exit codes" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("no-such-command",),
        (),
        ("--budget", "0", "period", ROTATION),
        ("period", "/nonexistent/file.iet"),
        ("--symbol", "alpha", "saf", ROTATION),
        ("saf", "iet breakpoints= 0 translations= 1/2, 0"),
        ("saf", ROTATION),
    ],
)
def test_usage_errors_exit_1(cli, argv):
    code, out, err = cli(*argv)
    assert code == 1
    assert out == ""
    assert err


def test_parse_errors_name_the_position(cli):
    code, _, err = cli("--symbol", ALPHA, "saf", "iet lengths= alpha, 1 - gamma permutation= 2 1")
    assert code == 1
    assert "column" in err


def test_examples_pass_their_relations(cli, flat_file):
    code, out, _ = cli("relations", flat_file)
    assert code == 0
    assert out.strip() == "all relations hold"


def test_relations_read_stdin(cli, flat_file, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(flat_file.read_text(encoding="utf8")))
    assert cli("relations", "-") == (0, "all relations hold\n", "")


def test_failing_relations_are_listed(cli, tmp_path):
    path = tmp_path / "rotation.act"
    path.write_text("a = iet lengths= 1/3, 2/3 permutation= 2 1\nrelation: a^3\nrelation: a\n", encoding="utf8")
    code, out, _ = cli("relations", path)
    assert code == 2
    assert out.splitlines() == ["obstruction (RelationNotSatisfied): 1 of 2 relation(s) fail", "relation a fails"]


def test_flat_example_is_faithful_free_and_not_minimal(cli, flat_file):
    assert cli("faithful", flat_file)[1].strip() == "faithful"
    code, out, _ = cli("free", flat_file, "--bound", 2)
    assert code == 0
    assert out.strip() == "no fixed point for the 24 nontrivial word(s) checked"
    code, out, _ = cli("minimal", flat_file)
    assert code == 0
    assert out.startswith("not minimal")
    assert "invariant set [0, 1/4) ∪ [3/4, 1)" in out


def test_minimal_example(cli, tmp_path):
    path = tmp_path / "minimal.act"
    path.write_text(cli("examples", "bs11_minimal")[1], encoding="utf8")
    code, out, _ = cli("minimal", path)
    assert code == 0
    assert out.startswith("minimal: transitive on 4 blocks")
    code, out, _ = cli("--emit", "canonical", "normalize-action", path)
    assert code == 0
    assert "relation: b a b^-1 a" in out


def test_redeclaring_a_symbol_differently_is_rejected(cli, flat_file):
    code, _, err = cli("--symbol", "alpha=0.5", "relations", flat_file)
    assert code == 1
    assert "declared twice" in err


def test_saf(cli):
    code, out, _ = cli("saf", "iet lengths= 1/3, 2/3 permutation= 2 1")
    assert code == 0
    assert out.strip() == "SAF = 0"
    code, out, _ = cli("--symbol", ALPHA, "saf", ROTATION)
    assert out.strip() == "SAF = (1 ∧ alpha)"
    code, out, _ = cli("--symbol", ALPHA, "--emit", "canonical", "saf", ROTATION)
    assert out.strip() == "1 alpha 1"


def test_eval_and_period(cli):
    code, out, _ = cli("--symbol", ALPHA, "eval", ROTATION, "1/2")
    assert code == 0
    assert out.strip() == "f(1/2) = 1/2 + alpha"
    code, out, _ = cli("period", "iet lengths= 1/3, 2/3 permutation= 2 1")
    assert (code, out.strip()) == (0, "period = 3")


def test_period_not_found_is_an_obstruction(cli):
    code, out, _ = cli("--symbol", ALPHA, "--budget", 50, "period", ROTATION)
    assert code == 2
    assert out.startswith("obstruction (NotPeriodicWithinBudget)")
    assert "budget 50" in out


def test_order_and_rank(cli):
    assert cli("--symbol", ALPHA, "order", KERNEL)[1].strip() == "order = infinite"
    assert cli("order", "gn n=1 sigma=1 alpha=1/3")[1].strip() == "order = 3"
    code, out, _ = cli("--symbol", ALPHA, "rank", KERNEL)
    assert code == 0
    assert out.splitlines()[0] == "rank = 2"


def test_canonical_output_parses_back(cli):
    code, once, _ = cli("--symbol", ALPHA, "--emit", "canonical", "inverse", ROTATION)
    assert code == 0
    _, twice, _ = cli("--symbol", ALPHA, "--emit", "canonical", "inverse", once.strip())
    _, original, _ = cli("--symbol", ALPHA, "--emit", "canonical", "compose", ROTATION)
    assert twice == original


def test_decompose(cli):
    code, out, _ = cli("--symbol", ALPHA, "decompose", ROTATION)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "1 component(s):"
    assert "minimal" in lines[1]


def test_factor_outside_the_kernel_of_a(cli):
    code, out, _ = cli("factor", "four-involutions", "gn n=2 sigma=1 2 alpha=1/8, 0")
    assert code == 2
    assert out.startswith("obstruction (AObstruction)")
    assert "kernel of A" in out


def test_factor_four_involutions(cli, tmp_path):
    code, out, _ = cli("--symbol", ALPHA, "factor", "four-involutions", KERNEL)
    assert code == 0
    assert "involutions" in out.splitlines()[0]
    code, out, _ = cli("--symbol", ALPHA, "--emit", "canonical", "factor", "four-involutions", KERNEL)
    path = tmp_path / "factors.gn"
    path.write_text(out, encoding="utf8")
    workspace = Workspace()
    factors = list(workspace.load(str(path)).bindings.values())
    assert 1 <= len(factors) <= 4
    assert all(gn.is_involution(t) for t in factors)
    assert reduce(gn.compose, factors) == workspace.value(KERNEL)


def test_factor_six_involutions(cli):
    code, out, _ = cli(
        "--symbol", ALPHA, "factor", "six-involutions", "--p", 1, "--delta1", "1/10*alpha", "--r", "1/4"
    )
    assert code == 0
    assert "factor(s)" in out.splitlines()[0]
    assert cli("factor", "six-involutions", "--p", 1)[0] == 1


def test_reverse_check(cli):
    code, out, _ = cli("--symbol", ALPHA, "reverse-check", KERNEL)
    assert code == 0
    assert "strongly reversed" in out
    code, out, _ = cli("--symbol", ALPHA, "reverse-check", "gn n=2 sigma=1 2 alpha=alpha, 0")
    assert code == 2
    assert out.startswith("obstruction (ConditionFails): no reversing involution")
    assert "orbit sum condition fails on the orbit of 1" in out


def test_reverse_construct_reports_the_failing_orbits(cli):
    code, out, _ = cli("--symbol", ALPHA, "reverse-construct", "gn n=2 sigma=1 2 alpha=alpha, 0", "--tau", "2 1")
    assert code == 2
    lines = out.splitlines()
    assert lines[0] == "obstruction (ConditionFails): orbit sum condition fails on the orbit of 1"
    assert lines[1].startswith("  orbit [1, 2]")


def test_reverse_check_with_a_given_reverser(cli):
    code, out, _ = cli("--symbol", ALPHA, "reverse-check", KERNEL, "--reverser", "gn n=2 sigma=2 1 alpha=0, 0")
    assert code == 0
    assert out.strip() == "h is an involution reversing f"
    code, out, _ = cli("--symbol", ALPHA, "reverse-check", KERNEL, "--reverser", "gn n=2 sigma=1 2 alpha=0, 0")
    assert code == 2
    assert "NotAReverser" in out
