import json

import pytest
from click.testing import CliRunner

from cli import main
from routes import handle_command


def _payload(result):
    line = next(line for line in result.output.splitlines() if line.startswith("{"))
    return json.loads(line)


@pytest.fixture
def invoke(monkeypatch):
    for key in ("BOX_BOUND", "PELL_BOUND", "WORKERS", "VERBOSE"):
        monkeypatch.delenv(f"UNILAB_{key}", raising=False)
    runner = CliRunner()

    def run(*args, env=None):
        return runner.invoke(main, list(args), env=env)

    return run


def test_simple_extension_over_z(invoke):
    result = invoke("extend", "--ring", "Z", "--matrix", "15,6;10,14", "--simple", "--json")
    assert result.exit_code == 0
    payload = _payload(result)
    assert payload["schema"] == "1"
    assert payload["status"] == "ok"
    assert payload["outcome"]["det3"] == "1"
    assert payload["outcome"]["simple"] is True


def test_non_unimodular_input_exits_3(invoke):
    result = invoke("extend", "--ring", "Z", "--matrix", "2,4;6,8", "--json")
    assert result.exit_code == 3
    assert _payload(result)["status"] == "error"


def test_full_quadratic_matrix_exits_2(invoke):
    result = invoke("extend", "--ring", "Q[-5]", "--matrix", "3,1-1*w;1+1*w,2", "--simple", "--budget", "2", "--json")
    assert result.exit_code == 2
    payload = _payload(result)
    assert payload["status"] == "unknown"
    assert "fullness_certificate" in payload["note"]


def test_missing_matrix_is_an_input_error(invoke):
    result = invoke("extend", "--ring", "Z", "--json")
    assert result.exit_code == 3


def test_nu_progression(invoke):
    result = invoke("nu", "--ring", "Z", "--matrix", "7,0;0,11", "--bound", "5", "--json")
    assert result.exit_code == 0
    assert _payload(result)["outcome"]["progression"]["set"] == "4Z"


def test_statements_subset(invoke):
    result = invoke("statements", "--ring", "Z/6", "--matrix", "2,3;4,5", "--which", "2,5,10", "--json")
    assert result.exit_code == 0
    statuses = [s["status"] for s in _payload(result)["outcome"]["statements"]]
    assert statuses == ["holds", "holds", "holds"]


def test_lift(invoke):
    result = invoke("lift", "--ring", "Z", "--matrix", "2,1;1,3", "--t", "5", "--steps", "2", "--json")
    assert result.exit_code == 0
    assert _payload(result)["outcome"]["holds"] is True


def test_classify(invoke):
    result = invoke("classify", "--ring", "Z/6", "--classes", "SE2,Z2,U2,V2", "--json")
    assert result.exit_code == 0
    verdicts = _payload(result)["outcome"]["verdicts"]
    assert [v["status"] for v in verdicts] == ["member"] * 4


def test_classify_sweep_prints_csv(invoke):
    result = invoke("classify", "--sweep", "2-3", "--classes", "SE2")
    assert result.exit_code == 0
    assert "ring,class,status,checked,space,counterexample" in result.output


def test_pell(invoke):
    result = invoke("pell", "--ring", "Z", "--matrix", "4,2;2,1", "--json")
    assert result.exit_code == 0
    outcome = _payload(result)["outcome"]
    assert (outcome["e"], outcome["f"]) == ("0", "-1")


def test_witness_tags(invoke):
    result = invoke("witness", "--tag", "th5-8", "--args", "6,5,7,3", "--json")
    assert result.exit_code == 0
    assert _payload(result)["outcome"]["solution"]["t"] == "0"

    result = invoke("witness", "--tag", "C14", "--args", "1,2", "--json")
    assert result.exit_code == 3


def test_companion(invoke):
    result = invoke("companion", "--ring", "Z", "--matrix", "6,-10;0,-15", "--json")
    assert result.exit_code == 0
    outcome = _payload(result)["outcome"]
    assert outcome["matches_universal"] is True
    assert "g_evaluation" in outcome


def test_chain(invoke):
    result = invoke("chain", "--ring", "Z/3", "--json")
    assert result.exit_code == 0
    assert _payload(result)["outcome"]["chain_ok"] is True


def test_verify_paper_subset(invoke):
    result = invoke("verify-paper", "--only", "sec5", "--json")
    assert result.exit_code == 0
    assert _payload(result)["outcome"]["passed"] is True


def test_bad_environment_exits_3(invoke):
    result = invoke("nu", "--ring", "Z", "--matrix", "7,0;0,11", env={"UNILAB_BOX_BOUND": "many"})
    assert result.exit_code == 3


def test_unknown_subcommand_in_router(settings):
    with pytest.raises(ValueError):
        handle_command("factor", {}, settings)


def test_zero_budget_is_not_the_default(invoke):
    result = invoke("nu", "--ring", "Z", "--matrix", "7,0;0,11", "--budget", "0", "--json")
    assert result.exit_code == 0
    outcome = _payload(result)["outcome"]
    assert outcome["bound"] == 0
    assert outcome["values"] == []

    result = invoke("pell", "--ring", "Z", "--matrix", "4,2;2,1", "--bound", "0", "--json")
    assert result.exit_code == 2
    assert _payload(result)["outcome"] == {"found": False, "bound": 0}


@pytest.mark.parametrize(
    "args",
    [
        ("lift", "--ring", "Z", "--matrix", "2,1;1,3", "--t", "5"),
        ("companion", "--ring", "Z", "--matrix", "6,-10;0,-15"),
        ("classify", "--ring", "Z/4", "--classes", "SE2"),
        ("chain", "--ring", "Z/2"),
        ("verify-paper", "--only", "ex11"),
    ],
)
def test_budget_is_rejected_where_nothing_searches(invoke, args):
    result = invoke(*args, "--budget", "3", "--json")
    assert result.exit_code == 3
    payload = _payload(result)
    assert payload["status"] == "error"
    assert "--budget" in payload["error"]
