import json

import pytest

from qaoa_lie import __version__
from qaoa_lie.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestExitCodes:
    @pytest.mark.parametrize("argv,code", [
        (["verify-identities", "--n", "5"], 0),
        (["verify-identities", "--n", "2"], 2),
        (["verify-identities"], 2),
        (["synthesize-cnot", "--n", "6", "--k", "1", "--d", "5"], 0),
        (["synthesize-cnot", "--n", "4", "--k", "2", "--d", "3"], 2),
        (["synthesize-cnot", "--n", "4", "--compile", "--t", "0.05", "--tol", "0.1"], 0),
        (["synthesize-cnot", "--n", "4", "--compile", "--t", "0.2", "--tol", "0.01"], 1),
        (["synthesize-cnot", "--n", "7", "--compile"], 2),
        (["closure-dim", "--n", "2", "--weights", "1,2"], 0),
        (["closure-dim", "--n", "2", "--gamma-ab", "0", "--gamma-ba", "0"], 1),
        (["closure-dim", "--n", "6"], 2),
        (["closure-dim", "--n", "3", "--weights", "1,2"], 2),
        (["cost-report", "--n-min", "4", "--n-max", "10"], 0),
        (["cost-report", "--n-min", "10", "--n-max", "4"], 2),
        (["nonsense"], 2),
    ])
    def test_codes(self, capsys, argv, code):
        assert run(capsys, *argv)[0] == code

    def test_cost_table_file(self, capsys, tmp_path):
        path = tmp_path / "costs.txt"
        path.write_text("YZ_pair = 20\nZY_pair = 20\n")
        code, out, _ = run(capsys, "cost-report", "--n-min", "4", "--n-max", "8",
                           "--cost-table", str(path))
        report = json.loads(out)
        # t = ((0 + 20) + 1 + 20) + 1 = 42 and the slope follows
        assert code == 0 and report["table"]["t"] == 42 and report["table"]["slope"] == 42

    def test_missing_cost_table(self, capsys, tmp_path):
        assert run(capsys, "cost-report", "--cost-table", str(tmp_path / "none"))[0] == 2


class TestOutput:
    def test_json_envelope(self, capsys):
        _, out, _ = run(capsys, "synthesize-cnot", "--n", "5")
        report = json.loads(out)
        assert report["version"] == __version__
        assert report["config"]["n"] == 5
        assert report["report"]["total_alternations"] == 27
        assert report["report"]["target"]["terms"][0]["pauli"] == "Z1 X5"

    def test_deterministic(self, capsys):
        argv = ["synthesize-cnot", "--n", "4", "--compile"]
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    def test_seed_in_report(self, capsys):
        _, out, _ = run(capsys, "verify-identities", "--n", "5", "--seed", "3")
        report = json.loads(out)
        assert report["config"]["seed"] == 3
        assert any("seed 3" in c["name"] for c in report["checks"])

    def test_text(self, capsys):
        _, out, _ = run(capsys, "verify-identities", "--n", "4", "--format", "text")
        assert "AMBIGUOUS" in out and "CORRECTED" in out

    def test_closure_basis_dump(self, capsys):
        _, out, _ = run(capsys, "closure-dim", "--n", "1", "--dump-basis")
        assert len(json.loads(out)["closure"]["basis_supports"]) == 3
