import json

import pytest

from conftest import FOUR_STEP
from provd.cli import EXIT_NO, EXIT_OK, EXIT_USAGE, run_command
from provd.components import load_proof


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps({
        "worlds": ["x", "y"],
        "rel": [["x", "y"]],
        "val": {"x": {}, "y": {"p": False}},
    }))
    return path


@pytest.fixture
def d3_proof_file(tmp_path):
    path = tmp_path / "four.json"
    assert run_command(["prove", "--calculus", "dseq3", "--emit-proof", str(path), FOUR_STEP]) == EXIT_OK
    return path


class TestProve:
    def test_provable(self, capsys):
        assert run_command(["prove", "--calculus", "dseq3", "=d> ~ box bot"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("provable")
        assert "[dbox_s]" in out

    def test_cut_free_dseq2_claims_no_countermodel(self, capsys):
        assert run_command(["prove", "--calculus", "dseq2", FOUR_STEP]) == EXIT_NO
        assert "no countermodel is claimed" in capsys.readouterr().out

    def test_analytic_cuts(self):
        assert run_command(["prove", "--calculus", "dseq2", "--cuts", "semi", FOUR_STEP]) == EXIT_OK

    def test_countermodel_file(self, tmp_path, capsys):
        path = tmp_path / "cm.json"
        code = run_command(["prove", "--calculus", "dseq3", "--emit-countermodel", str(path),
                            "=d> box p -> p"])
        assert code == EXIT_NO
        assert "refuted at 'limit'" in capsys.readouterr().out
        data = json.loads(path.read_text())
        assert data["world"] == "limit" and "tail" in data

    @pytest.mark.parametrize("argv", [
        ["prove", "--calculus", "glseq", "=> p ->"],
        ["prove", "--calculus", "glseq", "p q"],
        ["prove", "--calculus", "sseq", "=d> p"],
        ["prove", "--calculus", "dseq3", "--cuts", "semi", "=d> p"],
        ["prove", "--calculus", "lk", "=> p"],
        ["prove", "=> p"],
    ])
    def test_usage_errors(self, argv):
        assert run_command(argv) == EXIT_USAGE


class TestCheckProof:
    def test_valid(self, d3_proof_file, capsys):
        assert run_command(["check-proof", "--file", str(d3_proof_file)]) == EXIT_OK
        assert capsys.readouterr().out.startswith("valid dseq3 proof")

    def test_cut_policy(self, tmp_path):
        path = tmp_path / "semi.json"
        run_command(["prove", "--calculus", "dseq2", "--cuts", "semi", "--emit-proof", str(path), FOUR_STEP])
        assert run_command(["check-proof", "--file", str(path), "--cuts", "semi"]) == EXIT_OK
        assert run_command(["check-proof", "--file", str(path), "--cuts", "none"]) == EXIT_NO

    def test_missing_file(self, tmp_path):
        assert run_command(["check-proof", "--file", str(tmp_path / "nothing.json")]) == EXIT_USAGE

    def test_unknown_rule(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"calculus": "glseq", "root": {"seq": "p => p", "rule": "magic"}}))
        assert run_command(["check-proof", "--file", str(path)]) == EXIT_USAGE


class TestModelCheck:
    def test_false_at_x(self, model_file, capsys):
        code = run_command(["model-check", "--model", str(model_file), "--world", "x", "--formula", "box p"])
        assert code == EXIT_NO
        assert capsys.readouterr().out.strip() == "false"

    def test_true_at_x(self, model_file):
        code = run_command(["model-check", "--model", str(model_file), "--world", "x",
                            "--formula", "box box p"])
        assert code == EXIT_OK

    def test_eventually_needs_tail(self, model_file):
        code = run_command(["model-check", "--model", str(model_file), "--world", "x",
                            "--formula", "p", "--eventually"])
        assert code == EXIT_USAGE

    def test_tail_model(self, tmp_path):
        path = tmp_path / "tail.json"
        path.write_text(json.dumps({
            "worlds": ["0"], "rel": [], "val": {"0": {"p": True}},
            "tail": {"attach": "0", "prefix": [], "constant": {"p": True}, "limit": {"p": False}},
        }))
        args = ["model-check", "--model", str(path), "--world", "limit"]
        assert run_command(args + ["--formula", "box p"]) == EXIT_OK
        assert run_command(args + ["--formula", "box p -> p"]) == EXIT_NO
        assert run_command(args + ["--formula", "box p -> p", "--eventually"]) == EXIT_OK

    def test_reflexive_model(self, tmp_path):
        path = tmp_path / "loop.json"
        path.write_text(json.dumps({"worlds": ["a"], "rel": [["a", "a"]], "val": {}}))
        code = run_command(["model-check", "--model", str(path), "--world", "a", "--formula", "p"])
        assert code == EXIT_USAGE


class TestTranslate:
    def test_d3_to_d2(self, d3_proof_file, tmp_path):
        out = tmp_path / "d2.json"
        code = run_command(["translate", "--from", "dseq3", "--to", "dseq2",
                            "--file", str(d3_proof_file), "--out", str(out)])
        assert code == EXIT_OK
        assert run_command(["check-proof", "--file", str(out), "--cuts", "semi"]) == EXIT_OK

    def test_d2_to_d3_records_log(self, tmp_path):
        semi = tmp_path / "semi.json"
        run_command(["prove", "--calculus", "dseq2", "--cuts", "semi", "--emit-proof", str(semi), FOUR_STEP])
        out = tmp_path / "d3.json"
        code = run_command(["translate", "--from", "dseq2", "--to", "dseq3",
                            "--file", str(semi), "--out", str(out)])
        assert code == EXIT_OK
        _, calculus, meta = load_proof(out)
        assert calculus.value == "dseq3"
        assert meta["reduced"] + meta["reproved"] >= 1

    def test_to_hilbert(self, d3_proof_file, tmp_path):
        out = tmp_path / "dh3.json"
        code = run_command(["translate", "--from", "dseq3", "--to", "hilbert",
                            "--file", str(d3_proof_file), "--out", str(out)])
        assert code == EXIT_OK
        assert json.loads(out.read_text())["system"] == "dh3"
        assert run_command(["hilbert-check", "--system", "dh3", "--file", str(out)]) == EXIT_OK

    def test_wrong_source(self, d3_proof_file, tmp_path):
        code = run_command(["translate", "--from", "glseq", "--to", "dseq2",
                            "--file", str(d3_proof_file), "--out", str(tmp_path / "x.json")])
        assert code == EXIT_USAGE

    def test_no_such_translation(self, d3_proof_file, tmp_path):
        code = run_command(["translate", "--from", "dseq3", "--to", "glseq",
                            "--file", str(d3_proof_file), "--out", str(tmp_path / "x.json")])
        assert code == EXIT_USAGE


class TestHilbertCheck:
    def test_invalid_line(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"system": "glh", "lines": [
            {"formula": "box p -> p", "just": "axiom", "scheme": "taut"},
        ]}))
        assert run_command(["hilbert-check", "--system", "glh", "--file", str(path)]) == EXIT_NO
        assert "line 0" in capsys.readouterr().out


class TestGLLinAndOmega:
    def test_gllin_invalid(self, capsys):
        assert run_command(["gllin", "valid", "--formula", "box p -> p"]) == EXIT_NO
        out = capsys.readouterr().out
        assert out.startswith("invalid")
        assert json.loads(out[out.index("{"):])["world"] == "0"

    def test_gllin_valid(self):
        assert run_command(["gllin", "valid", "--formula", "box(box p -> p) -> box p", "--bound", "4"]) == EXIT_OK

    def test_s_valid(self):
        assert run_command(["gllin", "s-valid", "--formula", "box p -> p"]) == EXIT_OK

    def test_omega(self):
        assert run_command(["omega", "refute", "--formula", "box p -> p"]) == EXIT_NO
        assert run_command(["omega", "refute", "--formula", "~ box bot", "--prefix-max", "2"]) == EXIT_OK


class TestFuzz:
    def test_report_file(self, tmp_path, capsys):
        out = tmp_path / "fuzz.json"
        csv = tmp_path / "fuzz.csv"
        code = run_command(["fuzz", "--seed", "1", "--iters", "6", "--size", "4",
                            "--out", str(out), "--csv", str(csv)])
        assert code == EXIT_OK
        assert "anomalies=0" in capsys.readouterr().out
        assert json.loads(out.read_text())["summary"]["cases"] == 6
        assert csv.exists()


def test_version():
    assert run_command(["--version"]) == EXIT_OK
