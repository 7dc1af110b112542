"""Command-line interface: subcommands, reports, determinism, exit codes."""

import json
import math

import pytest

from ncfourier.cli import run_command


def run_json(capsys, argv):
    code = run_command(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestInfo:
    def test_su2(self, capsys):
        code, doc = run_json(capsys, ["info", "su2"])
        assert code == 0
        assert doc["group"]["dim"] == 3
        assert doc["group"]["rank"] == 1
        halfway = [s for s in doc["jacobian_samples"] if abs(s["r"] - math.pi / 2) < 0.6]
        assert halfway  # samples cover the mid-branch region

    def test_unknown_group_is_operational_error(self, capsys):
        assert run_command(["info", "e8"]) == 2


class TestBch:
    def test_su2_closed_vs_series(self, capsys):
        code, doc = run_json(capsys, ["bch", "su2", "--x", "0.1,0,0", "--y", "0,0.1,0"])
        assert code == 0
        assert doc["closed_form"][0] == pytest.approx(0.099666, abs=1e-6)
        assert doc["discrepancy"] < 1e-10

    def test_series_out_of_domain_reported(self, capsys):
        code, doc = run_json(capsys, ["bch", "su2", "--x", "0.9,0,0", "--y", "0,0.9,0"])
        assert code == 0
        assert doc["series"] is None and doc["series_note"]
        assert doc["closed_form"] is not None


class TestTransform:
    def test_u1_gaussian(self, capsys):
        code, doc = run_json(
            capsys, ["transform", "u1", "--func", "gaussian(1.0)", "--p", "1.0"]
        )
        assert code == 0
        expected = math.sqrt(2 * math.pi) * math.exp(-0.5)
        assert doc["value"]["re"] == pytest.approx(expected, abs=1e-10)

    def test_expression_function(self, capsys):
        code, doc = run_json(
            capsys, ["transform", "u1", "--func", "exp(-x^2/2)", "--p", "0.0"]
        )
        assert code == 0
        assert doc["value"]["re"] == pytest.approx(math.sqrt(2 * math.pi), abs=1e-8)

    def test_coefficient_kind(self, capsys):
        code, doc = run_json(
            capsys,
            ["transform", "su2", "--func", "character(2)", "--p", "0,0,3", "--kind", "coeff"],
        )
        assert code == 0
        assert doc["value"]["re"] == pytest.approx(math.pi**2 / 3, rel=1e-8)

    def test_bad_expression_exit_2(self, capsys):
        assert run_command(["transform", "u1", "--func", "2*+3", "--p", "1.0"]) == 2


class TestCharacter:
    def test_shell_prediction(self, capsys):
        code, doc = run_json(capsys, ["character", "--two-lambda", "2", "--p-norm", "3"])
        assert code == 0
        assert doc["computed"]["re"] == pytest.approx(3.28987, abs=1e-5)
        assert doc["predicted"] == pytest.approx(math.pi**2 / 3)
        assert doc["residual"] < 1e-10

    def test_off_shell(self, capsys):
        code, doc = run_json(capsys, ["character", "--two-lambda", "2", "--p-norm", "5.5"])
        assert code == 0
        assert doc["predicted"] == 0.0
        assert abs(doc["computed"]["re"]) < 1e-10


class TestPoisson:
    def test_u1_gaussian(self, capsys):
        code, doc = run_json(
            capsys, ["poisson", "u1", "--func", "gaussian(1.0)", "--x", "0.3"]
        )
        assert code == 0
        assert doc["residual"] < 1e-10


class TestVerify:
    def test_core_suite_passes(self, capsys):
        code, doc = run_json(capsys, ["verify", "--suite", "core"])
        assert code == 0
        assert doc["version"] == 1
        assert all(c["passed"] for c in doc["cases"])
        for c in doc["cases"]:
            assert (c["residual"] <= c["tolerance"]) == c["passed"]
            assert c["ref"]  # every case explains what identity it checks

    def test_all_suites_pass(self, capsys):
        code, doc = run_json(capsys, ["verify", "--suite", "all"])
        assert code == 0
        ids = [c["id"] for c in doc["cases"]]
        assert len(ids) == len(set(ids))

    def test_deterministic_output(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run_command(["verify", "--suite", "core", "--seed", "7", "--out", str(a)])
        run_command(["verify", "--suite", "core", "--seed", "7", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_csv_format(self, capsys):
        code = run_command(["verify", "--suite", "core", "--format", "csv"])
        out = capsys.readouterr().out
        assert code == 0
        header = out.splitlines()[0].split(",")
        assert header == ["id", "residual", "tolerance", "passed"]

    def test_out_file(self, tmp_path):
        path = tmp_path / "report.json"
        code = run_command(["verify", "--suite", "duflo", "--out", str(path)])
        assert code == 0
        doc = json.loads(path.read_text())
        assert doc["suite"] == "duflo"


class TestExitCodes:
    def test_invalid_subcommand(self):
        assert run_command(["frobnicate"]) == 2

    def test_vector_length_mismatch(self):
        assert run_command(["bch", "su2", "--x", "1,2", "--y", "0,0,0"]) == 2
