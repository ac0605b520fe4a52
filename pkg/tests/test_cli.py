"""Command-line surface: exit codes, stream discipline, round-trippable output."""

import csv
import io
import json
from fractions import Fraction

import pytest

from knapgap import KnapsackInstance, gap_exact
from knapgap.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_success(self, capsys):
        code, out, _ = _run(capsys, "frobenius", "--a", "6,9,20")
        assert code == 0
        assert "g = 43" in out

    def test_validation_error_is_2(self, capsys):
        code, _, err = _run(capsys, "frobenius", "--a", "2,4")
        assert code == 2
        assert "condition (ii)" in err

    def test_nonpositive_entry_is_2(self, capsys):
        code, _, err = _run(capsys, "frobenius", "--a", "0,5")
        assert code == 2
        assert "condition (i)" in err

    def test_decimal_cost_rejected(self, capsys):
        code, _, err = _run(capsys, "gap", "--a", "3,5", "--c", "0.5,1")
        assert code == 2
        assert "error:" in err

    def test_guardrail_is_3(self, capsys, monkeypatch):
        monkeypatch.setenv("KNAPGAP_GUARDRAIL_CELLS", "4")
        code, _, err = _run(capsys, "frobenius", "--a", "6,9,20")
        assert code == 3
        assert "KNAPGAP_GUARDRAIL_CELLS" in err

    def test_unknown_subcommand_is_64(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["does-not-exist"])
        assert exc.value.code == 64

    def test_missing_required_flag_is_64(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["frobenius"])
        assert exc.value.code == 64

    def test_no_subcommand_is_64(self, capsys):
        assert run([]) == 64

    def test_bad_epsilon_is_2(self, capsys):
        code, _, err = _run(
            capsys, "tail", "--n", "3", "--t", "100", "--count", "200",
            "--seed", "1", "--epsilon", "3/2",
        )
        assert code == 2


class TestTextOutput:
    def test_frobenius_echoes_config_first(self, capsys):
        _, out, _ = _run(capsys, "frobenius", "--a", "6,9,20")
        lines = out.splitlines()
        assert lines[0] == "a = 6,9,20"
        assert "g = 43" in lines
        assert "covering_radius_simplex = 78" in lines
        assert "covering_radius_integral = 63" in lines

    def test_gap_report(self, capsys):
        _, out, _ = _run(capsys, "gap", "--a", "3,5", "--c", "3,0")
        assert "gap = 12" in out
        assert "witness_b = 12" in out
        assert "tau = 2" in out  # positions are 1-based on the command line

    def test_gap_single_rhs(self, capsys):
        _, out, _ = _run(capsys, "gap", "--a", "3,5", "--c", "3,0", "--b", "12")
        assert "ip = 12" in out
        assert "lp = 0" in out
        assert "gap = 12" in out

    def test_gap_infeasible_rhs(self, capsys):
        _, out, _ = _run(capsys, "gap", "--a", "3,5", "--c", "3,0", "--b", "7")
        assert "infeasible" in out

    def test_bounds(self, capsys):
        _, out, _ = _run(capsys, "bounds", "--a", "3,5", "--c", "3,0")
        assert "schur = 7" in out
        assert "cook = 30" in out
        assert "upper_l1 = 12" in out
        assert "upper_linf = 24" in out
        assert "lower_covering = 12" in out
        assert "all_satisfied = true" in out

    def test_bounds_lower_not_applicable(self, capsys):
        _, out, _ = _run(capsys, "bounds", "--a", "3,5", "--c", "3,5")
        assert "lower_covering = n/a" in out

    def test_group_table(self, capsys):
        _, out, _ = _run(capsys, "group", "--a", "3,5")
        assert "tau = 1" in out
        assert "lattice_gap = 10" in out

    def test_lovasz(self, capsys):
        _, out, _ = _run(capsys, "lovasz", "--n", "5", "--delta", "3", "--beta", "1/2")
        assert "lp_solution = 1/2,1,3/2,2,13/2" in out
        assert "distance = 13/2" in out


class TestJsonOutput:
    def test_gap_json_round_trip(self, capsys):
        _, out, _ = _run(capsys, "gap", "--a", "3,5", "--c", "3,0", "--format", "json")
        doc = json.loads(out)
        assert list(doc)[0] == "config"
        a = tuple(doc["config"]["a"])
        c = tuple(Fraction(x) for x in doc["config"]["c"])
        report = gap_exact(KnapsackInstance(a), c)
        assert Fraction(doc["gap"]) == report.gap
        assert doc["witness_b"] == report.witness_b
        assert doc["tau"] == report.tau + 1

    def test_frobenius_json(self, capsys):
        _, out, _ = _run(capsys, "frobenius", "--a", "6,9,20", "--format", "json")
        doc = json.loads(out)
        assert doc["g"] == 43
        assert doc["covering_radius_simplex"] == 78

    def test_sample_json(self, capsys):
        _, out, _ = _run(
            capsys, "sample", "--n", "2", "--t", "3", "--count", "2",
            "--seed", "1", "--format", "json",
        )
        doc = json.loads(out)
        assert doc["config"]["seed"] == 1
        assert doc["instances"] == [[1, 2], [3, 1]]

    def test_tail_json_summary(self, capsys):
        _, out, _ = _run(
            capsys, "tail", "--n", "3", "--t", "50", "--count", "300",
            "--seed", "9", "--epsilon", "4/5", "--thresholds", "1/4,1/2,1",
            "--format", "json",
        )
        doc = json.loads(out)
        assert doc["alpha_theoretical"] == "5/3"
        assert doc["config"]["epsilon"] == "4/5"
        assert isinstance(doc["fitted_slope"], float)
        # exact and decimal mean columns describe the same number
        mean = doc["empirical_mean"]
        assert float(Fraction(mean["ratio_upper"])) == pytest.approx(
            float(mean["ratio_upper_decimal"]), rel=1e-11
        )


class TestStreamDiscipline:
    def test_sample_csv_stdout_is_pure(self, capsys):
        code, out, err = _run(
            capsys, "sample", "--n", "2", "--t", "2", "--count", "3",
            "--seed", "7", "--format", "csv",
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["n", "T", "seed", "index", "a_1", "a_2"]
        assert rows[1:] == [
            ["2", "2", "7", "0", "1", "2"],
            ["2", "2", "7", "1", "1", "2"],
            ["2", "2", "7", "2", "1", "1"],
        ]
        assert "seed = 7" in err  # config echo lives on stderr for csv

    def test_sample_csv_deterministic(self, capsys):
        args = ("sample", "--n", "3", "--t", "9", "--count", "5", "--seed", "3",
                "--format", "csv")
        _, out1, _ = _run(capsys, *args)
        _, out2, _ = _run(capsys, *args)
        assert out1 == out2


class TestExperimentCommands:
    def test_tail_writes_records_csv(self, capsys, tmp_path):
        target = tmp_path / "records.csv"
        code, out, _ = _run(
            capsys, "tail", "--n", "3", "--t", "50", "--count", "300",
            "--seed", "9", "--epsilon", "4/5", "--thresholds", "1/4,1/2,1",
            "--out", str(target),
        )
        assert code == 0
        rows = list(csv.DictReader(target.open()))
        assert len(rows) == 300
        assert rows[0]["T"] == "50"
        assert "fitted_slope" in out

    def test_tail_insufficient_samples_is_2(self, capsys):
        code, _, err = _run(
            capsys, "tail", "--n", "3", "--t", "100", "--count", "30",
            "--seed", "31", "--epsilon", "4/5", "--thresholds", "1/4,1",
        )
        assert code == 2
        assert "samples" in err

    def test_mean_ladder(self, capsys, tmp_path):
        target = tmp_path / "ladder.csv"
        code, out, _ = _run(
            capsys, "mean", "--n", "3", "--t", "10,20", "--count", "40",
            "--seed", "8", "--epsilon", "4/5", "--out", str(target),
        )
        assert code == 0
        assert "T = 10" in out and "T = 20" in out
        rows = list(csv.DictReader(target.open()))
        assert len(rows) == 80
        assert {row["T"] for row in rows} == {"10", "20"}

    def test_mean_json(self, capsys):
        code, out, _ = _run(
            capsys, "mean", "--n", "3", "--t", "10,20", "--count", "40",
            "--seed", "8", "--epsilon", "4/5", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert [entry["config"]["T"] for entry in doc["summaries"]] == [10, 20]

    def test_jobs_flag_keeps_output_identical(self, capsys):
        base = ("tail", "--n", "3", "--t", "40", "--count", "240", "--seed", "5",
                "--epsilon", "4/5", "--thresholds", "1/4,1/2", "--format", "json")
        _, out1, _ = _run(capsys, *base, "--jobs", "1")
        _, out2, _ = _run(capsys, *base, "--jobs", "3")
        assert out1 == out2
