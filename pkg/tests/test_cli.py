"""End-to-end tests of the command-line interface."""

import io
import json
import math

import pytest

from gemax import cli


def run_cli(argv):
    buf = io.StringIO()
    code = cli.main(argv, stdout=buf)
    return code, buf.getvalue()


class TestTabulate:
    def test_gue_n1_is_erf(self):
        # [DERIVED] single-eigenvalue closed form through the full pipeline
        code, out = run_cli(
            ["tabulate", "--ensemble", "gue", "--n", "1",
             "--t-min", "-1", "--t-max", "1", "--steps", "3"]
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "t,F"
        rows = [line.split(",") for line in lines[1:]]
        assert len(rows) == 3
        for t_str, f_str in rows:
            expected = 0.5 * (1.0 + math.erf(float(t_str)))
            assert float(f_str) == pytest.approx(expected, abs=1e-8)

    def test_json_format(self):
        code, out = run_cli(
            ["tabulate", "--ensemble", "gue", "--n", "2",
             "--t-min", "0", "--t-max", "1", "--steps", "2", "--format", "json"]
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["command"] == "tabulate"
        assert len(doc["rows"]) == 2
        assert set(doc["rows"][0]) == {"t", "F"}

    def test_goe_parity_error(self):
        code, _ = run_cli(
            ["tabulate", "--ensemble", "goe", "--n", "3",
             "--t-min", "0", "--t-max", "1", "--steps", "2"]
        )
        assert code == 2

    def test_gse_parity_error(self):
        code, _ = run_cli(
            ["tabulate", "--ensemble", "gse", "--n", "4",
             "--t-min", "0", "--t-max", "1", "--steps", "2"]
        )
        assert code == 2

    def test_out_file(self, tmp_path):
        path = tmp_path / "table.csv"
        code, out = run_cli(
            ["tabulate", "--ensemble", "gue", "--n", "1",
             "--t-min", "0", "--t-max", "1", "--steps", "2", "--out", str(path)]
        )
        assert code == 0
        assert path.read_text().startswith("t,F")


class TestLimit:
    def test_f2_value(self):
        code, out = run_cli(
            ["limit", "--ensemble", "gue", "--s-min", "0", "--s-max", "0", "--steps", "1"]
        )
        assert code == 0
        value = float(out.strip().splitlines()[1].split(",")[1])
        # [DERIVED] F_2(0) from published Tracy-Widom evaluations
        assert value == pytest.approx(0.9693728283552, abs=1e-9)


class TestEdgeworth:
    def test_columns(self):
        code, out = run_cli(
            ["edgeworth", "--ensemble", "gue", "--n", "40",
             "--s-min", "-1", "--s-max", "0", "--steps", "2"]
        )
        assert code == 0
        header = out.strip().splitlines()[0].split(",")
        assert header == [
            "s", "finite_n", "leading", "first_order", "second_order", "combined", "error",
        ]

    def test_window_exit_code(self):
        code, _ = run_cli(
            ["edgeworth", "--ensemble", "gue", "--n", "40",
             "--s-min", "-20", "--s-max", "0", "--steps", "2"]
        )
        assert code == 2


class TestMc:
    def test_ks_row(self):
        code, out = run_cli(
            ["mc", "--ensemble", "gue", "--n", "2", "--samples", "2000", "--seed", "7"]
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "ks,critical_value_1pct,pass"
        ks, crit, verdict = lines[1].split(",")
        assert float(ks) < float(crit)
        assert verdict == "true"

    def test_determinism(self):
        argv = ["mc", "--ensemble", "gue", "--n", "2", "--samples", "1000", "--seed", "3"]
        assert run_cli(argv) == run_cli(argv)

    def test_goe_odd_n_rejected(self):
        code, _ = run_cli(["mc", "--ensemble", "goe", "--n", "3", "--samples", "100"])
        assert code == 2


class TestConvergence:
    def test_rate_near_two_thirds(self):
        # [DERIVED] GUE at the exact edge converges at rate n^{-2/3}
        code, out = run_cli(
            ["convergence", "--ensemble", "gue", "--n-list", "20,40,80",
             "--s-min", "-2", "--s-max", "0", "--steps", "5"]
        )
        assert code == 0
        lines = out.strip().splitlines()
        last_rate = float(lines[-1].split(",")[-1])
        assert last_rate == pytest.approx(-2.0 / 3.0, abs=0.25)

    def test_n_list_validation(self):
        code, _ = run_cli(
            ["convergence", "--ensemble", "gue", "--n-list", "20,40",
             "--s-min", "-1", "--s-max", "0", "--steps", "3"]
        )
        assert code == 2


class TestParser:
    def test_unknown_command(self):
        assert run_cli(["frobnicate"])[0] == 2

    def test_missing_required(self):
        assert run_cli(["tabulate"])[0] == 2
