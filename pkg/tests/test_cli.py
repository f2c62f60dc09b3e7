"""End-to-end tests for the command-line driver.

Invocations go through cli.main with argv lists; stdout carries the
structured report and stderr carries diagnostics plus the select
verdict token.
"""

import csv
import io
import json
import math
from pathlib import Path

import jsonschema
import pytest

from d2d_secrecy import cli

SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "docs" / "output_schema.json").read_text()
)
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def run_json(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    VALIDATOR.validate(report)
    return code, report, captured.err


def run_csv(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    rows = list(csv.reader(io.StringIO(captured.out)))
    return code, rows[0], rows[1:]


class TestAnalytic:
    def test_guard_zone_values(self, capsys):
        code, report, _ = run_json(
            capsys, ["analytic", "--d", "1", "--r-g", "0"]
        )
        assert code == 0
        assert report["technique"] == "guard-zone"
        assert report["p_active"] == 1.0
        assert report["p_cov"] == pytest.approx(0.1353352832366127, rel=1e-12)
        assert report["p_sec"] == pytest.approx(0.7569815488821163, rel=1e-12)

    def test_noise_split_certain_secrecy(self, capsys):
        code, report, _ = run_json(
            capsys, ["analytic", "--d", "1", "--gamma", "0.5"]
        )
        assert code == 0
        assert report["technique"] == "artificial-noise"
        assert report["p_active"] is None
        assert report["p_sec"] == 1.0

    def test_csv_shape(self, capsys):
        code, header, rows = run_csv(
            capsys, ["analytic", "--d", "1", "--r-g", "0", "--format", "csv"]
        )
        assert code == 0
        assert header == cli.ANALYTIC_HEADER
        assert rows == [["guard-zone", "1", "0.135335", "0.756982"]]

    def test_missing_distance_names_the_flag(self, capsys):
        code = cli.main(["analytic", "--r-g", "1"])
        assert code == 2
        assert "--d" in capsys.readouterr().err

    @pytest.mark.parametrize(
        "extra", [[], ["--r-g", "1", "--gamma", "0.5"]]
    )
    def test_design_must_be_exactly_one(self, capsys, extra):
        assert cli.main(["analytic", "--d", "1", *extra]) == 2
        assert "--r-g or --gamma" in capsys.readouterr().err

    def test_invalid_params_exit_2(self, capsys):
        assert cli.main(["analytic", "--d", "1", "--r-g", "0", "--alpha", "2"]) == 2


class TestOptimize:
    def test_bare_invocation_reproduces_threshold(self, capsys):
        code, report, _ = run_json(capsys, ["optimize"])
        assert code == 0
        assert report["lambda_threshold"] == pytest.approx(0.0378, abs=1e-4)
        assert report["guard_zone"]["r_g_star"] == pytest.approx(0.789, abs=1e-3)
        assert report["artificial_noise"]["gamma_star"] == pytest.approx(
            0.5716, abs=1e-4
        )
        assert report["enhancement_needed"] is True
        assert report["guard_zone"]["p_cov"] is None
        assert report["params"]["d"] is None

    def test_coverage_present_with_distance(self, capsys):
        _, report, _ = run_json(capsys, ["optimize", "--d", "0.6"])
        assert report["guard_zone"]["p_cov"] == pytest.approx(
            0.6345343577418047, rel=1e-9
        )
        assert report["artificial_noise"]["p_cov"] == pytest.approx(
            0.6354251760855749, rel=1e-9
        )

    def test_sparse_field_needs_no_enhancement(self, capsys):
        _, report, _ = run_json(capsys, ["optimize", "--lambda-e", "0.02"])
        assert report["enhancement_needed"] is False
        assert report["guard_zone"]["r_g_star"] == 0.0
        assert report["artificial_noise"]["gamma_star"] == 1.0
        assert report["guard_zone"]["constraint_active"] is False
        assert report["artificial_noise"]["constraint_active"] is False

    def test_empty_field(self, capsys):
        _, report, _ = run_json(capsys, ["optimize", "--lambda-e", "0"])
        assert report["guard_zone"]["r_g_star"] == 0.0
        assert report["artificial_noise"]["gamma_star"] == 1.0
        assert report["guard_zone"]["p_sec"] == 1.0
        assert report["artificial_noise"]["p_sec"] == 1.0


class TestSelect:
    def test_short_link_prefers_noise(self, capsys):
        code, report, err = run_json(capsys, ["select", "--d", "0.3"])
        assert code == 0
        assert report["verdict"] == "artificial-noise"
        assert report["f_value"] < 0
        assert err.strip().splitlines()[-1] == "artificial-noise"

    def test_long_link_prefers_guard_zone(self, capsys):
        code, report, err = run_json(capsys, ["select", "--d", "1.0"])
        assert code == 0
        assert report["verdict"] == "guard-zone"
        assert report["f_value"] > 0
        assert err.strip().splitlines()[-1] == "guard-zone"

    def test_below_threshold_token(self, capsys):
        code, report, err = run_json(
            capsys, ["select", "--d", "1.0", "--lambda-e", "0.01"]
        )
        assert code == 0
        assert report["verdict"] == "no-enhancement-needed"
        assert report["f_value"] is None
        assert err.strip().splitlines()[-1] == "no-enhancement-needed"

    def test_requires_distance(self, capsys):
        assert cli.main(["select"]) == 2
        assert "--d" in capsys.readouterr().err


class TestMcValidate:
    def test_guard_zone_passes(self, capsys):
        code, report, _ = run_json(
            capsys,
            [
                "mc-validate",
                "--d", "0.6",
                "--r-g", "1",
                "--trials", "100000",
                "--seed", "42",
            ],
        )
        assert code == 0
        assert set(report["checks"]) == {"p_active", "p_cov", "p_sec"}
        assert report["all_pass"] is True
        for entry in report["checks"].values():
            assert abs(entry["analytic"] - entry["mc"]) <= 3 * entry["half_width"]

    def test_noise_split_passes(self, capsys):
        code, report, _ = run_json(
            capsys,
            [
                "mc-validate",
                "--d", "0.6",
                "--gamma", "0.5716038134739094",
                "--trials", "100000",
                "--seed", "7",
            ],
        )
        assert code == 0
        assert set(report["checks"]) == {"p_cov", "p_sec"}
        assert report["all_pass"] is True

    def test_null_designs_give_identical_estimates(self, capsys):
        base = ["--d", "0.6", "--trials", "50000", "--seed", "11"]
        _, gz, _ = run_json(capsys, ["mc-validate", *base, "--r-g", "0"])
        _, an, _ = run_json(capsys, ["mc-validate", *base, "--gamma", "1"])
        assert gz["checks"]["p_sec"]["mc"] == an["checks"]["p_sec"]["mc"]
        assert gz["checks"]["p_cov"]["mc"] == an["checks"]["p_cov"]["mc"]

    def test_insufficient_data_partial_report(self, capsys):
        code, report, _ = run_json(
            capsys,
            [
                "mc-validate",
                "--d", "0.6",
                "--r-g", "3",
                "--lambda-e", "1",
                "--trials", "20",
                "--seed", "3",
            ],
        )
        assert code == 4
        gap = report["checks"]["p_sec"]
        assert gap["mc"] is None
        assert gap["pass"] is None
        assert gap["note"] == "no-active-trials"
        assert report["checks"]["p_active"]["mc"] == 0.0

    def test_csv_has_one_row_per_check(self, capsys):
        code, header, rows = run_csv(
            capsys,
            [
                "mc-validate",
                "--d", "0.6",
                "--r-g", "1",
                "--trials", "20000",
                "--seed", "1",
                "--format", "csv",
            ],
        )
        assert code == 0
        assert header == cli.MC_VALIDATE_HEADER
        assert [row[0] for row in rows] == ["p_active", "p_cov", "p_sec"]


class TestSweepD:
    def test_default_grid_shape_and_verdicts(self, capsys):
        code, report, _ = run_json(capsys, ["sweep-d"])
        assert code == 0
        assert len(report["rows"]) == 29
        assert report["rows"][0]["d"] == pytest.approx(0.1)
        assert report["rows"][-1]["d"] == pytest.approx(1.5)
        assert report["d_star"] == pytest.approx(0.6010803446505605, abs=1e-8)
        signs = [row["f_value"] > 0 for row in report["rows"]]
        assert signs == sorted(signs)  # one sign change, low d negative
        for row in report["rows"]:
            expected = "guard-zone" if row["f_value"] > 0 else "artificial-noise"
            assert row["verdict"] == expected

    def test_csv_row_count_matches_grid(self, capsys):
        code, header, rows = run_csv(
            capsys,
            [
                "sweep-d",
                "--grid-start", "0.2",
                "--grid-stop", "0.4",
                "--grid-step", "0.1",
                "--format", "csv",
            ],
        )
        assert code == 0
        assert header == cli.SWEEP_D_HEADER
        assert len(rows) == 3

    def test_mc_columns_populated(self, capsys):
        code, report, _ = run_json(
            capsys,
            [
                "sweep-d",
                "--grid-start", "0.3",
                "--grid-stop", "0.9",
                "--grid-step", "0.3",
                "--mc", "20000",
                "--seed", "5",
            ],
        )
        assert code == 0
        for row in report["rows"]:
            assert row["mc_p_cov_gz"]["n_effective"] == 20000
            assert 0.0 <= row["mc_p_cov_an"]["mean"] <= 1.0
            assert abs(row["p_cov_gz"] - row["mc_p_cov_gz"]["mean"]) <= 4 * row[
                "mc_p_cov_gz"
            ]["half_width"]

    def test_sparse_field_marks_every_row(self, capsys):
        code, report, _ = run_json(
            capsys,
            [
                "sweep-d",
                "--lambda-e", "0",
                "--grid-stop", "0.3",
            ],
        )
        assert code == 0
        assert report["d_star"] is None
        for row in report["rows"]:
            assert row["verdict"] == "no-enhancement-needed"
            assert row["f_value"] is None
            assert row["p_sec_gz"] == 1.0

    def test_rejects_nonpositive_grid(self, capsys):
        assert cli.main(["sweep-d", "--grid-start", "-0.5"]) == 2
        assert cli.main(["sweep-d", "--grid-step", "0"]) == 2
        capsys.readouterr()

    def test_byte_identical_reruns(self, capsys, tmp_path):
        args = [
            "sweep-d",
            "--grid-start", "0.4",
            "--grid-stop", "0.8",
            "--grid-step", "0.2",
            "--mc", "20000",
            "--seed", "9",
            "--format", "csv",
        ]
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        assert cli.main([*args, "--out", str(first)]) == 0
        assert cli.main([*args, "--out", str(second)]) == 0
        capsys.readouterr()
        assert first.read_bytes() == second.read_bytes()
        assert first.read_bytes()  # not empty


class TestSweepLambda:
    def test_critical_distance_curve(self, capsys):
        code, report, _ = run_json(capsys, ["sweep-lambda"])
        assert code == 0
        assert report["monotone_nondecreasing"] is True
        stars = [row["d_star"] for row in report["rows"]]
        assert len(stars) == 9
        assert all(a < b for a, b in zip(stars, stars[1:]))
        assert stars[2] == pytest.approx(0.6010803446505605, abs=1e-8)
        for row in report["rows"]:
            assert row["verdict"] == "ok"
            # at the crossing the two coverage curves meet
            assert row["p_cov_gz"] == pytest.approx(row["p_cov_an"], abs=1e-9)
            assert row["p_sec"] == pytest.approx(0.9, abs=1e-9)

    def test_rows_below_threshold_are_marked(self, capsys):
        code, report, _ = run_json(
            capsys,
            [
                "sweep-lambda",
                "--grid-start", "0.01",
                "--grid-stop", "0.05",
                "--grid-step", "0.02",
            ],
        )
        assert code == 0
        verdicts = [row["verdict"] for row in report["rows"]]
        assert verdicts == ["no-enhancement-needed", "no-enhancement-needed", "ok"]
        below = report["rows"][0]
        assert below["d_star"] is None
        assert below["r_g_star"] == 0.0
        assert below["gamma_star"] == 1.0

    def test_boundary_density_clamps_small(self, capsys):
        lam_star = "0.03784278358522515"
        code, report, _ = run_json(
            capsys,
            [
                "sweep-lambda",
                "--grid-start", lam_star,
                "--grid-stop", lam_star,
                "--grid-step", "1",
            ],
        )
        assert code == 0
        row = report["rows"][0]
        assert row["verdict"] == "ok"
        assert row["d_star"] == pytest.approx(1e-3, abs=1e-6)

    def test_csv_header(self, capsys):
        code, header, rows = run_csv(
            capsys,
            [
                "sweep-lambda",
                "--grid-start", "0.1",
                "--grid-stop", "0.1",
                "--grid-step", "1",
                "--format", "csv",
            ],
        )
        assert code == 0
        assert header == cli.SWEEP_LAMBDA_HEADER
        assert len(rows) == 1


class TestConfigFile:
    def test_file_values_used(self, capsys, tmp_path):
        config = tmp_path / "run.ini"
        config.write_text(
            "[params]\nlambda_e = 0.2\nd = 1.2\n\n[output]\nformat = json\n"
        )
        _, report, _ = run_json(capsys, ["select", "--config", str(config)])
        assert report["params"]["lambda_e"] == 0.2
        assert report["params"]["d"] == 1.2
        assert report["verdict"] == "guard-zone"

    def test_flags_override_file(self, capsys, tmp_path):
        config = tmp_path / "run.ini"
        config.write_text("[params]\nd = 0.3\n")
        _, report, _ = run_json(
            capsys, ["select", "--config", str(config), "--d", "1.0"]
        )
        assert report["params"]["d"] == 1.0
        assert report["verdict"] == "guard-zone"

    def test_mc_section(self, capsys, tmp_path):
        config = tmp_path / "run.ini"
        config.write_text("[mc]\ntrials = 30000\nseed = 12\n")
        _, report, _ = run_json(
            capsys,
            ["mc-validate", "--config", str(config), "--d", "0.6", "--r-g", "1"],
        )
        assert report["trials"] == 30000
        assert report["seed"] == 12

    def test_unknown_key_rejected(self, capsys, tmp_path):
        config = tmp_path / "run.ini"
        config.write_text("[params]\nbogus = 1\n")
        assert cli.main(["select", "--config", str(config), "--d", "1"]) == 2
        assert "bogus" in capsys.readouterr().err

    def test_missing_file_rejected(self, capsys, tmp_path):
        missing = tmp_path / "nope.ini"
        assert cli.main(["select", "--config", str(missing), "--d", "1"]) == 2
        capsys.readouterr()


class TestOutputPlumbing:
    def test_out_file_written(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        code = cli.main(["optimize", "--out", str(out)])
        captured = capsys.readouterr()
        assert code == 0
        assert captured.out == ""
        report = json.loads(out.read_text())
        VALIDATOR.validate(report)
        assert report["command"] == "optimize"

    def test_bad_format_rejected(self, capsys, tmp_path):
        config = tmp_path / "run.ini"
        config.write_text("[output]\nformat = xml\n")
        assert cli.main(["optimize", "--config", str(config)]) == 2
        capsys.readouterr()

    def test_unknown_flag_exits_2(self):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["optimize", "--bogus", "1"])
        assert excinfo.value.code == 2

    def test_csv_probabilities_use_six_significant_digits(self, capsys):
        _, _, rows = run_csv(
            capsys, ["analytic", "--d", "1", "--r-g", "1", "--format", "csv"]
        )
        for cell in rows[0][1:]:
            if cell:
                assert len(cell.replace(".", "").replace("-", "").lstrip("0")) <= 6
