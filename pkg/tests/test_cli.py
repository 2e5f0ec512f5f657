"""Tests for the command-line interface: exit codes, CSV schemas, determinism."""

import dataclasses
import os
import subprocess
import sys

import pytest

from tsm import cli, core
from tests.test_equilibrium import FEASIBLE_PARAMS

FEASIBLE_FLAGS = [
    "--alpha", repr(FEASIBLE_PARAMS.alpha), "--beta", repr(FEASIBLE_PARAMS.beta),
    "--gamma", repr(FEASIBLE_PARAMS.gamma), "--psi", repr(FEASIBLE_PARAMS.psi),
    "--phi", repr(FEASIBLE_PARAMS.phi), "--k1", repr(FEASIBLE_PARAMS.k1),
    "--f_c", repr(FEASIBLE_PARAMS.f_c),
]


def read_csv(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    return header, [dict(zip(header, line.split(","))) for line in lines[1:]]


class TestEquilibriumCommand:
    def test_feasible_fixture(self, tmp_path):
        out = tmp_path / "eq.csv"
        code = cli.main(["equilibrium", *FEASIBLE_FLAGS, "--out", str(out)])
        assert code == 0
        header, [row] = read_csv(out)
        assert header == list(cli.EQUILIBRIUM_COLUMNS)
        assert row["feasible"] == "true"
        assert float(row["residual"]) <= 1e-8
        assert float(row["share_star"]) == pytest.approx(0.30666015686409254,
                                                         abs=1e-9)

    def test_infeasible_exits_2(self, tmp_path):
        code = cli.main([
            "equilibrium", "--alpha", "0.5", "--beta", "1.0", "--gamma", "0.3",
            "--phi", "2.0", "--k1", "0.5", "--f_c", "1.0",
            "--out", str(tmp_path / "eq.csv"),
        ])
        assert code == 2

    def test_invalid_params_exit_1(self, tmp_path):
        code = cli.main([
            "equilibrium", "--alpha", "0.5", "--beta", "3.0", "--gamma", "0.3",
            "--phi", "2.0", "--k1", "0.5", "--f_c", "1.0",
            "--out", str(tmp_path / "eq.csv"),
        ])
        assert code == 1

    def test_missing_params_exit_1(self, tmp_path):
        assert cli.main(["equilibrium", "--alpha", "0.5"]) == 1

    def test_malformed_config_key_exit_1(self, tmp_path):
        cfg = tmp_path / "cfg.yaml"
        cfg.write_text("alhpa: 0.5\n", encoding="utf-8")
        assert cli.main(["equilibrium", "--config", str(cfg)]) == 1

    def test_config_supplies_params(self, tmp_path):
        cfg = tmp_path / "cfg.yaml"
        cfg.write_text(
            "\n".join(f"{k}: {getattr(FEASIBLE_PARAMS, k)!r}"
                      for k in cli.PARAM_KEYS) + "\n",
            encoding="utf-8")
        out = tmp_path / "eq.csv"
        assert cli.main(["equilibrium", "--config", str(cfg),
                         "--out", str(out)]) == 0


class TestScenarioCommand:
    def test_row_shape_and_schema(self, tmp_path):
        out = tmp_path / "sc.csv"
        code = cli.main(["scenario", "--seed", "11", "--n-providers", "3",
                         "--out", str(out)])
        assert code == 0
        header, rows = read_csv(out)
        assert header == list(cli.SCENARIO_COLUMNS)
        assert len(rows) == 9

    def test_payg_rows_have_empty_share(self, tmp_path):
        out = tmp_path / "sc.csv"
        cli.main(["scenario", "--seed", "11", "--n-providers", "4",
                  "--scenario", "pay_as_you_go", "--out", str(out)])
        _, rows = read_csv(out)
        assert rows and all(r["share"] == "" for r in rows)

    def test_same_seed_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        cli.main(["scenario", "--seed", "17", "--n-providers", "5",
                  "--mode", "declared-price", "--out", str(a)])
        cli.main(["scenario", "--seed", "17", "--n-providers", "5",
                  "--mode", "declared-price", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_unknown_scenario_exit_1(self, tmp_path):
        assert cli.main(["scenario", "--scenario", "barter",
                         "--out", str(tmp_path / "x.csv")]) == 1


class TestSweepCommand:
    def test_shape_and_schema(self, tmp_path):
        out = tmp_path / "sw.csv"
        code = cli.main(["sweep", "--axis", "alpha_beta_product", "--seed", "5",
                         "--n-providers", "4", "--out", str(out)])
        assert code == 0
        header, rows = read_csv(out)
        assert header == list(cli.SWEEP_COLUMNS)
        assert len(rows) == 13 * 5 * 3

    def test_fig8_preset_filters_to_two_sided_share_series(self, tmp_path):
        out = tmp_path / "fig8.csv"
        code = cli.main(["sweep", "--preset", "fig8", "--seed", "5",
                         "--n-providers", "4", "--out", str(out)])
        assert code == 0
        _, rows = read_csv(out)
        assert rows and all(r["scenario"] == "two_sided" for r in rows)
        assert all(r["mean_share"] != "" for r in rows if r["feasible_count"] != "0")

    def test_needs_axis_or_preset(self, tmp_path):
        assert cli.main(["sweep", "--out", str(tmp_path / "x.csv")]) == 1

    def test_thread_count_does_not_change_output(self, tmp_path):
        # TSM_THREADS only caps workers; bytes must match exactly
        outputs = []
        for threads in ("1", "3"):
            out = tmp_path / f"sw{threads}.csv"
            env = dict(os.environ, TSM_THREADS=threads)
            proc = subprocess.run(
                [sys.executable, "-m", "tsm.cli", "sweep", "--axis", "k1",
                 "--seed", "23", "--n-providers", "6", "--out", str(out)],
                env=env, capture_output=True, text=True, cwd=str(tmp_path))
            assert proc.returncode == 0, proc.stderr
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]


class TestVerifyCommand:
    def test_small_run_passes(self, capsys):
        code = cli.main(["verify", "--draws", "4", "--grid-n", "400",
                         "--pairs", "40", "--seed", "3"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.count("[PASS]") == 5
        assert "[FAIL]" not in out

    def test_fault_injection_fails_named_property(self, capsys, monkeypatch):
        # a wrong-sign a3 must break the reduced-form consistency property
        original = core.derive_coefficients

        def wrong_sign(params):
            c = original(params)
            return dataclasses.replace(c, a3=-c.a3)

        monkeypatch.setattr("tsm.core.derive_coefficients", wrong_sign)
        code = cli.main(["verify", "--draws", "2", "--grid-n", "400",
                         "--pairs", "30", "--seed", "3"])
        out = capsys.readouterr().out
        assert code == 3
        assert "[FAIL] fixed_point_consistency" in out

    def test_empty_region_reported(self, capsys, monkeypatch):
        monkeypatch.setattr("tsm.cli.draw_reported_equilibria",
                            lambda seed, count, max_draws=0: ([], 100_000))
        code = cli.main(["verify", "--draws", "2", "--pairs", "20",
                         "--seed", "3"])
        out = capsys.readouterr().out
        assert code == 3
        assert "region empty" in out

    def test_bad_draws_exit_1(self):
        assert cli.main(["verify", "--draws", "0"]) == 1


class TestGoldenFiles:
    # frozen outputs pin the CSV schemas and the sampled numbers themselves
    GOLDEN = os.path.join(os.path.dirname(__file__), "data")

    def test_scenario_golden(self, tmp_path):
        out = tmp_path / "sc.csv"
        cli.main(["scenario", "--seed", "11", "--n-providers", "2",
                  "--out", str(out)])
        golden = os.path.join(self.GOLDEN, "golden_scenario_seed11_n2.csv")
        with open(golden, "rb") as fh:
            assert out.read_bytes() == fh.read()

    def test_sweep_golden(self, tmp_path):
        out = tmp_path / "sw.csv"
        cli.main(["sweep", "--axis", "k1", "--seed", "11", "--n-providers", "2",
                  "--scenario", "pay_as_you_go", "--out", str(out)])
        golden = os.path.join(self.GOLDEN, "golden_sweep_k1_seed11_n2.csv")
        with open(golden, "rb") as fh:
            assert out.read_bytes() == fh.read()


class TestConfigLoading:
    def test_rejects_non_mapping(self, tmp_path):
        cfg = tmp_path / "cfg.yaml"
        cfg.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(cli.ConfigError):
            cli.load_config(str(cfg))

    def test_missing_file(self):
        with pytest.raises(cli.ConfigError):
            cli.load_config("/nonexistent/config.yaml")

    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "cfg.yaml"
        cfg.write_text("seed: 1\nn_providers: 3\n", encoding="utf-8")
        out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
        cli.main(["scenario", "--config", str(cfg), "--seed", "2",
                  "--scenario", "pay_as_you_go", "--out", str(out_a)])
        cli.main(["scenario", "--seed", "2", "--n-providers", "3",
                  "--scenario", "pay_as_you_go", "--out", str(out_b)])
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_full_precision_roundtrip(self, tmp_path):
        out = tmp_path / "eq.csv"
        cli.main(["equilibrium", *FEASIBLE_FLAGS, "--out", str(out)])
        _, [row] = read_csv(out)
        # values parse back to the exact doubles that were written
        assert float(row["alpha"]) == FEASIBLE_PARAMS.alpha
        assert float(row["f_c"]) == FEASIBLE_PARAMS.f_c
