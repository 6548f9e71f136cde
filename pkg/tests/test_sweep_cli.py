"""Sweep engine, config parsing, CLI surface and deliberate-mutation checks."""

import json
import subprocess
import sys

import numpy as np
import pytest

from teleamp import checks, cli
from teleamp.config import parse_config, params_from_config, sweep_spec_from_config
from teleamp.errors import BracketError, DomainError
from teleamp.params import AmplifierParams
from teleamp.sweep import SweepSpec, rows_to_csv, run_sweep

PHASE_CFG = """
# realistic model fixture
model.kind = phase
params.lam = 0.5
params.mu = -0.0150
params.T = 0.95
params.eta_ab = 0.9
params.eta_cd = 0.9
params.eta_apd = 0.85
sweep.alpha_start = 0.0
sweep.alpha_stop = 1.0
sweep.alpha_count = 5
"""


class TestConfig:
    def test_parse_comments_and_dotted_keys(self):
        cfg = parse_config("a.b = 1  # trailing\n\n# full line\nc = x\n")
        assert cfg == {"a.b": "1", "c": "x"}

    def test_malformed_line_rejected(self):
        with pytest.raises(DomainError):
            parse_config("just a token\n")

    def test_params_geff_shorthand(self):
        p = params_from_config({"params.lam": "0.5", "params.g_eff": "1.5"})
        assert p.g == pytest.approx(3.0)

    def test_sweep_spec(self):
        spec = sweep_spec_from_config(parse_config(PHASE_CFG))
        assert spec.model == "phase" and spec.alpha_count == 5

    def test_domain_validation(self):
        with pytest.raises(DomainError):
            AmplifierParams(lam=1.2)
        with pytest.raises(DomainError):
            AmplifierParams(eta_apd=1.5)


class TestRunSweep:
    def test_csv_deterministic(self):
        spec = sweep_spec_from_config(parse_config(PHASE_CFG))
        a = rows_to_csv(run_sweep(spec))
        b = rows_to_csv(run_sweep(spec))
        assert a == b
        assert a.splitlines()[0].startswith("alpha,gain,fidelity,Vx,Vp,VxVp,P_AB")

    def test_pure_sweep_matches_closed_forms(self):
        from teleamp import pure
        spec = SweepSpec("pure", 0.0, 2.0, 9, AmplifierParams(lam=0.5, g=4.0))
        rows = run_sweep(spec)
        for row in rows:
            assert row["error"] == ""
            assert row["gain"] == pytest.approx(
                pure.gain_alpha(0.5, 4.0, row["alpha"]), abs=1e-14)
            assert row["benchmark_det"] == pytest.approx(
                row["gain"] ** 2 / 2 - 0.25, abs=1e-14)
        assert np.isnan(rows[0]["P_AB"])  # no preparation scheme when g is explicit

    def test_fock_sweep_matches_pure_sweep_in_clean_regime(self):
        params = AmplifierParams(lam=0.5, mu=-0.0141, T=0.95)
        fock_rows = run_sweep(SweepSpec("fock", 0.05, 1.0, 5, params,
                                        fidelity_mode="fixed"))
        pure_rows = run_sweep(SweepSpec("pure", 0.05, 1.0, 5, params,
                                        fidelity_mode="fixed"))
        for fr, pr in zip(fock_rows, pure_rows):
            for col in ("gain", "fidelity", "Vx", "Vp"):
                assert abs(fr[col] - pr[col]) < 1e-6
            assert abs(fr["P_AB"] - pr["P_AB"]) < 1e-8

    def test_row_errors_do_not_stop_the_sweep(self):
        # amplitudes beyond the truncation guard produce per-row errors, not a crash
        params = AmplifierParams(lam=0.5, mu=-0.0141, T=0.95)
        spec = SweepSpec("fock", 0.5, 6.0, 4, params, fock_dim=30)
        rows = run_sweep(spec)
        assert rows[0]["error"] == ""
        assert "TruncationError" in rows[-1]["error"]
        assert len(rows) == 4

    def test_windowed_phase_sweep_probabilities(self):
        params = AmplifierParams(lam=0.5, mu=-0.0179, T=0.95, eta_ab=0.9,
                                 eta_cd=0.9, eta_apd=0.85, sigma2=0.08, k=1.0)
        rows = run_sweep(SweepSpec("phase", 0.0, 0.5, 3, params))
        for row in rows:
            assert row["P_tot"] == pytest.approx(row["P_AB"] * row["P_tele"], rel=1e-10)
            assert 0 < row["P_tele"] < 0.05


class TestMutations:
    def test_flipped_beamsplitter_sign_breaks_the_lock(self):
        res = checks.run_checks("bs-lambda-eff-lock",
                                checks.CheckSettings(bs_sign=-1.0))[0]
        assert not res.passed

    def test_inadequate_truncation_fails_convergence_check(self):
        res = checks.run_checks("fock-truncation-convergence",
                                checks.CheckSettings(fock_dim=8))[0]
        assert not res.passed
        assert "truncation" in res.detail.lower()


class TestCli:
    def test_validate_filter_and_exit_code(self, capsys):
        rc = cli.main(["validate", "--filter", "pure-limits"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "[PASS] pure-limits" in out

    def test_sweep_and_solve_roundtrip(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(PHASE_CFG)
        out = tmp_path / "run.csv"
        assert cli.main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
        header = out.read_text().splitlines()[0]
        assert header.split(",")[0] == "alpha"
        rc = cli.main(["solve-mu", "--config", str(cfg), "--target", "1.5",
                       "--bracket", "-0.022", "-0.001"])
        assert rc == 0
        mu = float(capsys.readouterr().out.strip().splitlines()[-1])
        assert mu == pytest.approx(-0.0150, abs=5e-4)

    def test_solve_mu_bad_bracket_exits_2(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(PHASE_CFG)
        rc = cli.main(["solve-mu", "--config", str(cfg), "--target", "9.0",
                       "--bracket", "-0.01", "-0.001"])
        assert rc == 2
        assert "bracket" in capsys.readouterr().err

    def test_bad_config_exits_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("params.lam = 1.5\n")
        rc = cli.main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "x.csv")])
        assert rc == 2

    def test_validate_json_report(self, tmp_path):
        report = tmp_path / "report.json"
        rc = cli.main(["validate", "--filter", "exponent-roundtrip",
                       "--json", str(report)])
        assert rc == 0
        data = json.loads(report.read_text())
        assert data[0]["name"] == "exponent-roundtrip" and data[0]["passed"]

    def test_figure_emits_panel_csvs(self, tmp_path):
        rc = cli.main(["figure", "--id", "4", "--out-dir", str(tmp_path)])
        assert rc == 0
        for panel in "abcd":
            path = tmp_path / f"fig4_{panel}.csv"
            assert path.exists()
        header = (tmp_path / "fig4_d.csv").read_text().splitlines()[0]
        assert header == "alpha,VxVp_geff15,benchmark_det_geff15,VxVp_geff20,benchmark_det_geff20"

    def test_entrypoint_subprocess(self, tmp_path):
        # the installed console script behaves like the module CLI
        proc = subprocess.run([sys.executable, "-m", "teleamp.cli", "validate",
                               "--filter", "cov-tmsv-physical"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "[PASS] cov-tmsv-physical" in proc.stdout


class TestFigureFixtures:
    def test_fig6_panels_include_probabilities(self, tmp_path):
        from teleamp.figures import run_figure
        paths = run_figure("6", tmp_path)
        names = sorted(p.name for p in paths)
        assert names == [f"fig6_{p}.csv" for p in "abcdef"]
        ptele = (tmp_path / "fig6_e.csv").read_text().splitlines()
        assert ptele[0] == "alpha,P_tele_k1,P_tele_k0"
        # small-alpha success of order a percent for both variants
        first = [float(v) for v in ptele[1].split(",")]
        assert 0.002 <= first[1] <= 0.05 and 0.002 <= first[2] <= 0.05

    def test_fig5_fidelity_trend_in_fixture_output(self, tmp_path):
        from teleamp.figures import run_figure
        run_figure("5", tmp_path)
        lines = (tmp_path / "fig5_b.csv").read_text().splitlines()
        cols = [line.split(",") for line in lines[1:]]
        alphas = np.array([float(c[0]) for c in cols])
        fid = np.array([float(c[1]) for c in cols])
        sel = alphas >= 0.1
        assert np.all(np.diff(fid[sel]) > 0)
