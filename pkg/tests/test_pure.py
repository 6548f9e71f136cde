"""Closed-form model: limits, engineering formulas, derivative and window checks."""

import numpy as np
import pytest

from teleamp import fock, pure
from teleamp.errors import PoleError


class TestGainFidelity:
    @pytest.mark.parametrize("lam,g", [(0.5, 3.0), (0.3, 5.0), (0.7, 2.0)])
    def test_weak_amplitude_limit(self, lam, g):
        assert pure.gain_alpha(lam, g, 0.0) == pytest.approx(lam * g, abs=1e-14)

    @pytest.mark.parametrize("lam,g", [(0.5, 3.0), (0.3, 5.0)])
    def test_strong_amplitude_limit(self, lam, g):
        assert pure.gain_alpha(lam, g, 1e9) == pytest.approx(lam, abs=1e-12)

    def test_gain_golden(self):
        assert pure.gain_alpha(0.5, 4.0, 1.0) == pytest.approx(0.9941176470588236, abs=1e-12)

    def test_fidelity_at_zero_and_unit_gain(self):
        assert pure.fidelity_alpha(0.5, 3.0, 0.0) == pytest.approx(1.0, abs=1e-14)
        for alpha in (0.2, 1.0, 2.0):
            assert pure.fidelity_alpha(0.6, 1.0, alpha) == pytest.approx(1.0, abs=1e-14)

    def test_fidelity_golden_cross_checked_by_fock(self):
        # frozen from the Fock overlap oracle at (lam, g, alpha) = (0.5, 3, 1)
        assert pure.fidelity_alpha(0.5, 3.0, 1.0) == pytest.approx(
            0.7074604637912353, abs=1e-12)

    def test_fidelity_target_reduces_to_printed_form(self):
        lam, g, alpha = 0.45, 2.5, 0.8
        assert pure.fidelity_target(lam, g, alpha, g * lam * alpha) == pytest.approx(
            pure.fidelity_alpha(lam, g, alpha), rel=1e-12)

    def test_variances_match_fock_oracle(self):
        for lam, g, alpha in ((0.5, 3.0, 0.7), (0.474, 4.2, 1.0), (0.3, 2.0, 0.4)):
            out = fock.amplifier_g(fock.coherent_state(lam * alpha, 40), g).normalized()
            m = fock.metrics_fock(out, alpha)
            vx, vp = pure.quad_variances(lam, g, alpha)
            assert vx == pytest.approx(m.vx, abs=1e-8)
            assert vp == pytest.approx(m.vp, abs=1e-8)

    def test_outcome_density_matches_series(self):
        lam, g = 0.474, 3.16
        q, e = lam ** 2, g - 1
        n = np.arange(200, dtype=float)
        cn = e * n + 1
        norm = np.sum(cn ** 2 * q ** n)
        from scipy.special import gammaln
        for alpha in (0.0, 0.3, 1.0):
            z2 = alpha ** 2
            series = np.exp(-z2) * np.sum(
                cn ** 2 * q ** n * np.exp(n * np.log(z2 + 1e-300) - gammaln(n + 1))) \
                / (np.pi * norm)
            assert pure.outcome_density(lam, g, alpha, 0.0) == pytest.approx(
                float(series), rel=1e-12)


class TestResourceEngineering:
    def test_vacuum_ancilla_gives_gain_two(self):
        eng = pure.resource_engineering(0.5, 0.0, 0.95)
        assert eng.g == pytest.approx(2.0, abs=1e-14)
        assert eng.lam_eff == pytest.approx(0.475, abs=1e-15)

    def test_equal_squeezing_gives_unit_gain(self):
        eng = pure.resource_engineering(0.4, 0.4, 0.9)
        assert eng.g == pytest.approx(1.0, abs=1e-14)
        n = np.arange(len(eng.coeffs))
        ratio = eng.coeffs / (eng.lam_eff ** n)
        assert np.max(np.abs(ratio / ratio[0] - 1)) < 1e-12

    def test_geff_golden_pure_value(self):
        # pure-model value at the realistic-model calibration point; it
        # intentionally differs from the noisy-model target 1.5
        eng = pure.resource_engineering(0.5, -0.0150, 0.95)
        assert eng.g_eff == pytest.approx(1.6461744186046494, rel=1e-12)

    def test_coefficients_proportional_to_amplifier_family(self):
        eng = pure.resource_engineering(0.5, -0.013, 0.95, n_coeffs=40)
        n = np.arange(40)
        family = ((eng.g - 1) * n + 1) * eng.lam_eff ** n
        ratio = eng.coeffs / family
        assert np.max(np.abs(ratio / ratio[0] - 1)) < 1e-12

    def test_coefficients_normalized(self):
        eng = pure.resource_engineering(0.5, -0.0141, 0.95, n_coeffs=80)
        assert np.sum(eng.coeffs ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_ps_in_unit_interval_and_small_tap_scaling(self):
        # P_S ~ R^2 x const as the tap weakens at vacuum ancilla
        lam = 0.5
        ratios = []
        for R in (0.1, 0.05, 0.02, 0.01, 0.005):
            eng = pure.resource_engineering(lam, 0.0, 1 - R)
            assert 0 < eng.p_s <= 1
            ratios.append(eng.p_s / R ** 2)
        diffs = np.abs(np.diff(ratios))
        assert np.all(np.diff(diffs) < 0) or np.all(diffs[1:] < diffs[:-1])

    def test_pole_error(self):
        # R lam + T mu = 0 at mu = -R lam / T
        lam, T = 0.5, 0.95
        with pytest.raises(PoleError):
            pure.resource_engineering(lam, -(1 - T) * lam / T, T)


class TestSensitivity:
    def test_vacuum_ancilla_approximation(self):
        s = pure.geff_sensitivity(0.5, 0.0, 0.95)
        assert s.g_eff_approx == pytest.approx(2 * 0.95 * 0.5, abs=1e-14)

    def test_derivative_matches_finite_differences(self):
        # central finite differences of the exact effective gain
        lam, T, mu, h = 0.5, 0.95, -0.01, 1e-6
        s = pure.geff_sensitivity(lam, mu, T)
        fd = (pure.g_eff_exact(lam, mu + h, T) - pure.g_eff_exact(lam, mu - h, T)) / (2 * h)
        assert abs(s.dgeff_dmu - fd) / abs(fd) < 1e-4

    def test_approximation_accuracy_sweep(self):
        # |approx - exact| = |R mu| |1 + T(mu - 2 lam)/(R lam + T mu)|, below
        # 0.01 only while |mu| stays a few permille at this tap ratio
        lam, T = 0.5, 0.95
        errs = []
        for mu in np.linspace(-0.004, 0.004, 11):
            s = pure.geff_sensitivity(lam, mu, T)
            err = abs(s.g_eff_approx - pure.g_eff_exact(lam, mu, T))
            errs.append((abs(mu), err))
            assert err < 0.01
        errs.sort()
        assert errs[0][1] < errs[-1][1]  # error shrinks toward mu = 0

    def test_regime_flags(self):
        assert pure.geff_sensitivity(0.5, -0.01, 0.95).small_r
        assert not pure.geff_sensitivity(0.5, -0.01, 0.7).small_r
        assert not pure.geff_sensitivity(0.5, 0.2, 0.95).small_mu


class TestGnModel:
    def test_zero_cutoff(self):
        m = pure.gn_model(0.5, 3.0, 0)
        assert m.alpha_th == pytest.approx(0.0, abs=1e-14)

    def test_threshold_at_unit_gain_squeezing_product(self):
        m = pure.gn_model(0.5, 2.0, 1)  # g lam = 1
        assert m.alpha_th == pytest.approx(np.sqrt(3.25) - 1.5, abs=1e-12)

    def test_pn_golden_and_normalization(self):
        m = pure.gn_model(0.5, 3.0, 8, n_coeffs=4000)
        assert m.p_n == pytest.approx(2.440012415612475e-05, rel=1e-12)
        assert np.all(m.coeffs >= 0)
        assert np.sum(m.coeffs ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_unit_product_limit_branch(self):
        lam = 0.5
        direct = pure.gn_model(lam, 1 / lam, 5, n_coeffs=2000)
        nearby = pure.gn_model(lam, 1 / lam + 1e-9, 5, n_coeffs=2000)
        assert direct.p_n == pytest.approx(nearby.p_n, rel=1e-6)


class TestWindow:
    def test_vanishing_window_is_linear_in_sigma2(self):
        lam, g, N, alpha = 0.5, 3.0, 8, 0.2
        p1 = pure.ptele_window(lam, g, N, 1e-8, alpha).p_tele
        p2 = pure.ptele_window(lam, g, N, 2e-8, alpha).p_tele
        assert p2 / p1 == pytest.approx(2.0, rel=1e-6)

    def test_subunity_product_always_converges(self):
        for sigma2 in (0.1, 1.0, 10.0):
            assert pure.ptele_window(0.5, 1.5, 4, sigma2, 0.3).converges

    def test_monotone_in_window_width(self):
        lam, g, N, alpha = 0.5, 3.0, 8, 0.2
        vals = [pure.ptele_window(lam, g, N, s2, alpha) for s2 in
                np.linspace(0.01, 0.12, 8)]
        assert all(r.valid for r in vals)
        p = [r.p_tele for r in vals]
        assert np.all(np.diff(p) > 0)

    def test_quadrature_agreement(self):
        # 2D quadrature oracle over the closed-form outcome density
        from numpy.polynomial.legendre import leggauss
        lam, g, N, sigma2, alpha = 0.5, 3.0, 8, 0.08, 0.3
        res = pure.ptele_window(lam, g, N, sigma2, alpha)
        assert res.valid
        L = alpha + 12 * np.sqrt(sigma2)
        x, w = leggauss(140)
        x, w = L * x, L * w
        X, Y = np.meshgrid(x, x, indexing="ij")
        beta = X + 1j * Y
        f = pure.gn_outcome_density(lam, g, N, alpha, beta) \
            * np.exp(-np.abs(beta) ** 2 / sigma2)
        assert float(np.einsum("ij,i,j->", f, w, w)) == pytest.approx(res.p_tele, abs=1e-4)

    def test_divergent_window_flagged(self):
        res = pure.ptele_window(0.8, 3.0, 8, 5.0, 0.1)  # sigma2 beyond 1/(g^2 lam^2 - 1)
        assert not res.converges
