"""Truncated-Fock oracle: states, operators, conditioning, teleportation."""

import mpmath
import numpy as np
import pytest

from teleamp import fock, gaussian, pure
from teleamp.errors import DomainError, GridResolutionError, TruncationError
from teleamp.fock import (FockMix, FockVec, amplifier_g, amplifier_gn, apply_ladder,
                          coherent_state, fock_q, metrics_fock,
                          photon_addition_teleport_demo, prepare_resource_fock,
                          teleport_fock, tmsv_state, windowed_teleport_fock)


class TestCoherentState:
    def test_vacuum(self):
        v = coherent_state(0.0, 10)
        assert v.amps[0] == 1.0 and np.all(v.amps[1:] == 0)

    def test_mean_photon_number(self):
        v = coherent_state(0.8, 30)
        n = np.arange(30)
        assert float(np.sum(n * np.abs(v.amps) ** 2)) == pytest.approx(0.64, abs=1e-10)

    def test_against_high_precision_series(self):
        # independent oracle: 50-digit series for the amplitudes
        mpmath.mp.dps = 50
        alpha = mpmath.mpf("1.2")
        ref = np.array([float(mpmath.e ** (-alpha ** 2 / 2) * alpha ** n
                              / mpmath.sqrt(mpmath.factorial(n))) for n in range(40)])
        v = coherent_state(1.2, 40)
        assert abs(np.vdot(ref, v.amps) - 1) < 1e-12

    def test_truncation_guard(self):
        with pytest.raises(TruncationError):
            coherent_state(2.0, 12)


class TestTmsvState:
    def test_zero_squeezing(self):
        v = tmsv_state(0.0, 8)
        assert v.amps[0, 0] == 1.0 and np.sum(np.abs(v.amps)) == 1.0

    def test_norm(self):
        assert abs(tmsv_state(0.5, 30).norm() - 1) < 1e-15

    def test_q_matches_gaussian_q(self):
        # cross-module oracle: sampled Husimi Q against the covariance form
        v = tmsv_state(0.5, 30)
        exp = gaussian.QExponent.from_cov(gaussian.tmsv_covariance(0.5))
        rng = np.random.default_rng(2)
        for _ in range(10):
            wa, wb = (complex(*rng.normal(0, 0.8, 2)) for _ in range(2))
            assert fock_q(v, (wa, wb)) == pytest.approx(exp.q_value((wa, wb)), abs=1e-8)

    def test_truncation_guard(self):
        with pytest.raises(TruncationError):
            tmsv_state(0.8, 12)


class TestLadder:
    def test_annihilate_vacuum_is_zero(self):
        v = FockVec((6,), np.eye(6)[0])
        assert apply_ladder(v, 0, "annihilate").norm() == 0

    def test_create_then_annihilate_is_number_plus_one(self):
        v = coherent_state(0.7, 30)
        w = apply_ladder(apply_ladder(v, 0, "create"), 0, "annihilate")
        n = np.arange(30)
        assert np.allclose(w.amps[:-1], ((n + 1) * v.amps)[:-1], atol=1e-12)

    def test_coherent_is_annihilation_eigenstate(self):
        v = coherent_state(0.9, 30)
        w = apply_ladder(v, 0, "annihilate")
        assert np.max(np.abs(w.amps - 0.9 * v.amps)) < 1e-10

    def test_create_on_saturated_truncation_raises(self):
        v = FockVec((4,), np.full(4, 0.5))
        with pytest.raises(TruncationError):
            apply_ladder(v, 0, "create")


class TestAmplifiers:
    def test_weak_coherent_gain_two(self):
        # (n+1) on |0> + a|1> doubles the single-photon amplitude
        v = FockVec((8,), np.array([1, 0.1, 0, 0, 0, 0, 0, 0], dtype=complex))
        out = amplifier_g(v, 2.0)
        assert out.amps[0] == 1.0 and out.amps[1] == pytest.approx(0.2)

    def test_unit_gain_is_identity(self):
        v = coherent_state(0.5, 20)
        assert np.allclose(amplifier_g(v, 1.0).amps, v.amps)

    def test_gn_multipliers(self):
        v = FockVec((6,), np.ones(6, dtype=complex) / np.sqrt(6))
        out = amplifier_gn(v, 2.0, 3)
        expected = np.array([1 / 8, 2 / 8, 4 / 8, 1, 1, 1]) / np.sqrt(6)
        assert np.allclose(out.amps, expected)

    def test_gn_small_amplitude_gain_golden(self):
        # frozen from this oracle: gain approaches g with an O(|a|^2/g^N) deficit
        out = amplifier_gn(coherent_state(0.2, 30), 1.5, 3)
        m = metrics_fock(out.normalized(), 0.2)
        assert m.gain == pytest.approx(1.4999439189159118, abs=1e-12)


class TestPrepareResource:
    def test_single_subtraction_coefficients(self):
        # mu = 0 reduces to joint single-photon subtraction: (n+1) lam_eff^n
        mix, p = prepare_resource_fock(0.5, 0.0, 0.95, d=28, d_aux=6)
        diag = np.real(np.diagonal(mix.members[0][1].amps))
        n = np.arange(10)
        expected = (n + 1) * (0.95 * 0.5) ** n
        ratio = diag[:10] / expected
        assert np.max(np.abs(ratio / ratio[0] - 1)) < 1e-12

    def test_pnr_matches_closed_form_engineering(self):
        # compare interior coefficients: the top truncation level differs by
        # construction from the untruncated closed form
        lam, mu, T = 0.5, -0.0141, 0.95
        mix, p = prepare_resource_fock(lam, mu, T, d=32, d_aux=8)
        eng = pure.resource_engineering(lam, mu, T, n_coeffs=30)
        vec = mix.members[0][1]
        assert np.max(np.abs(np.real(np.diagonal(vec.amps))[:30] - eng.coeffs)) < 1e-8
        assert p == pytest.approx(eng.p_s, abs=1e-8)
        off = vec.amps - np.diag(np.diagonal(vec.amps))
        assert np.max(np.abs(off)) < 1e-14

    def test_onoff_close_to_pnr_in_weak_tap_regime(self):
        # frozen oracle value; the two-photon leak caps the fidelity near
        # 1 - 2 R lam^2, and the gap closes as R -> 0 at fixed effective gain
        fids = []
        for R, mu in ((0.005, -0.002), (0.002, -0.0008), (0.001, -0.0004)):
            mix, p = prepare_resource_fock(0.5, mu, 1 - R, d=30, d_aux=8,
                                           detector="onoff")
            eng = pure.resource_engineering(0.5, mu, 1 - R, n_coeffs=30)
            ideal = np.diag(eng.coeffs)
            fids.append(sum(w * abs(np.vdot(ideal, br.amps)) ** 2
                            for w, br in mix.members) / p)
        assert fids[0] == pytest.approx(0.9953698815203681, abs=1e-9)
        assert fids[0] < fids[1] < fids[2]
        assert fids[2] > 0.999

    def test_onoff_weights_sum_to_click_probability(self):
        mix, p = prepare_resource_fock(0.4, -0.01, 0.9, d=24, d_aux=8, detector="onoff")
        assert mix.total_weight == pytest.approx(p, rel=1e-9)

    def test_povm_completeness(self):
        state = fock.premeasurement_state(0.5, -0.015, 0.95, d=28, d_aux=8)
        probs = fock.povm_outcome_probabilities(state)
        assert sum(probs.values()) == pytest.approx(1.0, abs=1e-10)


class TestTeleport:
    def test_tmsv_resource_gives_attenuated_coherent(self):
        lam, alpha = 0.5, 0.8
        res = FockMix.pure(1.0, tmsv_state(lam, 30))
        out, dens = teleport_fock(res, alpha)
        target = coherent_state(lam * alpha, 30)
        assert abs(np.vdot(target.amps, out.members[0][1].amps)) ** 2 > 1 - 1e-12
        expected = (1 - lam ** 2) / np.pi * np.exp(-(1 - lam ** 2) * alpha ** 2)
        assert dens == pytest.approx(expected, rel=1e-10)

    def test_amplifier_resource_prefactor(self):
        # density at the central outcome for the filtered resource
        lam, g, alpha = 0.5, 3.0, 0.6
        res = amplifier_g(tmsv_state(lam, 40), g, mode=1)
        nrm2 = res.norm() ** 2
        out, dens = teleport_fock(FockMix.pure(1.0, res.normalized()), alpha)
        # |G |lam alpha>|^2 * (1-lam^2) e^{-(1-lam^2)|a|^2} / (pi * P_G)
        gvec = amplifier_g(coherent_state(lam * alpha, 40), g)
        expected = (1 - lam ** 2) * np.exp(-(1 - lam ** 2) * alpha ** 2) \
            * gvec.norm() ** 2 / (np.pi * nrm2)
        assert dens == pytest.approx(expected, rel=1e-10)

    def test_truncated_amplifier_faithful_below_threshold(self):
        lam, g, N = 0.5, 3.0, 8
        model = pure.gn_model(lam, g, N, n_coeffs=30)
        res = FockVec((30, 30), np.diag(model.coeffs.astype(complex)))
        mix = FockMix.pure(1.0, res)
        alpha, beta = 0.2, 0.15 + 0.1j
        assert abs(alpha + beta) < model.alpha_th
        out, _ = teleport_fock(mix, alpha, beta, k=0.0)
        target = coherent_state(g * lam * (alpha + beta), 30)
        fid = abs(np.vdot(target.amps, out.members[0][1].amps)) ** 2
        assert fid > 1 - 1e-6

    def test_corrective_displacement_restores_input(self):
        # with k = lam the channel is a pure attenuator for every outcome
        lam, alpha = 0.5, 0.4
        res = FockMix.pure(1.0, tmsv_state(lam, 28))
        for beta in (0.3, -0.2 + 0.5j, 1.0j):
            out, _ = teleport_fock(res, alpha, beta, k=lam)
            target = coherent_state(lam * alpha, 28)
            assert abs(np.vdot(target.amps, out.members[0][1].amps)) ** 2 > 1 - 1e-10


class TestWindowedTeleport:
    def test_zero_window_equals_central_conditioning(self):
        res = FockMix.pure(1.0, tmsv_state(0.5, 28))
        mix0, _ = teleport_fock(res, 0.5)
        mixw, p = windowed_teleport_fock(res, 0.5, 0.0, 0.5)
        assert p == 0.0
        d = np.max(np.abs(mix0.members[0][1].amps - mixw.members[0][1].amps))
        assert d < 1e-6

    def test_ptele_matches_closed_form_inside_validity(self):
        lam, g, N, sigma2, alpha = 0.5, 3.0, 8, 0.08, 0.3
        win = pure.ptele_window(lam, g, N, sigma2, alpha)
        assert win.valid
        model = pure.gn_model(lam, g, N, n_coeffs=28)
        res = FockMix.pure(1.0, FockVec((28, 28), np.diag(model.coeffs.astype(complex))))
        _, p_tele = windowed_teleport_fock(res, alpha, sigma2, k=g * lam,
                                           collect_state=False)
        assert p_tele == pytest.approx(win.p_tele, abs=1e-4)

    def test_grid_resolution_guard(self):
        res = FockMix.pure(1.0, tmsv_state(0.5, 28))
        with pytest.raises(GridResolutionError):
            windowed_teleport_fock(res, 0.3, 0.08, 0.5, n_radial=10)

    def test_lossy_channel_members_all_coherent(self):
        # every accepted outcome yields |lam alpha> before mixing when k = lam
        lam, alpha, sigma2 = 0.5, 0.4, 0.08
        res = FockMix.pure(1.0, tmsv_state(lam, 28))
        mix, _ = windowed_teleport_fock(res, alpha, sigma2, k=lam)
        target = coherent_state(lam * alpha, 28).amps
        worst = min(abs(np.vdot(target, v.amps)) ** 2 for _, v in mix.members)
        assert worst > 1 - 1e-10


class TestMetrics:
    def test_vacuum_variances(self):
        m = metrics_fock(FockVec((10,), np.eye(10)[0]), 0.0, target=0.0)
        assert m.vx == pytest.approx(0.5, abs=1e-12)
        assert m.vp == pytest.approx(0.5, abs=1e-12)
        assert m.vx * m.vp == pytest.approx(0.25, abs=1e-12)

    def test_coherent_gain_and_fidelity(self):
        m = metrics_fock(coherent_state(0.7, 30), 0.7, target=0.7)
        assert m.gain == pytest.approx(1.0, abs=1e-10)
        assert m.fidelity == pytest.approx(1.0, abs=1e-10)

    def test_amplified_state_gain_golden(self):
        # g(alpha) closed form evaluated independently: ~0.9941 at these knobs
        lam, g, alpha = 0.5, 4.0, 1.0
        out = amplifier_g(coherent_state(lam * alpha, 40), g).normalized()
        m = metrics_fock(out, alpha)
        assert m.gain == pytest.approx(pure.gain_alpha(lam, g, alpha), abs=1e-10)
        assert m.gain == pytest.approx(0.99411764705882355, abs=1e-8)

    def test_zero_weight_rejected(self):
        with pytest.raises(DomainError):
            metrics_fock(FockMix([]), 0.3)


class TestPhotonAdditionDemo:
    def test_vacuum_gives_single_photon(self):
        out = photon_addition_teleport_demo(0.6, FockVec((40,), np.eye(40)[0]), d=40)
        assert abs(out.amps[1]) == pytest.approx(1.0, abs=1e-12)

    def test_coherent_input_matches_direct_construction(self):
        lam, d = 0.6, 40
        psi = coherent_state(0.5, d)
        out = photon_addition_teleport_demo(lam, psi, d)
        n = np.arange(d, dtype=float)
        target = np.zeros(d, dtype=complex)
        target[1:] = (lam ** n * np.sqrt(n + 1) * psi.amps)[:-1]
        target /= np.linalg.norm(target)
        assert abs(np.vdot(target, out.amps)) ** 2 > 1 - 1e-8

    def test_strong_squeezing_approaches_plain_addition(self):
        # lam -> 1 proxy sweep: overlap with the created state improves
        psi_dim = 220
        psi = coherent_state(0.5, psi_dim)
        created = apply_ladder(psi, 0, "create").normalized()
        fids = []
        for lam in (0.8, 0.9):
            out = photon_addition_teleport_demo(lam, psi, psi_dim)
            fids.append(abs(np.vdot(created.amps, out.amps)) ** 2)
        assert fids[1] > fids[0] > 0.9


class TestTruncationConvergence:
    def test_metrics_stable_under_dimension_growth(self):
        lam, mu, T = 0.5, -0.0141, 0.95
        vals = []
        for d in (30, 35):
            mix, p = prepare_resource_fock(lam, mu, T, d=d, d_aux=8)
            out, dens = teleport_fock(mix, 1.0)
            m = metrics_fock(out, 1.0)
            vals.append(np.array([m.gain, m.fidelity, m.vx, m.vp, p, dens]))
        assert np.max(np.abs(vals[1] - vals[0])) < 1e-6
