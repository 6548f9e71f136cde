"""Cross-model validation suite: structural invariants, oracle agreement and
figure anchors, each as a named machine-checkable item.

Every check returns its worst measured discrepancy next to the tolerance it
was held to, so failures are quantitative. The suite is deterministic
(seeded RNG for the randomized property checks).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import calibrate, fock, gaussian, phasespace, pure
from .errors import TruncationError
from .params import AmplifierParams

FIG5_PARAMS = dict(lam=0.5, T=0.95, eta_ab=0.9, eta_cd=0.9, eta_apd=0.85)
FIG6_K1 = AmplifierParams(mu=-0.0179, sigma2=0.08, k=1.0, **FIG5_PARAMS)
FIG6_K0 = AmplifierParams(lam=0.5, T=0.955, mu=-0.01475, sigma2=0.08, k=0.0,
                          eta_ab=0.9, eta_cd=0.9, eta_apd=0.85)
MU_BRACKET = (-0.022, -0.001)


@dataclass
class CheckSettings:
    """Knobs exposed so deliberate mutations can be exercised in tests."""

    fock_dim: int = 30
    fock_dim_aux: int = 8
    bs_sign: float = 1.0


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "measured": self.measured,
                "tolerance": self.tolerance, "detail": self.detail}


_REGISTRY: dict = {}


def _check(name):
    def wrap(fn):
        _REGISTRY[name] = fn
        return fn
    return wrap


def run_checks(name_filter: str | None = None,
               settings: CheckSettings | None = None) -> list:
    settings = settings or CheckSettings()
    results = []
    for name, fn in _REGISTRY.items():
        if name_filter and name_filter not in name:
            continue
        try:
            results.append(fn(settings))
        except Exception as exc:  # noqa: BLE001 - a crashed check is a failed check
            results.append(CheckResult(name, False, float("nan"), float("nan"),
                                       f"{type(exc).__name__}: {exc}"))
    return results


# ---------------------------------------------------------------------------
# helpers

def _random_cov(rng, n_modes: int = 2) -> gaussian.CovMatrix:
    """Random physical covariance: squeezed pairs, mixing, rotation, loss."""
    data = np.eye(2 * n_modes)
    for m in range(0, n_modes - 1, 2):
        t = gaussian.tmsv_covariance(rng.uniform(-0.7, 0.7))
        data[2 * m:2 * m + 4, 2 * m:2 * m + 4] = t.data
    gamma = gaussian.CovMatrix(n_modes, data)
    for _ in range(2):
        i, j = rng.choice(n_modes, size=2, replace=False)
        gamma = gaussian.beamsplitter(rng.uniform(0.2, 0.9), (i, j), n_modes).apply(gamma)
    phi = rng.uniform(0, 2 * np.pi)
    rot = np.kron(np.eye(n_modes), np.array([[np.cos(phi), np.sin(phi)],
                                             [-np.sin(phi), np.cos(phi)]]))
    gamma = gaussian.SymplecticTransform(rot, np.zeros_like(rot.T @ rot)).apply(gamma)
    return gaussian.lossy_mix(gamma, rng.uniform(0.6, 1.0))


def _gl_grid(L: float, n: int):
    x, w = leggauss(n)
    return L * x, L * w


def _mix_q_batch(mix: phasespace.GaussMixQ, pts: np.ndarray) -> np.ndarray:
    """Vectorized normalized Q of a Gaussian mixture at points (..., 2n)."""
    out = np.zeros(pts.shape[:-1])
    for t, u in zip(mix.terms, mix.rel_weights()):
        dr = pts - t.mean
        quad = np.einsum("...i,ij,...j->...", dr, t.gamma_exp, dr)
        out += u * np.sqrt(np.linalg.det(t.gamma_exp)) / np.pi ** mix.n_modes * np.exp(-quad)
    return out


def _mix_q_integral(mix: phasespace.GaussMixQ, L: float = 6.0, n: int = 48) -> float:
    """Gauss-Legendre integral of the normalized Q over [-L, L]^(2 n_modes)."""
    x, w = _gl_grid(L, n)
    dims = 2 * mix.n_modes
    if dims == 2:
        X, Y = np.meshgrid(x, x, indexing="ij")
        pts = np.stack([X, Y], axis=-1)
        return float(np.einsum("ij,i,j->", _mix_q_batch(mix, pts), w, w))
    total = 0.0
    for i, xi in enumerate(x):  # chunk the 4D grid over the first axis
        A, B, C = np.meshgrid(x, x, x, indexing="ij")
        pts = np.stack([np.full_like(A, xi), A, B, C], axis=-1)
        total += w[i] * np.einsum("abc,a,b,c->", _mix_q_batch(mix, pts), w, w, w)
    return float(total)


def _pure_mu_for(target: float, lam: float, T: float, bracket=MU_BRACKET) -> float:
    spec = calibrate.SolveSpec(target, bracket, tolerance=1e-9)
    return calibrate.solve_mu(spec, AmplifierParams(lam=lam, T=T), model="pure")


def _result(name, measured, tol, detail="") -> CheckResult:
    measured = float(measured)
    return CheckResult(name, bool(measured <= tol), measured, tol, detail)


# ---------------------------------------------------------------------------
# gaussian-core invariants

@_check("cov-tmsv-physical")
def _cov_tmsv_physical(_s):
    worst = 0.0
    for lam in (-0.9, -0.5, 0.0, 0.3, 0.5, 0.8, 0.95):
        nu = gaussian.symplectic_eigenvalues(gaussian.tmsv_covariance(lam).data)
        worst = max(worst, float(np.max(np.abs(nu - 1))))
    return _result("cov-tmsv-physical", worst, 1e-10,
                   "pure two-mode squeezed covariances have unit symplectic spectrum")


@_check("cov-ops-physical")
def _cov_ops_physical(_s):
    worst = 0.0
    cases = [gaussian.lossy_mix(gaussian.tmsv_covariance(0.5), 0.9),
             gaussian.build_effective_cov(AmplifierParams(mu=-0.015, **FIG5_PARAMS)),
             gaussian.build_effective_cov(FIG6_K1)]
    for gamma in cases:
        nu = gaussian.symplectic_eigenvalues(gamma.data)
        worst = max(worst, float(max(0.0, 1 - np.min(nu))))
    return _result("cov-ops-physical", worst, 1e-9,
                   "lossy and effective covariances stay physical")


@_check("exponent-roundtrip")
def _exponent_roundtrip(_s):
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(20):
        gamma = _random_cov(rng)
        exp = gaussian.QExponent.from_cov(gamma)
        back = gaussian.QExponent.from_cov(exp.to_cov())
        worst = max(worst, float(np.max(np.abs(back.data - exp.data))))
    return _result("exponent-roundtrip", worst, 1e-10)


@_check("gauss-weight-quadrature")
def _gauss_weight_quadrature(_s):
    rng = np.random.default_rng(23)
    x, w = _gl_grid(7.0, 90)
    X, Y = np.meshgrid(x, x, indexing="ij")
    worst = 0.0
    for _ in range(20):
        gamma = _random_cov(rng)
        exp = gaussian.QExponent.from_cov(gamma)
        z = complex(rng.normal(0, 0.5), rng.normal(0, 0.5))
        _, weight, _ = gaussian.gauss_condition(exp, z)
        rz = gaussian.phase_vector(z)
        pts = np.stack([np.full_like(X, rz[0]), np.full_like(X, rz[1]), X, Y], axis=-1)
        quad = np.einsum("...i,ij,...j->...", pts, exp.data, pts)
        dens = np.sqrt(np.linalg.det(exp.data)) / np.pi ** 2 * np.exp(-quad)
        val = float(np.einsum("ij,i,j->", dens, w, w))
        worst = max(worst, abs(val - weight))
    return _result("gauss-weight-quadrature", worst, 1e-8,
                   "conditioning weight equals the 2D integral of the joint Q")


@_check("bs-photon-conservation")
def _bs_photon_conservation(_s):
    rng = np.random.default_rng(37)
    worst = 0.0
    for _ in range(10):
        gamma = _random_cov(rng, n_modes=3)
        before = gamma.mean_photons()
        after = gaussian.beamsplitter(rng.uniform(0, 1), (0, 2), 3).apply(gamma).mean_photons()
        worst = max(worst, abs(after - before))
    return _result("bs-photon-conservation", worst, 1e-10)


# ---------------------------------------------------------------------------
# fock-oracle invariants

@_check("bs-lambda-eff-lock")
def _bs_lambda_eff_lock(s):
    lam, mu, T = 0.4, 0.08, 0.9
    mix, _ = fock.prepare_resource_fock(lam, mu, T, d=24, d_aux=s.fock_dim_aux,
                                        bs_sign=s.bs_sign)
    vec = mix.members[0][1]
    diag = np.real(np.diagonal(vec.amps))
    eng = pure.resource_engineering(lam, mu, T, n_coeffs=len(diag))
    closed = eng.coeffs
    overlap = abs(np.dot(diag, closed)) / (np.linalg.norm(diag) * np.linalg.norm(closed))
    return _result("bs-lambda-eff-lock", 1 - overlap, 1e-10,
                   "conditioned Schmidt sequence matches T*lam + R*mu engineering")


@_check("fock-truncation-convergence")
def _fock_truncation_convergence(s):
    lam, mu, T = 0.5, -0.0141, 0.95
    vals = []
    try:
        for d in (s.fock_dim, s.fock_dim + 5):
            mix, p = fock.prepare_resource_fock(lam, mu, T, d=d, d_aux=s.fock_dim_aux)
            out, dens = fock.teleport_fock(mix, 1.0)
            m = fock.metrics_fock(out, 1.0)
            vals.append(np.array([m.gain, m.fidelity, m.vx, m.vp, p, dens]))
    except TruncationError as exc:
        return CheckResult("fock-truncation-convergence", False, float("inf"), 1e-6,
                           f"truncation adequacy violated: {exc}")
    worst = float(np.max(np.abs(vals[1] - vals[0])))
    return _result("fock-truncation-convergence", worst, 1e-6,
                   f"metrics stable under dims {s.fock_dim} -> {s.fock_dim + 5}")


@_check("fock-povm-completeness")
def _fock_povm_completeness(s):
    state = fock.premeasurement_state(0.5, -0.015, 0.95, d=28, d_aux=s.fock_dim_aux)
    probs = fock.povm_outcome_probabilities(state)
    return _result("fock-povm-completeness", abs(sum(probs.values()) - 1), 1e-10,
                   str({k: round(v, 6) for k, v in probs.items()}))


@_check("fock-teleport-linearity")
def _fock_teleport_linearity(s):
    mix, _ = fock.prepare_resource_fock(0.4, -0.01, 0.9, d=24, d_aux=s.fock_dim_aux,
                                        detector="onoff")
    alpha = 0.4
    _, dens = fock.teleport_fock(mix, alpha)
    parts = sum(fock.teleport_fock(fock.FockMix([m]), alpha)[1] for m in mix.members)
    return _result("fock-teleport-linearity", abs(dens - parts), 1e-15,
                   "mixture teleportation is member-wise")


@_check("oracle-pure-agreement")
def _oracle_pure_agreement(s):
    worst = 0.0
    for target in (1.5, 2.0):
        mu = _pure_mu_for(target, 0.5, 0.95)
        eng = pure.resource_engineering(0.5, mu, 0.95, n_coeffs=2)
        mix, p = fock.prepare_resource_fock(0.5, mu, 0.95, d=s.fock_dim,
                                            d_aux=s.fock_dim_aux)
        worst = max(worst, abs(p - eng.p_s))
        for alpha in (1e-6, 0.25, 0.5, 1.0):
            out, dens = fock.teleport_fock(mix, alpha)
            m = fock.metrics_fock(out, alpha, target=eng.g_eff * alpha)
            worst = max(worst,
                        abs(m.gain - pure.gain_alpha(eng.lam_eff, eng.g, alpha)),
                        abs(m.fidelity - pure.fidelity_alpha(eng.lam_eff, eng.g, alpha)),
                        # teleport returns the joint density; condition on preparation
                        abs(dens / p - pure.outcome_density(eng.lam_eff, eng.g, alpha, 0.0)))
    return _result("oracle-pure-agreement", worst, 1e-6,
                   "unit-efficiency PNR pipeline equals the closed forms")


@_check("photon-addition-demo")
def _photon_addition_demo(_s):
    lam, d = 0.6, 40
    worst = 0.0
    for psi in (fock.FockVec((d,), np.eye(d)[0]), fock.coherent_state(0.5, d)):
        out = fock.photon_addition_teleport_demo(lam, psi, d)
        n = np.arange(d, dtype=float)
        target = np.zeros(d, dtype=complex)
        target[1:] = (lam ** n * np.sqrt(n + 1) * psi.amps)[:-1]
        target /= np.linalg.norm(target)
        worst = max(worst, 1 - abs(np.vdot(target, out.amps)) ** 2)
    return _result("photon-addition-demo", worst, 1e-8,
                   "teleported photon addition matches the direct construction")


# ---------------------------------------------------------------------------
# pure-model invariants

@_check("pure-limits")
def _pure_limits(_s):
    worst = 0.0
    for lam, g in ((0.5, 3.0), (0.3, 5.0), (0.7, 2.0)):
        worst = max(worst, abs(pure.gain_alpha(lam, g, 0.0) - lam * g))
        worst = max(worst, abs(pure.gain_alpha(lam, g, 1e9) - lam))
        worst = max(worst, abs(pure.fidelity_alpha(lam, g, 0.0) - 1))
        for alpha in (0.3, 1.0, 2.5):
            worst = max(worst, abs(pure.fidelity_alpha(lam, 1.0, alpha) - 1))
    return _result("pure-limits", worst, 1e-12)


@_check("epr-density-normalization")
def _epr_density_normalization(_s):
    x, w = _gl_grid(9.0, 160)
    X, Y = np.meshgrid(x, x, indexing="ij")
    worst = 0.0
    for lam, g, alpha in ((0.5, 1.0, 0.4), (0.5, 3.0, 0.3), (0.3, 2.0, 0.0)):
        dens = pure.outcome_density(lam, g, alpha, X + 1j * Y)
        worst = max(worst, abs(float(np.einsum("ij,i,j->", dens, w, w)) - 1))
    return _result("epr-density-normalization", worst, 1e-6,
                   "outcome densities integrate to one over the outcome plane")


@_check("window-probability-quadrature")
def _window_probability_quadrature(_s):
    cases = [(0.5, 3.0, 8, 0.08, 0.0), (0.5, 3.0, 8, 0.08, 0.3),
             (0.5, 2.5, 6, 0.05, 0.2), (0.4, 3.0, 10, 0.10, 0.25),
             (0.6, 2.0, 8, 0.06, 0.3)]
    worst = 0.0
    checked = 0
    for lam, g, N, sigma2, alpha in cases:
        res = pure.ptele_window(lam, g, N, sigma2, alpha)
        if not res.valid:
            continue
        checked += 1
        L = abs(alpha) + 12 * np.sqrt(sigma2)
        x, w = _gl_grid(L, 140)
        X, Y = np.meshgrid(x, x, indexing="ij")
        beta = X + 1j * Y
        integrand = pure.gn_outcome_density(lam, g, N, alpha, beta) \
            * np.exp(-np.abs(beta) ** 2 / sigma2)
        quad = float(np.einsum("ij,i,j->", integrand, w, w))
        worst = max(worst, abs(quad - res.p_tele))
    detail = f"{checked}/{len(cases)} parameter points satisfy both validity conditions"
    if checked < 5:
        return CheckResult("window-probability-quadrature", False, float("inf"), 1e-4, detail)
    return _result("window-probability-quadrature", worst, 1e-4, detail)


# ---------------------------------------------------------------------------
# phase-space invariants and figure anchors

@_check("husimi-normalization")
def _husimi_normalization(_s):
    resource, _ = phasespace.resource_q(FIG6_K1)
    worst = abs(_mix_q_integral(resource) - 1)
    mix0, _ = phasespace.teleamp_beta0(resource, 0.7)
    worst = max(worst, abs(_mix_q_integral(mix0, L=8.0, n=140) - 1))
    mixw, _, _ = phasespace.teleamp_windowed(resource, 0.7, 0.08, 1.0)
    worst = max(worst, abs(_mix_q_integral(mixw, L=8.0, n=140) - 1))
    return _result("husimi-normalization", worst, 1e-6,
                   "closed-form weights agree with grid quadrature of Q")


@_check("husimi-nonnegative")
def _husimi_nonnegative(_s):
    grid = np.linspace(-4, 4, 41)
    resource, _ = phasespace.resource_q(FIG6_K1)
    worst = 0.0
    for xa in grid:  # chunk the 4D probe grid
        A, B, C = np.meshgrid(grid, grid, grid, indexing="ij")
        pts = np.stack([np.full_like(A, xa), A, B, C], axis=-1)
        worst = max(worst, -float(np.min(_mix_q_batch(resource, pts))))
    X, Y = np.meshgrid(grid, grid, indexing="ij")
    pts2 = np.stack([X, Y], axis=-1)
    for alpha in (0.0, 0.7):
        mix0, _ = phasespace.teleamp_beta0(resource, alpha)
        worst = max(worst, -float(np.min(_mix_q_batch(mix0, pts2))))
        mixw, _, _ = phasespace.teleamp_windowed(resource, alpha, 0.08, 1.0)
        worst = max(worst, -float(np.min(_mix_q_batch(mixw, pts2))))
    return _result("husimi-nonnegative", max(worst, 0.0), 1e-10,
                   "Husimi mixtures stay non-negative on the probe grid")


@_check("ptot-identity")
def _ptot_identity(_s):
    resource, p_ab = phasespace.resource_q(FIG6_K1)
    worst = 0.0
    for alpha in (0.0, 0.4, 1.0):
        _, p_tot, p_tele = phasespace.teleamp_windowed(resource, alpha, 0.08, 1.0)
        worst = max(worst, abs(p_tot - p_ab * p_tele) / p_tot)
    return _result("ptot-identity", worst, 1e-12,
                   "total success factorizes into preparation times teleportation")


@_check("phase-covariance")
def _phase_covariance(_s):
    resource, _ = phasespace.resource_q(FIG6_K1)
    alpha0 = 0.6
    worst = 0.0
    for phi in (0.7, 2.1, -1.3):
        alpha1 = alpha0 * np.exp(1j * phi)
        for stage in ("beta0", "window"):
            if stage == "beta0":
                mix0, p0 = phasespace.teleamp_beta0(resource, alpha0)
                mix1, p1 = phasespace.teleamp_beta0(resource, alpha1)
            else:
                mix0, p0, _ = phasespace.teleamp_windowed(resource, alpha0, 0.08, 1.0)
                mix1, p1, _ = phasespace.teleamp_windowed(resource, alpha1, 0.08, 1.0)
            m0 = phasespace.metrics_q(mix0, alpha0)
            m1 = phasespace.metrics_q(mix1, alpha1)
            worst = max(worst, abs(m0.gain - m1.gain), abs(m0.fidelity - m1.fidelity),
                        abs(m0.vx + m0.vp - m1.vx - m1.vp), abs(p0 - p1) / p0)
            rot = np.array([[np.cos(phi), -np.sin(phi)], [np.sin(phi), np.cos(phi)]])
            dbar0 = sum(u * t.mean for t, u in zip(mix0.terms, mix0.rel_weights()))
            dbar1 = sum(u * t.mean for t, u in zip(mix1.terms, mix1.rel_weights()))
            worst = max(worst, float(np.max(np.abs(rot @ dbar0 - dbar1))))
    return _result("phase-covariance", worst, 1e-10,
                   "rotating the input rotates the output and fixes all scalars")


@_check("sigma-continuity")
def _sigma_continuity(_s):
    resource, _ = phasespace.resource_q(FIG6_K1)
    worst = 0.0
    for alpha in (0.0, 0.5, 1.0):
        mix0, _ = phasespace.teleamp_beta0(resource, alpha)
        m0 = phasespace.metrics_q(mix0, alpha)
        mixw, _, _ = phasespace.teleamp_windowed(resource, alpha, 1e-6, 1.0)
        mw = phasespace.metrics_q(mixw, alpha)
        worst = max(worst, abs(m0.gain - mw.gain), abs(m0.fidelity - mw.fidelity),
                    abs(m0.vx - mw.vx), abs(m0.vp - mw.vp))
    return _result("sigma-continuity", worst, 1e-4,
                   "vanishing window reproduces exact conditioning")


@_check("fig5-calibration")
def _fig5_calibration(_s):
    worst = 0.0
    detail = []
    for target, expected in ((1.5, -0.0150), (2.0, -0.0197)):
        spec = calibrate.SolveSpec(target, MU_BRACKET, tolerance=1e-6)
        mu = calibrate.solve_mu(spec, AmplifierParams(**FIG5_PARAMS))
        gain_back = calibrate.small_alpha_gain(
            AmplifierParams(mu=mu, **FIG5_PARAMS))
        detail.append(f"g_eff={target}: mu={mu:.5f} (gain back {gain_back:.6f})")
        worst = max(worst, abs(mu - expected) / 0.0005, abs(gain_back - target) / 1e-5)
    return _result("fig5-calibration", worst, 1.0, "; ".join(detail))


@_check("fig5-signatures")
def _fig5_signatures(_s):
    ok = True
    detail = []
    for mu in (-0.0150, -0.0197):
        resource, _ = phasespace.resource_q(AmplifierParams(mu=mu, **FIG5_PARAMS))
        alphas = np.linspace(0.1, 1.0, 10)
        fids, prods = [], []
        for alpha in alphas:
            mix, _ = phasespace.teleamp_beta0(resource, float(alpha))
            m = phasespace.metrics_q(mix, float(alpha))
            if m.violations():
                ok = False
                detail.append(f"metrics violations at alpha={alpha}: {m.violations()}")
            fids.append(m.fidelity)
            prods.append(m.vx * m.vp)
        inc = bool(np.all(np.diff(fids) > 0))
        dec = bool(np.all(np.diff(prods) < 0))
        ok = ok and inc and dec
        detail.append(f"mu={mu}: fidelity increasing={inc}, VxVp decreasing={dec}")
    return CheckResult("fig5-signatures", ok, 0.0 if ok else 1.0, 0.5, "; ".join(detail))


@_check("fig6-anchors")
def _fig6_anchors(_s):
    resource1, p_ab = phasespace.resource_q(FIG6_K1)
    ok = 2.4e-4 <= p_ab <= 3.6e-4
    detail = [f"P_AB={p_ab:.3e}"]
    for alpha in (0.1, 0.3, 0.5):
        _, _, p_tele = phasespace.teleamp_windowed(resource1, alpha, 0.08, 1.0)
        ok = ok and 0.002 <= p_tele <= 0.05
        detail.append(f"P_tele({alpha})={p_tele:.4f}")
    resource0, p_ab0 = phasespace.resource_q(FIG6_K0)
    fmin = np.inf
    for alpha in np.linspace(0.2, 1.0, 9):
        mix1, _, _ = phasespace.teleamp_windowed(resource1, float(alpha), 0.08, 1.0)
        mix0, _, _ = phasespace.teleamp_windowed(resource0, float(alpha), 0.08, 0.0)
        f1 = phasespace.metrics_q(mix1, float(alpha)).fidelity
        f0 = phasespace.metrics_q(mix0, float(alpha)).fidelity
        fmin = min(fmin, f1 - f0)
    ok = ok and fmin >= 0
    detail.append(f"min fidelity advantage of k=1 over k=0: {fmin:.4f}")
    return CheckResult("fig6-anchors", bool(ok), 0.0 if ok else 1.0, 0.5, "; ".join(detail))


@_check("recovery-pure")
def _recovery_pure(_s):
    lam, T, target = 0.25, 0.995, 1.5
    # the pure-model gain has its pole at mu = -R lam / T; stay on its right
    mu_pure = _pure_mu_for(target, lam, T, bracket=(-0.00124, -1e-6))
    eng = pure.resource_engineering(lam, mu_pure, T, n_coeffs=2)
    spec = calibrate.SolveSpec(target, (-0.00124, -1e-6), tolerance=1e-9)
    mu_phase = calibrate.solve_mu(spec, AmplifierParams(lam=lam, T=T))
    resource, _ = phasespace.resource_q(AmplifierParams(lam=lam, mu=mu_phase, T=T))
    worst = 0.0
    for alpha in np.linspace(0, 1, 11):
        mix, _ = phasespace.teleamp_beta0(resource, float(alpha))
        m = phasespace.metrics_q(mix, float(alpha), g_report=target)
        vx, vp = pure.quad_variances(eng.lam_eff, eng.g, alpha)
        worst = max(worst,
                    abs(m.gain - pure.gain_alpha(eng.lam_eff, eng.g, alpha)),
                    abs(m.fidelity - pure.fidelity_alpha(eng.lam_eff, eng.g, alpha)),
                    abs(m.vx - vx), abs(m.vp - vp))
    return _result("recovery-pure", worst, 1e-3,
                   f"phase-space model vs closed forms at lam={lam}, R={1-T}, "
                   f"g_eff={target} (mu {mu_pure:.6f} / {mu_phase:.6f})")
