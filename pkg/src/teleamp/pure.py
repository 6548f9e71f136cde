"""Closed-form model of the ideal protocol (pure resource, exact conditioning).

The resource family has Schmidt coefficients proportional to ((g-1) n + 1)
lam^n; all quantities below are analytic functions of (lam, g) and the
preparation knobs (lam, mu, T). Quadrature variances follow the same
convention as everywhere else (vacuum = 1/2) and are given in the frame
co-rotating with the input amplitude (sweeps run along the real axis).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PoleError


def _series(e: float, x: float):
    """Factorial-moment sums of the ((g-1)n+1) family at x = |lam alpha|^2.

    Common factor exp(x) dropped; only ratios are ever used.
    s0 = sum c_n^2 x^n/n!, s1 = sum c_{n+1} c_n x^n/n!,
    s2 = sum c_{n+2} c_n x^n/n!, s11 = sum c_{n+1}^2 x^n/n!.
    """
    s0 = e * e * (x + x * x) + 2 * e * x + 1
    s1 = e * e * (x * x + 2 * x) + 2 * e * x + e + 1
    s2 = e * e * (x * x + x) + (2 * e * e + 2 * e) * x + 2 * e + 1
    s11 = e * e * (x * x + x) + 2 * e * (e + 1) * x + (e + 1) ** 2
    return s0, s1, s2, s11


def gain_alpha(lam: float, g: float, alpha: complex) -> float:
    """Amplitude-dependent gain of the conditioned output at outcome beta = 0."""
    x = (lam * abs(alpha)) ** 2
    e = g - 1
    return lam + lam * e * (1 + e * x) / ((1 + e * x) ** 2 + e * e * x)


def fidelity_alpha(lam: float, g: float, alpha: complex) -> float:
    """Fidelity of the conditioned output with the coherent target g*lam*alpha."""
    x = (lam * abs(alpha)) ** 2
    e = g - 1
    return (1 + g * e * x) ** 2 / ((1 + e * x) ** 2 + e * e * x) * np.exp(-e * e * x)


def fidelity_target(lam: float, g: float, alpha: complex, target: complex) -> float:
    """Fidelity with an arbitrary coherent target amplitude."""
    e = g - 1
    beta = lam * complex(alpha)
    zc = np.conj(complex(target)) * beta
    s0, *_ = _series(e, abs(beta) ** 2)
    num = np.exp(-abs(target) ** 2 - abs(beta) ** 2 + 2 * zc.real) * abs(1 + e * zc) ** 2
    return float(num / s0)


def quad_variances(lam: float, g: float, alpha: complex):
    """Quadrature variances (V_x, V_p) of the conditioned output, vacuum = 1/2."""
    e = g - 1
    x = (lam * abs(alpha)) ** 2
    s0, s1, s2, s11 = _series(e, x)
    vx = x * s2 / s0 + x * s11 / s0 + 0.5 - 2 * x * (s1 / s0) ** 2
    vp = x * s11 / s0 + 0.5 - x * s2 / s0
    return float(vx), float(vp)


def outcome_density(lam: float, g: float, alpha, beta):
    """Probability density of teleportation outcome beta for the (lam, g)
    resource (beta may be an array of outcomes)."""
    e = g - 1
    q = lam * lam
    z2 = np.abs(np.asarray(alpha) + np.asarray(beta)) ** 2
    norm = e * e * q * (1 + q) / (1 - q) ** 3 + 2 * e * q / (1 - q) ** 2 + 1 / (1 - q)
    s0, *_ = _series(e, q * z2)
    return np.exp(-(1 - q) * z2) * s0 / (np.pi * norm)


@dataclass(frozen=True)
class ResourceEngineering:
    lam_eff: float
    g: float
    g_eff: float
    coeffs: np.ndarray
    p_s: float


def resource_engineering(lam: float, mu: float, T: float, n_coeffs: int = 64) -> ResourceEngineering:
    """Effective squeezing, nominal gain, Schmidt coefficients and success
    probability of the conditional two-photon-subtraction preparation.

    The cross-term sign inside p_s is fixed by the brute-force Fock oracle
    (sum of squares of the Schmidt sequence), see tests.
    """
    R = 1 - T
    lam_eff = T * lam + R * mu
    b = R * lam + T * mu
    denom = b * lam_eff
    if abs(denom) < 1e-14:
        raise PoleError(
            f"nominal gain diverges: (R lam + T mu)(T lam + R mu) = {denom:.3e} "
            f"(R lam + T mu = {b:.3e}, lam_eff = {lam_eff:.3e})")
    A = R * T * (lam - mu) ** 2
    g = 1 + A / denom
    q = lam_eff ** 2
    front = (1 - lam ** 2) * (1 - mu ** 2)
    p_s = front / (1 - q) ** 3 * (((1 - q) * b + lam_eff * A) ** 2 + A * A)
    n = np.arange(1, n_coeffs)
    coeffs = np.empty(n_coeffs)
    coeffs[0] = b  # the n = 0 term of lam_eff^(n-1) (n A + b lam_eff)
    coeffs[1:] = lam_eff ** (n - 1) * (n * A + b * lam_eff)
    coeffs *= np.sqrt(front / p_s)
    return ResourceEngineering(lam_eff, g, lam_eff * g, coeffs, p_s)


@dataclass(frozen=True)
class Sensitivity:
    g_eff_approx: float
    dgeff_dmu: float
    small_r: bool
    small_mu: bool


def geff_sensitivity(lam: float, mu: float, T: float) -> Sensitivity:
    """Small-R/small-mu approximation of the effective gain and its exact
    mu-derivative (the derivative identity holds without approximation)."""
    R = 1 - T
    b = R * lam + T * mu
    if b == 0:
        raise PoleError("R lam + T mu = 0: effective gain diverges")
    approx = T * lam * (1 + R * lam / b)
    deriv = 2 * R - R * lam * lam / (b * b)
    return Sensitivity(approx, deriv,
                       small_r=R < 0.1,
                       small_mu=abs(mu) < 0.1 * max(abs(lam), 1e-12))


def g_eff_exact(lam: float, mu: float, T: float) -> float:
    """Exact effective gain lam_eff * g of the engineered resource."""
    eng = resource_engineering(lam, mu, T, n_coeffs=2)
    return eng.g_eff


@dataclass(frozen=True)
class GnModel:
    coeffs: np.ndarray
    p_n: float
    alpha_th: float


def gn_model(lam: float, g: float, N: int, n_coeffs: int | None = None) -> GnModel:
    """Schmidt sequence, normalization and threshold amplitude of the
    truncated-amplifier resource family."""
    gl = g * lam
    if n_coeffs is None:
        tail = int(np.ceil(np.log(1e-18) / (2 * np.log(max(abs(lam), 1e-6)))))
        n_coeffs = min(max(N + 2, tail), 4096)
    if abs(gl - 1) < 1e-12:
        p_n = (1 - lam ** 2) * (N + 1) / g ** (2 * N) + lam ** (2 * N + 2)
    else:
        p_n = ((1 - lam ** 2) / (1 - gl ** 2) * (1 - gl ** (2 * N + 2)) / g ** (2 * N)
               + lam ** (2 * N + 2))
    n = np.arange(n_coeffs)
    coeffs = np.power(float(lam), n.astype(float))
    head = n <= N
    coeffs[head] = gl ** n[head].astype(float) / g ** N
    coeffs = coeffs * np.sqrt((1 - lam ** 2) / p_n)
    alpha_th = (np.sqrt(N + 2.25) - 1.5) / gl if gl != 0 else np.inf
    return GnModel(coeffs, float(p_n), float(alpha_th))


@dataclass(frozen=True)
class WindowResult:
    p_tele: float
    converges: bool
    support_ok: bool

    @property
    def valid(self) -> bool:
        return self.converges and self.support_ok


def ptele_window(lam: float, g: float, N: int, sigma2: float, alpha: complex) -> WindowResult:
    """Closed-form acceptance probability of the Gaussian outcome window.

    Two validity flags accompany the value: convergence of the outcome
    integral, and the three-standard-deviation support condition keeping the
    contributing outcomes inside the faithful-amplification region. Outside
    the valid region the value is returned for diagnostics only (NaN when the
    integral diverges outright).
    """
    gl2 = (g * lam) ** 2
    denom = 1 + sigma2 - sigma2 * gl2
    converges = gl2 <= 1 or sigma2 < 1 / (gl2 - 1)
    model = gn_model(lam, g, N, n_coeffs=2)
    if denom <= 0:
        return WindowResult(float("nan"), False, False)
    p = ((1 - lam ** 2) / (g ** (2 * N) * model.p_n) * sigma2 / denom
         * np.exp((gl2 - 1) * abs(alpha) ** 2 / denom))
    lhs = (g * abs(lam) * abs(alpha) / denom
           + 3 * g * abs(lam) * np.sqrt(sigma2) / np.sqrt(2 * denom))
    support_ok = bool(lhs < np.sqrt(N + 2.25) - 1.5)
    return WindowResult(float(p), bool(converges), support_ok)


def gn_outcome_density(lam: float, g: float, N: int, alpha, beta):
    """Outcome density for the truncated-amplifier resource, valid inside the
    faithful-amplification window only (no extrapolation is implied)."""
    model = gn_model(lam, g, N, n_coeffs=2)
    z2 = np.abs(np.asarray(alpha) + np.asarray(beta)) ** 2
    return ((1 - lam ** 2) / (np.pi * g ** (2 * N) * model.p_n)
            * np.exp(((g * lam) ** 2 - 1) * z2))
