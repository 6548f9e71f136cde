"""Husimi-mixture model of the realistic protocol (noisy sources, on-off clicks).

The conditionally prepared resource is a signed four-term mixture of Gaussian
Husimi functions (inclusion-exclusion of the click/click POVM). Teleportation
conditioning and the finite acceptance window map each term through closed
Gaussian algebra. Term weights are carried as log-magnitudes and the four-term
signed sums are assembled with max-subtraction: the totals (P_AB ~ 1e-4) come
from near-cancelling O(1) terms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, WindowDivergenceError
from .gaussian import UPSILON, build_effective_cov, guarded_inv, phase_vector
from .params import AmplifierParams, Metrics

_COEFFS = (1, -1, -1, 1)
_MODE_SUBSETS = ((0, 1), (0, 1, 2), (0, 1, 3), (0, 1, 2, 3))


@dataclass(frozen=True)
class QTerm:
    coeff: int
    log_weight: float
    gamma_exp: np.ndarray       # exponent on the remaining modes
    disp_map: np.ndarray | None  # 2x2 displacement map (None at the resource stage)
    mean: np.ndarray             # displacement of this term's Gaussian


@dataclass(frozen=True)
class GaussMixQ:
    """Signed mixture of Gaussian Husimi terms with its stage normalization.

    `total` is the signed sum of term weights: the preparation probability for
    the resource stage, the outcome density at beta = 0, or the total success
    probability for the windowed stage.
    """

    n_modes: int
    terms: tuple
    total: float

    def rel_weights(self) -> np.ndarray:
        """Signed term weights divided by `total` (sum to 1)."""
        logs = np.array([t.log_weight for t in self.terms])
        signs = np.array([t.coeff for t in self.terms], dtype=float)
        m = logs.max()
        u = signs * np.exp(logs - m)
        return u / u.sum()

    def q_value(self, amplitudes) -> float:
        """Normalized Husimi Q at one complex amplitude per mode."""
        r = np.concatenate([phase_vector(z) for z in np.atleast_1d(amplitudes)])
        out = 0.0
        for t, u in zip(self.terms, self.rel_weights()):
            dr = r - t.mean
            det = np.linalg.det(t.gamma_exp)
            out += u * np.sqrt(det) / np.pi ** self.n_modes * np.exp(-dr @ t.gamma_exp @ dr)
        return float(out)


def _signed_total(log_weights, coeffs) -> float:
    logs = np.asarray(log_weights)
    m = logs.max()
    return float(np.exp(m) * np.sum(np.asarray(coeffs) * np.exp(logs - m)))


def _split_blocks(gamma_exp: np.ndarray):
    return gamma_exp[:2, :2], gamma_exp[:2, 2:], gamma_exp[2:, 2:]


def _logdet(mat: np.ndarray, what: str) -> float:
    sign, val = np.linalg.slogdet(mat)
    if sign <= 0:
        raise DomainError(f"{what} must have positive determinant")
    return val


def resource_q(params: AmplifierParams, bs_sign: float = 1.0):
    """Four-term Husimi mixture of the click/click-conditioned resource state.

    Returns (mixture over modes A, B; preparation probability P_AB).
    """
    gamma_eff = build_effective_cov(params, bs_sign=bs_sign)
    if not gamma_eff.is_physical():
        raise DomainError("effective four-mode covariance is not physical")
    terms = []
    log_weights = []
    for coeff, subset in zip(_COEFFS, _MODE_SUBSETS):
        gs = gamma_eff.submatrix(subset).data
        big = 2 * guarded_inv(gs + np.eye(len(gs)), "gamma + I")
        small = big[:4, :4]
        logk = 0.5 * (_logdet(big, "conditioning exponent")
                      - _logdet(small, "resource exponent"))
        terms.append(QTerm(coeff, logk, small, None, np.zeros(4)))
        log_weights.append(logk)
    p_ab = _signed_total(log_weights, _COEFFS)
    if p_ab <= 0:
        raise DomainError(f"preparation probability {p_ab} is not positive "
                          "(inconsistent parameters)")
    return GaussMixQ(2, tuple(terms), p_ab), p_ab


def teleamp_beta0(resource: GaussMixQ, alpha: complex):
    """Teleported output mixture conditioned on outcome beta = 0.

    Each term is conditioned by projecting mode A on the re-normalized
    coherent state at the conjugated input amplitude; the displacement maps
    come out proportional to the identity by the symmetry of the scheme.
    """
    d = phase_vector(alpha)
    terms = []
    logs = []
    for t in resource.terms:
        ga, m, gb = _split_blocks(t.gamma_exp)
        gb_inv = guarded_inv(gb, "conditioned exponent")
        schur = UPSILON.T @ ga @ UPSILON - UPSILON.T @ m @ gb_inv @ m.T @ UPSILON
        dmap = -gb_inv @ m.T @ UPSILON
        logk = (t.log_weight + 0.5 * (_logdet(t.gamma_exp, "resource exponent")
                                      - _logdet(gb, "output exponent"))
                - np.log(np.pi) - d @ schur @ d)
        terms.append(QTerm(t.coeff, logk, gb, dmap, dmap @ d))
        logs.append(logk)
    p0 = _signed_total(logs, [t.coeff for t in resource.terms])
    if p0 <= 0:
        raise DomainError(f"outcome density {p0} is not positive")
    return GaussMixQ(1, tuple(terms), p0), p0


def teleamp_windowed(resource: GaussMixQ, alpha: complex, sigma2: float, k: float,
                     p_ab: float | None = None):
    """Output mixture for the Gaussian acceptance window with corrective
    displacement -k*beta fed forward to the output mode.

    Returns (mixture, P_tot, P_tele) with P_tele = P_tot / P_AB.
    """
    if not sigma2 > 0:
        raise DomainError("sigma2 must be positive for the windowed protocol")
    p_ab = resource.total if p_ab is None else p_ab
    d = phase_vector(alpha)
    sig = np.eye(2) / sigma2
    terms = []
    logs = []
    for t in resource.terms:
        ga, m, gb = _split_blocks(t.gamma_exp)
        ga_c = UPSILON.T @ ga @ UPSILON
        gamma_beta = k * k * gb + ga_c + sig + k * UPSILON.T @ m + k * m.T @ UPSILON
        if np.min(np.linalg.eigvalsh(gamma_beta)) <= 0:
            raise WindowDivergenceError(
                f"outcome integral diverges at sigma2 = {sigma2}, k = {k}")
        gb_beta = guarded_inv(gamma_beta, "window exponent")
        l_alpha = ga_c + k * m.T @ UPSILON
        l_r = UPSILON.T @ m + k * gb
        gb_t = gb - l_r.T @ gb_beta @ l_r
        if np.min(np.linalg.eigvalsh(gb_t)) <= 0:
            raise WindowDivergenceError(
                f"windowed output exponent not positive definite at sigma2 = {sigma2}")
        cross = m.T @ UPSILON - l_r.T @ gb_beta @ l_alpha
        gb_t_inv = guarded_inv(gb_t, "windowed output exponent")
        dmap = -gb_t_inv @ cross
        schur = ga_c - l_alpha.T @ gb_beta @ l_alpha - cross.T @ gb_t_inv @ cross
        logk = (t.log_weight + 0.5 * (_logdet(t.gamma_exp, "resource exponent")
                                      - _logdet(gamma_beta, "window exponent")
                                      - _logdet(gb_t, "output exponent"))
                - d @ schur @ d)
        terms.append(QTerm(t.coeff, logk, gb_t, dmap, dmap @ d))
        logs.append(logk)
    p_tot = _signed_total(logs, [t.coeff for t in resource.terms])
    if p_tot <= 0:
        raise DomainError(f"windowed success probability {p_tot} is not positive")
    return GaussMixQ(1, tuple(terms), p_tot), p_tot, p_tot / p_ab


def metrics_q(mix: GaussMixQ, alpha: complex, g_report: float | None = None) -> Metrics:
    """Gain, output covariance, variances and coherent-target fidelity of a
    single-mode output mixture.

    The fidelity target is |g_report * alpha> with g_report defaulting to the
    state-dependent gain of the mixture itself.
    """
    if mix.n_modes != 1:
        raise DomainError("metrics require a single-mode output mixture")
    d = phase_vector(alpha)
    u = mix.rel_weights()
    gain = 0.0
    mean = np.zeros(2)
    second = np.zeros((2, 2))
    for t, w in zip(mix.terms, u):
        dj = 0.5 * (t.disp_map[0, 0] + t.disp_map[1, 1])
        gain += w * dj
        mean += w * t.mean
        second += w * (2 * guarded_inv(t.gamma_exp, "output exponent")
                       + 4 * np.outer(t.mean, t.mean))
    gamma_out = second - 4 * np.outer(mean, mean) - np.eye(2)
    if np.min(np.linalg.eigvalsh(gamma_out)) < -1e-9:
        raise DomainError("reported output covariance is not positive semidefinite")
    gr = gain if g_report is None else g_report
    target = gr * d
    fid = 0.0
    for t, w in zip(mix.terms, u):
        v = target - t.mean
        fid += w * np.sqrt(np.linalg.det(t.gamma_exp)) * np.exp(-v @ t.gamma_exp @ v)
    return Metrics(gain=float(gain), fidelity=float(fid),
                   vx=float(gamma_out[0, 0] / 2), vp=float(gamma_out[1, 1] / 2))
