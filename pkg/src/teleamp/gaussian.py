"""Real-matrix algebra for Gaussian states in the vacuum = identity convention.

Covariance matrices are 2N x 2N, mode order (x1, p1, ..., xN, pN), with
gamma_jk = <dq_j dq_k + dq_k dq_j>, so the vacuum covariance is the identity
and reported quadrature variances are gamma_xx / 2 (vacuum 1/2).

Husimi exponent matrices Gamma act on the real vector r_w = [Re w1, Im w1, ...]
of coherent-state amplitudes: Q(w) = sqrt(det Gamma) / pi^N * exp(-r^T Gamma r)
with Gamma = 2 (gamma + I)^-1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConditioningError, DomainError
from .params import AmplifierParams

# Complex conjugation of a phase-space point [Re w, Im w].
UPSILON = np.diag([1.0, -1.0])

# Solves are refused beyond this condition number instead of returning garbage.
COND_LIMIT = 1e12


def omega_form(n_modes: int) -> np.ndarray:
    """Standard symplectic form, block diag of [[0, 1], [-1, 0]]."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def phase_vector(z: complex) -> np.ndarray:
    """Real 2-vector [Re z, Im z] of a complex amplitude."""
    return np.array([np.real(z), np.imag(z)])


def guarded_inv(mat: np.ndarray, what: str = "matrix") -> np.ndarray:
    """Symmetric inverse that refuses ill-conditioned input."""
    cond = np.linalg.cond(mat)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise ConditioningError(f"{what} is numerically singular", cond)
    inv = np.linalg.inv(mat)
    return (inv + inv.T) / 2


def symplectic_eigenvalues(gamma: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a covariance matrix (>= 1 for physical states)."""
    n = gamma.shape[0] // 2
    ev = np.linalg.eigvals(1j * omega_form(n) @ gamma)
    return np.sort(np.abs(ev))[::2]  # each value appears twice (+/- pair)


@dataclass(frozen=True)
class CovMatrix:
    """Covariance matrix of an N-mode Gaussian state (vacuum = identity)."""

    n_modes: int
    data: np.ndarray

    SYM_TOL = 1e-12
    PHYS_TOL = 1e-9

    def __post_init__(self):
        d = np.asarray(self.data, dtype=float)
        if d.shape != (2 * self.n_modes, 2 * self.n_modes):
            raise DomainError(f"covariance shape {d.shape} does not match {self.n_modes} modes")
        scale = max(1.0, float(np.max(np.abs(d))))
        if np.max(np.abs(d - d.T)) > self.SYM_TOL * scale:
            raise DomainError("covariance matrix is not symmetric")
        d = (d + d.T) / 2
        d.setflags(write=False)
        object.__setattr__(self, "data", d)

    @classmethod
    def vacuum(cls, n_modes: int) -> "CovMatrix":
        return cls(n_modes, np.eye(2 * n_modes))

    def is_physical(self, tol: float | None = None) -> bool:
        tol = self.PHYS_TOL if tol is None else tol
        return bool(np.min(symplectic_eigenvalues(self.data)) >= 1 - tol)

    def submatrix(self, modes) -> "CovMatrix":
        idx = np.concatenate([[2 * m, 2 * m + 1] for m in modes])
        return CovMatrix(len(modes), self.data[np.ix_(idx, idx)])

    def mean_photons(self) -> float:
        """Total mean photon number, Tr(gamma - I) / 4 for zero-mean states."""
        return float(np.trace(self.data - np.eye(2 * self.n_modes)) / 4)


@dataclass(frozen=True)
class QExponent:
    """Positive-definite exponent matrix of a Gaussian Husimi function."""

    n_modes: int
    data: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.data, dtype=float)
        if d.shape != (2 * self.n_modes, 2 * self.n_modes):
            raise DomainError(f"exponent shape {d.shape} does not match {self.n_modes} modes")
        d = (d + d.T) / 2
        if np.min(np.linalg.eigvalsh(d)) <= 0:
            raise DomainError("Husimi exponent matrix must be positive definite")
        d.setflags(write=False)
        object.__setattr__(self, "data", d)

    @classmethod
    def from_cov(cls, gamma: CovMatrix) -> "QExponent":
        n = gamma.n_modes
        return cls(n, 2 * guarded_inv(gamma.data + np.eye(2 * n), "gamma + I"))

    def to_cov(self) -> CovMatrix:
        n = self.n_modes
        return CovMatrix(n, 2 * guarded_inv(self.data, "Gamma") - np.eye(2 * n))

    def q_value(self, amplitudes) -> float:
        """Evaluate the (normalized) Gaussian Q at complex amplitudes, one per mode."""
        r = np.concatenate([phase_vector(z) for z in np.atleast_1d(amplitudes)])
        norm = np.sqrt(np.linalg.det(self.data)) / np.pi ** self.n_modes
        return float(norm * np.exp(-r @ self.data @ r))


@dataclass(frozen=True)
class SymplecticTransform:
    """Linear phase-space map gamma -> S gamma S^T + G (G = 0 for pure symplectics)."""

    S: np.ndarray
    G: np.ndarray

    def apply(self, gamma: CovMatrix) -> CovMatrix:
        return CovMatrix(gamma.n_modes, self.S @ gamma.data @ self.S.T + self.G)

    def is_symplectic(self, tol: float = 1e-10) -> bool:
        n = self.S.shape[0] // 2
        om = omega_form(n)
        return bool(np.max(np.abs(self.S.T @ om @ self.S - om)) < tol
                    and np.max(np.abs(self.G)) == 0.0)


def tmsv_covariance(lam: float) -> CovMatrix:
    """Two-mode squeezed vacuum covariance for squeezing strength lam = tanh r.

    Diagonal blocks cosh(2r) I; cross blocks diag(sinh 2r, -sinh 2r): the x
    quadratures are correlated, the p quadratures anti-correlated.
    """
    if not abs(lam) < 1:
        raise DomainError(f"|lam| must be < 1, got {lam}")
    r = np.arctanh(lam)
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    cross = np.diag([s, -s])
    data = np.block([[c * np.eye(2), cross], [cross, c * np.eye(2)]])
    return CovMatrix(2, data)


def lossy_mix(gamma: CovMatrix, eta: float, modes=None) -> CovMatrix:
    """Pure-loss channel of transmittance eta on the selected modes.

    Amplitudes scale by sqrt(eta) and (1 - eta) vacuum noise is admixed;
    the full-set case reduces to eta * gamma + (1 - eta) * I.
    """
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta}")
    if modes is None:
        modes = range(gamma.n_modes)
    scale = np.ones(2 * gamma.n_modes)
    noise = np.zeros(2 * gamma.n_modes)
    for m in modes:
        scale[2 * m:2 * m + 2] = np.sqrt(eta)
        noise[2 * m:2 * m + 2] = 1 - eta
    data = gamma.data * np.outer(scale, scale) + np.diag(noise)
    return CovMatrix(gamma.n_modes, data)


def beamsplitter(T: float, mode_pair, n_modes: int, sign: float = 1.0) -> SymplecticTransform:
    """Beam-splitter symplectic of transmittance T coupling a mode pair.

    Convention (sqrt(T), sqrt(R) / -sqrt(R), sqrt(T)) acting identically on x
    and p; this sign choice is locked by the effective-squeezing property test
    T*lam + R*mu of the conditional state preparation. `sign` flips the
    reflected-port phase (used only by deliberate convention-mutation checks).
    """
    if not 0.0 <= T <= 1.0:
        raise DomainError(f"T must lie in [0, 1], got {T}")
    i, j = mode_pair
    rt, rr = np.sqrt(T), np.sqrt(1 - T)
    S = np.eye(2 * n_modes)
    for off in (0, 1):
        a, b = 2 * i + off, 2 * j + off
        S[a, a] = rt
        S[a, b] = sign * rr
        S[b, a] = -sign * rr
        S[b, b] = rt
    return SymplecticTransform(S, np.zeros((2 * n_modes, 2 * n_modes)))


def build_effective_cov(params: AmplifierParams, bs_sign: float = 1.0) -> CovMatrix:
    """Four-mode covariance (A, B, C, D) just before the click measurement.

    Lossy squeezed inputs on (A,B) and (C,D), tapping beam splitters on the
    pairs (A,C) and (B,D), then detector inefficiency as a lossy channel on
    C and D.
    """
    gamma_ab = lossy_mix(tmsv_covariance(params.lam), params.eta_ab)
    gamma_cd = lossy_mix(tmsv_covariance(params.mu), params.eta_cd)
    data = np.zeros((8, 8))
    data[:4, :4] = gamma_ab.data
    data[4:, 4:] = gamma_cd.data
    gamma = CovMatrix(4, data)
    for pair in ((0, 2), (1, 3)):  # (A, C) and (B, D)
        gamma = beamsplitter(params.T, pair, 4, sign=bs_sign).apply(gamma)
    return lossy_mix(gamma, params.eta_apd, modes=(2, 3))


def gauss_condition(exponent: QExponent, amplitude: complex, project_mode: int = 0):
    """Project one mode of a Gaussian Q onto the re-normalized coherent state.

    The projector is (1/sqrt(pi)) |z> on `project_mode` with z = `amplitude`.
    Returns (QExponent of the remaining modes, weight, displacement map D):
    the conditional Q is weight * Gaussian with exponent Gamma_B and mean
    D @ (Upsilon r_z); D = -Gamma_B^-1 M^T Upsilon, and

        weight = (1/pi) sqrt(det Gamma / det Gamma_B) exp(-d^T GammaTilde_A d)

    with d = Upsilon r_z and GammaTilde_A the conjugated Schur complement,
    which equals the marginal Q of the projected mode at z.
    """
    n = exponent.n_modes
    if n < 2:
        raise DomainError("conditioning requires at least two modes")
    keep = [m for m in range(n) if m != project_mode]
    ia = [2 * project_mode, 2 * project_mode + 1]
    ib = np.concatenate([[2 * m, 2 * m + 1] for m in keep])
    G = exponent.data
    GA = G[np.ix_(ia, ia)]
    M = G[np.ix_(ia, ib)]
    GB = G[np.ix_(ib, ib)]
    GB_inv = guarded_inv(GB, "Gamma_B")
    D = -GB_inv @ M.T @ UPSILON
    schur = UPSILON.T @ GA @ UPSILON - UPSILON.T @ M @ GB_inv @ M.T @ UPSILON
    d = UPSILON @ phase_vector(amplitude)
    sign_b, logdet_b = np.linalg.slogdet(GB)
    sign_f, logdet_f = np.linalg.slogdet(G)
    weight = float(np.exp(0.5 * (logdet_f - logdet_b) - d @ schur @ d) / np.pi)
    return QExponent(n - 1, GB), weight, D
