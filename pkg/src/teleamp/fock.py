"""Brute-force truncated-Fock-space oracle for the amplifier protocol.

States are dense complex arrays with one axis per mode (mode-major layout).
Only pure inputs and unit-efficiency channels are modeled here; the module
exists to cross-validate the closed-form and phase-space models.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .errors import DomainError, GridResolutionError, TruncationError

# Post-hoc truncation adequacy: probability weight allowed on any top Fock level.
LEAK_TOL = 1e-8


@dataclass(frozen=True)
class FockVec:
    """Pure multimode state on a truncated Fock space, shape = dims."""

    dims: tuple
    amps: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=complex)
        if a.shape != tuple(self.dims):
            raise DomainError(f"amplitude shape {a.shape} does not match dims {self.dims}")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)
        object.__setattr__(self, "dims", tuple(self.dims))

    @property
    def n_modes(self) -> int:
        return len(self.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "FockVec":
        n = self.norm()
        if n == 0:
            raise DomainError("cannot normalize the zero vector")
        return FockVec(self.dims, self.amps / n)

    def top_level_weights(self) -> np.ndarray:
        """Probability weight on the top Fock level of each mode."""
        w = np.empty(self.n_modes)
        for m in range(self.n_modes):
            sl = [slice(None)] * self.n_modes
            sl[m] = self.dims[m] - 1
            w[m] = np.sum(np.abs(self.amps[tuple(sl)]) ** 2)
        return w

    def check_truncation(self, tol: float = LEAK_TOL) -> "FockVec":
        w = self.top_level_weights()
        if np.any(w > tol):
            m = int(np.argmax(w))
            raise TruncationError(
                f"mode {m} holds weight {w[m]:.3e} on its top Fock level (dims {self.dims})")
        return self


@dataclass
class FockMix:
    """Statistical mixture: list of (weight, normalized FockVec) branches.

    Weights sum to the probability of the conditional event that produced the
    mixture (not to 1).
    """

    members: list

    @classmethod
    def pure(cls, weight: float, vec: FockVec) -> "FockMix":
        return cls([(weight, vec)])

    @property
    def total_weight(self) -> float:
        return float(sum(w for w, _ in self.members))


def coherent_state(alpha: complex, dim: int) -> FockVec:
    """Coherent state amplitudes exp(-|a|^2/2) a^n / sqrt(n!)."""
    if alpha != 0 and abs(alpha) ** 2 + 5 * abs(alpha) + 10 >= dim:
        raise TruncationError(
            f"dim {dim} inadequate for |alpha| = {abs(alpha):.3f} (need > |a|^2 + 5|a| + 10)")
    n = np.arange(dim)
    amps = np.exp(-abs(alpha) ** 2 / 2 - 0.5 * gammaln(n + 1)) * np.power(complex(alpha), n)
    vec = FockVec((dim,), amps)
    if abs(vec.norm() - 1) > 1e-10:
        raise TruncationError(f"coherent state norm {vec.norm()} deviates from 1")
    return vec


def tmsv_state(lam: float, dims) -> FockVec:
    """Two-mode squeezed vacuum, amplitudes sqrt(1-lam^2) lam^n on |n,n>."""
    if not abs(lam) < 1:
        raise DomainError(f"|lam| must be < 1, got {lam}")
    if np.isscalar(dims):
        dims = (int(dims), int(dims))
    d = min(dims)
    if abs(lam) ** d >= 1e-8:
        raise TruncationError(f"lam^d = {abs(lam)**d:.3e} too large for dims {dims}")
    amps = np.zeros(dims, dtype=complex)
    n = np.arange(d)
    amps[n, n] = np.sqrt(1 - lam ** 2) * lam ** n
    return FockVec(dims, amps)


def _apply_one_mode(vec: FockVec, mode: int, mat: np.ndarray) -> FockVec:
    a = np.moveaxis(vec.amps, mode, 0)
    shape = a.shape
    a = mat @ a.reshape(shape[0], -1)
    a = np.moveaxis(a.reshape((mat.shape[0],) + shape[1:]), 0, mode)
    dims = list(vec.dims)
    dims[mode] = mat.shape[0]
    return FockVec(tuple(dims), a)


def apply_ladder(vec: FockVec, mode: int, kind: str) -> FockVec:
    """Apply the annihilation or creation operator on one mode (non-normalized)."""
    d = vec.dims[mode]
    n = np.arange(1, d, dtype=float)
    if kind == "annihilate":
        mat = np.diag(np.sqrt(n), 1)
    elif kind == "create":
        top = np.sqrt(vec.top_level_weights()[mode])
        if top > 1e-10:
            raise TruncationError(
                f"creation on mode {mode} with top-level amplitude {top:.3e}")
        mat = np.diag(np.sqrt(n), -1)
    else:
        raise DomainError(f"kind must be 'annihilate' or 'create', got {kind!r}")
    return _apply_one_mode(vec, mode, mat)


def number_multiplier(vec: FockVec, mode: int, factors: np.ndarray) -> FockVec:
    """Multiply the amplitude of each Fock level of a mode by a given factor."""
    shape = [1] * vec.n_modes
    shape[mode] = vec.dims[mode]
    return FockVec(vec.dims, vec.amps * np.asarray(factors).reshape(shape))


def amplifier_g(vec: FockVec, g: float, mode: int = 0) -> FockVec:
    """Ideal-amplifier filter with Fock multipliers (g-1) n + 1 (non-normalized)."""
    n = np.arange(vec.dims[mode])
    return number_multiplier(vec, mode, (g - 1) * n + 1.0)


def amplifier_gn(vec: FockVec, g: float, N: int, mode: int = 0) -> FockVec:
    """Truncated amplifier: multipliers g^(n-N) for n <= N and 1 above."""
    n = np.arange(vec.dims[mode])
    f = np.where(n <= N, np.power(float(g), n - float(N)), 1.0)
    return number_multiplier(vec, mode, f)


_DISP_CACHE: dict = {}


def displacement_matrix(z: complex, dim: int) -> np.ndarray:
    key = (complex(z), dim)
    if key not in _DISP_CACHE:
        n = np.sqrt(np.arange(1, dim))
        a = np.diag(n, 1)
        _DISP_CACHE[key] = expm(z * a.T.conj() - np.conj(z) * a)
        if len(_DISP_CACHE) > 20000:
            _DISP_CACHE.clear()
    return _DISP_CACHE[key]


def displace(vec: FockVec, mode: int, z: complex) -> FockVec:
    return _apply_one_mode(vec, mode, displacement_matrix(z, vec.dims[mode]))


_BS_CACHE: dict = {}


def _bs_pair_matrix(T: float, d1: int, d2: int, sign: float) -> np.ndarray:
    """Beam-splitter unitary on the joint (d1*d2)-dim space of a mode pair.

    Photon number is conserved, so the matrix is assembled from orthogonal
    blocks of fixed total n; blocks are exponentials of the tridiagonal
    generator of the a c^dag - a^dag c rotation. Amplitude rotated outside the
    retained index ranges is dropped (honest truncation).
    """
    key = (float(T), d1, d2, float(sign))
    if key in _BS_CACHE:
        return _BS_CACHE[key]
    theta = -sign * np.arccos(np.sqrt(T))
    U = np.zeros((d1 * d2, d1 * d2))
    for n in range(d1 + d2 - 1):
        ks = np.arange(max(0, n - d2 + 1), min(n, d1 - 1) + 1)
        gen = np.zeros((n + 1, n + 1))
        for k in range(1, n + 1):
            step = np.sqrt(k * (n - k + 1))
            gen[k - 1, k] = step
            gen[k, k - 1] = -step
        block = expm(theta * gen)[np.ix_(ks, ks)]
        rows = ks * d2 + (n - ks)
        U[np.ix_(rows, rows)] = block
    _BS_CACHE[key] = U
    return U


def apply_beamsplitter(vec: FockVec, T: float, mode_pair, sign: float = 1.0) -> FockVec:
    """Couple two modes with the (sqrt(T), sqrt(R) / -sqrt(R), sqrt(T)) convention."""
    if not 0.0 <= T <= 1.0:
        raise DomainError(f"T must lie in [0, 1], got {T}")
    i, j = mode_pair
    d1, d2 = vec.dims[i], vec.dims[j]
    a = np.moveaxis(vec.amps, (i, j), (0, 1))
    shape = a.shape
    a = _bs_pair_matrix(T, d1, d2, sign) @ a.reshape(d1 * d2, -1)
    a = np.moveaxis(a.reshape(shape), (0, 1), (i, j))
    return FockVec(vec.dims, a)


def premeasurement_state(lam: float, mu: float, T: float, d: int = 30, d_aux: int = 8,
                         bs_sign: float = 1.0) -> FockVec:
    """Four-mode pure state (A, B, C, D) after the two tapping beam splitters.

    `bs_sign` flips the reflected-port phase of the (B, D) splitter only; the
    default convention is locked by the effective-squeezing property test.
    """
    ab = tmsv_state(lam, (d, d))
    cd = tmsv_state(mu, (d_aux, d_aux))
    amps = np.einsum("ab,cd->abcd", ab.amps, cd.amps)
    vec = FockVec((d, d, d_aux, d_aux), amps)
    vec = apply_beamsplitter(vec, T, (0, 2))
    vec = apply_beamsplitter(vec, T, (1, 3), sign=bs_sign)
    return vec.check_truncation()


def povm_outcome_probabilities(state: FockVec) -> dict:
    """Click/no-click outcome probabilities of on-off detectors on modes C, D."""
    p = np.abs(state.amps) ** 2
    p_cd = p.sum(axis=(0, 1))
    p00 = p_cd[0, 0]
    p0x = p_cd[0, :].sum()
    px0 = p_cd[:, 0].sum()
    tot = p_cd.sum()
    return {
        "no_no": float(p00),
        "no_click": float(p0x - p00),
        "click_no": float(px0 - p00),
        "click_click": float(tot - p0x - px0 + p00),
    }


def prepare_resource_fock(lam: float, mu: float, T: float, d: int = 30, d_aux: int = 8,
                          detector: str = "pnr", bs_sign: float = 1.0,
                          weight_tol: float = 1e-10):
    """Conditionally prepared two-mode resource state and its click probability.

    'pnr' projects the tap modes on |1,1> (single pure branch); 'onoff'
    conditions on the click/click outcome of on-off detectors, yielding a
    mixture over the projected Fock outcomes m, n >= 1, truncated once the
    omitted cumulative weight is below `weight_tol` relative to the total.
    """
    state = premeasurement_state(lam, mu, T, d, d_aux, bs_sign)
    if detector == "pnr":
        branch = state.amps[:, :, 1, 1]
        p = float(np.sum(np.abs(branch) ** 2))
        if p <= 0:
            raise DomainError("conditional preparation has zero probability")
        return FockMix.pure(p, FockVec((d, d), branch / np.sqrt(p))), p
    if detector != "onoff":
        raise DomainError(f"detector must be 'pnr' or 'onoff', got {detector!r}")
    branches = []
    for m in range(1, d_aux):
        for n in range(1, d_aux):
            amp = state.amps[:, :, m, n]
            w = float(np.sum(np.abs(amp) ** 2))
            if w > 0:
                branches.append((w, amp))
    p_total = float(sum(w for w, _ in branches))
    if p_total <= 0:
        raise DomainError("conditional preparation has zero probability")
    branches.sort(key=lambda b: b[0], reverse=True)
    kept, acc = [], 0.0
    for w, amp in branches:
        if p_total - acc <= weight_tol * p_total:
            break
        kept.append((w, FockVec((d, d), amp / np.sqrt(w))))
        acc += w
    return FockMix(kept), p_total


def teleport_fock(resource: FockMix, input_state, beta: complex = 0.0, k: float = 0.0):
    """Conditional teleportation through a two-mode resource at outcome beta.

    Mode A of each branch is contracted against the re-normalized coherent bra
    (1/sqrt(pi)) <(alpha+beta)^*| (for a general Fock input, against the
    displaced input amplitudes), then the corrective displacement -k*beta is
    applied to mode B. Returns the output mixture and the outcome probability
    density at beta.
    """
    first = resource.members[0][1]
    da, db = first.dims
    if isinstance(input_state, FockVec):
        vec = input_state
        if beta != 0:
            vec = displace(vec, 0, complex(beta))
        coeff = vec.amps
        if len(coeff) != da:
            raise DomainError("input dimension does not match the resource mode A")
    else:
        coeff = coherent_state(complex(input_state) + complex(beta), da).amps
    out_members = []
    density = 0.0
    corr = -k * complex(beta)
    for w, branch in resource.members:
        out = (coeff @ branch.amps) / np.sqrt(np.pi)
        nrm2 = float(np.sum(np.abs(out) ** 2))
        if nrm2 <= 0:
            continue
        density += w * nrm2
        vec = FockVec((db,), out / np.sqrt(nrm2))
        if corr != 0:
            vec = displace(vec, 0, corr)
        out_members.append((w * nrm2, vec))
    return FockMix(out_members), float(density)


def polar_beta_grid(sigma2: float, radius_factor: float = 5.0, n_radial: int = 60,
                    n_angular: int = 48):
    """Polar quadrature nodes/weights for integrals over the acceptance window.

    Gauss-Legendre radially over [0, radius_factor * sigma], uniform (periodic
    trapezoid) angularly. The acceptance weight is radial, hence the polar grid.
    """
    sigma = np.sqrt(sigma2)
    radius = radius_factor * sigma
    if radius_factor < 5:
        raise GridResolutionError(f"grid must cover radius >= 5 sigma, got {radius_factor}")
    if radius / n_radial > sigma / 6:
        raise GridResolutionError(
            f"radial spacing {radius / n_radial:.3e} exceeds sigma/6 = {sigma / 6:.3e}")
    if n_angular < 48:
        raise GridResolutionError(f"need >= 48 angular nodes, got {n_angular}")
    x, wx = np.polynomial.legendre.leggauss(n_radial)
    r = 0.5 * radius * (x + 1)
    wr = 0.5 * radius * wx * r          # includes the r dr Jacobian
    th = np.arange(n_angular) * 2 * np.pi / n_angular
    beta = np.outer(r, np.exp(1j * th)).ravel()
    weights = np.outer(wr, np.full(n_angular, 2 * np.pi / n_angular)).ravel()
    return beta, weights


def windowed_teleport_fock(resource: FockMix, input_state, sigma2: float, k: float,
                           radius_factor: float = 5.0, n_radial: int = 60,
                           n_angular: int = 48, collect_state: bool = True):
    """Teleportation with the Gaussian acceptance window exp(-|beta|^2/sigma^2).

    Quadrature over the outcome plane of the per-outcome output mixtures
    weighted by acceptance; returns the accepted mixture and the success
    probability P_tele.
    """
    if sigma2 == 0:
        mix, _ = teleport_fock(resource, input_state, 0.0, k)
        return mix, 0.0
    beta, wq = polar_beta_grid(sigma2, radius_factor, n_radial, n_angular)
    acc = np.exp(-np.abs(beta) ** 2 / sigma2)
    members = []
    p_tele = 0.0
    for b, w, a in zip(beta, wq, acc):
        mix, density = teleport_fock(resource, input_state, b, k)
        p_tele += w * a * density
        if collect_state:
            members.extend((w * a * mw, mv) for mw, mv in mix.members)
    return FockMix(members), float(p_tele)


def photon_addition_teleport_demo(lam: float, input_state: FockVec, d: int = 30) -> FockVec:
    """Teleportation-based photon addition: resource = mode-A-subtracted TMSV.

    At outcome beta = 0 the output is proportional to b^dag lam^n |psi>.
    """
    resource = apply_ladder(tmsv_state(lam, (d, d)), 0, "annihilate")
    nrm = resource.norm()
    res_mix = FockMix.pure(1.0, FockVec(resource.dims, resource.amps / nrm))
    out, _ = teleport_fock(res_mix, input_state, 0.0, 0.0)
    return out.members[0][1].check_truncation()


def fock_q(state, amplitudes) -> float:
    """Husimi Q of a FockVec or FockMix at one phase-space point per mode."""
    if isinstance(state, FockVec):
        state = FockMix.pure(1.0, state)
    first = state.members[0][1]
    bras = [np.conj(coherent_state(z, dim).amps)
            for z, dim in zip(np.atleast_1d(amplitudes), first.dims)]
    total = 0.0
    for w, vec in state.members:
        amp = vec.amps
        for bra in bras:
            amp = np.tensordot(bra, amp, axes=(0, 0))
        total += w * abs(complex(amp)) ** 2
    return float(total / (np.pi ** first.n_modes * state.total_weight))


def metrics_fock(state, alpha: complex, target: complex | None = None):
    """Gain, quadrature variances and fidelity against a coherent target.

    Mixture moments are taken over the full mixture (first moments averaged
    before variances are formed). Gain is <a>/alpha, NaN at alpha = 0. The
    default fidelity target is the measured |g(alpha) alpha> (vacuum at 0).
    """
    from .params import Metrics

    if isinstance(state, FockVec):
        state = FockMix.pure(1.0, state)
    ptot = state.total_weight
    if ptot <= 0:
        raise DomainError("metrics of a zero-weight state")
    ea = 0.0 + 0j
    ea2 = 0.0 + 0j
    en = 0.0
    for w, vec in state.members:
        v = vec.amps
        n = np.arange(len(v))
        av = np.zeros_like(v)
        av[:-1] = np.sqrt(n[1:]) * v[1:]
        aav = np.zeros_like(v)
        aav[:-2] = np.sqrt(n[1:-1] * n[2:]) * v[2:]
        ea += w * np.vdot(v, av)
        ea2 += w * np.vdot(v, aav)
        en += w * float(np.real(np.vdot(v, n * v)))
    ea, ea2, en = ea / ptot, ea2 / ptot, en / ptot
    mx, mp_ = np.sqrt(2) * ea.real, np.sqrt(2) * ea.imag
    vx = (2 * en + 1 + 2 * ea2.real) / 2 - mx ** 2
    vp = (2 * en + 1 - 2 * ea2.real) / 2 - mp_ ** 2
    gain = float((ea / alpha).real) if alpha != 0 else float("nan")
    if target is None:
        target = gain * alpha if alpha != 0 else 0.0
    dmax = max(vec.dims[0] for _, vec in state.members)
    tgt = coherent_state(target, dmax).amps
    fid = sum(w * abs(np.vdot(tgt[:len(vec.amps)], vec.amps)) ** 2
              for w, vec in state.members) / ptot
    return Metrics(gain=gain, fidelity=float(fid), vx=float(vx), vp=float(vp))
