"""Protocol parameter bundle and the per-amplitude output metrics record."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError


@dataclass(frozen=True)
class AmplifierParams:
    """All protocol knobs, dimensionless.

    lam, mu are the squeezing strengths (tanh of the squeezing constants) of the
    main and auxiliary two-mode squeezed vacuum sources, T the tapping beam
    splitter transmittance (R = 1 - T), g the nominal amplification gain of the
    (g-1)n+1 amplifier family (derived from lam/mu/T when None), N the cutoff of
    the truncated-amplifier family, sigma2 the squared acceptance-window width,
    k the corrective-displacement constant, and the etas the effective loss
    transmittances of the source pairs and the click detectors.
    """

    lam: float = 0.5
    mu: float = 0.0
    T: float = 1.0
    g: float | None = None
    N: int | None = None
    sigma2: float = 0.0
    k: float = 0.0
    eta_ab: float = 1.0
    eta_cd: float = 1.0
    eta_apd: float = 1.0

    def __post_init__(self):
        if not abs(self.lam) < 1:
            raise DomainError(f"lam must satisfy |lam| < 1, got {self.lam}")
        if not abs(self.mu) < 1:
            raise DomainError(f"mu must satisfy |mu| < 1, got {self.mu}")
        if not 0.0 <= self.T <= 1.0:
            raise DomainError(f"T must lie in [0, 1], got {self.T}")
        if self.g is not None and not self.g > 0:
            raise DomainError(f"g must be positive, got {self.g}")
        if self.N is not None and self.N < 0:
            raise DomainError(f"N must be a non-negative integer, got {self.N}")
        if self.sigma2 < 0:
            raise DomainError(f"sigma2 must be non-negative, got {self.sigma2}")
        for name in ("eta_ab", "eta_cd", "eta_apd"):
            eta = getattr(self, name)
            if not 0.0 <= eta <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {eta}")
        if not abs(self.lam_eff) < 1:
            raise DomainError(
                f"effective squeezing T*lam + R*mu = {self.lam_eff} must have modulus < 1")

    @property
    def R(self) -> float:
        return 1.0 - self.T

    @property
    def lam_eff(self) -> float:
        return self.T * self.lam + self.R * self.mu


@dataclass
class Metrics:
    """Per-amplitude outputs of any of the three models.

    Quadrature variances use the convention V_x = <dx^2> with vacuum 1/2.
    Quantities that a given model/parametrization does not define are NaN.
    """

    gain: float = float("nan")
    fidelity: float = float("nan")
    vx: float = float("nan")
    vp: float = float("nan")
    p_ab: float = float("nan")
    p_tele: float = float("nan")
    p_tot: float = float("nan")

    @property
    def uncertainty_product(self) -> float:
        return self.vx * self.vp

    def violations(self) -> list[str]:
        """Invariant violations (empty list when the record is consistent)."""
        out = []
        if self.fidelity == self.fidelity and self.fidelity > 1 + 1e-9:
            out.append(f"fidelity {self.fidelity} > 1")
        for name in ("p_ab", "p_tele", "p_tot"):
            p = getattr(self, name)
            if p == p and not -1e-12 <= p <= 1 + 1e-9:
                out.append(f"{name} {p} outside [0, 1]")
        up = self.uncertainty_product
        if up == up and up < 0.25 - 1e-9:
            out.append(f"uncertainty product {up} below vacuum limit 1/4")
        return out
