"""Bracketing root solve for the auxiliary squeezing that hits a target gain."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import BracketError
from .params import AmplifierParams
from . import phasespace, pure


@dataclass(frozen=True)
class SolveSpec:
    """Target effective gain, bracket for the free variable mu, and the
    tolerance |gain(mu) - target| at which the solve stops."""

    target_g_eff: float
    bracket: tuple
    tolerance: float = 1e-5


def solve_bracketed(fn, lo: float, hi: float, ytol: float, xtol: float = 1e-13,
                    max_iter: int = 200) -> float:
    """Bisection with secant acceleration on a sign-changing bracket.

    The secant step is taken when it lands strictly inside the bracket,
    otherwise the step falls back to bisection; convergence is declared on
    |f| < ytol (with xtol as a safety stop).
    """
    flo, fhi = fn(lo), fn(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        samples = [(lo, flo), (hi, fhi)]
        for x in np.linspace(lo, hi, 9)[1:-1]:
            samples.append((float(x), fn(float(x))))
        raise BracketError(
            f"no sign change on bracket [{lo}, {hi}]: f = ({flo:.6g}, {fhi:.6g})",
            sorted(samples))
    for it in range(max_iter):
        x = hi - fhi * (hi - lo) / (fhi - flo)
        # every other step bisects, keeping the worst case at bisection rate
        # even when the secant crawls one-sided along a steep flank
        if it % 2 == 1 or not min(lo, hi) < x < max(lo, hi):
            x = 0.5 * (lo + hi)
        fx = fn(x)
        if abs(fx) < ytol or abs(hi - lo) < xtol:
            return x
        if np.sign(fx) == np.sign(flo):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
    raise BracketError(f"no convergence after {max_iter} iterations", [(lo, flo), (hi, fhi)])


def small_alpha_gain(params: AmplifierParams, model: str = "phase",
                     alpha_probe: float = 1e-4) -> float:
    """Effective (small-amplitude) gain of the requested model."""
    if model == "phase":
        resource, _ = phasespace.resource_q(params)
        if params.sigma2 > 0:
            mix, _, _ = phasespace.teleamp_windowed(resource, alpha_probe, params.sigma2,
                                                    params.k)
        else:
            mix, _ = phasespace.teleamp_beta0(resource, alpha_probe)
        return phasespace.metrics_q(mix, alpha_probe).gain
    if model == "pure":
        return pure.g_eff_exact(params.lam, params.mu, params.T)
    raise ValueError(f"unknown model {model!r}")


def solve_mu(spec: SolveSpec, params: AmplifierParams, model: str = "phase",
             alpha_probe: float = 1e-4) -> float:
    """Auxiliary squeezing mu that realizes the target effective gain.

    The gain is evaluated on the requested model at a small probe amplitude
    (the realistic model is calibrated numerically, not through the ideal
    closed form). Raises BracketError with the sampled gain curve when the
    bracket does not straddle the target.
    """
    lo, hi = spec.bracket

    def objective(mu):
        return small_alpha_gain(replace(params, mu=mu), model, alpha_probe) - spec.target_g_eff

    return solve_bracketed(objective, lo, hi, ytol=spec.tolerance)
