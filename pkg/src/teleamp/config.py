"""Flat dotted key-value config files (diff-able, committed-fixture friendly).

Format: one `key = value` per line, `#` starts a comment, keys use dotted
sections (model.*, params.*, sweep.*, solve.*). All quantities dimensionless.
"""

from __future__ import annotations

from .errors import DomainError
from .params import AmplifierParams


def parse_config(text: str) -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def load_config(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def _get(cfg: dict, key: str, cast, default=None):
    if key not in cfg:
        return default
    try:
        return cast(cfg[key])
    except ValueError as exc:
        raise DomainError(f"config key {key}: {exc}") from exc


def params_from_config(cfg: dict) -> AmplifierParams:
    lam = _get(cfg, "params.lam", float, 0.5)
    g = _get(cfg, "params.g", float)
    g_eff = _get(cfg, "params.g_eff", float)
    if g is None and g_eff is not None:
        if lam == 0:
            raise DomainError("params.g_eff requires nonzero params.lam")
        g = g_eff / lam
    n = _get(cfg, "params.N", int)
    return AmplifierParams(
        lam=lam,
        mu=_get(cfg, "params.mu", float, 0.0),
        T=_get(cfg, "params.T", float, 1.0),
        g=g,
        N=n,
        sigma2=_get(cfg, "params.sigma2", float, 0.0),
        k=_get(cfg, "params.k", float, 0.0),
        eta_ab=_get(cfg, "params.eta_ab", float, 1.0),
        eta_cd=_get(cfg, "params.eta_cd", float, 1.0),
        eta_apd=_get(cfg, "params.eta_apd", float, 1.0),
    )


def sweep_spec_from_config(cfg: dict):
    from .sweep import SweepSpec  # deferred: sweep imports params too

    model = _get(cfg, "model.kind", str, "phase")
    outputs = _get(cfg, "outputs", str)
    return SweepSpec(
        model=model,
        alpha_start=_get(cfg, "sweep.alpha_start", float, 0.0),
        alpha_stop=_get(cfg, "sweep.alpha_stop", float, 1.0),
        alpha_count=_get(cfg, "sweep.alpha_count", int, 51),
        params=params_from_config(cfg),
        fidelity_mode=_get(cfg, "model.fidelity_target", str, "galpha"),
        fock_detector=_get(cfg, "model.fock_detector", str, "pnr"),
        fock_dim=_get(cfg, "model.fock_dim", int, 30),
        fock_dim_aux=_get(cfg, "model.fock_dim_aux", int, 8),
        outputs=tuple(s.strip() for s in outputs.split(",")) if outputs else None,
    )


def solve_spec_from_config(cfg: dict, target: float):
    from .calibrate import SolveSpec

    lo = _get(cfg, "solve.bracket_lo", float, -0.022)
    hi = _get(cfg, "solve.bracket_hi", float, -0.0005)
    tol = _get(cfg, "solve.tolerance", float, 1e-5)
    return SolveSpec(target_g_eff=target, bracket=(lo, hi), tolerance=tol)
