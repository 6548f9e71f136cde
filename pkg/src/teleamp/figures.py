"""Committed figure fixtures: run their sweeps and emit per-panel CSV files."""

from __future__ import annotations

import importlib.resources
from pathlib import Path

from .config import parse_config, sweep_spec_from_config
from .errors import DomainError
from .sweep import format_value, run_sweep

# Each figure is a set of labelled curve sweeps plus per-panel column picks.
FIGURES = {
    "4": {
        "curves": (("geff15", "fig4_geff15.cfg"), ("geff20", "fig4_geff20.cfg")),
        "panels": {"a": ("gain",), "b": ("fidelity",), "c": ("Vx", "Vp"),
                   "d": ("VxVp", "benchmark_det")},
    },
    "5": {
        "curves": (("geff15", "fig5_geff15.cfg"), ("geff20", "fig5_geff20.cfg")),
        "panels": {"a": ("gain",), "b": ("fidelity",), "c": ("Vx", "Vp"),
                   "d": ("VxVp", "benchmark_det")},
    },
    "6": {
        "curves": (("k1", "fig6_k1.cfg"), ("k0", "fig6_k0.cfg")),
        "panels": {"a": ("gain",), "b": ("fidelity",), "c": ("Vx", "Vp"),
                   "d": ("VxVp", "benchmark_det"), "e": ("P_tele",), "f": ("P_tot",)},
    },
}


def load_fixture_config(name: str) -> dict:
    text = importlib.resources.files("teleamp.figconfigs").joinpath(name).read_text()
    return parse_config(text)


def run_figure(figure_id: str, out_dir) -> list:
    """Run the committed sweeps of one figure and write fig<id>_<panel>.csv files.

    Panel files hold the alpha grid plus one column per curve and metric,
    named <metric>_<curve>, in full double precision.
    """
    if str(figure_id) not in FIGURES:
        raise DomainError(f"unknown figure id {figure_id!r}; available: 4, 5, 6")
    fig = FIGURES[str(figure_id)]
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    datasets = []
    for label, cfg_name in fig["curves"]:
        spec = sweep_spec_from_config(load_fixture_config(cfg_name))
        datasets.append((label, run_sweep(spec)))
    alphas = [row["alpha"] for row in datasets[0][1]]
    written = []
    for panel, metrics in fig["panels"].items():
        header = ["alpha"] + [f"{m}_{label}" for label, _ in datasets for m in metrics]
        lines = [",".join(header)]
        for i, alpha in enumerate(alphas):
            vals = [alpha]
            for _, rows in datasets:
                vals.extend(rows[i][m] for m in metrics)
            lines.append(",".join(format_value(v) for v in vals))
        path = out_dir / f"fig{figure_id}_{panel}.csv"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(path)
    return written
