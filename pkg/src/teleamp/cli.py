"""Command-line front end: sweeps, mu calibration, figure data, validation.

Exit codes: 0 success, 1 validation failure, 2 config or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .checks import run_checks
from .config import load_config, params_from_config, solve_spec_from_config, \
    sweep_spec_from_config
from .errors import BracketError, DomainError
from .figures import run_figure
from .sweep import run_sweep, write_csv


def _cmd_sweep(args) -> int:
    spec = sweep_spec_from_config(load_config(args.config))
    rows = run_sweep(spec)
    write_csv(args.out, rows, spec.columns)
    n_err = sum(1 for r in rows if r["error"])
    print(f"wrote {len(rows)} rows to {args.out}" + (f" ({n_err} row errors)" if n_err else ""))
    return 0


def _cmd_solve_mu(args) -> int:
    from .calibrate import solve_mu

    cfg = load_config(args.config)
    params = params_from_config(cfg)
    spec = solve_spec_from_config(cfg, args.target)
    if args.bracket:
        spec = type(spec)(spec.target_g_eff, tuple(args.bracket), spec.tolerance)
    try:
        mu = solve_mu(spec, params, model=args.model)
    except BracketError as exc:
        print(f"bracket error: {exc}", file=sys.stderr)
        for x, fx in exc.samples:
            print(f"  mu={x:+.6f}  gain-target={fx:+.6f}", file=sys.stderr)
        return 2
    print(f"{mu:.17g}")
    return 0


def _cmd_validate(args) -> int:
    results = run_checks(args.filter)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{status}] {res.name}: measured {res.measured:.3e} "
              f"(tolerance {res.tolerance:.3e}) {res.detail}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([r.as_dict() for r in results], fh, indent=2)
    n_fail = sum(1 for r in results if not r.passed)
    print(f"{len(results) - n_fail}/{len(results)} checks passed")
    return 1 if n_fail else 0


def _cmd_figure(args) -> int:
    paths = run_figure(args.id, args.out_dir)
    for p in paths:
        print(f"wrote {p}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teleamp",
        description="Teleportation-based noiseless-amplifier simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a sweep config and emit CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("solve-mu", help="calibrate mu for a target effective gain")
    p.add_argument("--config", required=True)
    p.add_argument("--target", type=float, required=True)
    p.add_argument("--model", choices=("phase", "pure"), default="phase")
    p.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))
    p.set_defaults(fn=_cmd_solve_mu)

    p = sub.add_parser("validate", help="run the cross-model invariant suite")
    p.add_argument("--filter", default=None, help="substring filter on check names")
    p.add_argument("--json", default=None, help="also write the report as JSON")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("figure", help="emit per-panel CSV data of a committed figure")
    p.add_argument("--id", required=True, choices=("4", "5", "6"))
    p.add_argument("--out-dir", required=True)
    p.set_defaults(fn=_cmd_figure)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (DomainError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
