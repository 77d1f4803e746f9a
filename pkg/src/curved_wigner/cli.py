"""``curved-wigner`` command line.

Exit status: 0 success, 1 failed numerical check (verify), 2 bad
configuration.
"""

from __future__ import annotations

import argparse
import json
import sys

from .report import (
    COMMANDS,
    SUITES,
    ConfigError,
    RunConfig,
    cmd_ads2_levels,
    cmd_flat_levels,
    cmd_quasientropy_curve,
    cmd_verify,
    cmd_wigner_grid,
)


def _range(text: str) -> tuple:
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="curved-wigner",
        description="Wigner functions and phase-space entropies on 1D curved slices.",
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--geometry", choices=("flat", "ads2"), default=None)
    ap.add_argument("--n-max", type=int, default=5, help="highest flat level (flat-levels)")
    ap.add_argument("--j-max", type=int, default=8, help="highest AdS2 j (ads2-levels)")
    ap.add_argument("--radius", type=float, default=1.0, help="AdS2 radius R")
    ap.add_argument("--alpha", type=float, default=1.0, help="flat oscillator scale")
    ap.add_argument("--tol", type=float, default=1e-8, help="quadrature tolerance")
    ap.add_argument("--out", default=None, help="output file (default stdout)")
    ap.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    ap.add_argument("--level", type=int, default=None, help="n (flat) or j (ads2) for wigner-grid")
    ap.add_argument("--p-min", type=float, default=-1.0)
    ap.add_argument("--p-max", type=float, default=2.0)
    ap.add_argument("--steps", type=int, default=301)
    ap.add_argument("--x-range", type=_range, default=(-4.0, 4.0))
    ap.add_argument("--p-range", type=_range, default=(-4.0, 4.0))
    ap.add_argument("--nx", type=int, default=81)
    ap.add_argument("--np", dest="np_", type=int, default=81)
    ap.add_argument("--suite", choices=SUITES, default="all")
    # test hook: shifts every entropy in the bounds suite
    ap.add_argument("--perturbation", type=float, default=0.0, help=argparse.SUPPRESS)
    return ap


def _config(args) -> RunConfig:
    geometry = args.geometry or ("flat" if args.command == "flat-levels" else "ads2")
    level = args.level if args.level is not None else (0 if geometry == "flat" else 1)
    return RunConfig(
        command=args.command,
        geometry=geometry,
        n_max=args.n_max,
        j_max=args.j_max,
        radius=args.radius,
        alpha=args.alpha,
        tol=args.tol,
        out=args.out,
        fmt=args.fmt,
        level=level,
        p_min=args.p_min,
        p_max=args.p_max,
        steps=args.steps,
        x_range=args.x_range,
        p_range=args.p_range,
        nx=args.nx,
        np_=args.np_,
        suite=args.suite,
        perturbation=args.perturbation,
    ).validate()


def run(cfg: RunConfig) -> int:
    q = cfg.quadrature()
    if cfg.command == "verify":
        status, report = cmd_verify(cfg.suite, perturbation=cfg.perturbation)
        text = json.dumps(report, indent=2, sort_keys=True)
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            print(text)
        return status
    if cfg.command == "quasientropy-curve":
        table = cmd_quasientropy_curve(cfg.p_min, cfg.p_max, cfg.steps)
    elif cfg.command == "flat-levels":
        table = cmd_flat_levels(cfg.n_max, cfg.alpha, q)
    elif cfg.command == "ads2-levels":
        table = cmd_ads2_levels(cfg.j_max, cfg.radius, q)
    else:
        params = {"n": cfg.level, "alpha": cfg.alpha} if cfg.geometry == "flat" else {
            "j": cfg.level, "R": cfg.radius}
        table = cmd_wigner_grid(cfg.geometry, params, cfg.x_range, cfg.p_range, cfg.nx, cfg.np_)
    table.config = cfg.to_dict()
    text = table.write(cfg.out, cfg.fmt)
    if not cfg.out:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)  # argparse exits with status 2 on bad flags
    try:
        cfg = _config(args)
    except ConfigError as exc:
        print(f"curved-wigner: {exc}", file=sys.stderr)
        return 2
    try:
        return run(cfg)
    except ConfigError as exc:
        print(f"curved-wigner: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
