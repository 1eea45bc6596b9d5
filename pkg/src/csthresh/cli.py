"""Command-line front end.

Subcommands: curve, invert, width, phase, check-nsp.  Numeric output is
printed at 17 significant digits so emitted files round-trip bit-for-bit
and can serve as fixtures.  Exit codes: 0 success, 1 solver failure,
2 invalid arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .lp import LpNumericalError
from .recovery import phase_diagram, read_matrix_file
from .recovery import nsp_fixed_support_detail, nsp_strong_detail
from .thresholds import (
    CurvePoint,
    NoRootError,
    SolverConfig,
    ThresholdKind,
    alpha_bound,
    curve,
    invert_alpha,
)
from .width import CMode, width_monte_carlo

_KINDS = {
    "strong": ThresholdKind.STRONG,
    "sectional": ThresholdKind.SECTIONAL,
    "weak": ThresholdKind.WEAK,
    "nonneg": ThresholdKind.WEAK_NONNEG,
}


class UsageError(ValueError):
    pass


def _fmt(x: float) -> str:
    return format(x, ".17g")


def parse_grid(spec: str) -> list[float]:
    """"start:stop:step", inclusive of start and of stop within half a step."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid spec must be start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"non-numeric grid spec {spec!r}") from exc
    if step <= 0:
        raise UsageError("grid step must be positive")
    out = []
    i = 0
    while True:
        v = start + i * step
        if v > stop + step / 2:
            break
        out.append(v)
        i += 1
    if not out:
        raise UsageError(f"empty grid from spec {spec!r}")
    return out


def _point_flags(p: CurvePoint) -> str:
    flags = []
    if not p.feasible:
        flags.append("no_root")
    if p.multiple_roots:
        flags.append("multiple_roots")
    return ";".join(flags)


def _write(out_path: str | None, text: str) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _curve_svg(points: list[CurvePoint]) -> str:
    """Single-file SVG polyline of alpha_min against beta, unit square."""
    w, h, pad = 400, 400, 40
    coords = []
    for p in points:
        x = pad + p.beta * (w - 2 * pad)
        y = h - pad - min(p.alpha_min, 1.0) * (h - 2 * pad)
        coords.append(f"{x:.2f},{y:.2f}")
    poly = " ".join(coords)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">\n'
        f'<rect x="{pad}" y="{pad}" width="{w - 2 * pad}" '
        f'height="{h - 2 * pad}" fill="none" stroke="black"/>\n'
        f'<polyline points="{poly}" fill="none" stroke="blue"/>\n'
        "</svg>\n"
    )


def cmd_curve(args: argparse.Namespace) -> int:
    grid = parse_grid(args.beta)
    if any(not 0.0 < b < 1.0 for b in grid):
        raise UsageError("beta grid must lie inside (0, 1)")
    cfg = SolverConfig(eps=args.eps)
    points = curve(_KINDS[args.kind], grid, cfg)
    lines = ["kind,beta,theta_hat,alpha_min,eps,flags"]
    for p in points:
        lines.append(",".join([
            p.kind.value, _fmt(p.beta), _fmt(p.theta_hat), _fmt(p.alpha_min),
            _fmt(p.eps), _point_flags(p)]))
    _write(args.out, "\n".join(lines) + "\n")
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(_curve_svg(points))
    return 0


def cmd_invert(args: argparse.Namespace) -> int:
    if not 0.0 < args.alpha <= 1.0:
        raise UsageError("alpha must lie in (0, 1]")
    cfg = SolverConfig(eps=args.eps)
    beta = invert_alpha(_KINDS[args.kind], args.alpha, cfg)
    p = alpha_bound(_KINDS[args.kind], beta, cfg)
    _write(args.out,
           "kind,alpha,beta,theta_hat,eps\n" + ",".join([
               p.kind.value, _fmt(args.alpha), _fmt(beta), _fmt(p.theta_hat),
               _fmt(p.eps)]) + "\n")
    return 0


def cmd_width(args: argparse.Namespace) -> int:
    if not (0 < args.k < args.n and args.samples >= 2 and args.m >= 1):
        raise UsageError("need 0 < k < n, samples >= 2, m >= 1")
    mode = CMode.POPULATION if args.c_mode == "population" else CMode.EXACT_DUAL
    rep = width_monte_carlo(_KINDS[args.kind], args.n, args.k, args.samples,
                            args.seed, args.m, mode, threads=args.threads)
    payload = {
        "kind": rep.kind.value,
        "n": rep.n,
        "k": rep.k,
        "samples": rep.samples,
        "c_mode": rep.c_mode.value,
        "mean_B_over_sqrt_n": rep.mean_B_over_sqrt_n,
        "std_err": rep.std_err,
        "gordon_budget": rep.gordon_budget,
        "pass": rep.passed,
        "m": args.m,
        "seed": args.seed,
    }
    _write(args.out, json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_phase(args: argparse.Namespace) -> int:
    alpha_grid = parse_grid(args.alpha)
    beta_grid = parse_grid(args.beta)
    if any(not 0.0 < v <= 1.0 for v in alpha_grid + beta_grid):
        raise UsageError("grids must lie in (0, 1]")
    cells = phase_diagram(args.n, alpha_grid, beta_grid, args.trials,
                          _KINDS[args.model], args.seed, threads=args.threads)
    lines = ["alpha,beta,n,trials,successes,lp_failures,seed"]
    for c in cells:
        lines.append(",".join([
            _fmt(c.alpha), _fmt(c.beta), str(c.n), str(c.trials),
            str(c.successes), str(c.lp_failures), str(c.seed)]))
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_check_nsp(args: argparse.Namespace) -> int:
    A = read_matrix_file(args.matrix)
    if args.variant == "strong":
        verdict, witness = nsp_strong_detail(A, args.k)
    else:
        variant = {"sectional": "Sectional", "weak-signs": "WeakSigns",
                   "nonneg": "Nonnegative"}[args.variant]
        verdict, witness = nsp_fixed_support_detail(A, args.k, variant)
    lines = [verdict]
    if witness is not None:
        support, signs, w = witness
        lines.append("support=" + ",".join(str(i) for i in support))
        lines.append("signs=" + ",".join(_fmt(s) for s in signs))
        lines.append("w=" + ",".join(_fmt(v) for v in w))
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="csthresh",
        description="l1-recovery thresholds, widths, and phase diagrams")
    default_threads = int(os.environ.get("CS_THRESH_THREADS",
                                         os.cpu_count() or 1))
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--threads", type=int, default=default_threads)

    p = sub.add_parser("curve", help="threshold curve alpha_min(beta)")
    p.add_argument("--kind", choices=sorted(_KINDS), required=True)
    p.add_argument("--beta", required=True, help="grid start:stop:step")
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--svg", default=None, help="also write an SVG polyline")
    common(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("invert", help="beta at a given alpha")
    p.add_argument("--kind", choices=sorted(_KINDS), required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--eps", type=float, default=0.0)
    common(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("width", help="Monte Carlo width vs Gordon budget")
    p.add_argument("--kind", choices=sorted(_KINDS), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c-mode", choices=["population", "exact"],
                   default="exact")
    common(p)
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("phase", help="empirical phase diagram")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True, help="grid start:stop:step")
    p.add_argument("--beta", required=True, help="grid start:stop:step")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--model", choices=sorted(_KINDS), default="weak")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("check-nsp", help="null-space property verdict")
    p.add_argument("--matrix", required=True, help="text file: 'm n' then rows")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--variant",
                   choices=["strong", "sectional", "weak-signs", "nonneg"],
                   default="strong")
    common(p)
    p.set_defaults(func=cmd_check_nsp)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (NoRootError, LpNumericalError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 1
    except (UsageError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
