"""Command-line front end.

Subcommands: validate (kernel file linting), profile (per-site correction
table), sweep (n-ladder of residual decay), verify (the named check suite),
sample (Monte Carlo trajectories).  Numeric tables go out as CSV, machine
reports as JSON.  Exit codes: 0 success, 1 validation or verification
failure, 2 I/O or configuration error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import asdict

import numpy as np

from . import csvio
from ._backend import BACKEND
from .asymptotics import correction_profile, delta_quadrature, exact_correction, scale_guard
from .errors import PointwalkError
from .kernels import (
    LAZY_1D,
    LAZY_2D,
    LAZY_3D,
    NN_2D,
    SYMMETRIC_1D,
    load_walk,
    moments,
)
from .montecarlo import drift_estimate, sample
from .quadrature import QuadratureConfig
from .verification import CHECKS, check_names, run_checks

STOCK_WALKS = {
    "lazy1d": LAZY_1D,
    "nn2d": NN_2D,
    "lazy2d": LAZY_2D,
    "lazy3d": LAZY_3D,
    "sym1d": SYMMETRIC_1D,
}


def _resolve_walk(name: str):
    if name in STOCK_WALKS:
        return STOCK_WALKS[name]()
    return load_walk(name)


def _quad_config(args) -> QuadratureConfig:
    return QuadratureConfig(abs_tol=args.tol_abs, rel_tol=args.tol_rel)


def _guard_sites(sites, n: int, unsafe: bool):
    """Apply the sqrt(n)*log(n) scale guard to requested sites."""
    guard = scale_guard(n)
    inside = [s for s in sites if float(np.linalg.norm(s)) <= guard]
    outside = len(sites) - len(inside)
    if outside == 0:
        return sites
    if not unsafe:
        raise SystemExit(_config_error(
            f"{outside} requested sites lie beyond the asymptotic validity "
            f"radius sqrt(n)*log(n) = {guard:.1f}; pass --unsafe-scale to "
            f"evaluate them anyway"
        ))
    print(
        f"warning: {outside} sites beyond the validity radius {guard:.1f} "
        f"kept because of --unsafe-scale",
        file=sys.stderr,
    )
    return sites


def _config_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def cmd_validate(args) -> int:
    try:
        walk = _resolve_walk(args.kernel)
    except PointwalkError as exc:
        if args.format == "json":
            print(json.dumps({"valid": False, "error": type(exc).__name__,
                              "message": str(exc)}, indent=2))
        else:
            print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    mom = moments(walk)
    info = {
        "valid": True,
        "dim": walk.dim,
        "free_support": sorted(walk.free.entries),
        "epsilon": walk.epsilon,
        "antisymmetric_support": sorted(walk.anti.entries),
        "symmetric_support": sorted(walk.sym.entries),
        "aperiodic": walk.aperiodic,
        "covariance": mom.covariance.tolist(),
        "drift": mom.drift.tolist(),
        "kernel_hash": walk.content_hash(),
    }
    if args.format == "json":
        print(json.dumps(info, indent=2))
    else:
        print(f"valid kernel ({args.kernel})")
        print(f"  dimension  : {walk.dim}")
        print(f"  aperiodic  : {walk.aperiodic}")
        print(f"  B          : {mom.covariance.tolist()}")
        print(f"  d          : {mom.drift.tolist()}")
        print(f"  epsilon    : {walk.epsilon}")
        print(f"  hash       : {walk.content_hash()}")
    return 0


def _profile_sites(walk, n: int, args):
    box = n * walk.max_step_radius()
    lo = args.x_min if args.x_min is not None else -min(
        box, int(scale_guard(n))
    )
    hi = args.x_max if args.x_max is not None else min(box, int(scale_guard(n)))
    if lo > hi:
        raise SystemExit(_config_error(f"empty site range [{lo}, {hi}]"))
    if abs(lo) > box or abs(hi) > box:
        raise SystemExit(_config_error(
            f"requested range [{lo}, {hi}] leaves the exact box (radius {box})"
        ))
    if args.transect or walk.dim == 1:
        sites = [(r,) + (0,) * (walk.dim - 1) for r in range(lo, hi + 1)]
    else:
        sites = [s for s in itertools.product(range(lo, hi + 1),
                                              repeat=walk.dim)]
    return _guard_sites(sites, n, args.unsafe_scale)


def cmd_profile(args) -> int:
    walk = _resolve_walk(args.kernel)
    sites = _profile_sites(walk, args.n, args)
    prof = correction_profile(
        walk, args.n, sites=sites, cfg=_quad_config(args), radius=args.radius
    )
    if args.out:
        csvio.write_profile(prof, args.out)
        print(f"wrote {len(prof)} rows to {args.out}", file=sys.stderr)
    else:
        csvio.write_profile(prof, "/dev/stdout")
    return 0


def cmd_sweep(args) -> int:
    walk = _resolve_walk(args.kernel)
    ns = sorted(int(v) for v in args.ns.split(","))
    xs = [int(v) for v in args.xs.split(",")]
    if not ns or not xs:
        return _config_error("sweep needs --ns and --xs")
    sites = [(x,) + (0,) * (walk.dim - 1) for x in xs]
    _guard_sites(sites, min(ns), args.unsafe_scale)
    mom = moments(walk)
    cfg = _quad_config(args)
    nu = walk.dim
    rows = []
    for n in ns:
        corr = exact_correction(walk, n)
        for site in sites:
            dq = delta_quadrature(mom, n, site, cfg)
            cv = corr.value_at(site)
            scale = float(n) ** (0.5 * nu)
            rows.append([n, *site, cv, dq,
                         scale * abs(cv - dq), scale * abs(dq)])
    header = (["n"] + [f"x_{i + 1}" for i in range(nu)]
              + ["exact_correction", "delta_quadrature",
                 "scaled_residual", "scaled_delta"])
    meta = {"dim": nu, "kernel": walk.content_hash(),
            "ns": " ".join(str(n) for n in ns)}
    out = args.out or "/dev/stdout"
    csvio.write_sweep(rows, header, out, meta)
    if args.out:
        print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    if args.checks:
        names = [c.strip() for c in args.checks.split(",") if c.strip()]
        unknown = [c for c in names if c not in CHECKS]
        if unknown:
            return _config_error(
                f"unknown checks {unknown}; available: {', '.join(CHECKS)}"
            )
    else:
        names = check_names(args.quick)
    results = run_checks(names, quick=args.quick)
    for res in results:
        print(res.line())
    all_passed = all(r.passed for r in results)
    report = {
        "backend": BACKEND,
        "quick": args.quick,
        "all_passed": all_passed,
        "checks": [asdict(r) for r in results],
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    if args.format == "json":
        print(json.dumps(report, indent=2))
    print("all checks passed" if all_passed else "FAILURES present",
          file=sys.stderr)
    return 0 if all_passed else 1


def cmd_sample(args) -> int:
    walk = _resolve_walk(args.kernel)
    field = sample(walk, args.n, args.samples, seed=args.seed)
    out = args.out or "/dev/stdout"
    csvio.write_empirical_field(field, out, kernel_hash=walk.content_hash())
    drift = drift_estimate(field)
    print(
        f"sampled {args.samples} trajectories of {args.n} steps "
        f"(seed {args.seed}, backend {BACKEND}); mean endpoint "
        f"{np.round(drift, 6).tolist()}",
        file=sys.stderr,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pointwalk",
        description="Exact and asymptotic transition probabilities of a "
                    "lattice walk perturbed at the origin.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common_kernel(sp):
        sp.add_argument(
            "--kernel", required=True,
            help="stock kernel name (%s) or path to a JSON kernel file"
                 % ", ".join(STOCK_WALKS),
        )

    sp = sub.add_parser("validate", help="check a kernel file and report moments")
    common_kernel(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("profile", help="per-site correction table (CSV)")
    common_kernel(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--x-min", type=int, default=None)
    sp.add_argument("--x-max", type=int, default=None)
    sp.add_argument("--radius", type=int, default=None)
    sp.add_argument("--tol-abs", type=float, default=1e-12)
    sp.add_argument("--tol-rel", type=float, default=1e-10)
    sp.add_argument("--transect", action="store_true",
                    help="first-axis line instead of the full box")
    sp.add_argument("--unsafe-scale", action="store_true",
                    help="evaluate beyond the sqrt(n)*log(n) validity radius")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("sweep", help="n-ladder of residual decay (CSV)")
    common_kernel(sp)
    sp.add_argument("--ns", required=True, help="comma-separated horizons")
    sp.add_argument("--xs", required=True,
                    help="comma-separated first-axis offsets")
    sp.add_argument("--tol-abs", type=float, default=1e-12)
    sp.add_argument("--tol-rel", type=float, default=1e-10)
    sp.add_argument("--unsafe-scale", action="store_true")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run the named verification suite")
    sp.add_argument("--quick", action="store_true",
                    help="fast subset (horizons <= 64, no ladders)")
    sp.add_argument("--checks", default=None,
                    help="comma-separated check names (default: all)")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--out", default=None, help="write the JSON report here")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sample", help="Monte Carlo endpoint counts (CSV)")
    common_kernel(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    except PointwalkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
