"""Command-line entry point: ``xxdefects <command> [options]``."""
from __future__ import annotations

import argparse
import dataclasses
import itertools
import sys

import numpy as np

from .exact import rdm_exact
from .measures import MEASURES
from .model import ChainSpec
from .rdm import defect_rdm
from .sweep import SweepPlan, eps_d_grid, load_plan, parse_d_list, run_rdm_dump, run_regions, run_spectrum, run_sweep

ORACLE_GRID = {"n": (10, 12), "d": (1, 2), "h": (1.0, 2.0), "epsilon": (0.5, 2.0, 5.0)}


def _measures(text: str) -> tuple[str, ...]:
    items = tuple(t for t in text.replace(",", " ").split() if t)
    bad = set(items) - set(MEASURES)
    if bad:
        raise argparse.ArgumentTypeError(f"unknown measures {sorted(bad)}; choose from {', '.join(MEASURES)}")
    return items


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xxdefects", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="entanglement measures over a (d, eps*d) grid")
    sw.add_argument("--plan", help="flat key = value plan file; flags override it")
    sw.add_argument("--h", type=float)
    sw.add_argument("--d", type=parse_d_list, help="e.g. 1..9 or 1,2,5")
    sw.add_argument("--eps-d-min", type=float)
    sw.add_argument("--eps-d-max", type=float)
    sw.add_argument("--eps-d-step", type=float)
    sw.add_argument("--n", type=int)
    sw.add_argument("--seed", type=int)
    sw.add_argument("--threads", type=int)
    sw.add_argument("--measures", type=_measures, help=f"comma list from {','.join(MEASURES)}; empty for none")
    sw.add_argument("--runs", type=int, help="multistart runs per lower bound")
    sw.add_argument("--witness-iters", type=int)
    sw.add_argument("--witness-samples", type=int)
    sw.add_argument("--out")

    sp = sub.add_parser("spectrum", help="single-particle levels versus epsilon")
    sp.add_argument("--h", type=float, default=2.0)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--eps-min", type=float, default=0.0)
    sp.add_argument("--eps-max", type=float, default=6.0)
    sp.add_argument("--eps-step", type=float, default=0.1)
    sp.add_argument("--n", type=int, default=1024)
    sp.add_argument("--out")

    rg = sub.add_parser("regions", help="number of bound states by three methods")
    rg.add_argument("--h", type=float, default=2.0)
    rg.add_argument("--d", type=parse_d_list, default=tuple(range(1, 10)))
    rg.add_argument("--eps-min", type=float, default=0.05)
    rg.add_argument("--eps-max", type=float, default=6.0)
    rg.add_argument("--eps-step", type=float, default=0.05)
    rg.add_argument("--n", type=int, default=2048)
    rg.add_argument("--out")

    rd = sub.add_parser("rdm-dump", help="the ten defect RDM entries per grid point")
    rd.add_argument("--h", type=float, default=2.0)
    rd.add_argument("--d", type=parse_d_list, default=(1,))
    rd.add_argument("--eps-d-min", type=float, default=0.05)
    rd.add_argument("--eps-d-max", type=float, default=6.0)
    rd.add_argument("--eps-d-step", type=float, default=0.05)
    rd.add_argument("--n", type=int, default=1024)
    rd.add_argument("--out")

    oc = sub.add_parser("oracle-check", help="compare the Pfaffian RDM with exact diagonalization")
    oc.add_argument("--tol", type=float, default=1e-8)
    return parser


def _sweep(args) -> int:
    plan = load_plan(args.plan) if args.plan else SweepPlan()
    overrides = {
        "h": args.h,
        "d_list": args.d,
        "eps_d_min": args.eps_d_min,
        "eps_d_max": args.eps_d_max,
        "eps_d_step": args.eps_d_step,
        "n": args.n,
        "seed": args.seed,
        "threads": args.threads,
        "measures": args.measures,
        "runs": args.runs,
        "witness_iters": args.witness_iters,
        "witness_samples": args.witness_samples,
        "out": args.out,
    }
    plan = dataclasses.replace(plan, **{k: v for k, v in overrides.items() if v is not None}).validate()
    _emit(run_sweep(plan), plan.out)
    return 0


def _oracle_check(args) -> int:
    worst = 0.0
    print("n,d,h,epsilon,max_abs_diff,note")
    for n, d, h, eps in itertools.product(*ORACLE_GRID.values()):
        spec = ChainSpec(n, h, eps, d)
        note = ""
        try:
            a, b = defect_rdm(spec), rdm_exact(spec)
        except Exception:
            # zero-energy level: compare the fewest-particle ground state on both sides
            a, b = defect_rdm(spec, zero_modes="empty"), rdm_exact(spec, degenerate="fewest_particles")
            note = "degenerate; zero mode left empty"
        diff = float(np.abs(a.raw - b.raw).max())
        worst = max(worst, diff)
        print(f"{n},{d},{h},{eps},{diff:.3e},{note}")
    ok = worst <= args.tol
    print(f"# worst {worst:.3e} {'<=' if ok else '>'} {args.tol:g}: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sweep":
        return _sweep(args)
    if args.command == "spectrum":
        grid = eps_d_grid(args.eps_min, args.eps_max, args.eps_step)
        _emit(run_spectrum(args.h, args.d, grid, args.n, args.out), args.out)
        return 0
    if args.command == "regions":
        grid = eps_d_grid(args.eps_min, args.eps_max, args.eps_step)
        _emit(run_regions(grid, args.d, args.n, args.h, args.out), args.out)
        return 0
    if args.command == "rdm-dump":
        grid = eps_d_grid(args.eps_d_min, args.eps_d_max, args.eps_d_step)
        _emit(run_rdm_dump(args.h, args.d, grid, args.n, args.out), args.out)
        return 0
    if args.command == "oracle-check":
        return _oracle_check(args)
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
