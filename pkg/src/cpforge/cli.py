"""Command-line entry point: ``cpforge run|preset|point``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .config import load_config, parse_interface, parse_particle
from .errors import CPForgeError
from .presets import PRESETS, SWEEP_PRESETS, run_preset
from .summation import DEFAULT_MAX_TERMS, DEFAULT_REL_TOL, cp_interaction
from .sweep import Reference, ResultRow, Scenario, SolverOptions, emit_csv, emit_plotdata, run_sweep

OUTPUT_DIR_ENV = "CPFORGE_OUTPUT_DIR"

log = logging.getLogger("cpforge")


def _default_out() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, "."))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=DEFAULT_REL_TOL,
                        help="relative truncation tolerance of the Matsubara sum (default %(default)g)")
    common.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS,
                        help="hard cap on Matsubara terms (default %(default)d)")
    common.add_argument("--threads", type=int, default=None,
                        help="worker count for sweep rows (default: logical CPU count)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="cpforge",
        description="Casimir-Polder force between a nanoparticle and a planar interface.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", parents=[common], help="run a sweep described by an INI config")
    p_run.add_argument("config", type=Path)
    p_run.add_argument("--out", type=Path, default=None,
                       help=f"output directory (default ${OUTPUT_DIR_ENV} or the working directory)")

    presets_help = "; ".join(["fig2: graphene conductivity terms vs n"] +
                             [f"{k}: {v[0]}" for k, v in SWEEP_PRESETS.items()])
    p_pre = sub.add_parser("preset", parents=[common], help="reproduce a built-in figure",
                           description=presets_help)
    p_pre.add_argument("name", choices=PRESETS)
    p_pre.add_argument("--out", type=Path, default=None,
                       help=f"output directory (default ${OUTPUT_DIR_ENV} or the working directory)")

    p_pt = sub.add_parser("point", parents=[common], help="evaluate a single configuration")
    p_pt.add_argument("--d", type=float, required=True, help="distance [m]")
    p_pt.add_argument("--T", type=float, default=300.0, help="temperature [K] (default %(default)g)")
    p_pt.add_argument("--interface", default="ideal",
                      help="ideal | gold | graphene:ef=..,tau=..,substrate=.. | nonlocal")
    p_pt.add_argument("--particle", default="sphere:r=10e-9",
                      help="sphere:r=.. | spheroid:ratio=..,r=..,axis=x|z | spheroid:ra=..,rb=..,axis=..")
    p_pt.add_argument("--reference", choices=[r.value for r in Reference], default=Reference.IDEAL_METAL.value)
    return parser


def _summarize(failed: Sequence[ResultRow]) -> int:
    if not failed:
        return 0
    print(f"{len(failed)} row(s) failed:", file=sys.stderr)
    for r in failed:
        print(f"  {r.sweep_var}={r.value:g}: {r.error}", file=sys.stderr)
    return 1


def _cmd_run(args, options) -> int:
    spec = load_config(args.config)
    out = args.out or _default_out()
    out.mkdir(parents=True, exist_ok=True)
    rows = run_sweep(spec, options, args.threads)
    for path in (emit_csv(rows, out / f"{spec.label}.csv"), emit_plotdata(rows, out / f"{spec.label}.dat")):
        print(path)
    return _summarize([r for r in rows if not r.ok])


def _cmd_preset(args, options) -> int:
    paths, failed = run_preset(args.name, args.out or _default_out(), options, args.threads)
    for path in paths:
        print(path)
    return _summarize(failed)


def _cmd_point(args, options) -> int:
    interface = parse_interface(args.interface, args.T)
    particle = parse_particle(args.particle)
    kw = dict(rel_tol=options.rel_tol, max_terms=options.max_terms)
    res = cp_interaction(args.T, args.d, particle, interface, **kw)
    print(f"energy_J    {res.energy:.17g}")
    print(f"force_N     {res.force:.17g}")
    print(f"terms       {res.terms_used}")
    print(f"tail_bound  {res.tail_bound:.3g}")
    ref = Reference(args.reference)
    if ref is not Reference.NONE:
        ref_iface = Scenario(reference=ref).reference_interface()
        ref_res = cp_interaction(args.T, args.d, particle, ref_iface, **kw)
        print(f"ref_force_N {ref_res.force:.17g}")
        print(f"ratio       {res.force / ref_res.force:.17g}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    options = SolverOptions(rel_tol=args.tolerance, max_terms=args.max_terms)
    handler = {"run": _cmd_run, "preset": _cmd_preset, "point": _cmd_point}[args.command]
    try:
        return handler(args, options)
    except (CPForgeError, ValueError, KeyError, OSError) as exc:
        print(f"cpforge: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
