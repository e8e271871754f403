"""Command-line front end.

Exit codes: 0 success, 1 domain/range error, 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import bench, engine, hwsim, selector
from .errors import CordicError
from .fixedpoint import Q30Fixed
from .refmath import reference_sincos
from .variants import Variant, describe_variants

VARIANT_CHOICES = [v.value for v in Variant]


def _angle(args) -> float:
    return math.radians(args.theta) if args.degrees else args.theta


def _add_theta(p, required=True):
    p.add_argument("--theta", type=float, required=required, help="angle in radians")
    p.add_argument("--degrees", action="store_true", help="read --theta in degrees")


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CordicError(f"cannot write {path}: {exc.strerror or exc}") from exc


def cmd_compute(args, out) -> int:
    theta = _angle(args)
    variant = Variant.parse(args.variant)
    red = engine.reduce_argument(theta)
    if args.fixed:
        trace: list = []
        res = hwsim.run_iterative(Q30Fixed.from_real(red.reduced), args.iterations, variant, trace=trace)
        c, s = res.X.value, res.Y.value
        residual = trace[-1].Z.value
    elif variant is Variant.CONVENTIONAL:
        traj = engine.conventional_trajectory(red.reduced, args.iterations)
        c, s = engine.run_conventional(red.reduced, args.iterations)
        residual = traj[-1].z
    else:
        traj = engine.scalefree_trajectory(red.reduced, args.iterations, variant)
        c, s = traj[-1][0].x, traj[-1][0].y
        residual = traj[-1][0].z
    c, s = red.reconstruct(c, s)
    rc, rs = reference_sincos(theta)
    print(f"theta     {theta:.10f}", file=out)
    print(f"reduced   {red.reduced:.10f} (octant {red.octant})", file=out)
    print(f"variant   {variant.value}, {args.iterations} iterations, {'fixed' if args.fixed else 'float'}", file=out)
    print(f"cos       {c:.10f}", file=out)
    print(f"sin       {s:.10f}", file=out)
    print(f"cos_error {abs(c - rc):.3e}", file=out)
    print(f"sin_error {abs(s - rs):.3e}", file=out)
    print(f"residual  {residual:.3e}", file=out)
    if args.fixed:
        print(f"X         0x{res.X.hex()}", file=out)
        print(f"Y         0x{res.Y.hex()}", file=out)
        print(f"cycles    {res.cycles}", file=out)
    return 0


def cmd_decompose(args, out) -> int:
    d = selector.decompose(_angle(args), args.steps, args.tolerance, rule=args.rule)
    out.write(d.to_csv())
    return 0


def cmd_table(args, out) -> int:
    counts = (3, 4, 5)
    if args.layout == "orders":
        variants = bench.ORDER_COLUMNS
    else:
        variants = bench.METHOD_COLUMNS
    cfg = bench.SweepConfig(samples=args.samples, iteration_counts=counts, variants=variants,
                            domain="fixed" if args.fixed else "float")
    text, table_csv = bench.emit_table(bench.run_sweep(cfg), args.layout, counts)
    out.write(text)
    if args.out:
        _write(args.out, table_csv)
    return 0


def cmd_curve(args, out) -> int:
    text = bench.emit_curve(Variant.parse(args.variant), args.iterations, args.function,
                            samples=args.samples, domain="fixed" if args.fixed else "float")
    if args.out:
        _write(args.out, text)
    else:
        out.write(text)
    return 0


def cmd_simulate(args, out) -> int:
    theta = _angle(args)
    variant = Variant.parse(args.variant)
    red = engine.reduce_argument(theta)
    cfg = hwsim.PipelineConfig(stages=args.stages)
    trace: list = []
    (xy,), report = hwsim.run_pipelined([Q30Fixed.from_real(red.reduced)], cfg, variant, trace=trace)
    X, Y = xy
    c, s = red.reconstruct(X.value, Y.value)
    rc, rs = reference_sincos(theta)
    print(f"X          0x{X.hex()}  {X.value:.10f}", file=out)
    print(f"Y          0x{Y.hex()}  {Y.value:.10f}", file=out)
    print(f"cos        {c:.10f}  error {abs(c - rc):.3e}", file=out)
    print(f"sin        {s:.10f}  error {abs(s - rs):.3e}", file=out)
    print(f"stages     {cfg.stages}", file=out)
    print(f"latency    {report.latency} cycles", file=out)
    print(f"cycles     {report.total_cycles}", file=out)
    print(f"throughput 1 result/clock at steady state", file=out)
    if args.trace:
        _write(args.trace, hwsim.trace_csv(trace))
    return 0


def cmd_rom_dump(args, out) -> int:
    out.write(hwsim.ROM.dump())
    return 0


def cmd_list_variants(args, out) -> int:
    out.write(describe_variants())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sfcordic", description="Scale-free CORDIC toolkit")
    parser.add_argument("--list-variants", action="store_true", help="print the coefficient schemes and exit")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("compute", help="cos/sin of one angle")
    _add_theta(p)
    p.add_argument("--variant", choices=VARIANT_CHOICES, default="proposed-o3")
    p.add_argument("--iterations", type=int, default=4)
    p.add_argument("--fixed", action="store_true", help="use the Q2.30 datapath model")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("decompose", help="greedy elementary-angle decomposition as CSV")
    _add_theta(p)
    p.add_argument("--steps", type=int, default=5)
    p.add_argument("--tolerance", type=float, default=0.0)
    p.add_argument("--rule", choices=sorted(selector.INDEX_RULES), default="log")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("table", help="reproduce an error table")
    p.add_argument("--layout", choices=bench.LAYOUTS, required=True)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--fixed", action="store_true")
    p.add_argument("--out", help="write the table cells as CSV")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("curve", help="per-angle approximation and error as CSV")
    p.add_argument("--variant", choices=VARIANT_CHOICES, default="proposed-o3")
    p.add_argument("--iterations", type=int, default=4)
    p.add_argument("--function", choices=bench.FUNCTIONS, default="sin")
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--fixed", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("simulate", help="pipelined datapath run with cycle report")
    _add_theta(p)
    p.add_argument("--stages", type=int, choices=(3, 4), default=4)
    p.add_argument("--variant", choices=[v.value for v in Variant if v.is_scalefree], default="proposed-o3")
    p.add_argument("--trace", help="write the per-clock trace as CSV")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("rom-dump", help="print the 32 arctangent ROM words")
    p.set_defaults(func=cmd_rom_dump)

    p = sub.add_parser("list-variants", help="print the coefficient schemes")
    p.set_defaults(func=cmd_list_variants)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_variants:
        return cmd_list_variants(args, out)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return 2
    if getattr(args, "samples", 2) < 2:
        parser.error("--samples must be >= 2")
    try:
        return args.func(args, out)
    except CordicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
