"""Command-line front end.

Thin client over the library: every subcommand parses text, calls one core
operation, and prints the result.  Exit codes: 0 success, 1 domain error,
2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .demo import run_piccard_demo
from .errors import BeltwayError
from .experiment import ExperimentConfig, mc_sphere_experiment
from .fileio import format_float, read_invariants, read_signal, write_invariants, write_signal
from .invariants import magnitude_partition, second_moment_invariants
from .recovery import (
    enumerate_orbits,
    orbit_count_bound,
    recover_distinct_weight_products,
    recover_unique,
)
from .signals import DEFAULT_TOL, orbit_equivalent
from .turnpike import difference_multiset, embed_half_circle, piccard_sets


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _cmd_invariants(args) -> int:
    signal = read_signal(Path(args.signal).read_text())
    inv = second_moment_invariants(signal)
    _emit(write_invariants(inv), args.output)
    return 0


def _cmd_recover(args) -> int:
    inv = read_invariants(Path(args.invariants).read_text())
    part = magnitude_partition(inv)
    if all(r == 1 for r in part.multiplicities):
        signal = recover_unique(inv, args.dim)
    else:
        wprods = sorted(e.wprod for e in inv.off_diagonal())
        distinct = all(
            b - a > DEFAULT_TOL.eps_match for a, b in zip(wprods, wprods[1:])
        )
        if distinct:
            signal = recover_distinct_weight_products(inv, args.dim)
        else:
            result = enumerate_orbits(inv, args.dim, max_results=args.max_results)
            if len(result.orbits) != 1:
                print(
                    f"error: recovery is not unique ({len(result.orbits)} orbits"
                    f"{', truncated' if result.truncated else ''});"
                    " use 'enumerate' to list them",
                    file=sys.stderr,
                )
                return 1
            signal = result.orbits[0]
    _emit(write_signal(signal), args.output)
    return 0


def _cmd_enumerate(args) -> int:
    inv = read_invariants(Path(args.invariants).read_text())
    result = enumerate_orbits(inv, args.dim, max_results=args.max_results)
    lines = [
        f"orbits {len(result.orbits)} bound {result.bound}"
        f" truncated {int(result.truncated)} sign_ambiguous {int(result.sign_ambiguous)}"
    ]
    for idx, orbit in enumerate(result.orbits, start=1):
        lines.append(f"# orbit {idx}")
        lines.append(write_signal(orbit).rstrip("\n"))
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_bound(args) -> int:
    print(orbit_count_bound(args.multiplicities))
    return 0


def _cmd_equiv(args) -> int:
    x = read_signal(Path(args.first).read_text())
    y = read_signal(Path(args.second).read_text())
    print("yes" if orbit_equivalent(x, y) else "no")
    return 0


def _cmd_turnpike_embed(args) -> int:
    signal = embed_half_circle(args.values, args.scale)
    _emit(write_signal(signal), args.output)
    return 0


def _cmd_turnpike_diffs(args) -> int:
    diffs = difference_multiset(args.values)
    print(" ".join(format_float(d) for d in diffs))
    return 0


def _cmd_turnpike_piccard(args) -> int:
    p, q = piccard_sets(args.a, args.b)
    print("P " + " ".join(format_float(v) for v in p))
    print("Q " + " ".join(format_float(v) for v in q))
    return 0


def _cmd_mc_sphere(args) -> int:
    cfg = ExperimentConfig(trials=args.trials, seed=args.seed, mode=args.mode)
    report = mc_sphere_experiment(cfg)
    print(f"trials {report.trials}")
    print(f"positives {report.positives}")
    print(f"fraction {format_float(report.fraction)}")
    print(f"mode {report.mode}")
    print(f"seed {report.seed}")
    return 0


def _cmd_demo_piccard(_args) -> int:
    sys.stdout.write(run_piccard_demo())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beltway",
        description="Sparse-signal recovery from second moments over the orthogonal group",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="signal file -> invariant file")
    p.add_argument("signal")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("recover", help="invariant file -> signal file")
    p.add_argument("invariants")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-results", type=int, default=128)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("enumerate", help="list all orbits consistent with an invariant file")
    p.add_argument("invariants")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-results", type=int, default=128)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("bound", help="orbit-count bound from magnitude multiplicities")
    p.add_argument("multiplicities", type=int, nargs="+")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("equiv", help="are two signal files in the same orbit?")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("turnpike", help="line-set utilities")
    tsub = p.add_subparsers(dest="turnpike_command", required=True)
    t = tsub.add_parser("embed", help="embed line positions on the unit circle")
    t.add_argument("values", type=float, nargs="+")
    t.add_argument("--scale", type=float, default=None)
    t.add_argument("-o", "--output", default=None)
    t.set_defaults(func=_cmd_turnpike_embed)
    t = tsub.add_parser("diffs", help="sorted pairwise difference multiset")
    t.add_argument("values", type=float, nargs="+")
    t.set_defaults(func=_cmd_turnpike_diffs)
    t = tsub.add_parser("piccard", help="parametric homometric six-point pair")
    t.add_argument("a", type=float)
    t.add_argument("b", type=float)
    t.set_defaults(func=_cmd_turnpike_piccard)

    p = sub.add_parser("mc-sphere", help="random-sphere second-moment twin experiment")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=["every", "exists"], default="every")
    p.set_defaults(func=_cmd_mc_sphere)

    p = sub.add_parser("demo", help="golden demonstrations")
    dsub = p.add_subparsers(dest="demo_command", required=True)
    d = dsub.add_parser("piccard", help="six-point homometric pair on the circle")
    d.set_defaults(func=_cmd_demo_piccard)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BeltwayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(cli_main(sys.argv[1:]))
