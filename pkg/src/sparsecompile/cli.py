"""Command-line front end.

Layouts are given positionally as ``linear N``, ``rect LX LY`` or
``sparse M DX DY``. Exit status: 0 success, 1 failed check (oracle
mismatch, bound violation, rejected schedule), 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import device, pairwise, permutation, sweeps, topology

__all__ = ["main", "build_parser"]

_KIND_ARITY = {"linear": 1, "rect": 2, "sparse": 3}


class CliError(Exception):
    """Input problem reported as a one-line diagnostic with exit status 2."""


def _layout(kind: str, params: Sequence[int]) -> topology.LayoutSpec:
    if len(params) != _KIND_ARITY[kind]:
        raise CliError(f"layout '{kind}' takes {_KIND_ARITY[kind]} integer parameter(s), got {len(params)}")
    if kind == "linear":
        return topology.LayoutSpec.linear(*params)
    if kind == "rect":
        return topology.LayoutSpec.rectangular(*params)
    return topology.LayoutSpec.sparse(*params)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _emit_report(text: str, path: str | None) -> None:
    if path is None:
        sys.stderr.write(text)
    else:
        Path(path).write_text(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def cmd_topo(args) -> int:
    graph = topology.build(_layout(args.kind, args.params))
    _emit(topology.format_edge_list(graph), args.out)
    return 0


def cmd_distances(args) -> int:
    row = sweeps.distance_row(_layout(args.kind, args.params))
    _emit(sweeps.format_csv(sweeps.DISTANCE_COLUMNS, [row]), args.out)
    if not row["match"]:
        print(f"error: closed form disagrees with BFS for {row['params']}", file=sys.stderr)
        return 1
    return 0


def _config(args) -> sweeps.SweepConfig:
    return sweeps.SweepConfig(
        sparse_m=tuple(args.m),
        sparse_d=tuple(args.d),
        linear_sizes=tuple(args.linear) if args.linear else None,
        grid_sides=tuple(args.grid) if args.grid else None,
        seed=args.seed,
        trials=args.trials,
        workers=args.workers,
    )


def cmd_sweep_dist(args) -> int:
    rows = sweeps.distance_rows(_config(args))
    _emit(sweeps.format_csv(sweeps.DISTANCE_COLUMNS, rows), args.out)
    bad = [r for r in rows if not r["match"]]
    for r in bad:
        print(f"error: closed form disagrees with BFS for {r['layout']} {r['params']}", file=sys.stderr)
    return 1 if bad else 0


def cmd_sweep_depth(args) -> int:
    rows = sweeps.depth_rows(_config(args))
    _emit(sweeps.format_csv(sweeps.DEPTH_COLUMNS, rows), args.out)
    bad = [r for r in rows if not r["within_bound"]]
    for r in bad:
        print(f"error: bound violated for {r['layout']} {r['params']}", file=sys.stderr)
    return 1 if bad else 0


def _placement(text: str, qubits: int) -> list[int]:
    mapping: dict[int, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            logical, physical = (int(x) for x in parts)
        except ValueError:
            raise CliError(f"placement line {line_no}: expected 'logical physical'") from None
        mapping[logical] = physical
    if sorted(mapping) != list(range(qubits)):
        raise CliError(f"placement must map every logical qubit 0..{qubits - 1}")
    return [mapping[q] for q in range(qubits)]


def cmd_route_pairwise(args) -> int:
    graph = topology.build(_layout(args.kind, args.params))
    circuit = pairwise.parse_circuit(_read(args.circuit))
    placement = _placement(_read(args.placement), circuit.qubit_count) if args.placement else None
    compiled, report = pairwise.compile_pairwise(graph, circuit, placement)
    _emit(pairwise.format_circuit(compiled), args.out)
    _emit_report(report.format(), args.report)
    return 0


def cmd_route_perm(args) -> int:
    layout = _layout(args.kind, args.params)
    perm = permutation.parse_permutation(_read(args.perm), layout.qubit_count)
    schedule, report = permutation.route(layout, perm, single_line=args.single_line)
    _emit(schedule.format(), args.out)
    _emit_report(report.format(), args.report)
    return 0 if report.within_bounds else 1


def cmd_verify(args) -> int:
    layout = _layout(args.kind, args.params)
    graph = topology.build(layout)
    perm = permutation.parse_permutation(_read(args.perm), layout.qubit_count)
    schedule = permutation.parse_schedule(_read(args.schedule))
    verdict = permutation.verify_schedule(graph, schedule, perm)
    if verdict.ok:
        _emit("ok\n", args.out)
        return 0
    print(f"error: {verdict.message}", file=sys.stderr)
    return 1


def cmd_spectrum(args) -> int:
    points = device.spectrum(args.ts, args.zav, args.zd, (args.eps_from, args.eps_to), args.points)
    lines = ["eps_over_ts,e1,e2,e3,e4,e5"]
    for p in points:
        lines.append(",".join(f"{v:.15g}" for v in (p.epsilon_over_ts, *p.eigenvalues)))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_shuttle(args) -> int:
    estimate = device.shuttle_time(args.ts, args.p, args.amplitude, args.steps)
    _emit(estimate.format(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="FILE", help="write primary output here (default stdout)")
    common.add_argument("--seed", type=int, default=0, help="seed for random permutations")
    common.add_argument("--trials", type=int, default=10, help="random permutations per sweep point")

    parser = argparse.ArgumentParser(
        prog="sparsecompile",
        description="Qubit routing and topology analysis for linear, grid and sparse layouts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_layout(p: argparse.ArgumentParser) -> None:
        p.add_argument("kind", choices=sorted(_KIND_ARITY))
        p.add_argument("params", type=int, nargs="+")

    p = sub.add_parser("topo", parents=[common], help="export the hardware graph edge list")
    with_layout(p)
    p.set_defaults(func=cmd_topo)

    p = sub.add_parser("distances", parents=[common], help="closed-form vs BFS distance statistics")
    with_layout(p)
    p.set_defaults(func=cmd_distances)

    for name, func, doc in (
        ("sweep-dist", cmd_sweep_dist, "mean/max distance table across layouts"),
        ("sweep-depth", cmd_sweep_depth, "permutation depth table across layouts"),
    ):
        p = sub.add_parser(name, parents=[common], help=doc)
        p.add_argument("--m", type=int, nargs="+", default=[4, 8, 16], help="qubits per segment")
        p.add_argument("--d", type=int, nargs="+", default=[1, 2, 3, 4], help="squares per side")
        p.add_argument("--linear", type=int, nargs="+", help="1D sizes (default: the sparse N values)")
        p.add_argument("--grid", type=int, nargs="+", help="square grid sides (default: sqrt of square sparse N)")
        p.add_argument("--workers", type=int, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("route-pairwise", parents=[common], help="route a circuit gate by gate")
    with_layout(p)
    p.add_argument("--circuit", required=True, metavar="FILE")
    p.add_argument("--placement", metavar="FILE", help="'logical physical' lines (default identity)")
    p.add_argument("--report", metavar="FILE", help="key=value report (default stderr)")
    p.set_defaults(func=cmd_route_pairwise)

    p = sub.add_parser("route-perm", parents=[common], help="route a permutation as SWAP layers")
    with_layout(p)
    p.add_argument("--perm", required=True, metavar="FILE")
    p.add_argument("--single-line", action="store_true", help="one sort along the square (dx=dy=1)")
    p.add_argument("--report", metavar="FILE", help="key=value report (default stderr)")
    p.set_defaults(func=cmd_route_perm)

    p = sub.add_parser("verify", parents=[common], help="check a SWAP schedule against a permutation")
    with_layout(p)
    p.add_argument("--perm", required=True, metavar="FILE")
    p.add_argument("--schedule", required=True, metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", parents=[common], help="two-spin double-dot energy spectrum")
    p.add_argument("--ts", type=float, default=1.0, help="tunnel coupling (Hz)")
    p.add_argument("--zav", type=float, help="average Zeeman energy (Hz, default 3*ts)")
    p.add_argument("--zd", type=float, help="Zeeman difference (Hz, default 0.05*zav)")
    p.add_argument("--from", dest="eps_from", type=float, default=-10.0, help="first eps/ts")
    p.add_argument("--to", dest="eps_to", type=float, default=10.0, help="last eps/ts")
    p.add_argument("--points", type=int, default=1000)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("shuttle", parents=[common], help="Landau-Zener limited shuttle time")
    p.add_argument("--ts", type=float, default=50e9, help="tunnel coupling (Hz)")
    p.add_argument("--p", type=float, default=1e-4, help="tolerated transition probability")
    p.add_argument("--steps", type=int, default=6)
    p.add_argument("--amplitude", type=float, default=4.0, help="pulse amplitude in units of 2*ts")
    p.set_defaults(func=cmd_shuttle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
