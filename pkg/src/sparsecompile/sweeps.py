"""Tabulated comparisons across layouts: distance statistics and permutation depth.

Random permutations come from :class:`random.Random` (MT19937), seeded per
sweep point with the string ``"{seed}:{point label}"``. Every point therefore
draws the same permutations regardless of evaluation order or worker count.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .metrics import closed_form_stats, stats_bruteforce
from .permutation import route, verify_schedule
from .topology import LayoutKind, LayoutSpec, build

__all__ = [
    "SweepConfig",
    "DISTANCE_COLUMNS",
    "DEPTH_COLUMNS",
    "layout_params",
    "distance_row",
    "depth_row",
    "distance_rows",
    "depth_rows",
    "format_csv",
]

DISTANCE_COLUMNS = (
    "layout", "params", "N",
    "mean_closed", "mean_closed_float", "mean_bfs", "mean_bfs_float",
    "max_closed", "max_bfs", "match",
)
DEPTH_COLUMNS = (
    "layout", "params", "N", "trials",
    "bound_depth", "max_depth", "bound_swaps", "max_swaps", "within_bound",
)


@dataclass(frozen=True)
class SweepConfig:
    sparse_m: tuple[int, ...] = (4, 8, 16)
    sparse_d: tuple[int, ...] = (1, 2, 3, 4)
    linear_sizes: tuple[int, ...] | None = None
    grid_sides: tuple[int, ...] | None = None
    seed: int = 0
    trials: int = 10
    workers: int = 1
    single_line: bool = True

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    def sparse_points(self) -> list[LayoutSpec]:
        return [LayoutSpec.sparse(m, d, d) for m in self.sparse_m for d in self.sparse_d]

    def linear_points(self) -> list[LayoutSpec]:
        sizes = self.linear_sizes
        if sizes is None:
            sizes = sorted({p.qubit_count for p in self.sparse_points()})
        return [LayoutSpec.linear(n) for n in sizes]

    def grid_points(self) -> list[LayoutSpec]:
        sides = self.grid_sides
        if sides is None:
            counts = {p.qubit_count for p in self.sparse_points()}
            sides = sorted(math.isqrt(n) for n in counts if math.isqrt(n) ** 2 == n)
        return [LayoutSpec.rectangular(s, s) for s in sides]

    def points(self) -> list[LayoutSpec]:
        return self.linear_points() + self.grid_points() + self.sparse_points()


def layout_params(layout: LayoutSpec) -> str:
    if layout.kind is LayoutKind.LINEAR:
        return f"n={layout.n}"
    if layout.kind is LayoutKind.RECTANGULAR:
        return f"lx={layout.lx};ly={layout.ly}"
    return f"m={layout.m};dx={layout.dx};dy={layout.dy}"


def _ratio(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _float(x: Fraction) -> str:
    return f"{float(x):.15g}"


def distance_row(layout: LayoutSpec) -> dict[str, object]:
    mean_c, max_c = closed_form_stats(layout)
    stats = stats_bruteforce(build(layout))
    match = mean_c == stats.mean and (max_c is None or max_c == stats.max)
    return {
        "layout": layout.kind.value,
        "params": layout_params(layout),
        "N": layout.qubit_count,
        "mean_closed": _ratio(mean_c),
        "mean_closed_float": _float(mean_c),
        "mean_bfs": _ratio(stats.mean),
        "mean_bfs_float": _float(stats.mean),
        "max_closed": "" if max_c is None else max_c,
        "max_bfs": stats.max,
        "match": int(match),
    }


def depth_row(layout: LayoutSpec, trials: int, seed: int, single_line: bool = False) -> dict[str, object]:
    label = layout.label() + (":line" if single_line else "")
    rng = random.Random(f"{seed}:{label}")
    graph = build(layout)
    n = layout.qubit_count
    worst_depth = worst_swaps = 0
    sound = True
    report = None
    for _ in range(trials):
        perm = list(range(n))
        rng.shuffle(perm)
        schedule, report = route(layout, perm, single_line=single_line)
        sound = sound and bool(verify_schedule(graph, schedule, perm))
        worst_depth = max(worst_depth, report.depth)
        worst_swaps = max(worst_swaps, report.swaps)
    ok = sound and worst_depth <= report.bound_depth and worst_swaps <= report.bound_swaps
    return {
        "layout": layout.kind.value + ("-line" if single_line else ""),
        "params": layout_params(layout),
        "N": n,
        "trials": trials,
        "bound_depth": report.bound_depth,
        "max_depth": worst_depth,
        "bound_swaps": report.bound_swaps,
        "max_swaps": worst_swaps,
        "within_bound": int(ok),
    }


def _run(fn: Callable, args: Sequence[tuple], workers: int) -> list:
    if workers == 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*args)))


def distance_rows(config: SweepConfig) -> list[dict[str, object]]:
    return _run(distance_row, [(p,) for p in config.points()], config.workers)


def depth_rows(config: SweepConfig) -> list[dict[str, object]]:
    jobs = []
    for p in config.points():
        jobs.append((p, config.trials, config.seed, False))
        if config.single_line and p.kind is LayoutKind.SPARSE and (p.dx, p.dy) == (1, 1):
            jobs.append((p, config.trials, config.seed, True))
    return _run(depth_row, jobs, config.workers)


def format_csv(columns: Iterable[str], rows: Iterable[dict[str, object]]) -> str:
    columns = list(columns)
    lines = [",".join(columns)]
    lines.extend(",".join(str(row[c]) for c in columns) for row in rows)
    return "\n".join(lines) + "\n"
