"""Permutation routing as layers of disjoint SWAPs.

A permutation is given as ``perm[q] = destination node`` of the qubit that
starts on node ``q``. Schedules are lists of layers; each layer is a tuple of
``(u, v)`` node pairs with ``u < v`` that act on disjoint nodes.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .matching import NotABijectionError, build_routing_graph, decompose_matchings
from .topology import (
    HardwareGraph,
    LayoutKind,
    LayoutSpec,
    column_coordinates,
    column_count,
    column_path,
    row_count,
    row_path,
)

__all__ = [
    "NotABijectionError",
    "LayoutMismatchError",
    "SwapSchedule",
    "PermutationReport",
    "Verdict",
    "parallel_neighbor_sort",
    "permutation_bounds",
    "route_linear",
    "route_rectangular",
    "route_sparse",
    "route_single_square",
    "route",
    "single_line",
    "verify_schedule",
    "apply_schedule",
    "FormatError",
    "parse_permutation",
    "format_permutation",
    "parse_schedule",
]

Pair = tuple[int, int]


class LayoutMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class SwapSchedule:
    layers: tuple[tuple[Pair, ...], ...] = ()

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def swap_total(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def format(self) -> str:
        return "".join(" ".join(f"{u}-{v}" for u, v in layer) + "\n" for layer in self.layers)


@dataclass(frozen=True)
class PermutationReport:
    depth: int
    swaps: int
    bound_depth: int
    bound_swaps: int

    @property
    def within_bounds(self) -> bool:
        return self.depth <= self.bound_depth and self.swaps <= self.bound_swaps

    def format(self) -> str:
        return (
            f"depth={self.depth}\nswaps={self.swaps}\n"
            f"bound_depth={self.bound_depth}\nbound_swaps={self.bound_swaps}\n"
        )


@dataclass(frozen=True)
class Verdict:
    ok: bool
    message: str = "ok"
    layer: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_bijection(perm: Sequence[int], n: int | None = None) -> list[int]:
    perm = list(perm)
    if n is not None and len(perm) != n:
        raise NotABijectionError(f"permutation has {len(perm)} entries, layout has {n} nodes")
    if sorted(perm) != list(range(len(perm))):
        raise NotABijectionError("permutation is not a bijection")
    return perm


def _pns_rounds(keys: Sequence[Hashable]) -> list[list[Pair]]:
    """Odd-even transposition rounds on positions; empty rounds are dropped."""
    if len(set(keys)) != len(keys):
        raise ValueError("parallel neighbor sort needs distinct keys")
    work = list(keys)
    n = len(work)
    rounds = []
    step = 0
    while any(work[i] > work[i + 1] for i in range(n - 1)):
        if step >= n:
            raise AssertionError("odd-even transposition exceeded n rounds")
        swaps = []
        for i in range(step % 2, n - 1, 2):
            if work[i] > work[i + 1]:
                work[i], work[i + 1] = work[i + 1], work[i]
                swaps.append((i, i + 1))
        if swaps:
            rounds.append(swaps)
        step += 1
    return rounds


def parallel_neighbor_sort(keys: Sequence[Hashable]) -> SwapSchedule:
    """Sort ``keys`` along a path by alternating odd/even compare-exchange layers.

    Pairs in the returned schedule are 0-based positions on the path. At most
    ``len(keys)`` layers and ``n(n-1)/2`` swaps are produced.
    """
    return SwapSchedule(tuple(tuple(r) for r in _pns_rounds(keys)))


def permutation_bounds(layout: LayoutSpec, single_line: bool = False) -> tuple[int, int]:
    """(max depth, max swaps) guaranteed by the router for ``layout``."""
    if layout.kind is LayoutKind.LINEAR or single_line:
        n = layout.qubit_count
        return n, n * (n - 1) // 2
    if layout.kind is LayoutKind.RECTANGULAR:
        lx, ly = layout.lx, layout.ly
        return 2 * ly + lx, lx * ly * (lx + 2 * ly - 3) // 2
    m, dx, dy = layout.m, layout.dx, layout.dy
    return 4 * m * dy + 2 * m * dx, 2 * m * dx * dy * (2 * m * dx + 4 * m * dy - 3)


class _Router:
    """Occupancy tracker that sorts qubits along node paths and records layers."""

    def __init__(self, perm: list[int]) -> None:
        self.perm = perm
        self.occupant = list(range(len(perm)))
        self.layers: list[tuple[Pair, ...]] = []

    def sort_paths(self, paths: Sequence[Sequence[int]], key: Callable[[int, int], Hashable]) -> None:
        """Sort every path at once; ``key(qubit, position)`` orders the qubits."""
        merged: dict[int, list[Pair]] = defaultdict(list)
        for path in paths:
            keys = [key(self.occupant[node], pos) for pos, node in enumerate(path)]
            for k, swaps in enumerate(_pns_rounds(keys)):
                merged[k].extend(_ordered(path[i], path[j]) for i, j in swaps)
        for k in range(len(merged)):
            layer = tuple(merged[k])
            for u, v in layer:
                self.occupant[u], self.occupant[v] = self.occupant[v], self.occupant[u]
            self.layers.append(layer)

    def schedule(self) -> SwapSchedule:
        for node, qubit in enumerate(self.occupant):
            if self.perm[qubit] != node:
                raise AssertionError(f"qubit {qubit} ended on {node}, not {self.perm[qubit]}")
        return SwapSchedule(tuple(self.layers))


def _ordered(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


def _report(schedule: SwapSchedule, layout: LayoutSpec, single_line: bool = False) -> PermutationReport:
    bound_depth, bound_swaps = permutation_bounds(layout, single_line)
    return PermutationReport(schedule.depth, schedule.swap_total, bound_depth, bound_swaps)


def route_linear(n: int, perm: Sequence[int]) -> tuple[SwapSchedule, PermutationReport]:
    layout = LayoutSpec.linear(n)
    perm = _check_bijection(perm, n)
    router = _Router(perm)
    router.sort_paths([list(range(n))], lambda q, pos: perm[q])
    schedule = router.schedule()
    return schedule, _report(schedule, layout)


def _route_three_phase(layout: LayoutSpec, perm: list[int]) -> SwapSchedule:
    """Columns, rows, columns; phase (i) targets come from perfect matchings."""
    coords = column_coordinates(layout)
    columns = [column_path(layout, c) for c in range(1, column_count(layout) + 1)]
    rows = [row_path(layout, r) for r in range(1, row_count(layout) + 1)]
    dest_col = [coords[perm[q]][0] for q in range(len(perm))]
    dest_ypos = [coords[perm[q]][1] for q in range(len(perm))]

    # matching y says: column l sends one qubit bound for column r to ypos y
    candidates: dict[tuple[int, int], deque[int]] = defaultdict(deque)
    for col, path in enumerate(columns, start=1):
        for qubit in path:
            candidates[col, dest_col[qubit]].append(qubit)
    target_ypos = {}
    matchings = decompose_matchings(build_routing_graph(layout, perm))
    for y, matching in enumerate(matchings, start=1):
        for e in matching.edges:
            target_ypos[candidates[e.left + 1, e.right + 1].popleft()] = y

    router = _Router(perm)
    router.sort_paths(columns, lambda q, pos: target_ypos[q])
    router.sort_paths(rows, lambda q, pos: (dest_col[q], pos))
    router.sort_paths(columns, lambda q, pos: dest_ypos[q])
    return router.schedule()


def route_rectangular(lx: int, ly: int, perm: Sequence[int]) -> tuple[SwapSchedule, PermutationReport]:
    layout = LayoutSpec.rectangular(lx, ly)
    schedule = _route_three_phase(layout, _check_bijection(perm, layout.qubit_count))
    return schedule, _report(schedule, layout)


def route_sparse(m: int, dx: int, dy: int, perm: Sequence[int]) -> tuple[SwapSchedule, PermutationReport]:
    layout = LayoutSpec.sparse(m, dx, dy)
    schedule = _route_three_phase(layout, _check_bijection(perm, layout.qubit_count))
    return schedule, _report(schedule, layout)


def single_line(layout: LayoutSpec) -> list[int]:
    """Hamiltonian path through a single tilted square (the 4m-cycle minus one edge)."""
    if layout.kind is not LayoutKind.SPARSE or (layout.dx, layout.dy) != (1, 1):
        raise LayoutMismatchError(f"single-line routing needs one square, got {layout.label()}")
    return row_path(layout, 1) + row_path(layout, 2)[::-1]


def route_single_square(m: int, perm: Sequence[int]) -> tuple[SwapSchedule, PermutationReport]:
    layout = LayoutSpec.sparse(m, 1, 1)
    if len(perm) != layout.qubit_count:
        raise LayoutMismatchError(
            f"single-square routing expects {layout.qubit_count} nodes, got {len(perm)}"
        )
    perm = _check_bijection(perm)
    line = single_line(layout)
    line_pos = {node: i for i, node in enumerate(line)}
    router = _Router(perm)
    router.sort_paths([line], lambda q, pos: line_pos[perm[q]])
    schedule = router.schedule()
    return schedule, _report(schedule, layout, single_line=True)


def route(layout: LayoutSpec, perm: Sequence[int], single_line: bool = False):
    """Dispatch to the router for ``layout``."""
    if layout.kind is LayoutKind.LINEAR:
        return route_linear(layout.n, perm)
    if layout.kind is LayoutKind.RECTANGULAR:
        return route_rectangular(layout.lx, layout.ly, perm)
    if single_line:
        if (layout.dx, layout.dy) != (1, 1):
            raise LayoutMismatchError(f"single-line routing needs one square, got {layout.label()}")
        return route_single_square(layout.m, perm)
    return route_sparse(layout.m, layout.dx, layout.dy, perm)


def apply_schedule(node_count: int, schedule: SwapSchedule) -> list[int]:
    """Replay ``schedule``; returns ``occupant[node]`` = starting node of its qubit."""
    occupant = list(range(node_count))
    for layer in schedule.layers:
        for u, v in layer:
            occupant[u], occupant[v] = occupant[v], occupant[u]
    return occupant


def verify_schedule(graph: HardwareGraph, schedule: SwapSchedule, perm: Sequence[int]) -> Verdict:
    n = graph.node_count
    try:
        perm = _check_bijection(perm, n)
    except NotABijectionError as exc:
        return Verdict(False, str(exc))
    occupant = list(range(n))
    for k, layer in enumerate(schedule.layers, start=1):
        touched = set()
        for u, v in layer:
            if not (0 <= u < n and 0 <= v < n) or u == v or not graph.has_edge(u, v):
                return Verdict(False, f"non-edge swap at layer {k}: {u}-{v}", k)
            if u in touched or v in touched:
                return Verdict(False, f"overlapping swaps at layer {k}: {u}-{v}", k)
            touched.update((u, v))
            occupant[u], occupant[v] = occupant[v], occupant[u]
    for node, qubit in enumerate(occupant):
        if perm[qubit] != node:
            return Verdict(False, f"qubit from node {qubit} ends on {node}, expected {perm[qubit]}")
    return Verdict(True)


class FormatError(ValueError):
    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_permutation(text: str, node_count: int | None = None) -> list[int]:
    """Read ``src dst`` lines into ``perm[src] = dst``."""
    mapping: dict[int, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(line_no, "expected 'src dst'")
        try:
            src, dst = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(line_no, f"non-integer node id in {line!r}") from None
        if src in mapping:
            raise FormatError(line_no, f"source node {src} listed twice")
        mapping[src] = dst
    n = len(mapping) if node_count is None else node_count
    if sorted(mapping) != list(range(n)) or sorted(mapping.values()) != list(range(n)):
        raise NotABijectionError(f"permutation file is not a bijection on 0..{n - 1}")
    return [mapping[i] for i in range(n)]


def format_permutation(perm: Sequence[int]) -> str:
    return "".join(f"{src} {dst}\n" for src, dst in enumerate(perm))


def parse_schedule(text: str) -> SwapSchedule:
    """One layer per line, pairs written ``u-v``; an empty line is an empty layer."""
    layers = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        layer = []
        for token in raw.split():
            try:
                u, v = (int(x) for x in token.split("-"))
            except ValueError:
                raise FormatError(line_no, f"bad swap {token!r}, expected 'u-v'") from None
            layer.append((u, v))
        layers.append(tuple(layer))
    return SwapSchedule(tuple(layers))
