"""Pairwise distance statistics: BFS oracles and closed forms for each layout.

All totals are Python ints and all means are :class:`fractions.Fraction`, so
closed forms and brute force can be compared with ``==``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .topology import HardwareGraph, InvalidSpecError, LayoutKind, LayoutSpec

__all__ = [
    "DisconnectedGraphError",
    "UndefinedStatisticError",
    "UnsupportedShapeError",
    "DistanceStats",
    "SparseDistanceTerms",
    "LineTerms",
    "bfs_distances",
    "all_pairs_distances",
    "stats_bruteforce",
    "mean_linear_closed",
    "max_linear_closed",
    "mean_rect_closed",
    "max_rect_closed",
    "line_terms",
    "sparse_distance_terms",
    "mean_sparse_closed",
    "mean_sparse_square_closed",
    "max_sparse_closed",
    "closed_form_stats",
]


class DisconnectedGraphError(ValueError):
    pass


class UndefinedStatisticError(ValueError):
    pass


class UnsupportedShapeError(ValueError):
    pass


@dataclass(frozen=True)
class DistanceStats:
    total: int
    mean: Fraction
    max: int
    pair_count: int


def bfs_distances(graph: HardwareGraph, source: int) -> list[int]:
    """Hop counts from ``source``; unreachable nodes are ``-1``."""
    dist = [-1] * graph.node_count
    dist[source] = 0
    queue = deque([source])
    adjacency = graph.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adjacency[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def all_pairs_distances(graph: HardwareGraph) -> list[list[int]]:
    table = [bfs_distances(graph, s) for s in range(graph.node_count)]
    for s, row in enumerate(table):
        if -1 in row:
            raise DisconnectedGraphError(f"node {row.index(-1)} unreachable from node {s}")
    return table


def stats_bruteforce(graph: HardwareGraph) -> DistanceStats:
    n = graph.node_count
    if n < 2:
        raise UndefinedStatisticError("distance statistics need at least 2 qubits")
    table = all_pairs_distances(graph)
    total = sum(sum(row) for row in table) // 2
    longest = max(max(row) for row in table)
    pairs = n * (n - 1) // 2
    return DistanceStats(total, Fraction(total, pairs), longest, pairs)


def _check_pairs(n: int) -> None:
    if n < 2:
        raise UndefinedStatisticError(f"need at least 2 qubits, got {n}")


def mean_linear_closed(n: int) -> Fraction:
    _check_pairs(n)
    return Fraction(n + 1, 3)


def max_linear_closed(n: int) -> int:
    _check_pairs(n)
    return n - 1


def mean_rect_closed(lx: int, ly: int) -> Fraction:
    _check_pairs(lx * ly)
    return Fraction(lx + ly, 3)


def max_rect_closed(lx: int, ly: int) -> int:
    _check_pairs(lx * ly)
    return lx + ly - 2


def _exact(value: Fraction, name: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{name} evaluated to non-integer {value}")
    return value.numerator


@dataclass(frozen=True)
class LineTerms:
    """Distance sums over one diagonal line of ``n`` squares."""

    same_side: int
    opposite_side: int
    side_rung: int
    rung_rung: int

    @property
    def total(self) -> int:
        return self.same_side + self.opposite_side + self.side_rung + self.rung_rung


def line_terms(n: int, m: int) -> LineTerms:
    F = Fraction
    ss = F(2, 3) * m**3 * n * (n - 1) * (n + 1)
    os_ = F(1, 3) * m**3 * n * (n - 1) * (2 * n + 5)
    sr = F(2, 3) * m**3 * n * (4 * n**2 + 3 * n - 4)
    rr = F(2, 3) * n * m * (2 * n * m**2 + 2 * n**2 * m**2 - m**2 + n - 1)
    terms = LineTerms(
        _exact(ss, "l_ss"), _exact(os_, "l_os"), _exact(sr, "l_sr"), _exact(rr, "l_rr")
    )
    combined = F(1, 3) * n * m * (13 * n * m**2 + 16 * n**2 * m**2 - 17 * m**2 + 2 * n - 2)
    assert terms.total == combined
    return terms


@dataclass(frozen=True)
class SparseDistanceTerms:
    """Intermediate sums of the sparse-layout distance total (``dx >= dy``)."""

    m: int
    dx: int
    dy: int
    l_sq1: int
    l_p1: int
    l_p2: int
    l_p3: int
    l_q: int
    n_sq: int
    n_sq1: int
    n_sq2: int
    d_neq: int
    d_eq: int

    @property
    def l_sq2(self) -> int:
        return self.l_p1 + self.l_p2 + self.l_p3

    @property
    def total(self) -> int:
        return self.d_neq + self.d_eq


def sparse_distance_terms(m: int, dx: int, dy: int) -> SparseDistanceTerms:
    """Evaluate every intermediate closed form; the layout is rotated so ``dx >= dy``."""
    LayoutSpec.sparse(m, dx, dy)
    if dx < dy:
        dx, dy = dy, dx
    F = Fraction
    l_sq1 = F(1, 30) * m * dy * (dy - 1) * (dy - 2) * (4 + (1 + 10 * dx) * dy - 3 * dy**2)
    l_p1 = F(1, 30) * m * dy * (dy - 1) * (dy - 2) * (7 * dy**2 + dy + 4)
    l_p2 = F(1, 6) * m * dy * (dy - 1) * (dx - dy) * (5 * dy**2 + dy + 2)
    l_p3 = F(1, 3) * m * dy**2 * (dx - dy) * (dx - dy - 1) * (dx + 2 * dy - 2)
    l_q = 32 * m**3
    n_sq = F(1, 2) * dx * dy * (dx * dy - 1)
    n_sq1 = F(1, 3) * dy * (dy - 1) * (3 * dx - dy - 1)
    n_sq2 = F(1, 6) * dy * (3 * dx**2 * dy - 6 * dx * dy + 3 * dx + 2 * dy**2 - 2)
    d_neq = 16 * m**2 * (l_sq1 + l_p1 + l_p2 + l_p3) + l_q * n_sq2
    d_eq = F(4, 3) * m * dy * (dy - 1) * (
        F(1, 6) * (13 * m**2 + 2) * (2 * dy - 1)
        + 4 * m**2 * dy * (dy - 1)
        - F(1, 2) * (17 * m**2 + 2)
    ) + F(2, 3) * m * dy * (dx - dy + 1) * (
        13 * m**2 * dy + 16 * m**2 * dy**2 - 17 * m**2 + 2 * dy - 2
    )
    return SparseDistanceTerms(
        m=m,
        dx=dx,
        dy=dy,
        l_sq1=_exact(l_sq1, "l_sq1"),
        l_p1=_exact(l_p1, "l_p1"),
        l_p2=_exact(l_p2, "l_p2"),
        l_p3=_exact(l_p3, "l_p3"),
        l_q=l_q,
        n_sq=_exact(n_sq, "n_sq"),
        n_sq1=_exact(n_sq1, "n_sq1"),
        n_sq2=_exact(n_sq2, "n_sq2"),
        d_neq=_exact(d_neq, "d_neq"),
        d_eq=_exact(d_eq, "d_eq"),
    )


def mean_sparse_closed(m: int, dx: int, dy: int) -> Fraction:
    n = 4 * m * dx * dy
    _check_pairs(n)
    terms = sparse_distance_terms(m, dx, dy)
    return Fraction(2 * terms.total, n * (n - 1))


def mean_sparse_square_closed(m: int, d: int) -> Fraction:
    """Square-device mean written in terms of N and m (``dx = dy = d``).

    With ``N = 4 m d^2`` the irrational factors cancel: ``sqrt(m/N) = 1/(2d)``
    and ``(m^(3/2) + 2/sqrt(m)) sqrt(N) = 2d (m^2 + 2)``.
    """
    n = 4 * m * d * d
    _check_pairs(n)
    bracket = (
        21 * n * n
        + 5 * (m + Fraction(2, m)) * n
        - 15 * 2 * d * (m * m + 2)
        + 34 * m * m
        + 20
    )
    return bracket / (45 * (n - 1) * 2 * d)


def max_sparse_closed(m: int, dx: int, dy: int | None = None) -> int:
    """Largest qubit distance, ``sqrt(m N) = 2 m d``, for square devices only."""
    if dy is None:
        dy = dx
    LayoutSpec.sparse(m, dx, dy)
    if dx != dy:
        raise UnsupportedShapeError(
            f"no closed-form maximum for dx={dx} != dy={dy}; use the BFS diameter"
        )
    return 2 * m * dx


def closed_form_stats(layout: LayoutSpec) -> tuple[Fraction, int | None]:
    """(mean, max) from the closed forms; max is ``None`` where none exists."""
    if layout.kind is LayoutKind.LINEAR:
        return mean_linear_closed(layout.n), max_linear_closed(layout.n)
    if layout.kind is LayoutKind.RECTANGULAR:
        return mean_rect_closed(layout.lx, layout.ly), max_rect_closed(layout.lx, layout.ly)
    if layout.kind is LayoutKind.SPARSE:
        mean = mean_sparse_closed(layout.m, layout.dx, layout.dy)
        longest = max_sparse_closed(layout.m, layout.dx, layout.dy) if layout.dx == layout.dy else None
        return mean, longest
    raise InvalidSpecError(f"unknown layout {layout!r}")
