"""Hardware graphs for the linear, rectangular and sparse (tilted-square) layouts.

Sparse node numbering is fixed so that exported files are reproducible:

* squares are visited row-major, ``ay`` outer and ``ax`` inner, both 1-based;
* inside a square the four segments come in the order NW, NE, SW, SE;
* inside a segment the index runs 1..m starting at the segment end that is
  higher up on the page (the top corner for NW/NE, the left/right corner
  for SW/SE).

So ``node = ((ay-1)*dx + (ax-1)) * 4m + edge*m + (index-1)``.

Squares are diamonds centred at ``(ax, ay)``. The right corner of square
``(ax, ay)`` coincides with the left corner of ``(ax+1, ay)`` and its bottom
corner with the top corner of ``(ax, ay+1)``; ``ay`` grows downwards.
Every corner is a junction whose incident segment terminals form a clique.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

__all__ = [
    "InvalidSpecError",
    "LayoutKind",
    "LayoutSpec",
    "HardwareGraph",
    "Edge",
    "QubitAddress",
    "build_linear",
    "build_rectangular",
    "build_sparse",
    "build",
    "column_path",
    "row_path",
    "address_of",
    "node_at",
    "format_edge_list",
    "column_coordinates",
    "column_count",
    "row_count",
]


class InvalidSpecError(ValueError):
    """Raised for layout parameters or indices outside their valid range."""


class LayoutKind(enum.Enum):
    LINEAR = "linear"
    RECTANGULAR = "rect"
    SPARSE = "sparse"


@dataclass(frozen=True)
class LayoutSpec:
    kind: LayoutKind
    n: int = 0
    lx: int = 0
    ly: int = 0
    m: int = 0
    dx: int = 0
    dy: int = 0

    def __post_init__(self) -> None:
        if self.kind is LayoutKind.LINEAR:
            _require_positive(n=self.n)
        elif self.kind is LayoutKind.RECTANGULAR:
            _require_positive(lx=self.lx, ly=self.ly)
        else:
            _require_positive(m=self.m, dx=self.dx, dy=self.dy)

    @classmethod
    def linear(cls, n: int) -> LayoutSpec:
        return cls(LayoutKind.LINEAR, n=n)

    @classmethod
    def rectangular(cls, lx: int, ly: int) -> LayoutSpec:
        return cls(LayoutKind.RECTANGULAR, lx=lx, ly=ly)

    @classmethod
    def sparse(cls, m: int, dx: int, dy: int) -> LayoutSpec:
        return cls(LayoutKind.SPARSE, m=m, dx=dx, dy=dy)

    @property
    def qubit_count(self) -> int:
        if self.kind is LayoutKind.LINEAR:
            return self.n
        if self.kind is LayoutKind.RECTANGULAR:
            return self.lx * self.ly
        return 4 * self.m * self.dx * self.dy

    @property
    def params(self) -> tuple[int, ...]:
        if self.kind is LayoutKind.LINEAR:
            return (self.n,)
        if self.kind is LayoutKind.RECTANGULAR:
            return (self.lx, self.ly)
        return (self.m, self.dx, self.dy)

    def label(self) -> str:
        return f"{self.kind.value}(" + ",".join(map(str, self.params)) + ")"


def _require_positive(**values: int) -> None:
    for name, value in values.items():
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise InvalidSpecError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class HardwareGraph:
    """Undirected simple graph on nodes ``0..node_count-1``.

    ``edges`` holds each edge once as ``(u, v)`` with ``u < v``, sorted.
    """

    node_count: int
    edges: tuple[tuple[int, int], ...]
    layout: LayoutSpec = field(compare=False)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.node_count)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in nbrs)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])


def _make_graph(layout: LayoutSpec, pairs) -> HardwareGraph:
    edges = set()
    for u, v in pairs:
        if u == v:
            continue
        edges.add((min(u, v), max(u, v)))
    return HardwareGraph(layout.qubit_count, tuple(sorted(edges)), layout)


def build_linear(n: int) -> HardwareGraph:
    layout = LayoutSpec.linear(n)
    return _make_graph(layout, ((i, i + 1) for i in range(n - 1)))


def build_rectangular(lx: int, ly: int) -> HardwareGraph:
    """Grid with node ``(i, j)`` (column ``i``, row ``j``, 0-based) at id ``j*lx + i``."""
    layout = LayoutSpec.rectangular(lx, ly)
    pairs = []
    for j in range(ly):
        for i in range(lx):
            u = j * lx + i
            if i + 1 < lx:
                pairs.append((u, u + 1))
            if j + 1 < ly:
                pairs.append((u, u + lx))
    return _make_graph(layout, pairs)


class Edge(enum.IntEnum):
    """Side of a tilted square; the value is its position in node numbering."""

    NW = 0
    NE = 1
    SW = 2
    SE = 3


# (end of the segment at index 1, end at index m), as corner names
_SEGMENT_ENDS = {
    Edge.NW: ("top", "left"),
    Edge.NE: ("top", "right"),
    Edge.SW: ("left", "bottom"),
    Edge.SE: ("right", "bottom"),
}


def _corner_point(ax: int, ay: int, corner: str) -> tuple[int, int]:
    cx, cy = 2 * ax, 2 * ay
    return {
        "top": (cx, cy - 1),
        "bottom": (cx, cy + 1),
        "left": (cx - 1, cy),
        "right": (cx + 1, cy),
    }[corner]


def _sparse_node(layout: LayoutSpec, ax: int, ay: int, edge: Edge, index: int) -> int:
    m = layout.m
    return ((ay - 1) * layout.dx + (ax - 1)) * 4 * m + int(edge) * m + (index - 1)


def _squares(layout: LayoutSpec) -> Iterator[tuple[int, int]]:
    for ay in range(1, layout.dy + 1):
        for ax in range(1, layout.dx + 1):
            yield ax, ay


def build_sparse(m: int, dx: int, dy: int) -> HardwareGraph:
    layout = LayoutSpec.sparse(m, dx, dy)
    pairs = []
    junctions: dict[tuple[int, int], list[int]] = defaultdict(list)
    for ax, ay in _squares(layout):
        for edge in Edge:
            first = _sparse_node(layout, ax, ay, edge, 1)
            pairs.extend((first + k, first + k + 1) for k in range(m - 1))
            start, end = _SEGMENT_ENDS[edge]
            junctions[_corner_point(ax, ay, start)].append(first)
            junctions[_corner_point(ax, ay, end)].append(first + m - 1)
    for terminals in junctions.values():
        for i, u in enumerate(terminals):
            for v in terminals[i + 1:]:
                pairs.append((u, v))
    return _make_graph(layout, pairs)


def build(layout: LayoutSpec) -> HardwareGraph:
    if layout.kind is LayoutKind.LINEAR:
        return build_linear(layout.n)
    if layout.kind is LayoutKind.RECTANGULAR:
        return build_rectangular(layout.lx, layout.ly)
    return build_sparse(layout.m, layout.dx, layout.dy)


@dataclass(frozen=True)
class QubitAddress:
    """Three equivalent coordinates of one sparse-layout node (all 1-based)."""

    square: tuple[int, int]
    edge: Edge
    index: int
    column_form: tuple[int, int]
    row_form: tuple[int, int]


def _require_sparse(layout: LayoutSpec) -> None:
    if layout.kind is not LayoutKind.SPARSE:
        raise InvalidSpecError(f"generalized rows/columns need a sparse layout, got {layout.label()}")


def _column_ypos(m: int, ay: int, edge: Edge, index: int) -> int:
    lower = edge in (Edge.SW, Edge.SE)
    return (ay - 1) * 2 * m + (m if lower else 0) + index


def _row_xpos(m: int, ax: int, edge: Edge, index: int) -> int:
    offset = {
        Edge.NW: m - index + 1,
        Edge.NE: m + index,
        Edge.SW: index,
        Edge.SE: 2 * m - index + 1,
    }[edge]
    return (ax - 1) * 2 * m + offset


def address_of(layout: LayoutSpec, node: int) -> QubitAddress:
    _require_sparse(layout)
    if not 0 <= node < layout.qubit_count:
        raise InvalidSpecError(f"node {node} out of range for {layout.label()}")
    m = layout.m
    square, rest = divmod(node, 4 * m)
    edge_value, offset = divmod(rest, m)
    ay, ax0 = divmod(square, layout.dx)
    ax, ay = ax0 + 1, ay + 1
    edge = Edge(edge_value)
    index = offset + 1
    odd_col = edge in (Edge.NW, Edge.SW)
    odd_row = edge in (Edge.NW, Edge.NE)
    col = 2 * ax - (1 if odd_col else 0)
    row = 2 * ay - (1 if odd_row else 0)
    return QubitAddress(
        square=(ax, ay),
        edge=edge,
        index=index,
        column_form=(col, _column_ypos(m, ay, edge, index)),
        row_form=(row, _row_xpos(m, ax, edge, index)),
    )


def node_at(layout: LayoutSpec, address: QubitAddress | tuple) -> int:
    """Inverse of :func:`address_of`.

    ``address`` may be a full :class:`QubitAddress` (its square/edge/index
    triple is used) or one of the tagged tuples ``("square", ax, ay, edge,
    index)``, ``("column", col, ypos)``, ``("row", row, xpos)``.
    """
    _require_sparse(layout)
    m, dx, dy = layout.m, layout.dx, layout.dy
    if isinstance(address, QubitAddress):
        (ax, ay), edge, index = address.square, address.edge, address.index
    elif address[0] == "square":
        _, ax, ay, edge, index = address
        edge = Edge(edge) if not isinstance(edge, str) else Edge[edge]
    elif address[0] == "column":
        _, col, ypos = address
        if not (1 <= col <= 2 * dx and 1 <= ypos <= 2 * m * dy):
            raise InvalidSpecError(f"column address {(col, ypos)} out of range")
        ax = (col + 1) // 2
        ay, within = divmod(ypos - 1, 2 * m)
        ay += 1
        upper = within < m
        index = within % m + 1
        if col % 2:
            edge = Edge.NW if upper else Edge.SW
        else:
            edge = Edge.NE if upper else Edge.SE
    elif address[0] == "row":
        _, row, xpos = address
        if not (1 <= row <= 2 * dy and 1 <= xpos <= 2 * m * dx):
            raise InvalidSpecError(f"row address {(row, xpos)} out of range")
        ay = (row + 1) // 2
        ax, within = divmod(xpos - 1, 2 * m)
        ax += 1
        left = within < m
        if row % 2:
            edge = Edge.NW if left else Edge.NE
            index = m - within if left else within - m + 1
        else:
            edge = Edge.SW if left else Edge.SE
            index = within + 1 if left else 2 * m - within
    else:
        raise InvalidSpecError(f"unrecognised address {address!r}")
    if not (1 <= ax <= dx and 1 <= ay <= dy and 1 <= index <= m):
        raise InvalidSpecError(f"address {address!r} out of range for {layout.label()}")
    return _sparse_node(layout, ax, ay, edge, index)


def column_path(layout: LayoutSpec, col: int) -> list[int]:
    """Nodes of generalized column ``col`` ordered by vertical position 1..2m*dy.

    For a rectangular layout the column is the plain grid column ``col``
    (1-based), top to bottom.
    """
    if layout.kind is LayoutKind.RECTANGULAR:
        if not 1 <= col <= layout.lx:
            raise InvalidSpecError(f"column {col} out of range 1..{layout.lx}")
        return [j * layout.lx + (col - 1) for j in range(layout.ly)]
    _require_sparse(layout)
    if not 1 <= col <= 2 * layout.dx:
        raise InvalidSpecError(f"column {col} out of range 1..{2 * layout.dx}")
    return [node_at(layout, ("column", col, y)) for y in range(1, 2 * layout.m * layout.dy + 1)]


def row_path(layout: LayoutSpec, row: int) -> list[int]:
    """Nodes of generalized row ``row`` ordered by horizontal position 1..2m*dx."""
    if layout.kind is LayoutKind.RECTANGULAR:
        if not 1 <= row <= layout.ly:
            raise InvalidSpecError(f"row {row} out of range 1..{layout.ly}")
        return [(row - 1) * layout.lx + i for i in range(layout.lx)]
    _require_sparse(layout)
    if not 1 <= row <= 2 * layout.dy:
        raise InvalidSpecError(f"row {row} out of range 1..{2 * layout.dy}")
    return [node_at(layout, ("row", row, x)) for x in range(1, 2 * layout.m * layout.dx + 1)]


def format_edge_list(graph: HardwareGraph) -> str:
    lines = [f"nodes {graph.node_count}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def column_coordinates(layout: LayoutSpec) -> list[tuple[int, int]]:
    """``(col, ypos)`` for every node, 1-based, for rectangular or sparse layouts."""
    if layout.kind is LayoutKind.RECTANGULAR:
        return [(i % layout.lx + 1, i // layout.lx + 1) for i in range(layout.qubit_count)]
    _require_sparse(layout)
    return [address_of(layout, q).column_form for q in range(layout.qubit_count)]


def column_count(layout: LayoutSpec) -> int:
    if layout.kind is LayoutKind.RECTANGULAR:
        return layout.lx
    _require_sparse(layout)
    return 2 * layout.dx


def row_count(layout: LayoutSpec) -> int:
    if layout.kind is LayoutKind.RECTANGULAR:
        return layout.ly
    _require_sparse(layout)
    return 2 * layout.dy
