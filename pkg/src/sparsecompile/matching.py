"""Column-routing bipartite multigraph and its decomposition into perfect matchings."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .topology import LayoutSpec, column_coordinates, column_count

__all__ = [
    "NotABijectionError",
    "RegularityError",
    "BipartiteEdge",
    "BipartiteMultigraph",
    "Matching",
    "FlowNetwork",
    "build_routing_graph",
    "decompose_matchings",
    "format_matchings",
]


class NotABijectionError(ValueError):
    pass


class RegularityError(ValueError):
    """The multigraph is not regular, so a perfect matching is not guaranteed."""


@dataclass(frozen=True, order=True)
class BipartiteEdge:
    left: int
    right: int
    payload: int


@dataclass(frozen=True)
class BipartiteMultigraph:
    left_count: int
    right_count: int
    edges: tuple[BipartiteEdge, ...]

    def left_degrees(self) -> list[int]:
        deg = [0] * self.left_count
        for e in self.edges:
            deg[e.left] += 1
        return deg

    def right_degrees(self) -> list[int]:
        deg = [0] * self.right_count
        for e in self.edges:
            deg[e.right] += 1
        return deg

    def regular_degree(self) -> int:
        """Common degree of every node; raises :class:`RegularityError` otherwise."""
        if self.left_count != self.right_count:
            raise RegularityError(
                f"sides differ in size ({self.left_count} vs {self.right_count})"
            )
        degrees = set(self.left_degrees()) | set(self.right_degrees())
        if len(degrees) != 1:
            raise RegularityError(f"node degrees are not uniform: {sorted(degrees)}")
        return degrees.pop()


@dataclass(frozen=True)
class Matching:
    edges: tuple[BipartiteEdge, ...]

    def is_perfect(self, side: int) -> bool:
        lefts = sorted(e.left for e in self.edges)
        rights = sorted(e.right for e in self.edges)
        return lefts == list(range(side)) and rights == list(range(side))


class FlowNetwork:
    """Residual graph for integer max-flow by depth-first augmenting paths.

    Arcs out of a node are tried in insertion order, so results depend only
    on the order in which arcs were added.
    """

    def __init__(self, node_count: int) -> None:
        self._head: list[list[int]] = [[] for _ in range(node_count)]
        self._to: list[int] = []
        self._cap: list[int] = []

    def add_edge(self, u: int, v: int, capacity: int) -> int:
        """Add arc ``u -> v``; returns its id (the reverse arc is ``id ^ 1``)."""
        arc = len(self._to)
        self._to += [v, u]
        self._cap += [capacity, 0]
        self._head[u].append(arc)
        self._head[v].append(arc + 1)
        return arc

    def flow_on(self, arc: int) -> int:
        return self._cap[arc ^ 1]

    def _augment(self, source: int, sink: int) -> int:
        # iterative DFS for a path with spare capacity; unit pushes suffice here
        parent_arc = {source: -1}
        stack = [(source, iter(self._head[source]))]
        while stack:
            u, arcs = stack[-1]
            for arc in arcs:
                v = self._to[arc]
                if self._cap[arc] > 0 and v not in parent_arc:
                    parent_arc[v] = arc
                    if v == sink:
                        stack.clear()
                        break
                    stack.append((v, iter(self._head[v])))
                    break
            else:
                stack.pop()
        if sink not in parent_arc:
            return 0
        bottleneck = None
        v = sink
        while v != source:
            arc = parent_arc[v]
            bottleneck = self._cap[arc] if bottleneck is None else min(bottleneck, self._cap[arc])
            v = self._to[arc ^ 1]
        v = sink
        while v != source:
            arc = parent_arc[v]
            self._cap[arc] -= bottleneck
            self._cap[arc ^ 1] += bottleneck
            v = self._to[arc ^ 1]
        return bottleneck

    def max_flow(self, source: int, sink: int) -> int:
        total = 0
        while True:
            pushed = self._augment(source, sink)
            if not pushed:
                return total
            total += pushed


def build_routing_graph(layout: LayoutSpec, perm: Sequence[int]) -> BipartiteMultigraph:
    """One edge (origin column, destination column, qubit) per qubit.

    Columns are 0-based here. ``perm[q]`` is the node the qubit starting on
    node ``q`` must reach; the edge payload is ``q``.
    """
    n = layout.qubit_count
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise NotABijectionError(f"permutation is not a bijection on 0..{n - 1}")
    coords = column_coordinates(layout)
    edges = [BipartiteEdge(coords[q][0] - 1, coords[perm[q]][0] - 1, q) for q in range(n)]
    side = column_count(layout)
    return BipartiteMultigraph(side, side, tuple(sorted(edges)))


def _one_perfect_matching(side: int, edges: list[BipartiteEdge]) -> list[BipartiteEdge]:
    # nodes: 0 = s, 1..side = left, side+1..2side = right, 2side+1 = t
    source, sink = 0, 2 * side + 1
    net = FlowNetwork(2 * side + 2)
    for l in range(side):
        net.add_edge(source, 1 + l, 1)
    arcs = [net.add_edge(1 + e.left, 1 + side + e.right, 1) for e in edges]
    for r in range(side):
        net.add_edge(1 + side + r, sink, 1)
    value = net.max_flow(source, sink)
    if value != side:
        raise RegularityError(f"max flow {value} below side size {side}")
    return [e for e, arc in zip(edges, arcs) if net.flow_on(arc)]


def decompose_matchings(graph: BipartiteMultigraph) -> list[Matching]:
    """Split a k-regular bipartite multigraph into k perfect matchings.

    Each round runs max-flow between a virtual source attached to every left
    node and a virtual sink attached to every right node, then removes the
    matched edges; the remainder stays regular with degree one lower.
    """
    k = graph.regular_degree()
    remaining = sorted(graph.edges)
    matchings = []
    for _ in range(k):
        chosen = _one_perfect_matching(graph.left_count, remaining)
        matchings.append(Matching(tuple(chosen)))
        taken = Counter(chosen)
        rest = []
        for e in remaining:
            if taken[e]:
                taken[e] -= 1
            else:
                rest.append(e)
        remaining = rest
    return matchings


def format_matchings(matchings: Sequence[Matching]) -> str:
    lines = []
    for y, matching in enumerate(matchings, start=1):
        body = " ".join(f"({e.left},{e.right},{e.payload})" for e in matching.edges)
        lines.append(f"matching {y}: {body}")
    return "\n".join(lines) + "\n"
