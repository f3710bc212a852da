"""Gate-by-gate routing along shortest paths.

Every two-qubit gate is handled on its own: both endpoints are swapped
towards each other along a shortest path until adjacent, the gate runs, and
the swaps are undone in reverse so every qubit is back on its home node.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .metrics import DisconnectedGraphError
from .topology import HardwareGraph

__all__ = [
    "CircuitError",
    "CircuitParseError",
    "DegeneratePairError",
    "Gate",
    "Circuit",
    "GateOverhead",
    "PairwiseReport",
    "shortest_path",
    "compile_pairwise",
    "ReplayResult",
    "replay_check",
    "parse_circuit",
    "format_circuit",
    "SQRT_SWAPS_PER_SWAP",
]

# one routing SWAP is realised as two sqrt(SWAP) pulses on the device
SQRT_SWAPS_PER_SWAP = 2


class CircuitError(ValueError):
    pass


class CircuitParseError(CircuitError):
    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DegeneratePairError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    name: str
    operands: tuple[int, ...]
    params: tuple[float, ...] = ()
    # "route"/"undo" for inserted SWAPs, "" for gates of the source circuit
    role: str = field(default="", compare=False)
    layer: int | None = field(default=None, compare=False)

    @property
    def inserted(self) -> bool:
        return bool(self.role)


@dataclass(frozen=True)
class Circuit:
    qubit_count: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        for i, g in enumerate(self.gates):
            if len(g.operands) not in (1, 2):
                raise CircuitError(f"gate {i} ({g.name}) has {len(g.operands)} operands")
            if len(set(g.operands)) != len(g.operands):
                raise CircuitError(f"gate {i} ({g.name}) repeats an operand")
            for q in g.operands:
                if not 0 <= q < self.qubit_count:
                    raise CircuitError(f"gate {i} ({g.name}) operand {q} out of range")


def parse_circuit(text: str) -> Circuit:
    """Read ``qubits N`` / ``g1 NAME q [param...]`` / ``g2 NAME qa qb`` lines."""
    qubits = None
    gates = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "qubits":
                if qubits is not None or len(parts) != 2:
                    raise CircuitParseError(line_no, "expected a single 'qubits N' header")
                qubits = int(parts[1])
                if qubits < 1:
                    raise CircuitParseError(line_no, "qubit count must be positive")
            elif parts[0] == "g1":
                if len(parts) < 3:
                    raise CircuitParseError(line_no, "expected 'g1 NAME q [param...]'")
                gates.append(Gate(parts[1], (int(parts[2]),), tuple(float(p) for p in parts[3:])))
            elif parts[0] == "g2":
                if len(parts) != 4:
                    raise CircuitParseError(line_no, "expected 'g2 NAME qa qb'")
                gates.append(Gate(parts[1], (int(parts[2]), int(parts[3]))))
            else:
                raise CircuitParseError(line_no, f"unknown instruction {parts[0]!r}")
        except ValueError as exc:
            if isinstance(exc, CircuitParseError):
                raise
            raise CircuitParseError(line_no, str(exc)) from None
        if qubits is None:
            raise CircuitParseError(line_no, "missing 'qubits N' header")
        if gates and any(not 0 <= q < qubits for q in gates[-1].operands):
            raise CircuitParseError(line_no, f"operand out of range 0..{qubits - 1}")
        if gates and len(set(gates[-1].operands)) != len(gates[-1].operands):
            raise CircuitParseError(line_no, "two-qubit gate on a single qubit")
    if qubits is None:
        raise CircuitParseError(0, "missing 'qubits N' header")
    return Circuit(qubits, tuple(gates))


def format_circuit(circuit: Circuit) -> str:
    lines = [f"qubits {circuit.qubit_count}"]
    current_layer = None
    for g in circuit.gates:
        if g.layer is not None and g.layer != current_layer:
            lines.append(f"# layer {g.layer} ({g.role})")
        current_layer = g.layer
        params = "".join(f" {p!r}" for p in g.params)
        if len(g.operands) == 1:
            lines.append(f"g1 {g.name} {g.operands[0]}{params}")
        else:
            lines.append(f"g2 {g.name} {g.operands[0]} {g.operands[1]}{params}")
    return "\n".join(lines) + "\n"


def shortest_path(graph: HardwareGraph, a: int, b: int) -> list[int]:
    """Shortest path from ``a`` to ``b``; ties go to the lexicographically smallest node sequence."""
    if a == b:
        raise DegeneratePairError(f"source and target are both node {a}")
    n = graph.node_count
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"node out of range 0..{n - 1}")
    # distances to b, then walk greedily from a through the smallest admissible neighbor
    dist = [-1] * n
    dist[b] = 0
    queue = deque([b])
    while queue:
        u = queue.popleft()
        for v in graph.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    if dist[a] < 0:
        raise DisconnectedGraphError(f"no path between nodes {a} and {b}")
    path = [a]
    while path[-1] != b:
        here = path[-1]
        path.append(next(v for v in graph.adjacency[here] if dist[v] == dist[here] - 1))
    return path


@dataclass(frozen=True)
class GateOverhead:
    gate_index: int
    path_length: int

    @property
    def swaps_one_way(self) -> int:
        return self.path_length - 1

    @property
    def swaps_round_trip(self) -> int:
        return 2 * (self.path_length - 1)

    @property
    def depth_added(self) -> int:
        return math.ceil((self.path_length - 1) / 2)


@dataclass(frozen=True)
class PairwiseReport:
    per_gate: tuple[GateOverhead, ...]

    @property
    def swaps_one_way(self) -> int:
        return sum(g.swaps_one_way for g in self.per_gate)

    @property
    def swaps_round_trip(self) -> int:
        return sum(g.swaps_round_trip for g in self.per_gate)

    @property
    def depth_added(self) -> int:
        return sum(g.depth_added for g in self.per_gate)

    @property
    def sqrt_swap_pulses(self) -> int:
        return SQRT_SWAPS_PER_SWAP * self.swaps_round_trip

    def format(self) -> str:
        return (
            f"two_qubit_gates={len(self.per_gate)}\n"
            f"swaps_one_way={self.swaps_one_way}\n"
            f"swaps_round_trip={self.swaps_round_trip}\n"
            f"depth_added={self.depth_added}\n"
            f"sqrt_swap_per_swap={SQRT_SWAPS_PER_SWAP}\n"
            f"sqrt_swap_pulses={self.sqrt_swap_pulses}\n"
        )


def _check_placement(graph: HardwareGraph, circuit: Circuit, placement: Sequence[int]) -> list[int]:
    placement = list(placement)
    if len(placement) != circuit.qubit_count:
        raise CircuitError(
            f"placement maps {len(placement)} qubits, circuit has {circuit.qubit_count}"
        )
    if len(set(placement)) != len(placement):
        raise CircuitError("placement maps two logical qubits to one node")
    if any(not 0 <= p < graph.node_count for p in placement):
        raise CircuitError(f"placement uses a node outside 0..{graph.node_count - 1}")
    return placement


def compile_pairwise(
    graph: HardwareGraph, circuit: Circuit, initial_placement: Sequence[int] | None = None
) -> tuple[Circuit, PairwiseReport]:
    """Rewrite ``circuit`` onto physical nodes of ``graph``.

    Endpoints move alternately towards each other, so a gate at distance
    ``l`` costs ``ceil((l-1)/2)`` SWAP layers each way.
    """
    if initial_placement is None:
        if circuit.qubit_count > graph.node_count:
            raise CircuitError(
                f"circuit needs {circuit.qubit_count} qubits, graph has {graph.node_count}"
            )
        initial_placement = range(circuit.qubit_count)
    placement = _check_placement(graph, circuit, initial_placement)

    out: list[Gate] = []
    overheads = []
    layer_no = 0
    for index, gate in enumerate(circuit.gates):
        physical = tuple(placement[q] for q in gate.operands)
        if len(physical) == 1:
            out.append(Gate(gate.name, physical, gate.params))
            continue
        path = shortest_path(graph, *physical)
        l = len(path) - 1
        overheads.append(GateOverhead(index, l))
        forward_steps = math.ceil((l - 1) / 2)
        backward_steps = (l - 1) // 2
        layers = []
        for t in range(1, forward_steps + 1):
            layer = [(path[t - 1], path[t])]
            if t <= backward_steps:
                layer.append((path[l - t + 1], path[l - t]))
            layers.append(layer)
        for layer in layers:
            layer_no += 1
            out.extend(Gate("SWAP", pair, role="route", layer=layer_no) for pair in layer)
        meet = (path[forward_steps], path[forward_steps + 1])
        out.append(Gate(gate.name, meet, gate.params))
        for layer in reversed(layers):
            layer_no += 1
            out.extend(Gate("SWAP", pair, role="undo", layer=layer_no) for pair in reversed(layer))
    compiled = Circuit(graph.node_count, tuple(out))
    return compiled, PairwiseReport(tuple(overheads))


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    message: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def replay_check(
    graph: HardwareGraph,
    source: Circuit,
    compiled: Circuit,
    initial_placement: Sequence[int] | None = None,
) -> ReplayResult:
    """Replay ``compiled`` on a position map and compare it with ``source``.

    Checks that inserted SWAPs and two-qubit gates act on graph edges, that
    each source gate acts on the right logical qubits, and that the
    placement is back to its initial value whenever no routing is pending.
    """
    if initial_placement is None:
        initial_placement = range(source.qubit_count)
    home = list(initial_placement)
    where = list(home)
    holder = {p: q for q, p in enumerate(where)}
    expected = iter(source.gates)
    previous_role = ""
    for i, g in enumerate(compiled.gates):
        if len(g.operands) == 2 and not graph.has_edge(*g.operands):
            return ReplayResult(False, f"instruction {i} ({g.name}) on non-edge {g.operands}")
        if g.inserted:
            if g.role == "route" and previous_role != "route" and where != home:
                return ReplayResult(False, f"instruction {i}: routing starts from a displaced placement")
            u, v = g.operands
            a, b = holder.get(u), holder.get(v)
            holder.pop(u, None)
            holder.pop(v, None)
            if a is not None:
                where[a] = v
                holder[v] = a
            if b is not None:
                where[b] = u
                holder[u] = b
        else:
            want = next(expected, None)
            if want is None:
                return ReplayResult(False, f"instruction {i} ({g.name}) has no source gate")
            if previous_role != "route" and where != home:
                return ReplayResult(False, f"instruction {i}: placement not restored")
            logical = tuple(holder.get(p) for p in g.operands)
            if g.name != want.name or g.params != want.params or logical != want.operands:
                return ReplayResult(
                    False, f"instruction {i} acts on {logical}, expected {want.name}{want.operands}"
                )
        previous_role = g.role
    if next(expected, None) is not None:
        return ReplayResult(False, "compiled circuit is missing source gates")
    if where != home:
        return ReplayResult(False, "final placement differs from the initial one")
    return ReplayResult(True)

