import random

import pytest

from sparsecompile import pairwise, topology
from sparsecompile.pairwise import Circuit, Gate
from sparsecompile.topology import LayoutSpec


def test_far_gate_on_line():
    g = topology.build_linear(4)
    circuit = Circuit(4, (Gate("CZ", (0, 3)),))
    compiled, report = pairwise.compile_pairwise(g, circuit)
    assert report.swaps_one_way == 2
    assert report.swaps_round_trip == 4
    assert report.depth_added == 1
    assert report.sqrt_swap_pulses == 8
    assert pairwise.replay_check(g, circuit, compiled)
    # both endpoints move in the same layer
    routed = [x for x in compiled.gates if x.role == "route"]
    assert len({x.layer for x in routed}) == 1 and len(routed) == 2


def test_adjacent_gate_needs_no_swaps():
    g = topology.build_linear(3)
    compiled, report = pairwise.compile_pairwise(g, Circuit(3, (Gate("CZ", (1, 2)), Gate("X", (0,)))))
    assert report.swaps_one_way == 0
    assert [x.name for x in compiled.gates] == ["CZ", "X"]


def test_shortest_path_tie_break():
    g = topology.build_rectangular(2, 2)
    assert pairwise.shortest_path(g, 0, 3) == [0, 1, 3]


def test_degenerate_pair():
    with pytest.raises(pairwise.DegeneratePairError):
        pairwise.shortest_path(topology.build_linear(2), 1, 1)


def test_random_circuits_replay_on_sparse():
    layout = LayoutSpec.sparse(2, 2, 2)
    g = topology.build(layout)
    rng = random.Random(3)
    for _ in range(20):
        gates = tuple(Gate("CZ", tuple(rng.sample(range(32), 2))) for _ in range(10))
        circuit = Circuit(32, gates)
        placement = list(range(32))
        rng.shuffle(placement)
        compiled, _ = pairwise.compile_pairwise(g, circuit, placement)
        assert pairwise.replay_check(g, circuit, compiled, placement)


def test_replay_detects_tampering():
    g = topology.build_linear(4)
    circuit = Circuit(4, (Gate("CZ", (0, 3)),))
    compiled, _ = pairwise.compile_pairwise(g, circuit)
    gates = list(compiled.gates)
    gates.pop()  # drop one undo swap
    assert not pairwise.replay_check(g, circuit, Circuit(4, tuple(gates)))


def test_circuit_text_roundtrip():
    text = "qubits 3\n# comment\ng1 RZ 0 0.5\ng2 CZ 0 2\n"
    circuit = pairwise.parse_circuit(text)
    assert circuit.gates == (Gate("RZ", (0,), (0.5,)), Gate("CZ", (0, 2)))
    compiled, _ = pairwise.compile_pairwise(topology.build_linear(3), circuit)
    again = pairwise.parse_circuit(pairwise.format_circuit(compiled))
    assert again.gates == compiled.gates


@pytest.mark.parametrize(
    "text,line",
    [("g2 CZ 0 1\n", 1), ("qubits 2\ng2 CZ 0 5\n", 2), ("qubits 2\ng2 CZ 1 1\n", 2), ("qubits 2\nfoo\n", 2), ("qubits 2\ng2 CZ a 1\n", 2)],
)
def test_parse_errors(text, line):
    with pytest.raises(pairwise.CircuitParseError) as err:
        pairwise.parse_circuit(text)
    assert err.value.line_no == line


def test_bad_placement():
    g = topology.build_linear(3)
    with pytest.raises(pairwise.CircuitError):
        pairwise.compile_pairwise(g, Circuit(2, ()), [0, 0])
    with pytest.raises(pairwise.CircuitError):
        pairwise.compile_pairwise(g, Circuit(4, ()))
