import numpy as np
import pytest
from hypothesis import given

from pathcoherence.circuit import (
    Circuit,
    Gate,
    InvalidK,
    ParseError,
    alternating_circuit,
    bias_preserving_circuit,
    build_marginal_gadget,
    dagger,
    gate,
    layered_circuit,
    linear_circuit,
    parse_circuit,
    serialize_circuit,
)
from pathcoherence.gf2 import BitVector, random_invertible
from pathcoherence.oracle import run

from conftest import all_bitvectors, circuits


def test_parse_example():
    c = parse_circuit("# demo\nqubits 3\nh 0\ncnot 0 1   # entangle\n\nCCZ 0 1 2\ntdg 2\n")
    assert c.n_qubits == 3
    assert c.gates == (gate("h", 0), gate("cnot", 0, 1), gate("ccz", 0, 1, 2), gate("tdg", 2))
    assert c.h == 1


@pytest.mark.parametrize(
    "text, line",
    [
        ("h 0\n", 1),
        ("qubits 2\nfoo 1\n", 2),
        ("qubits 2\ncnot 0\n", 2),
        ("qubits 2\n\nh 2\n", 3),
        ("qubits 2\ncz 1 1\n", 2),
        ("qubits x\n", 1),
        ("# only a comment\n", 0),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_circuit(text)
    assert info.value.line == line


@given(circuits())
def test_serialize_roundtrip(c):
    assert parse_circuit(serialize_circuit(c)) == c


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("CNOT", (1, 1))
    with pytest.raises(ValueError):
        Gate("RX", (0,))
    with pytest.raises(ValueError):
        Circuit(2, (Gate("H", (2,)),))


@given(circuits(max_n=4, max_h=5))
def test_dagger_inverts(c):
    n = c.n_qubits
    # column i is the input whose bitstring reads i in binary, matching the row order
    inputs = [BitVector.from_str(format(i, f"0{n}b")) for i in range(2**n)]
    u = np.stack([run(c, v).reshape(-1) for v in inputs], axis=1)
    ud = np.stack([run(dagger(c), v).reshape(-1) for v in inputs], axis=1)
    assert np.allclose(ud @ u, np.eye(2**c.n_qubits), atol=1e-12)


def test_linear_circuit_realizes_matrix(rng):
    for n in range(1, 7):
        m = random_invertible(n, rng)
        c = Circuit(n, tuple(linear_circuit(m)))
        assert c.h == 0
        for v in all_bitvectors(n):
            state = run(c, v)
            (idx,) = np.argwhere(np.abs(state) > 0.5)
            assert BitVector.from_bits(idx) == m @ v


def test_marginal_gadget_shape(rng):
    c = parse_circuit("qubits 2\nh 0\nt 0\ncnot 0 1\n")
    g = build_marginal_gadget(c, 1)
    assert g.n_qubits == 3
    assert g.h == 2
    assert str(g.gates[3]) == "cnot 0 2"
    assert g.gates[-1] == Gate("H", (0,))
    assert Gate("TDG", (0,)) in g.gates
    for k in (0, 3):
        with pytest.raises(InvalidK):
            build_marginal_gadget(c, k)


def test_builders_hadamard_counts(rng):
    c = layered_circuit(4, 2, 3, rng)
    assert c.h == 4 + 2 + 3
    b = bias_preserving_circuit(5, rng)
    assert b.h == 10
    a = alternating_circuit([random_invertible(3, rng) for _ in range(4)])
    assert a.h == 3
    assert all(g.qubits == (0,) for g in a.gates if g.kind == "H")
