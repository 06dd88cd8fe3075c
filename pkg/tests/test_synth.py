import numpy as np
import pytest
from hypothesis import given, strategies as st

from pathcoherence.circuit import Circuit, Gate, hadamard_layer, parse_circuit
from pathcoherence.coherence import path_coherence
from pathcoherence.estimate import exact_amplitude
from pathcoherence.gf2 import BitVector
from pathcoherence.oracle import statevector_amplitude
from pathcoherence.sop import AffineForm, PathSystem, PhasePoly, encode, specialize
from pathcoherence.synth import SignPoly, eliminate_pairs, expand_sign_poly, find_candidate

from conftest import all_bitvectors, circuits

CONJUGATED_CNOT = "qubits 2\nh 0\nh 1\ncnot 0 1\nh 0\nh 1\n"


def amplitudes(ps):
    return [
        exact_amplitude(specialize(ps, a, b)).value for a in all_bitvectors(ps.n) for b in all_bitvectors(ps.n)
    ]


def test_conjugated_cnot_reduces_to_classical():
    ps = encode(parse_circuit(CONJUGATED_CNOT))
    assert (ps.h, path_coherence(ps).pc) == (4, 2)
    red = eliminate_pairs(ps)
    assert (red.h, path_coherence(red).pc) == (0, 0)
    # H^{(x)2} CNOT_{01} H^{(x)2} is CNOT_{10}
    assert red.A_a.to_strings() == ["11", "01"]
    assert np.allclose(amplitudes(red), amplitudes(ps), atol=1e-12)


def test_hh_is_identity():
    red = eliminate_pairs(encode(parse_circuit("qubits 1\nh 0\nh 0\n")))
    assert red.h == 0
    assert red.A_a.to_strings() == ["1"]
    assert red.offset_t.bits == 0


def test_hzh_is_x():
    red = eliminate_pairs(encode(parse_circuit("qubits 1\nh 0\nz 0\nh 0\n")))
    assert red.h == 0
    assert str(red.offset_t) == "1"
    assert exact_amplitude(specialize(red, BitVector.from_str("0"), BitVector.from_str("1"))).value == pytest.approx(1)


def test_no_candidate_returns_input():
    ps = encode(Circuit(2, (Gate("H", (0,)), Gate("CNOT", (0, 1)))))
    assert find_candidate(ps) is None
    assert eliminate_pairs(ps) is ps


def test_vanishing_sum_marks_null():
    # sum_x (-1)^x = 0 for every (a, b)
    ps = PathSystem(1, 1, (AffineForm.input(0),), PhasePoly(((4, AffineForm.path(0)),)))
    red = eliminate_pairs(ps)
    assert red.null
    for a in all_bitvectors(1):
        inst = specialize(red, a, a)
        assert not inst.consistent
        assert exact_amplitude(inst).value == 0
        assert exact_amplitude(specialize(ps, a, a)).value == 0


@given(circuits(max_n=4, max_h=8))
def test_elimination_preserves_amplitudes(c):
    ps = encode(c)
    red = eliminate_pairs(ps)
    rng = np.random.default_rng(len(c))
    for _ in range(4):
        a = BitVector(c.n_qubits, int(rng.integers(1 << c.n_qubits)))
        b = BitVector(c.n_qubits, int(rng.integers(1 << c.n_qubits)))
        want = statevector_amplitude(c, a, b)
        assert exact_amplitude(specialize(red, a, b)).value == pytest.approx(want, abs=1e-10)


@given(circuits(max_n=5, max_h=10))
def test_elimination_shrinks_and_is_fixpoint(c):
    ps = encode(c)
    red = eliminate_pairs(ps)
    assert red.h <= ps.h and (ps.h - red.h) % 2 == 0
    if not red.null:
        assert path_coherence(red).pc <= path_coherence(ps).pc
        assert find_candidate(red) is None
        assert eliminate_pairs(red) is red


def test_sign_poly_product_and_substitute():
    x0, x1, a0 = AffineForm.path(0), AffineForm.path(1), AffineForm.input(0)
    sp = SignPoly.product(x0 ^ a0, x1)
    assert sp.sorted() == [(("a", 0), ("x", 1)), (("x", 0), ("x", 1))]
    sub = sp.substitute(("x", 1), x0 ^ AffineForm(const=1))
    # (x0 + a0)(x0 + 1) = x0 + x0 + a0 x0 + a0 = a0 x0 + a0
    assert sub.sorted() == [(("a", 0),), (("a", 0), ("x", 0))]


@given(circuits(max_n=4, max_h=6), st.integers(0, 255), st.integers(0, 15))
def test_sign_poly_matches_phase(c, xbits, abits):
    ps = encode(c)
    x, a = xbits & ((1 << ps.h) - 1), abits & ((1 << ps.n) - 1)
    sp = expand_sign_poly(ps)
    other = sum(cf * f(x, a) for cf, f in ps.phase.linear if cf % 8 != 4)
    assert (4 * sp(x, a) + other) % 8 == ps.phase(x, a)


def test_hh_sign_poly_and_candidate():
    ps = encode(parse_circuit("qubits 1\nh 0\nh 0\n"))
    sp = expand_sign_poly(ps)
    assert sp.sorted() == [(("a", 0), ("x", 0)), (("x", 0), ("x", 1))]
    cand = find_candidate(ps, sp)
    assert (cand.alpha, cand.beta) == (0, 1)
    assert cand.f == AffineForm.input(0) ^ AffineForm.path(1)


@pytest.mark.parametrize("n", [1, 3, 6])
def test_double_hadamard_layer_reduces_to_identity(n):
    red = eliminate_pairs(encode(Circuit(n, tuple(hadamard_layer(n)) * 2)))
    assert red.h == 0
    assert red.A_a.to_strings() == [("0" * i) + "1" + "0" * (n - i - 1) for i in range(n)]
