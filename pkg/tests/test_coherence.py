from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pathcoherence.circuit import Circuit, bias_preserving_circuit, hadamard_layer, layered_circuit
from pathcoherence.coherence import enumerate_solutions, parameterize_mnk, path_coherence, sample_solution
from pathcoherence.errors import CapExceeded, InconsistentInstance
from pathcoherence.gf2 import BitMatrix, BitVector, generalized_inverse, rank
from pathcoherence.sop import encode, specialize

from conftest import all_bitvectors, bell, circuits


def solution_set(inst):
    ps = inst.system
    return {x for x in all_bitvectors(ps.h) if ps.A_x @ x == inst.rhs}


@given(circuits(max_n=6, max_h=10))
def test_rank_k_equals_pc(c):
    ps = encode(c)
    rep = path_coherence(ps)
    assert rep.rank_K == rep.pc == ps.h - rank(ps.A_x)
    assert 0 <= rep.pc <= ps.h


@given(circuits(max_n=5, max_h=8))
def test_k_block_form(c):
    ps = encode(c)
    k = parameterize_mnk(ps).K
    proj = BitMatrix.identity(ps.h) + generalized_inverse(ps.A_x) @ ps.A_x
    assert k == proj.hstack(BitMatrix.zeros(ps.h, ps.n))


@given(circuits(max_n=3, max_h=5), st.data())
def test_mnk_parameterizes_solution_set(c, data):
    ps = encode(c)
    n, h = ps.n, ps.h
    a = BitVector(n, data.draw(st.integers(0, (1 << n) - 1)))
    b = BitVector(n, data.draw(st.integers(0, (1 << n) - 1)))
    inst = specialize(ps, a, b)
    want = solution_set(inst)
    param = parameterize_mnk(ps)
    got = {param.solution(a, b ^ ps.offset_t, w) for w in all_bitvectors(n + h)}
    if want:
        assert got == want
    else:
        assert not inst.consistent
        assert got.isdisjoint(want)


@given(circuits(max_n=4, max_h=7))
def test_enumeration_matches_brute_force(c):
    ps = encode(c)
    # with a = 0 the all-zero path lands on b = t
    inst = specialize(ps, BitVector.zeros(ps.n), ps.offset_t)
    want = solution_set(inst)
    assert BitVector.zeros(ps.h) in want
    listed = list(enumerate_solutions(inst))
    assert len(listed) == len(set(listed)) == len(want)
    assert set(listed) == want
    for x, y in zip(listed, listed[1:]):
        assert (x ^ y) in inst.kernel


def test_sample_solution_uniform():
    c = Circuit(3, tuple(hadamard_layer(3)) + tuple(hadamard_layer(3)))
    inst = specialize(encode(c), BitVector.zeros(3), BitVector.zeros(3))
    assert inst.solutions_log2 == 3
    rng = np.random.default_rng(3)
    draws = 8000
    tally = Counter(sample_solution(inst, rng) for _ in range(draws))
    assert set(tally) == solution_set(inst)
    chi2 = sum((v - draws / 8) ** 2 / (draws / 8) for v in tally.values())
    assert chi2 < 24.3  # 7 dof, 99.9% quantile


def test_inconsistent_instance_raises():
    inst = specialize(encode(Circuit(1)), BitVector.from_str("0"), BitVector.from_str("1"))
    assert not inst.consistent
    with pytest.raises(InconsistentInstance):
        sample_solution(inst, np.random.default_rng(0))
    with pytest.raises(InconsistentInstance):
        next(enumerate_solutions(inst))


def test_enumeration_cap():
    c = Circuit(1, tuple(hadamard_layer(1)) * 6)
    inst = specialize(encode(c), BitVector.zeros(1), BitVector.zeros(1))
    with pytest.raises(CapExceeded):
        next(enumerate_solutions(inst, cap=3))


def test_reference_circuits():
    assert path_coherence(encode(bell())).to_json() == {"n": 2, "h": 1, "rank_ax": 1, "pc": 0}
    for n in range(1, 9):
        assert path_coherence(encode(Circuit(n, tuple(hadamard_layer(n))))).pc == 0
        assert path_coherence(encode(Circuit(n))).pc == 0


@given(st.integers(1, 6), st.integers(0, 4), st.integers(0, 4), st.integers(0, 2**32 - 1))
def test_layered_pc(n, s, t, seed):
    c = layered_circuit(n, s, t, np.random.default_rng(seed))
    assert path_coherence(encode(c)).pc == c.h - n


@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_bias_preserving_pc(n, seed):
    assert path_coherence(encode(bias_preserving_circuit(n, np.random.default_rng(seed)))).pc == n
