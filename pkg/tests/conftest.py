import itertools

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from pathcoherence.circuit import CLASSICAL, Circuit, Gate, random_circuit
from pathcoherence.gf2 import BitMatrix, BitVector

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def bit_matrices(draw, max_rows=7, max_cols=7, min_rows=1, min_cols=1):
    rows = draw(st.integers(min_rows, max_rows))
    cols = draw(st.integers(min_cols, max_cols))
    data = draw(st.lists(st.integers(0, (1 << cols) - 1), min_size=rows, max_size=rows))
    return BitMatrix(rows, cols, tuple(data))


@st.composite
def circuits(draw, max_n=5, max_h=8, kinds=CLASSICAL):
    """Random circuits drawn through a seeded generator so shrinking stays cheap."""
    n = draw(st.integers(1, max_n))
    h = draw(st.integers(0, max_h))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_circuit(n, h, np.random.default_rng(seed), kinds=kinds)


def all_bitvectors(n):
    for bits in range(1 << n):
        yield BitVector(n, bits)


def brute_rank(m: BitMatrix) -> int:
    """log2 of the size of the row span, by enumerating every row combination."""
    span = {0}
    for r in m.data:
        span |= {s ^ r for s in span}
    return len(span).bit_length() - 1


def random_bits(n, rng):
    return BitVector(n, int(rng.integers(1 << n))) if n else BitVector(0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def bell() -> Circuit:
    return Circuit(2, (Gate("H", (0,)), Gate("CNOT", (0, 1))))


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


__all__ = ["bit_matrices", "circuits", "all_bitvectors", "brute_rank", "random_bits", "bell", "itertools"]
