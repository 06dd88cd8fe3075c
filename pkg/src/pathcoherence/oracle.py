"""Dense state-vector reference simulator.

Shares no gate semantics with the path-sum code: every gate is applied from
its own unitary or diagonal table.  The state is an ``n``-axis tensor where
axis ``q`` is qubit ``q``, so the flattened index reads qubit 0 as the most
significant bit.
"""

from __future__ import annotations

import numpy as np

from .circuit import Circuit
from .errors import CapExceeded
from .gf2 import BitVector

DEFAULT_QUBIT_CAP = 20

_R = 1 / np.sqrt(2)
SINGLE = {
    "H": np.array([[_R, _R], [_R, -_R]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
    "S": np.diag([1, 1j]),
    "SDG": np.diag([1, -1j]),
    "T": np.diag([1, np.exp(1j * np.pi / 4)]),
    "TDG": np.diag([1, np.exp(-1j * np.pi / 4)]),
}
_CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
_SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
_CZ = np.diag([1, 1, 1, -1]).astype(complex)
_CCZ = np.diag([1, 1, 1, 1, 1, 1, 1, -1]).astype(complex)
MULTI = {"CNOT": _CNOT, "SWAP": _SWAP, "CZ": _CZ, "CCZ": _CCZ}


def _apply(state: np.ndarray, u: np.ndarray, qubits: tuple[int, ...]) -> np.ndarray:
    k = len(qubits)
    u = u.reshape((2,) * (2 * k))
    out = np.tensordot(u, state, axes=(list(range(k, 2 * k)), list(qubits)))
    return np.moveaxis(out, list(range(k)), list(qubits))


def run(c: Circuit, a: BitVector, cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """Output state ``C|a>`` as an ``n``-axis tensor."""
    n = c.n_qubits
    if n > cap:
        raise CapExceeded(f"{n} qubits exceeds state-vector cap {cap}")
    if a.len != n:
        raise ValueError(f"input must have length {n}")
    state = np.zeros((2,) * n, dtype=complex)
    state[tuple(a)] = 1.0
    for g in c.gates:
        u = SINGLE.get(g.kind)
        if u is None:
            u = MULTI[g.kind]
        state = _apply(state, u, g.qubits)
    return state


def statevector_amplitude(c: Circuit, a: BitVector, b: BitVector, cap: int = DEFAULT_QUBIT_CAP) -> complex:
    if b.len != c.n_qubits:
        raise ValueError(f"output must have length {c.n_qubits}")
    return complex(run(c, a, cap)[tuple(b)])


def statevector_marginal(c: Circuit, a: BitVector, y: BitVector, cap: int = DEFAULT_QUBIT_CAP) -> float:
    """``sum_z |<z|C|a>|^2`` over outputs ``z`` whose first ``len(y)`` bits are ``y``."""
    if y.len > c.n_qubits:
        raise ValueError("marginal longer than circuit width")
    probs = np.abs(run(c, a, cap)) ** 2
    return float(probs[tuple(y)].sum())
