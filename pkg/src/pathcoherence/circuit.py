"""Circuit representation, text format and circuit builders.

Text format (UTF-8, one statement per line)::

    # comment
    qubits 3
    h 0
    cnot 0 1
    ccz 0 1 2

Qubit ``0`` corresponds to character ``0`` of every bitstring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .gf2 import BitMatrix

ARITY = {
    "H": 1, "X": 1, "Z": 1, "S": 1, "SDG": 1, "T": 1, "TDG": 1,
    "CNOT": 2, "SWAP": 2, "CZ": 2,
    "CCZ": 3,
}
ADJOINT = {"S": "SDG", "SDG": "S", "T": "TDG", "TDG": "T"}
CLASSICAL = ("X", "CNOT", "SWAP", "Z", "S", "SDG", "T", "TDG", "CZ", "CCZ")


class ParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class InvalidK(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ARITY:
            raise ValueError(f"unknown gate {self.kind!r}")
        if len(self.qubits) != ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {ARITY[self.kind]} qubit(s), got {len(self.qubits)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated qubit in {self.kind} {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError("negative qubit index")

    def adjoint(self) -> Gate:
        return Gate(ADJOINT.get(self.kind, self.kind), self.qubits)

    def shifted(self, offset: int) -> Gate:
        return Gate(self.kind, tuple(q + offset for q in self.qubits))

    def __str__(self) -> str:
        return " ".join([self.kind.lower(), *map(str, self.qubits)])


def gate(kind: str, *qubits: int) -> Gate:
    return Gate(kind.upper(), tuple(qubits))


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_qubits < 0:
            raise ValueError("negative width")
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits:
                raise ValueError(f"{g} exceeds circuit width {self.n_qubits}")

    @property
    def h(self) -> int:
        """Number of Hadamard gates."""
        return sum(g.kind == "H" for g in self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if self.n_qubits != other.n_qubits:
            raise ValueError("width mismatch")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def widened(self, n_qubits: int) -> Circuit:
        return Circuit(n_qubits, self.gates)


def parse_circuit(text: str) -> Circuit:
    n = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].lower()
        if n is None:
            if head != "qubits" or len(tokens) != 2:
                raise ParseError(lineno, "expected 'qubits <n>' header")
            try:
                n = int(tokens[1])
            except ValueError:
                raise ParseError(lineno, f"bad qubit count {tokens[1]!r}") from None
            if n < 0:
                raise ParseError(lineno, "negative qubit count")
            continue
        kind = head.upper()
        if kind not in ARITY:
            raise ParseError(lineno, f"unknown gate {head!r}")
        args = tokens[1:]
        if len(args) != ARITY[kind]:
            raise ParseError(lineno, f"{head} takes {ARITY[kind]} qubit(s), got {len(args)}")
        try:
            qubits = tuple(int(a) for a in args)
        except ValueError:
            raise ParseError(lineno, f"bad qubit index in {line!r}") from None
        if any(q < 0 or q >= n for q in qubits):
            raise ParseError(lineno, f"qubit index out of range for width {n}")
        if len(set(qubits)) != len(qubits):
            raise ParseError(lineno, f"repeated qubit in {line!r}")
        gates.append(Gate(kind, qubits))
    if n is None:
        raise ParseError(0, "missing 'qubits' header")
    return Circuit(n, tuple(gates))


def serialize_circuit(c: Circuit) -> str:
    return "".join([f"qubits {c.n_qubits}\n", *(f"{g}\n" for g in c.gates)])


def dagger(c: Circuit) -> Circuit:
    return Circuit(c.n_qubits, tuple(g.adjoint() for g in reversed(c.gates)))


def build_marginal_gadget(c: Circuit, k: int) -> Circuit:
    """``c``, then CNOT-copy of wires ``0..k-1`` onto ``k`` ancillas, then ``c``'s adjoint.

    ``<a, y| gadget |a, 0>`` is the probability that the first ``k`` output
    bits of ``c`` on input ``a`` equal ``y``.
    """
    n = c.n_qubits
    if not 1 <= k <= n:
        raise InvalidK(f"k must be in [1, {n}], got {k}")
    copy = tuple(Gate("CNOT", (i, n + i)) for i in range(k))
    return Circuit(n + k, c.gates + copy + dagger(c).gates)


# -- builders -------------------------------------------------------------------


def linear_circuit(m: BitMatrix) -> list[Gate]:
    """CNOT/SWAP gates mapping basis state ``v`` to ``m @ v`` (``m`` invertible).

    Gauss-Jordan elimination records row operations reducing ``m`` to the
    identity; replaying them in reverse realises ``m``.
    """
    n = m.rows
    rows = [list(map(int, m.row(i))) for i in range(n)]
    ops: list[Gate] = []
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            raise ValueError("matrix is singular")
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            ops.append(Gate("SWAP", (c, p)))
        for i in range(n):
            if i != c and rows[i][c]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[c])]
                ops.append(Gate("CNOT", (c, i)))
    # ops turned m into I, i.e. E_k...E_1 m = I; every E is self-inverse,
    # so m = E_1 ... E_k, which as a circuit applies E_k first.
    return ops[::-1]


def random_classical_layer(
    n: int, depth: int, rng: np.random.Generator, kinds: Sequence[str] = CLASSICAL
) -> list[Gate]:
    gates = []
    kinds = [k for k in kinds if ARITY[k] <= n]
    for _ in range(depth):
        kind = kinds[rng.integers(len(kinds))]
        qubits = tuple(int(q) for q in rng.choice(n, size=ARITY[kind], replace=False))
        gates.append(Gate(kind, qubits))
    return gates


def random_circuit(
    n: int, h: int, rng: np.random.Generator, depth: int | None = None, kinds: Sequence[str] = CLASSICAL
) -> Circuit:
    """``h`` Hadamards on random wires interleaved with random classical gates."""
    if depth is None:
        depth = 2 * n
    gates = random_classical_layer(n, int(rng.integers(depth + 1)), rng, kinds)
    for _ in range(h):
        gates.append(Gate("H", (int(rng.integers(n)),)))
        gates += random_classical_layer(n, int(rng.integers(depth + 1)), rng, kinds)
    return Circuit(n, tuple(gates))


def hadamard_layer(n: int) -> list[Gate]:
    return [Gate("H", (q,)) for q in range(n)]


def layered_circuit(n: int, s: int, t: int, rng: np.random.Generator, depth: int | None = None) -> Circuit:
    """``V H^{(x)n} U`` with ``s`` Hadamards inside ``U`` and ``t`` inside ``V``."""
    u = random_circuit(n, s, rng, depth)
    v = random_circuit(n, t, rng, depth)
    return Circuit(n, u.gates + tuple(hadamard_layer(n)) + v.gates)


def bias_preserving_circuit(n: int, rng: np.random.Generator, depth: int | None = None) -> Circuit:
    """``H^{(x)n}`` . classical . ``H^{(x)n}``."""
    if depth is None:
        depth = 4 * n
    middle = random_classical_layer(n, depth, rng)
    return Circuit(n, tuple(hadamard_layer(n) + middle + hadamard_layer(n)))


def alternating_circuit(mats: Iterable[BitMatrix]) -> Circuit:
    """``U_h H U_{h-1} ... H U_0`` with every Hadamard on qubit 0.

    ``mats`` lists the linear maps ``f_0, ..., f_h`` in application order.
    """
    mats = list(mats)
    n = mats[0].rows
    gates: list[Gate] = []
    for j, m in enumerate(mats):
        if j:
            gates.append(Gate("H", (0,)))
        gates += linear_circuit(m)
    return Circuit(n, tuple(gates))

