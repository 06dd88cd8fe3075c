"""Sum-over-paths compilation of Hadamard + classical-linear circuits.

Every Hadamard introduces a fresh path variable ``x_k`` (``k`` counts
Hadamards in circuit order, 0-based in code).  Wires carry affine forms over
path variables ``x`` and input bits ``a``; at the end the ``n`` wire forms are
the rows of the system ``A_x x + A_a a + t = b``.  Phases are tracked exactly
as integers mod 8 in units of pi/4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .circuit import Circuit
from .gf2 import BitMatrix, BitVector, kernel_basis, parity, solve_affine


@dataclass(frozen=True, slots=True)
class AffineForm:
    """``<x_mask, x> + <a_mask, a> + const`` over GF(2), masks packed as ints."""

    x_mask: int = 0
    a_mask: int = 0
    const: int = 0

    def __xor__(self, other: AffineForm) -> AffineForm:
        return AffineForm(self.x_mask ^ other.x_mask, self.a_mask ^ other.a_mask, self.const ^ other.const)

    def __call__(self, x: int, a: int) -> int:
        return parity(self.x_mask & x) ^ parity(self.a_mask & a) ^ self.const

    def flipped(self) -> AffineForm:
        return AffineForm(self.x_mask, self.a_mask, self.const ^ 1)

    @classmethod
    def path(cls, k: int) -> AffineForm:
        return cls(x_mask=1 << k)

    @classmethod
    def input(cls, i: int) -> AffineForm:
        return cls(a_mask=1 << i)

    def to_json(self, h: int, n: int) -> list:
        return [str(BitVector(h, self.x_mask)), str(BitVector(n, self.a_mask)), self.const]


ONE = AffineForm(const=1)


@dataclass(frozen=True, slots=True)
class PhasePoly:
    """``sum c_j L_j + 4 sum P_i Q_i  (mod 8)`` with affine forms ``L, P, Q``."""

    linear: tuple[tuple[int, AffineForm], ...] = ()
    quad: tuple[tuple[AffineForm, AffineForm], ...] = ()

    def __call__(self, x: int, a: int) -> int:
        m = sum(c * f(x, a) for c, f in self.linear)
        m += 4 * sum(p(x, a) & q(x, a) for p, q in self.quad)
        return m % 8

    def forms(self):
        for _, f in self.linear:
            yield f
        for p, q in self.quad:
            yield p
            yield q


@dataclass(frozen=True)
class PathSystem:
    """Compiled circuit: output rows ``A_x x + A_a a + t = b`` and the phase.

    ``scale_log2`` is an extra ``2**scale_log2`` prefactor on the amplitude
    (zero for encoded circuits).  ``null`` marks systems whose amplitude is
    identically zero.
    """

    n: int
    h: int
    rows: tuple[AffineForm, ...]
    phase: PhasePoly = field(default_factory=PhasePoly)
    scale_log2: int = 0
    null: bool = False

    @cached_property
    def A_x(self) -> BitMatrix:
        return BitMatrix(self.n, self.h, tuple(r.x_mask for r in self.rows))

    @cached_property
    def A_a(self) -> BitMatrix:
        return BitMatrix(self.n, self.n, tuple(r.a_mask for r in self.rows))

    @cached_property
    def offset_t(self) -> BitVector:
        return BitVector(self.n, sum(r.const << i for i, r in enumerate(self.rows)))

    @property
    def A(self) -> BitMatrix:
        return self.A_x.hstack(self.A_a)

    def to_json(self) -> dict:
        h, n = self.h, self.n
        return {
            "n": n,
            "h": h,
            "A_x": self.A_x.to_strings(),
            "A_a": self.A_a.to_strings(),
            "t": str(self.offset_t),
            "phase": {
                "linear": [[c, *f.to_json(h, n)] for c, f in self.phase.linear],
                "quad": [[p.to_json(h, n), q.to_json(h, n)] for p, q in self.phase.quad],
            },
            "scale_log2": self.scale_log2,
            "null": self.null,
        }


# Diagonal gates as (coefficient, subset of operand wires) pairs; the wire
# forms in each subset are XORed.
_DIAGONAL = {
    "Z": [(4, (0,))],
    "S": [(2, (0,))],
    "SDG": [(6, (0,))],
    "T": [(1, (0,))],
    "TDG": [(7, (0,))],
    "CZ": [(2, (0,)), (2, (1,)), (6, (0, 1))],
    "CCZ": [
        (1, (0,)), (1, (1,)), (1, (2,)),
        (7, (0, 1)), (7, (1, 2)), (7, (0, 2)),
        (1, (0, 1, 2)),
    ],
}


def encode(c: Circuit) -> PathSystem:
    n = c.n_qubits
    wires = [AffineForm.input(i) for i in range(n)]
    linear: list[tuple[int, AffineForm]] = []
    quad: list[tuple[AffineForm, AffineForm]] = []
    k = 0
    for g in c.gates:
        q = g.qubits
        if g.kind == "H":
            fresh = AffineForm.path(k)
            quad.append((wires[q[0]], fresh))
            wires[q[0]] = fresh
            k += 1
        elif g.kind == "X":
            wires[q[0]] = wires[q[0]].flipped()
        elif g.kind == "CNOT":
            wires[q[1]] = wires[q[1]] ^ wires[q[0]]
        elif g.kind == "SWAP":
            wires[q[0]], wires[q[1]] = wires[q[1]], wires[q[0]]
        else:
            for coeff, subset in _DIAGONAL[g.kind]:
                form = AffineForm()
                for s in subset:
                    form = form ^ wires[q[s]]
                linear.append((coeff, form))
    return PathSystem(n, k, tuple(wires), PhasePoly(tuple(linear), tuple(quad)))


@dataclass(frozen=True)
class AmplitudeInstance:
    """A :class:`PathSystem` specialised to the amplitude ``<b|C|a>``."""

    system: PathSystem
    a: BitVector
    b: BitVector
    rhs: BitVector
    particular: BitVector | None
    kernel: tuple[BitVector, ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None and not self.system.null

    @property
    def solutions_log2(self) -> int | None:
        """``log2 |S_ab|``, or ``None`` when there are no admissible paths."""
        return len(self.kernel) if self.consistent else None


def specialize(ps: PathSystem, a: BitVector, b: BitVector) -> AmplitudeInstance:
    if a.len != ps.n or b.len != ps.n:
        raise ValueError(f"bitstrings must have length {ps.n}")
    rhs = b ^ (ps.A_a @ a) ^ ps.offset_t
    particular = solve_affine(ps.A_x, rhs)
    return AmplitudeInstance(ps, a, b, rhs, particular, tuple(kernel_basis(ps.A_x)))


def eval_phase(inst: AmplitudeInstance, x: BitVector) -> int:
    """Phase of path ``x`` as a power of ``exp(i pi / 4)``."""
    if x.len != inst.system.h:
        raise ValueError(f"path must have length {inst.system.h}")
    return inst.system.phase(x.bits, inst.a.bits)
