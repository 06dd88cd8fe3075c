"""Path coherence and the admissible-path solution space."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import CapExceeded, InconsistentInstance, InvariantViolation
from .gf2 import BitMatrix, BitVector, generalized_inverse, rank
from .sop import AmplitudeInstance, PathSystem

DEFAULT_CAP = 24


@dataclass(frozen=True)
class CoherenceReport:
    n: int
    h: int
    rank_Ax: int
    pc: int
    rank_K: int

    def to_json(self) -> dict:
        return {"n": self.n, "h": self.h, "rank_ax": self.rank_Ax, "pc": self.pc}


@dataclass(frozen=True)
class MNKParam:
    """``x = M a + N (b + t) + K w'`` for ``w'`` ranging over all ``n + h`` bit strings."""

    M: BitMatrix
    N: BitMatrix
    K: BitMatrix

    def solution(self, a: BitVector, b_shifted: BitVector, w: BitVector) -> BitVector:
        return (self.M @ a) ^ (self.N @ b_shifted) ^ (self.K @ w)


def _block_select(h: int, n: int) -> tuple[BitMatrix, BitMatrix]:
    """``Z = [I_h 0]`` and ``Zbar = [0 I_n]``, both acting on ``n + h`` bits."""
    z = BitMatrix(h, n + h, tuple(1 << i for i in range(h)))
    zbar = BitMatrix(n, n + h, tuple(1 << (h + i) for i in range(n)))
    return z, zbar


def parameterize_mnk(ps: PathSystem) -> MNKParam:
    """Build ``M, N, K`` from generalized inverses of ``A`` and ``B``.

    The offset column ``t`` is folded into ``b``: callers pass ``b + t``.
    """
    n, h = ps.n, ps.h
    A = ps.A
    Ag = generalized_inverse(A)
    eye = BitMatrix.identity(n + h)
    proj = eye + Ag @ A  # I - A^g A
    z, zbar = _block_select(h, n)
    B = zbar @ proj
    Bg = generalized_inverse(B)
    M = z @ proj @ Bg
    N = z @ (eye + proj @ Bg @ zbar) @ Ag
    K = z @ proj @ (eye + Bg @ B)

    expected = (BitMatrix.identity(h) + generalized_inverse(ps.A_x) @ ps.A_x).hstack(BitMatrix.zeros(h, n))
    if K != expected:
        raise InvariantViolation("K differs from [I_h - A_x^g A_x | 0]")
    return MNKParam(M, N, K)


def path_coherence(ps: PathSystem) -> CoherenceReport:
    rank_ax = rank(ps.A_x)
    pc = ps.h - rank_ax
    rank_k = rank(parameterize_mnk(ps).K)
    if rank_k != pc:
        raise InvariantViolation(f"rank(K) = {rank_k} but h - rank(A_x) = {pc}")
    return CoherenceReport(ps.n, ps.h, rank_ax, pc, rank_k)


def _require_consistent(inst: AmplitudeInstance) -> None:
    if not inst.consistent:
        raise InconsistentInstance("instance has no admissible paths")


def sample_solution(inst: AmplitudeInstance, rng: np.random.Generator) -> BitVector:
    """Uniform element of the admissible path set."""
    _require_consistent(inst)
    x = inst.particular
    coeffs = rng.integers(0, 2, size=len(inst.kernel))
    for r, v in zip(coeffs, inst.kernel):
        if r:
            x = x ^ v
    return x


def enumerate_solutions(inst: AmplitudeInstance, cap: int = DEFAULT_CAP) -> Iterator[BitVector]:
    """All admissible paths in Gray-code order over kernel coefficients.

    Consecutive paths differ by exactly one kernel vector.
    """
    _require_consistent(inst)
    d = len(inst.kernel)
    if d > cap:
        raise CapExceeded(f"2^{d} paths exceeds enumeration cap 2^{cap}")
    x = inst.particular
    yield x
    for i in range(1, 1 << d):
        # gray(i) ^ gray(i - 1) is the lowest set bit of i
        x = x ^ inst.kernel[(i & -i).bit_length() - 1]
        yield x
