"""Dense linear algebra over GF(2).

Vectors and matrix rows are packed into Python integers: bit ``i`` of the
integer is entry ``i``.  Seen as 64-bit words this is row-major storage with
little-endian bit order inside each word (bit ``i`` lives in word ``i // 64``
at position ``i % 64``); :attr:`BitVector.words` exposes that view so packed
data can be serialized bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

WORD = 64


def parity(x: int) -> int:
    return x.bit_count() & 1


def _mask(n: int) -> int:
    return (1 << n) - 1


def _pack_row(bits) -> int:
    arr = np.asarray(bits, dtype=np.uint8) & 1
    if arr.size == 0:
        return 0
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


@dataclass(frozen=True, slots=True)
class BitVector:
    """Fixed-length bit string over GF(2)."""

    len: int
    bits: int = 0

    def __post_init__(self):
        if self.len < 0:
            raise ValueError("negative length")
        if self.bits >> self.len:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(n, 0)

    @classmethod
    def unit(cls, n: int, i: int) -> BitVector:
        return cls(n, 1 << i)

    @classmethod
    def from_str(cls, s: str) -> BitVector:
        """Parse ``"0110"``; character ``i`` is entry ``i``."""
        if any(ch not in "01" for ch in s):
            raise ValueError(f"not a bitstring: {s!r}")
        return cls(len(s), int(s[::-1], 2) if s else 0)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        bits = list(bits)
        return cls(len(bits), _pack_row(bits))

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.len))

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.len:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __iter__(self):
        return (int((self.bits >> i) & 1) for i in range(self.len))

    def __len__(self) -> int:
        return self.len

    def __xor__(self, other: BitVector) -> BitVector:
        if self.len != other.len:
            raise ValueError("length mismatch")
        return BitVector(self.len, self.bits ^ other.bits)

    def dot(self, other: BitVector) -> int:
        if self.len != other.len:
            raise ValueError("length mismatch")
        return parity(self.bits & other.bits)

    def popcount(self) -> int:
        return self.bits.bit_count()

    @property
    def words(self) -> list[int]:
        nwords = (self.len + WORD - 1) // WORD
        return [(self.bits >> (WORD * k)) & _mask(WORD) for k in range(nwords)]

    def to_array(self) -> np.ndarray:
        return np.array(list(self), dtype=np.uint8)


@dataclass(frozen=True, slots=True)
class BitMatrix:
    """Dense ``rows x cols`` matrix over GF(2) stored as packed integer rows."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")
        limit = _mask(self.cols)
        if any(r & ~limit for r in self.data):
            raise ValueError("bits set beyond column count")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence, cols: int | None = None) -> BitMatrix:
        """Build from bitstrings, bit lists or :class:`BitVector` rows."""
        packed = []
        width = cols
        for r in rows:
            if isinstance(r, BitVector):
                v = r
            elif isinstance(r, str):
                v = BitVector.from_str(r)
            else:
                v = BitVector.from_bits(r)
            if width is None:
                width = v.len
            elif v.len != width:
                raise ValueError("ragged rows")
            packed.append(v.bits)
        return cls(len(packed), width or 0, tuple(packed))

    @classmethod
    def from_array(cls, arr) -> BitMatrix:
        arr = np.asarray(arr, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls(arr.shape[0], arr.shape[1], tuple(_pack_row(r) for r in arr))

    # -- views --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])

    def column(self, j: int) -> BitVector:
        return BitVector(self.rows, sum(((r >> j) & 1) << i for i, r in enumerate(self.data)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.data[i] >> j) & 1

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i, r in enumerate(self.data):
            for j in range(self.cols):
                out[i, j] = (r >> j) & 1
        return out

    def to_strings(self) -> list[str]:
        return [str(self.row(i)) for i in range(self.rows)]

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, {self.to_strings()})"

    # -- algebra ------------------------------------------------------------

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return BitMatrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    __xor__ = __add__
    __sub__ = __add__

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            if other.len != self.cols:
                raise ValueError("shape mismatch")
            return BitVector(self.rows, sum(parity(r & other.bits) << i for i, r in enumerate(self.data)))
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in self.data:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= other.data[j]
                r >>= 1
                j += 1
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))

    @property
    def T(self) -> BitMatrix:
        return BitMatrix(self.cols, self.rows, tuple(self.column(j).bits for j in range(self.cols)))

    def hstack(self, other: BitMatrix) -> BitMatrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return BitMatrix(
            self.rows, self.cols + other.cols, tuple(a | (b << self.cols) for a, b in zip(self.data, other.data))
        )

    def vstack(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return BitMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    def select_columns(self, cols: Sequence[int]) -> BitMatrix:
        out = []
        for r in self.data:
            out.append(sum(((r >> c) & 1) << k for k, c in enumerate(cols)))
        return BitMatrix(self.rows, len(cols), tuple(out))

    def is_zero(self) -> bool:
        return not any(self.data)


@dataclass(frozen=True, slots=True)
class AffineMap:
    """``v -> matrix @ v ^ offset`` on ``n`` bits."""

    matrix: BitMatrix
    offset: BitVector

    def __post_init__(self):
        n = self.matrix.rows
        if self.matrix.cols != n or self.offset.len != n:
            raise ValueError("affine map must be square")

    def apply(self, v: BitVector) -> BitVector:
        return (self.matrix @ v) ^ self.offset

    def compose(self, first: AffineMap) -> AffineMap:
        """Map equal to applying ``first`` and then ``self``."""
        return AffineMap(self.matrix @ first.matrix, (self.matrix @ first.offset) ^ self.offset)


# -- elimination --------------------------------------------------------------


def rref(m: BitMatrix) -> tuple[list[int], list[int], list[int]]:
    """Reduced row echelon form by column-ordered elimination.

    Returns ``(rows, pivots, transform)`` where ``rows`` are the packed rows of
    ``R``, ``pivots[i]`` is the pivot column of row ``i`` and ``transform`` are
    the packed rows of an invertible ``P`` with ``P @ m == R``.
    """
    rows = list(m.data)
    transform = [1 << i for i in range(m.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        bit = 1 << c
        p = next((i for i in range(r, m.rows) if rows[i] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        transform[r], transform[p] = transform[p], transform[r]
        for i in range(m.rows):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
                transform[i] ^= transform[r]
        pivots.append(c)
        r += 1
    return rows, pivots, transform


def rank(m: BitMatrix) -> int:
    """Row rank over GF(2)."""
    basis: dict[int, int] = {}  # leading bit -> reduced row
    for row in m.data:
        while row:
            lead = row.bit_length() - 1
            if lead not in basis:
                basis[lead] = row
                break
            row ^= basis[lead]
    return len(basis)


def generalized_inverse(m: BitMatrix) -> BitMatrix:
    """A ``G`` with ``m @ G @ m == m``.

    Canonical choice from the factorization ``P m Q = [[I_r, 0], [0, 0]]``
    (``P`` from row reduction, ``Q`` moving pivot columns first and clearing
    the rest): ``G = Q [[I_r, 0], [0, 0]] P``, i.e. row ``pivots[i]`` of ``G``
    is row ``i`` of ``P`` and every other row is zero.
    """
    _, pivots, transform = rref(m)
    g = [0] * m.cols
    for i, c in enumerate(pivots):
        g[c] = transform[i]
    return BitMatrix(m.cols, m.rows, tuple(g))


def kernel_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of ``{v : m @ v == 0}``, one vector per free column, in column order."""
    rows, pivots, _ = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = 1 << f
        for i, c in enumerate(pivots):
            if (rows[i] >> f) & 1:
                v |= 1 << c
        basis.append(BitVector(m.cols, v))
    return basis


def solve_affine(m: BitMatrix, rhs: BitVector) -> BitVector | None:
    """A particular solution of ``m @ x == rhs`` or ``None`` if inconsistent."""
    if rhs.len != m.rows:
        raise ValueError("rhs length must equal the row count")
    x = generalized_inverse(m) @ rhs
    if m @ x != rhs:
        return None
    return x


def is_invertible(m: BitMatrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def random_matrix(rows: int, cols: int, rng: np.random.Generator) -> BitMatrix:
    return BitMatrix.from_array(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8))


def random_invertible(n: int, rng: np.random.Generator) -> BitMatrix:
    """Uniform element of GL_n(F_2) by rejection sampling.

    A uniform random square bit matrix is invertible with probability
    ``prod_{i>=1} (1 - 2^-i) > 0.288``, so fewer than four draws are expected.
    """
    if n < 1:
        raise ValueError("n must be positive")
    while True:
        m = random_matrix(n, n, rng)
        if rank(m) == n:
            return m


def inverse(m: BitMatrix) -> BitMatrix:
    if m.rows != m.cols:
        raise ValueError("matrix is not square")
    _, pivots, transform = rref(m)
    if len(pivots) != m.rows:
        raise ValueError("matrix is singular")
    return BitMatrix(m.rows, m.rows, tuple(transform))
