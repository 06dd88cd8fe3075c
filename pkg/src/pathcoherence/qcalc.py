"""Exact rank statistics of random path systems over F_q.

For a circuit ``U_h H U_{h-1} ... H U_0`` with every Hadamard on qubit 0 and
each ``U_j`` a uniform element of GL_n(F_q), ``rank_counts`` gives the
number of tuples ``(U_0, ..., U_h)`` whose path matrix block ``A_x`` has
rank ``r``.  All counts are Python integers and all probabilities are
:class:`fractions.Fraction`.  Formulas accept any integer ``q >= 2``; they
count matrices over a field only when ``q`` is a prime power.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

import numpy as np

from .gf2 import BitMatrix, random_invertible, rank


class DomainError(ValueError):
    pass


def q_binomial(n: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of ``F_q^n``."""
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k}, n={n}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def t_surjections(n: int, k: int, q: int) -> int:
    """``prod_{i<k} (q^n - q^i)``; ``t_surjections(n, n, q) = |GL_n(F_q)|``."""
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k}, n={n}")
    out = 1
    for i in range(k):
        out *= q**n - q**i
    return out


def gl_order(n: int, q: int) -> int:
    return t_surjections(n, n, q)


def stirling_tilde(h: int, r: int, q: int) -> int:
    """Sum over compositions ``b`` of ``h - r`` into ``r`` nonnegative parts of ``prod (q^j - 1)^b_j``.

    This is the complete homogeneous symmetric polynomial of degree ``h - r``
    in ``q - 1, q^2 - 1, ..., q^r - 1``, built one variable at a time:
    ``e[m]`` holds the degree-``m`` value over the variables seen so far.
    """
    if not 0 <= r <= h:
        raise DomainError(f"need 0 <= r <= h, got r={r}, h={h}")
    m = h - r
    e = [1] + [0] * m
    if r == 0:
        return e[m]
    for j in range(1, r + 1):
        w = q**j - 1
        for deg in range(1, m + 1):
            e[deg] += w * e[deg - 1]
    return e[m]


def stay_count(n: int, i: int, q: int) -> int:
    """Choices of the next linear map that keep the rank of ``A_x`` at ``i``."""
    if not 1 <= i <= n:
        raise DomainError(f"need 1 <= i <= n, got i={i}, n={n}")
    return (q**i - 1) * q ** (n - 1) * t_surjections(n - 1, n - 1, q)


@dataclass(frozen=True)
class RankDistribution:
    n: int
    h: int
    q: int
    counts: dict[int, int]
    total: int

    def probability(self, r: int) -> Fraction:
        return Fraction(self.counts.get(r, 0), self.total)


def rank_counts(n: int, h: int, q: int = 2) -> RankDistribution:
    """``Q(n,h,r) = |GL|^(h+1) (q^n - 1)^-h S~(h,r) T(n,r)`` for ``r = 0..h``."""
    if n < 1 or h < 0:
        raise DomainError("need n >= 1 and h >= 0")
    gl = gl_order(n, q)
    total = gl ** (h + 1)
    if h == 0:
        return RankDistribution(n, 0, q, {0: total}, total)
    den = (q**n - 1) ** h
    counts = {}
    for r in range(h + 1):
        t = t_surjections(n, r, q) if r <= n else 0
        num = total * stirling_tilde(h, r, q) * t
        value, rem = divmod(num, den)
        if rem:
            raise ArithmeticError(f"Q({n},{h},{r}) is not integral")
        counts[r] = value
    return RankDistribution(n, h, q, counts, total)


def rank_cdf_ge(n: int, h: int, q: int, t: int) -> Fraction:
    """``Pr[rank(A_x) >= t]``."""
    dist = rank_counts(n, h, q)
    return Fraction(sum(c for r, c in dist.counts.items() if r >= t), dist.total)


def plot_data(n_max: int, q: int = 2) -> list[tuple[int, int, Fraction]]:
    """``(n, h, Pr[rank(A_x) >= ceil(h/2)])`` for ``n <= n_max``, ``h <= 2n``."""
    if n_max < 1:
        raise DomainError("n_max must be positive")
    return [(n, h, rank_cdf_ge(n, h, q, ceil(h / 2))) for n in range(1, n_max + 1) for h in range(2 * n + 1)]


# -- path matrices built from the product form -------------------------------------


def shift_select(k: int, n: int) -> BitMatrix:
    """``(n+k-1) x (n+k)`` matrix: rotate the first ``k`` entries left, drop entry ``k+1``."""
    rows = [1 << (i + 1) for i in range(k - 1)]  # C_k: first k-1 rows shift
    rows.append(1)  # last row of C_k picks entry 1
    rows += [1 << (k + 1 + i) for i in range(n - 1)]
    return BitMatrix(n + k - 1, n + k, tuple(rows))


def direct_sum_identity(k: int, m: BitMatrix) -> BitMatrix:
    """``I_k (+) m``."""
    rows = [1 << i for i in range(k)] + [r << k for r in m.data]
    return BitMatrix(k + m.rows, k + m.cols, tuple(rows))


def path_matrix(mats: Sequence[BitMatrix]) -> BitMatrix:
    """``A_0 S_1 (I_1 + A_1) S_2 ... S_h (I_h + A_h)`` for ``mats = [A_0, ..., A_h]``.

    Columns are ``(x_1, ..., x_h, a)``.  ``A_h`` is applied to the input first
    and ``A_0`` produces the output, so for a circuit whose linear maps are
    ``f_0, ..., f_h`` in application order, pass ``mats[j] = f_{h-j}``.
    """
    out = mats[0]
    n = out.rows
    for k in range(1, len(mats)):
        out = out @ shift_select(k, n) @ direct_sum_identity(k, mats[k])
    return out


def rank_ax(mats: Sequence[BitMatrix]) -> int:
    h = len(mats) - 1
    return rank(path_matrix(mats).select_columns(range(h)))


def empirical_rank_dist(n: int, h: int, trials: int, seed: int) -> dict[int, float]:
    """Rank frequencies of ``A_x`` over random ``GL_n(F_2)`` tuples."""
    rng = np.random.default_rng(seed)
    tally: Counter[int] = Counter()
    for _ in range(trials):
        mats = [random_invertible(n, rng) for _ in range(h + 1)]
        tally[rank_ax(mats)] += 1
    return {r: tally[r] / trials for r in sorted(tally)}
