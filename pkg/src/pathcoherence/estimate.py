"""Exact and Monte-Carlo transition amplitudes.

Both modes tally how many paths land on each power of ``w = exp(i pi/4)``.
Tallies are exact integers and are merged by addition over fixed index
ranges, so results do not depend on the number of worker threads.

Monte-Carlo sample ``i`` draws its kernel coefficients from a Philox stream
keyed by the seed with counter block ``i // CHUNK``; the sample stream is a
function of ``(seed, i)`` only.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import Circuit, build_marginal_gadget
from .coherence import DEFAULT_CAP
from .errors import CapExceeded
from .gf2 import BitVector, parity
from .sop import AmplitudeInstance, encode, specialize

CHUNK = 4096
ENUM_CHUNK = 1 << 16
SQRT1_2 = math.sqrt(0.5)


@dataclass(frozen=True)
class Estimate:
    real: float
    imag: float
    epsilon: float
    delta: float
    samples: int
    mode: str  # "exact", "monte_carlo" or "zero"
    pc: int | None
    exact_counts: tuple[int, ...] | None = None

    @property
    def value(self) -> complex:
        return complex(self.real, self.imag)


def _omega_sum(counts: Sequence[int]) -> tuple[float, float]:
    c = [int(v) for v in counts]
    diag = c[1] - c[3] - c[5] + c[7]
    anti = c[1] + c[3] - c[5] - c[7]
    return (c[0] - c[4]) + diag * SQRT1_2, (c[2] - c[6]) + anti * SQRT1_2


def _prefactor(log2_num: int, h: int) -> float:
    """``2**log2_num / sqrt(2)**h``."""
    value = math.ldexp(1.0, log2_num - h // 2)
    return value * SQRT1_2 if h % 2 else value


class _PathPhase:
    """Phase of the path ``particular + sum_i r_i kernel_i`` as a function of ``r``.

    Each affine form restricted to the admissible set becomes an affine form
    in the ``d`` kernel coefficients; evaluation is batched with numpy.
    """

    def __init__(self, inst: AmplitudeInstance):
        self.d = d = len(inst.kernel)
        a = inst.a.bits
        base = inst.particular.bits
        kern = [v.bits for v in inst.kernel]

        def reduce(forms):
            masks = np.zeros((d, len(forms)), dtype=np.float32)
            consts = np.zeros(len(forms), dtype=np.int64)
            for j, f in enumerate(forms):
                consts[j] = f(base, a)
                for i, kv in enumerate(kern):
                    masks[i, j] = parity(f.x_mask & kv)
            return masks, consts

        phase = inst.system.phase
        self.lin = reduce([f for _, f in phase.linear])
        self.coeff = np.array([c for c, _ in phase.linear], dtype=np.int64)
        self.p = reduce([p for p, _ in phase.quad])
        self.q = reduce([q for _, q in phase.quad])

    @staticmethod
    def _eval(bits: np.ndarray, reduced) -> np.ndarray:
        masks, consts = reduced
        return ((bits @ masks).astype(np.int64) + consts) & 1

    def __call__(self, bits: np.ndarray) -> np.ndarray:
        m = self._eval(bits, self.lin) @ self.coeff
        m += 4 * (self._eval(bits, self.p) & self._eval(bits, self.q)).sum(axis=1)
        return m % 8

    def tally(self, bits: np.ndarray) -> np.ndarray:
        return np.bincount(self(bits), minlength=8)


def _index_bits(start: int, stop: int, d: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.uint64)
    shifts = np.arange(d, dtype=np.uint64)
    return ((idx[:, None] >> shifts) & np.uint64(1)).astype(np.float32)


def _random_bits(seed: int, chunk: int, size: int, d: int) -> np.ndarray:
    words = max(1, (d + 63) // 64)
    gen = np.random.Philox(key=seed, counter=[0, 0, 0, chunk])
    raw = gen.random_raw(size * words).astype(np.uint64)
    bits = np.unpackbits(raw.view(np.uint8), bitorder="little").reshape(size, words * 64)
    return bits[:, :d].astype(np.float32)


def _run(tasks, threads: int) -> list[int]:
    total = np.zeros(8, dtype=object)
    if threads <= 1 or len(tasks) <= 1:
        parts = [t() for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda t: t(), tasks))
    for p in parts:
        total += p.astype(object)
    return [int(v) for v in total]


def _zero(eps: float = 0.0, delta: float = 0.0) -> Estimate:
    return Estimate(0.0, 0.0, eps, delta, 0, "zero", None)


def exact_amplitude(inst: AmplitudeInstance, cap: int = DEFAULT_CAP, threads: int = 1) -> Estimate:
    """Sum over every admissible path."""
    if not inst.consistent:
        return _zero()
    d = len(inst.kernel)
    if d > cap:
        raise CapExceeded(f"pc = {d} exceeds exact enumeration cap {cap}")
    phase = _PathPhase(inst)
    total = 1 << d
    tasks = [
        (lambda s=s: phase.tally(_index_bits(s, min(s + ENUM_CHUNK, total), d)))
        for s in range(0, total, ENUM_CHUNK)
    ]
    counts = _run(tasks, threads)
    re, im = _omega_sum(counts)
    scale = _prefactor(inst.system.scale_log2, inst.system.h)
    return Estimate(re * scale, im * scale, 0.0, 0.0, 0, "exact", d, tuple(counts))


def sample_count(pc: int, h: int, eps: float, delta: float, scale_log2: int = 0) -> int:
    """Samples for ``Pr[|estimate - amplitude| > eps] <= delta``.

    Each sample is ``r w^m`` with range ``r = 2^(pc - h/2)``.  Real and
    imaginary parts are bounded separately by Hoeffding at error ``eps/sqrt 2``
    and failure ``delta/2`` each, giving ``ceil(4 r^2 ln(4/delta) / eps^2)``.
    """
    if not (0 < eps < 1 and 0 < delta < 1):
        raise ValueError("eps and delta must lie in (0, 1)")
    r2 = 2.0 ** (2 * (pc + scale_log2) - h)
    return math.ceil(4 * r2 * math.log(4 / delta) / eps**2)


def mc_estimate(
    inst: AmplitudeInstance,
    eps: float,
    delta: float,
    seed: int,
    threads: int = 1,
    exact_fallback: bool = True,
    cap: int = DEFAULT_CAP,
) -> Estimate:
    """Monte-Carlo amplitude estimate, or the exact sum when enumeration is cheaper.

    ``exact_fallback=False`` forces sampling regardless of cost.
    """
    if not inst.consistent:
        return _zero(eps, delta)
    ps = inst.system
    d = len(inst.kernel)
    n_samples = sample_count(d, ps.h, eps, delta, ps.scale_log2)
    if exact_fallback and d <= cap and (1 << d) <= n_samples:
        e = exact_amplitude(inst, cap=cap, threads=threads)
        return Estimate(e.real, e.imag, eps, delta, 0, "exact", d, e.exact_counts)

    phase = _PathPhase(inst)
    seed = int(seed) & ((1 << 64) - 1)
    tasks = [
        (lambda c=c: phase.tally(_random_bits(seed, c, min(CHUNK, n_samples - c * CHUNK), d)))
        for c in range((n_samples + CHUNK - 1) // CHUNK)
    ]
    counts = _run(tasks, threads)
    re, im = _omega_sum(counts)
    scale = _prefactor(d + ps.scale_log2, ps.h) / n_samples
    return Estimate(re * scale, im * scale, eps, delta, n_samples, "monte_carlo", d)


def estimate_amplitude(circuit: Circuit, a: BitVector, b: BitVector, eps: float, delta: float, seed: int, **kw):
    return mc_estimate(specialize(encode(circuit), a, b), eps, delta, seed, **kw)


def estimate_marginal(
    c: Circuit, a: BitVector, y: BitVector, eps: float, delta: float, seed: int, **kw
) -> Estimate:
    """Probability that the first ``len(y)`` output bits of ``c`` on input ``a`` equal ``y``.

    Estimates the real amplitude ``<a, y| G |a, 0>`` of the uncomputation
    gadget ``G``.  The real part is clamped to ``[0, 1]``; the imaginary part
    is passed through unclamped as a diagnostic.
    """
    k = y.len
    if a.len != c.n_qubits:
        raise ValueError(f"input must have length {c.n_qubits}")
    gadget = build_marginal_gadget(c, k)
    inp = BitVector.from_str(str(a) + "0" * k)
    out = BitVector.from_str(str(a) + str(y))
    raw = mc_estimate(specialize(encode(gadget), inp, out), eps, delta, seed, **kw)
    return Estimate(
        min(1.0, max(0.0, raw.real)), raw.imag, eps, delta, raw.samples, raw.mode, raw.pc, raw.exact_counts
    )
