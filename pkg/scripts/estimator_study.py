"""Monte-Carlo error against the exact amplitude for one random circuit.

Runs ``runs`` seeded estimates with sampling forced and reports the sample
count, the empirical failure fraction and the mean absolute error.
"""

from dataclasses import dataclass

import numpy as np

from _config import parse_config
from pathcoherence.circuit import random_circuit
from pathcoherence.coherence import path_coherence
from pathcoherence.estimate import exact_amplitude, mc_estimate
from pathcoherence.gf2 import BitVector
from pathcoherence.sop import encode, specialize


@dataclass
class StudyConfig:
    n: int = 5
    h: int = 14
    circuit_seed: int = 5
    eps: float = 0.1
    delta: float = 0.1
    runs: int = 200
    threads: int = 1


def main(cfg: StudyConfig) -> dict:
    c = random_circuit(cfg.n, cfg.h, np.random.default_rng(cfg.circuit_seed))
    ps = encode(c)
    inst = specialize(ps, BitVector.zeros(cfg.n), ps.offset_t)
    truth = exact_amplitude(inst).value
    errors = np.array([
        abs(mc_estimate(inst, cfg.eps, cfg.delta, seed=s, threads=cfg.threads, exact_fallback=False).value - truth)
        for s in range(cfg.runs)
    ])
    n_samples = mc_estimate(inst, cfg.eps, cfg.delta, seed=0, exact_fallback=False).samples
    out = {
        "pc": path_coherence(ps).pc,
        "h": ps.h,
        "samples": n_samples,
        "truth": complex(truth),
        "fail_fraction": float(np.mean(errors > cfg.eps)),
        "mean_error": float(errors.mean()),
    }
    for k, v in out.items():
        print(f"{k:>14}: {v}")
    return out


if __name__ == "__main__":
    main(parse_config(StudyConfig, __doc__))
