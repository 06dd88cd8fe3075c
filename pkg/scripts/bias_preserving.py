"""Path coherence and sample counts for H^n . classical . H^n circuits.

The count 4 r^2 ln(4/delta) / eps^2 depends on pc - h/2, which is zero here
for every n, so the sampling cost stays flat as the width grows.
"""

from dataclasses import dataclass

import numpy as np

from _config import parse_config
from pathcoherence.circuit import bias_preserving_circuit
from pathcoherence.coherence import path_coherence
from pathcoherence.estimate import sample_count
from pathcoherence.sop import encode


@dataclass
class BiasConfig:
    n_min: int = 2
    n_max: int = 16
    eps: float = 0.05
    delta: float = 0.05
    seed: int = 0


def main(cfg: BiasConfig) -> list:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    print(f"{'n':>3} {'h':>4} {'pc':>4} {'samples':>8}")
    for n in range(cfg.n_min, cfg.n_max + 1):
        ps = encode(bias_preserving_circuit(n, rng))
        rep = path_coherence(ps)
        count = sample_count(rep.pc, ps.h, cfg.eps, cfg.delta)
        rows.append((n, ps.h, rep.pc, count))
        print(f"{n:>3} {ps.h:>4} {rep.pc:>4} {count:>8}")
    return rows


if __name__ == "__main__":
    main(parse_config(BiasConfig, __doc__))
