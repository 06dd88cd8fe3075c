"""Compare sampled rank frequencies of A_x with the exact distribution.

Circuits alternate uniform GL_n(F_2) layers with a Hadamard on qubit 0.
Prints one row per (h, r) with the deviation in standard errors.
"""

import math
from dataclasses import dataclass

from _config import parse_config
from pathcoherence.qcalc import empirical_rank_dist, rank_counts


@dataclass
class EmpiricalConfig:
    n: int = 4
    h_max: int = 8
    trials: int = 10_000
    seed: int = 0


def main(cfg: EmpiricalConfig) -> float:
    print(f"{'h':>3} {'r':>3} {'exact':>10} {'sampled':>10} {'z':>6}")
    worst = 0.0
    for h in range(cfg.h_max + 1):
        emp = empirical_rank_dist(cfg.n, h, cfg.trials, cfg.seed + h)
        dist = rank_counts(cfg.n, h)
        for r in range(min(cfg.n, h) + 1):
            p = float(dist.probability(r))
            se = math.sqrt(p * (1 - p) / cfg.trials)
            z = (emp.get(r, 0.0) - p) / se if se else 0.0
            worst = max(worst, abs(z))
            print(f"{h:>3} {r:>3} {p:>10.6f} {emp.get(r, 0.0):>10.6f} {z:>6.2f}")
    print(f"max |z| = {worst:.2f}")
    return worst


if __name__ == "__main__":
    main(parse_config(EmpiricalConfig, __doc__))
