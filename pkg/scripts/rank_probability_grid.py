"""Exact Pr[rank(A_x) >= ceil(h/2)] on the (n, h) grid, written as CSV.

    python scripts/rank_probability_grid.py --n-max 10 --out rank_grid.csv
"""

import csv
import sys
from dataclasses import dataclass

from _config import parse_config
from pathcoherence.qcalc import plot_data


@dataclass
class GridConfig:
    n_max: int = 10
    q: int = 2
    out: str = "-"


def main(cfg: GridConfig) -> None:
    fh = sys.stdout if cfg.out == "-" else open(cfg.out, "w", newline="")
    writer = csv.writer(fh)
    writer.writerow(["n", "h", "prob", "prob_exact"])
    for n, h, p in plot_data(cfg.n_max, cfg.q):
        writer.writerow([n, h, f"{float(p):.12f}", str(p)])
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main(parse_config(GridConfig, __doc__))
