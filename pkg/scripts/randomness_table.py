"""Predicted random bits per method over a grid of n (and one epsilon).

    python scripts/randomness_table.py --eps 0.5 --n 8 12 16 24 32
"""

import argparse
import warnings
from dataclasses import dataclass, field

from smallbias.cli import METHODS, predicted


@dataclass
class TableConfig:
    eps: float = 0.5
    delta: float = 0.5
    A: float = 2.0
    ns: list[int] = field(default_factory=lambda: [8, 12, 16, 24, 32])
    b_per_n: int = 1  # code-nisan block size as a multiple of n


def table(cfg: TableConfig) -> list[dict]:
    rows = []
    for n in cfg.ns:
        row = {"n": n}
        for m in METHODS:
            b = cfg.b_per_n * n if m == "code-nisan" else None
            delta = cfg.delta if m == "legendre-shift" else None
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                p = predicted(m, n, cfg.eps, delta, cfg.A, b)
            row[m] = (p["size"], p["random_bits"])
        rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--eps", type=float, default=0.5)
    ap.add_argument("--delta", type=float, default=0.5)
    ap.add_argument("--A", type=float, default=2.0)
    ap.add_argument("--b-per-n", type=int, default=1)
    ap.add_argument("--n", type=int, nargs="+", default=[8, 12, 16, 24, 32])
    a = ap.parse_args()
    cfg = TableConfig(a.eps, a.delta, a.A, a.n, a.b_per_n)
    print(f"eps={cfg.eps} delta={cfg.delta} A={cfg.A} b={cfg.b_per_n}n    cells are |S| / random bits")
    print(f"{'n':>4}" + "".join(f"{m:>22}" for m in METHODS))
    for row in table(cfg):
        print(f"{row['n']:>4}" + "".join(f"{f'{s} / {r}':>22}" for s, r in (row[m] for m in METHODS)))


if __name__ == "__main__":
    main()
