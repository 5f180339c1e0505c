"""Shifted-character construction: empirical failure rate against delta.

    python scripts/sweep_legendre.py --n 8 --eps 0.5 --delta 1.0 0.5 0.25 --trials 100
"""

import argparse
import math
from dataclasses import dataclass, field

from smallbias.bias import exact_max_bias
from smallbias.legendre import aghp_set, construct_legendre_shift, shift_sizes, union_bound
from smallbias.randomness import EntropySource


@dataclass
class LegendreSweep:
    n: int = 8
    eps: float = 0.5
    deltas: list[float] = field(default_factory=lambda: [1.0, 0.5, 0.25])
    trials: int = 100
    seed: bytes = b"sweep-legendre"


def run(cfg: LegendreSweep):
    for delta in cfg.deltas:
        ell, q = shift_sizes(cfg.n, cfg.eps, delta)
        fails, bits, biases = 0, [], []
        for i in range(cfg.trials):
            src = EntropySource(cfg.seed + i.to_bytes(4, "big"))
            S = construct_legendre_shift(cfg.n, cfg.eps, delta, src)
            b = exact_max_bias(S).max_bias
            fails += b > cfg.eps
            bits.append(S.random_bits)
            biases.append(b)
        yield {
            "delta": delta, "ell": ell, "q": q, "fails": fails, "trials": cfg.trials,
            "union": union_bound(cfg.n, ell, cfg.eps, delta),
            "bits_mean": sum(bits) / len(bits), "bits_pred": cfg.n * math.ceil(math.log2(q)),
            "median_bias": sorted(biases)[len(biases) // 2],
        }


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--eps", type=float, default=0.5)
    ap.add_argument("--delta", type=float, nargs="+", default=[1.0, 0.5, 0.25])
    ap.add_argument("--trials", type=int, default=100)
    a = ap.parse_args()
    cfg = LegendreSweep(a.n, a.eps, a.delta, a.trials)
    print(f"{'delta':>6} {'ell':>6} {'q':>10} {'fail':>9} {'union bd':>9} {'bits':>8} {'pred':>5} {'med bias':>9}")
    for r in run(cfg):
        print(f"{r['delta']:>6} {r['ell']:>6} {r['q']:>10} {r['fails']:>4}/{r['trials']:<4} {r['union']:>9.4f} "
              f"{r['bits_mean']:>8.1f} {r['bits_pred']:>5} {r['median_bias']:>9.4f}")
    S = aghp_set(cfg.n, cfg.eps)
    print(f"deterministic baseline: |S|={len(S)}, max bias {exact_max_bias(S).max_bias:.4f}, 0 random bits")


if __name__ == "__main__":
    main()
