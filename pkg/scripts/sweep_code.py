"""Success rate of the concatenated-code construction, uniform vs generator-fed.

For each A, builds `trials` sets per method and counts how many are
epsilon-biased under exact verification.  Prints one row per (A, method).

    python scripts/sweep_code.py --n 12 --eps 0.5 --A 1.5 2 3 --trials 100
"""

import argparse
import time
import warnings
from dataclasses import dataclass, field

from smallbias.bias import exact_max_bias
from smallbias.codegen import construct_code_nisan, construct_code_uniform, derive_params, failure_bound
from smallbias.randomness import EntropySource


@dataclass
class SweepConfig:
    n: int = 12
    eps: float = 0.5
    As: list[float] = field(default_factory=lambda: [1.5, 2.0, 3.0])
    b: int | None = None  # None: b = n
    trials: int = 100
    seed: bytes = b"sweep-code"


def run(cfg: SweepConfig):
    b = cfg.n if cfg.b is None else cfg.b
    for A in cfg.As:
        p = derive_params(cfg.n, cfg.eps, A)
        for method in ("code-uniform", "code-nisan"):
            t0 = time.perf_counter()
            ok, worst, bits = 0, 0.0, 0
            for i in range(cfg.trials):
                src = EntropySource(cfg.seed + method.encode() + i.to_bytes(4, "big"))
                if method == "code-uniform":
                    S = construct_code_uniform(cfg.n, cfg.eps, A, src)
                else:
                    with warnings.catch_warnings():
                        warnings.simplefilter("ignore")
                        S = construct_code_nisan(cfg.n, cfg.eps, A, b, src)
                rep = exact_max_bias(S)
                ok += rep.max_bias <= cfg.eps
                worst = max(worst, rep.max_bias)
                bits = S.random_bits
            yield {
                "A": A, "method": method, "m": p.m, "size": p.length, "bits": bits,
                "pass": ok, "trials": cfg.trials, "worst": worst,
                "bound": failure_bound(cfg.n, p.m, cfg.eps), "secs": time.perf_counter() - t0,
            }


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--eps", type=float, default=0.5)
    ap.add_argument("--A", type=float, nargs="+", default=[1.5, 2.0, 3.0])
    ap.add_argument("--b", type=int)
    ap.add_argument("--trials", type=int, default=100)
    a = ap.parse_args()
    cfg = SweepConfig(a.n, a.eps, a.A, a.b, a.trials)
    print(f"{'A':>5} {'method':>13} {'m':>5} {'|S|':>5} {'bits':>6} {'pass':>9} {'worst':>7} {'fail bound':>11} {'secs':>6}")
    for r in run(cfg):
        print(f"{r['A']:>5} {r['method']:>13} {r['m']:>5} {r['size']:>5} {r['bits']:>6} "
              f"{r['pass']:>4}/{r['trials']:<4} {r['worst']:>7.4f} {r['bound']:>11.3g} {r['secs']:>6.2f}")


if __name__ == "__main__":
    main()
