"""Command line: construct, verify, params, weil.

Exit status: 0 on success / epsilon-biased / bound holds, 1 when a verified
set exceeds epsilon or a Weil check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings

from . import setfile
from .bias import EXACT_MAX_N, exact_max_bias, sampled_max_bias
from .codegen import DEFAULT_A, construct_code_nisan, construct_code_uniform, derive_params
from .legendre import (
    MAX_BRUTE_Q,
    aghp_set,
    construct_legendre_shift,
    is_prime,
    is_squarefree,
    next_prime,
    shift_sizes,
    weil_bound,
    weil_sum,
)
from .naive import construct_naive, naive_size
from .nisan import levels, seed_length
from .randomness import GENERATOR_ID, EntropySource, parse_seed

METHODS = ("naive", "code-uniform", "code-nisan", "legendre-shift", "aghp")
ASYMPTOTIC = {
    "naive": "O(n^2/eps^2)",
    "code-uniform": "O(n/eps^2)",
    "code-nisan": "O(n log 1/eps)",
    "legendre-shift": "O(n log(n/eps))",
    "aghp": "0",
}
DEFAULT_PARAMS_DELTA = 0.5


class UsageError(Exception):
    pass


def _check_method_flags(args):
    m = args.method
    if args.delta is not None and m not in ("legendre-shift", "all"):
        raise UsageError("--delta applies only to legendre-shift")
    if (args.A is not None or args.b is not None) and m not in ("code-uniform", "code-nisan", "all"):
        raise UsageError("--A and --b apply only to the code methods")
    if args.b is not None and m == "code-uniform":
        raise UsageError("--b applies only to code-nisan")
    if getattr(args, "size", None) is not None and m not in ("naive", "all"):
        raise UsageError("--size applies only to naive")
    if not args.n >= 1:
        raise UsageError("--n must be >= 1")
    if not 0 < args.eps < 1:
        raise UsageError("--eps must lie in (0, 1)")
    if args.delta is not None and not 0 < args.delta <= 1:
        raise UsageError("--delta must lie in (0, 1]")


def build(args) -> tuple:
    """Run the requested construction; returns (set, source)."""
    src = EntropySource(parse_seed(args.seed))
    A = DEFAULT_A if args.A is None else args.A
    m = args.method
    if m == "naive":
        S = construct_naive(args.n, args.eps, src, args.size)
    elif m == "code-uniform":
        S = construct_code_uniform(args.n, args.eps, A, src)
    elif m == "code-nisan":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            S = construct_code_nisan(args.n, args.eps, A, args.b, src)
    elif m == "legendre-shift":
        if args.delta is None:
            raise UsageError("legendre-shift needs --delta")
        S = construct_legendre_shift(args.n, args.eps, args.delta, src)
    else:
        S = aghp_set(args.n, args.eps)
    return S, src


def cmd_construct(args) -> int:
    _check_method_flags(args)
    S, src = build(args)
    if S.random_bits != src.bits_consumed:
        raise AssertionError(f"accounting drift: {S.random_bits} != {src.bits_consumed}")
    extra = {"epsilon": args.eps, "seed": parse_seed(args.seed).hex(), "generator": GENERATOR_ID}
    if args.delta is not None:
        extra["delta"] = args.delta
    S = type(S)(S.n, S.elements, method=S.method, params={**S.params, **extra}, random_bits=S.random_bits)
    text = setfile.serialize(S)
    if args.out in (None, "-"):
        sys.stdout.write(text)
        report = sys.stderr
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
        report = sys.stdout
    print(f"size: {len(S)}", file=report)
    print(f"random_bits: {S.random_bits}", file=report)
    if S.n > EXACT_MAX_N:
        print(f"note: n > {EXACT_MAX_N}; verify with --mode sampled", file=report)
    return 0


def cmd_verify(args) -> int:
    try:
        S = setfile.read(args.input)
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read {args.input}: {e}") from None
    if args.mode == "exact":
        if S.n > EXACT_MAX_N:
            raise UsageError(f"exact mode needs n <= {EXACT_MAX_N} (file has n={S.n}); use --mode sampled")
        rep = exact_max_bias(S)
    else:
        rep = sampled_max_bias(S, args.samples, EntropySource(parse_seed(args.seed)))
    print(f"n: {S.n}")
    print(f"size: {rep.size}")
    print(f"mode: {rep.mode}" + (f" ({rep.samples} samples)" if rep.samples else ""))
    print(f"max_bias: {rep.max_bias:.6f}")
    print(f"witness_T: {sorted(rep.witness_T.members)}")
    print(f"signed_bias: {rep.signed_bias:+.6f}")
    if rep.per_weight_max:
        print("weight  max_bias")
        for k, v in rep.per_weight_max.items():
            print(f"{k:6d}  {v:.6f}")
    ok = rep.max_bias <= args.eps
    print(f"verdict: {'PASS' if ok else 'FAIL'} (eps = {args.eps})")
    return 0 if ok else 1


def predicted(method: str, n: int, eps: float, delta: float | None, A: float | None, b: int | None, size=None) -> dict:
    """Size, derived parameters and predicted random bits for one method."""
    A = DEFAULT_A if A is None else A
    if method == "naive":
        N = naive_size(n, eps) if size is None else size
        return {"size": N, "random_bits": n * N}
    if method in ("code-uniform", "code-nisan"):
        p = derive_params(n, eps, A)
        row = {"size": p.length, "A": A, "m": p.m, "t": p.t, "threshold": p.threshold}
        if method == "code-uniform":
            row["random_bits"] = p.m
        else:
            b = 40 * n if b is None else b
            row.update(b=b, k=levels(p.t), random_bits=seed_length(b, p.t))
        return row
    if method == "legendre-shift":
        delta = DEFAULT_PARAMS_DELTA if delta is None else delta
        ell, q = shift_sizes(n, eps, delta)
        return {"size": ell, "delta": delta, "ell": ell, "q": q, "random_bits": n * math.ceil(math.log2(q))}
    N = next_prime(max(3, math.ceil(round(n * n / eps**2, 9)))).q
    return {"size": N, "q": N, "random_bits": 0}


def cmd_params(args) -> int:
    _check_method_flags(args)
    methods = METHODS if args.method == "all" else (args.method,)
    if args.method == "legendre-shift" and args.delta is None:
        raise UsageError("legendre-shift needs --delta")
    for m in methods:
        b = args.b if m == "code-nisan" else None
        row = predicted(m, args.n, args.eps, args.delta, args.A, b, getattr(args, "size", None))
        print(f"[{m}]  n={args.n} eps={args.eps}")
        for key, val in row.items():
            print(f"  {key:12s} {val}")
        print(f"  {'asymptotic':12s} {ASYMPTOTIC[m]}")
        if m == "code-nisan":
            m_bits = derive_params(args.n, args.eps, DEFAULT_A if args.A is None else args.A).m
            rel = "<" if row["random_bits"] < m_bits else ">="
            print(f"  seed bits {row['random_bits']} {rel} m = {m_bits} (code-uniform)")
    return 0


def cmd_weil(args) -> int:
    q = args.q
    if q < 3 or not is_prime(q):
        raise UsageError(f"q={q} is not an odd prime")
    if q > MAX_BRUTE_Q:
        raise UsageError(f"q={q} exceeds the brute-force limit {MAX_BRUTE_Q}")
    coeffs = [c % q for c in args.coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    d = len(coeffs) - 1
    if d < 1:
        raise UsageError("polynomial must have degree >= 1")
    s = weil_sum(coeffs, q)
    bound = weil_bound(d, q)
    sqf = is_squarefree(coeffs, q)
    print(f"q: {q}")
    print(f"degree: {d}")
    print(f"average_sum: {s:.6f}")
    print(f"bound: {bound:.6f}")
    print(f"squarefree: {'yes' if sqf else 'no'}")
    if not sqf:
        print("verdict: N/A (not certified non-square; bound need not apply)")
        return 0
    ok = s <= bound + 1e-12
    print(f"verdict: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def _add_method_args(p, with_size: bool, default_method=None):
    p.add_argument("--method", choices=METHODS + (("all",) if default_method else ()),
                   default=default_method, required=default_method is None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--delta", type=float)
    p.add_argument("--A", type=float, help=f"code constant, > 2 ln 2 (default {DEFAULT_A})")
    p.add_argument("--b", type=int, help="generator block size for code-nisan (default 40n)")
    if with_size:
        p.add_argument("--size", type=int, help="naive set size (default ceil(4n/eps^2))")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smallbias", description="Small-bias sets with few random bits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a set and write it as a set file")
    _add_method_args(p, with_size=True)
    p.add_argument("--seed", default="00", help="hex seed (default 00)")
    p.add_argument("-o", "--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="exact or sampled maximum bias of a set file")
    p.add_argument("input")
    p.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--seed", default="00", help="hex seed for sampled mode")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("params", help="derived parameters and predicted random bits")
    _add_method_args(p, with_size=True, default_method="all")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("weil", help="brute-force character sum against the Weil bound")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--coeffs", type=int, nargs="+", required=True, help="coefficients, constant term first")
    p.set_defaults(func=cmd_weil)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"smallbias {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
