"""Small-bias sets from the concatenated random code w_x = (x, a_1 x, ..., a_t x).

The n + m columns of the code's generator matrix form the set; its bias on T
is 1 - 2 |w_T| / (n + m) where w_T is the codeword of T's indicator vector.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .bias import CandidateSet
from .gf2 import BitVector, FieldElement, choose_irreducible, embed, field_mul, hamming_weight, project
from .nisan import expand, sample_seed, seed_length
from .randomness import EntropySource

MIN_A = 2 * math.log(2)
DEFAULT_A = 2.0

BlockAlphas = tuple[FieldElement, ...]


def _ceil(x: float) -> int:
    # absorbs float noise such as 2 * 12 / 0.25 = 96.00000000000001
    return math.ceil(round(x, 9))


@dataclass(frozen=True)
class CodeParams:
    n: int
    epsilon: float
    A: float
    m: int
    t: int
    threshold: int

    @property
    def length(self) -> int:
        return self.n + self.m


def derive_params(n: int, epsilon: float, A: float = DEFAULT_A) -> CodeParams:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not A > MIN_A:
        raise ValueError(f"A must exceed 2 ln 2 = {MIN_A:.4f}, got {A}")
    m = _ceil(A * n / epsilon**2)
    t = -(-m // n)
    m = t * n
    threshold = _ceil((1 - epsilon) * (n + m) / 2)
    return CodeParams(n=n, epsilon=epsilon, A=A, m=m, t=t, threshold=threshold)


def _check_alphas(alphas: BlockAlphas, n: int):
    for a in alphas:
        if a.m != n:
            raise ValueError(f"block multiplier has degree {a.m}, expected {n}")


def codeword(x: BitVector, alphas: BlockAlphas) -> BitVector:
    """(x, a_1 x, ..., a_t x) as one vector of n (t + 1) bits, blocks in order."""
    n = x.n
    _check_alphas(alphas, n)
    if not alphas:
        return x
    ex = embed(x, n, alphas[0].modulus)
    bits = x.bits
    for i, a in enumerate(alphas, start=1):
        bits |= project(field_mul(a, ex), n).bits << (i * n)
    return BitVector(n * (len(alphas) + 1), bits)


class WeightProgram:
    """Reads a_1..a_t one at a time and accumulates the weight of w_x."""

    def __init__(self, x: BitVector, params: CodeParams):
        if x.n != params.n:
            raise ValueError(f"dimension mismatch: x has n={x.n}, params n={params.n}")
        if x.bits == 0:
            raise ValueError("weight program is defined for nonzero x only")
        self.x = x
        self.params = params
        self.state = hamming_weight(x)
        self._ex = None

    def step(self, alpha: FieldElement) -> int:
        if self._ex is None or self._ex.modulus != alpha.modulus:
            self._ex = embed(self.x, self.params.n, alpha.modulus)
        self.state += field_mul(alpha, self._ex).coeffs.bit_count()
        return self.state

    def accepts(self) -> bool:
        return self.state >= self.params.threshold


def run_weight_program(x: BitVector, alphas: BlockAlphas, params: CodeParams) -> tuple[int, bool]:
    prog = WeightProgram(x, params)
    _check_alphas(alphas, params.n)
    for a in alphas:
        prog.step(a)
    return prog.state, prog.accepts()


def biased_set_from_alphas(
    params: CodeParams, alphas: BlockAlphas, *, method: str = "code", extra: dict | None = None, random_bits: int = 0
) -> CandidateSet:
    """Columns of the n x (n + m) generator matrix whose row i is codeword(e_i)."""
    n = params.n
    if len(alphas) != params.t:
        raise ValueError(f"expected {params.t} block multipliers, got {len(alphas)}")
    rows = [codeword(BitVector.unit(n, i), alphas).bits for i in range(1, n + 1)]
    columns = []
    for j in range(params.length):
        col = 0
        for i, r in enumerate(rows):
            col |= ((r >> j) & 1) << i
        columns.append(BitVector(n, col))
    info = {"A": params.A, "m": params.m, "t": params.t, "threshold": params.threshold}
    info.update(extra or {})
    return CandidateSet(n, tuple(columns), method=method, params=info, random_bits=random_bits)


def construct_code_uniform(n: int, epsilon: float, A: float, src: EntropySource) -> CandidateSet:
    params = derive_params(n, epsilon, A)
    modulus = choose_irreducible(n)
    start = src.bits_consumed
    alphas = tuple(FieldElement(n, src.draw_bits(n), modulus) for _ in range(params.t))
    return biased_set_from_alphas(
        params, alphas, method="code-uniform", random_bits=src.bits_consumed - start
    )


def construct_code_nisan(n: int, epsilon: float, A: float, b: int | None, src: EntropySource) -> CandidateSet:
    """Feed the block multipliers from the recursive generator; keeps the low n bits of each b-bit block."""
    params = derive_params(n, epsilon, A)
    b = 40 * n if b is None else b
    if b < n:
        raise ValueError(f"block size b={b} must be at least n={n}")
    if params.t > 2 ** (b / 20):
        warnings.warn(
            f"t={params.t} exceeds 2^(b/20)={2 ** (b / 20):.3g}; the generator's fooling guarantee "
            "is asymptotic and not certified at this size",
            stacklevel=2,
        )
    start = src.bits_consumed
    seed = sample_seed(b, params.t, src)
    k = len(seed.hashes)
    blocks = expand(seed, k)[: params.t]
    modulus = choose_irreducible(n)
    low = (1 << n) - 1
    alphas = tuple(FieldElement(n, blk & low, modulus) for blk in blocks)
    return biased_set_from_alphas(
        params,
        alphas,
        method="code-nisan",
        extra={"b": b, "k": k, "seed_bits": seed_length(b, params.t)},
        random_bits=src.bits_consumed - start,
    )


def entropy_h(delta: float) -> float:
    """Binary entropy in nats."""
    if not 0 <= delta <= 1:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    if delta in (0, 1):
        return 0.0
    return -delta * math.log(delta) - (1 - delta) * math.log(1 - delta)


def failure_bound(n: int, m: int, epsilon: float) -> float:
    """Union bound n^2 exp(n ln 2 - (eps^2 / 2)(n + m)) on a low-weight codeword, clamped to [0, 1]."""
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    exponent = 2 * math.log(n) + n * math.log(2) - (epsilon**2 / 2) * (n + m)
    return 1.0 if exponent >= 0 else math.exp(exponent)
