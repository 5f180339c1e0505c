"""Bias of a multiset S of F_2^n against parities, and the dual linear code."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .gf2 import BitVector, IndexSet
from .randomness import EntropySource

EXACT_MAX_N = 28


@dataclass(frozen=True, eq=True)
class CandidateSet:
    """Ordered multiset of n-bit vectors plus how it was made."""

    n: int
    elements: tuple[BitVector, ...]
    method: str = "manual"
    params: dict[str, Any] = field(default_factory=dict)
    random_bits: int = 0

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise ValueError("candidate set must be nonempty")
        for x in self.elements:
            if x.n != self.n:
                raise ValueError(f"element {x!r} has dimension {x.n}, expected {self.n}")

    @classmethod
    def from_words(cls, n: int, words, **kw) -> CandidateSet:
        return cls(n, tuple(BitVector(n, int(w)) for w in words), **kw)

    def __len__(self):
        return len(self.elements)

    def words(self) -> np.ndarray:
        if self.n > 63:
            raise ValueError(f"n={self.n} too wide for a word array")
        return np.fromiter((x.bits for x in self.elements), dtype=np.uint64, count=len(self.elements))


@dataclass
class BiasReport:
    mode: str  # "exact" | "sampled"
    max_bias: float
    size: int
    witness_T: IndexSet | None = None
    signed_bias: float | None = None
    samples: int | None = None
    per_weight_max: dict[int, float] | None = None


@dataclass(frozen=True)
class LinearCodeView:
    """Code of length |S| whose generator rows are the coordinate truth tables over S."""

    length: int
    n: int
    generator: tuple[BitVector, ...]
    rank: int
    min_weight: int
    max_weight: int
    exhaustive: bool

    def codeword(self, T: IndexSet) -> BitVector:
        bits = 0
        for i in T.members:
            bits ^= self.generator[i - 1].bits
        return BitVector(self.length, bits)


def _parities(words: np.ndarray, mask: int) -> np.ndarray:
    return np.bitwise_count(words & np.uint64(mask)) & 1


def _signed_sum(S: CandidateSet, mask: int) -> int:
    if S.n <= 63:
        odd = int(_parities(S.words(), mask).sum())
    else:
        odd = sum((x.bits & mask).bit_count() & 1 for x in S.elements)
    return len(S) - 2 * odd


def bias_for(S: CandidateSet, T: IndexSet) -> Fraction:
    """Signed bias (1/|S|) * sum over S of (-1)^(parity of x on T), as an exact fraction."""
    if T.n != S.n:
        raise ValueError(f"dimension mismatch: T has n={T.n}, S has n={S.n}")
    if not T.members:
        raise ValueError("bias is undefined for the empty index set")
    return Fraction(_signed_sum(S, T.mask), len(S))


def walsh_hadamard(v: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform; out[T] = sum_x v[x] (-1)^|x & T|."""
    a = np.array(v, copy=True)
    size = a.shape[0]
    if size & (size - 1):
        raise ValueError(f"length {size} is not a power of two")
    h = 1
    while h < size:
        x = a.reshape(-1, 2, h)
        lo = x[:, 0, :].copy()
        x[:, 0, :] += x[:, 1, :]
        x[:, 1, :] = lo - x[:, 1, :]
        h *= 2
    return a


def _count_vector(S: CandidateSet) -> np.ndarray:
    dtype = np.int32 if len(S) < 2**31 else np.int64
    return np.bincount(S.words().astype(np.int64), minlength=1 << S.n).astype(dtype)


def lex_min_mask(masks: np.ndarray) -> int:
    """Smallest index set, comparing sorted member lists lexicographically."""
    cand = np.asarray(masks, dtype=np.uint64)
    if cand.size == 0 or (cand == 0).any():
        raise ValueError("need a nonempty collection of nonempty masks")
    chosen = 0
    while True:
        low = cand & (~cand + np.uint64(1))
        lo = low.min()
        chosen |= int(lo)
        rest = cand[low == lo] ^ lo
        if (rest == 0).any():
            return chosen
        cand = rest


def exact_max_bias(S: CandidateSet) -> BiasReport:
    """Maximum |bias| over all 2^n - 1 nonempty T via one Walsh-Hadamard transform."""
    if S.n > EXACT_MAX_N:
        raise ValueError(f"exact mode supports n <= {EXACT_MAX_N}, got n={S.n}; use sampled mode")
    spectrum = walsh_hadamard(_count_vector(S))
    mags = np.abs(spectrum[1:])
    top = int(mags.max())
    tied = np.flatnonzero(mags == top).astype(np.uint64) + np.uint64(1)
    witness = lex_min_mask(tied)
    weights = np.bitwise_count(np.arange(1, 1 << S.n, dtype=np.uint32))
    per_weight = {
        k: int(mags[weights == k].max()) / len(S) for k in range(1, S.n + 1)
    }
    return BiasReport(
        mode="exact",
        max_bias=top / len(S),
        size=len(S),
        witness_T=IndexSet.from_mask(S.n, witness),
        signed_bias=int(spectrum[witness]) / len(S),
        per_weight_max=per_weight,
    )


def naive_max_bias(S: CandidateSet) -> BiasReport:
    """Reference route: call ``bias_for`` on every nonempty T in mask order."""
    best, best_T, best_signed = -1.0, None, 0.0
    for mask in range(1, 1 << S.n):
        T = IndexSet.from_mask(S.n, mask)
        b = bias_for(S, T)
        if abs(b) > best or (abs(b) == best and _lex_key(T) < _lex_key(best_T)):
            best, best_T, best_signed = abs(b), T, b
    return BiasReport(
        mode="exact", max_bias=float(best), size=len(S), witness_T=best_T, signed_bias=float(best_signed)
    )


def _lex_key(T: IndexSet) -> tuple[int, ...]:
    return tuple(sorted(T.members))


def sampled_max_bias(S: CandidateSet, trials: int, src: EntropySource) -> BiasReport:
    """Max |bias| over ``trials`` uniformly drawn nonempty T; a lower bound on the true max."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    best, best_T, best_signed = -1.0, None, 0.0
    for _ in range(trials):
        mask = src.draw_mod((1 << S.n) - 1) + 1
        s = _signed_sum(S, mask)
        if abs(s) > best:
            best, best_T, best_signed = abs(s), mask, s
    return BiasReport(
        mode="sampled",
        max_bias=best / len(S),
        size=len(S),
        witness_T=IndexSet.from_mask(S.n, best_T),
        signed_bias=best_signed / len(S),
        samples=trials,
    )


def _gf2_rank(rows: list[int]) -> int:
    rank = 0
    rows = [r for r in rows if r]
    while rows:
        pivot = max(rows)
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows if r != pivot]
        rows = [r for r in rows if r]
        rank += 1
    return rank


def to_code(S: CandidateSet, trials: int = 4096, src: EntropySource | None = None) -> LinearCodeView:
    """Dual code of S; weights are exact for n <= EXACT_MAX_N, else over sampled T."""
    N = len(S)
    rows = [0] * S.n
    for j, x in enumerate(S.elements):
        b = x.bits
        while b:
            low = b & -b
            rows[low.bit_length() - 1] |= 1 << j
            b ^= low
    generator = tuple(BitVector(N, r) for r in rows)
    if S.n <= EXACT_MAX_N:
        signed = walsh_hadamard(_count_vector(S))[1:].astype(np.int64)
        exhaustive = True
    else:
        src = src if src is not None else EntropySource(b"to_code")
        signed = np.array(
            [_signed_sum(S, src.draw_mod((1 << S.n) - 1) + 1) for _ in range(trials)], dtype=np.int64
        )
        exhaustive = False
    # weight(c_T) = N (1 - b_T) / 2 = (N - signed sum) / 2
    weights = (N - signed) // 2
    return LinearCodeView(
        length=N,
        n=S.n,
        generator=generator,
        rank=_gf2_rank(rows),
        min_weight=int(weights.min()),
        max_weight=int(weights.max()),
        exhaustive=exhaustive,
    )
