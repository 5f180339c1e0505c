"""Recursive space-bounded generator over b-bit blocks.

Seed: one block x0 plus k affine hashes h_j(y) = a_j y + c_j over F_{2^b}.
Output: G_0(x) = (x) and G_j(x) = G_{j-1}(x) || G_{j-1}(h_j(x)), giving 2^k
blocks from b (2k + 1) seed bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gf2 import FieldElement, choose_irreducible, clmul, poly_mod
from .randomness import EntropySource

MAX_HARNESS_SEED_BITS = 24


@dataclass(frozen=True)
class HashDesc:
    a: FieldElement
    c: FieldElement

    def __post_init__(self):
        self.a._same_field(self.c)

    @property
    def b(self) -> int:
        return self.a.m

    def __call__(self, y: int) -> int:
        return poly_mod(clmul(self.a.coeffs, y), self.a.modulus) ^ self.c.coeffs


@dataclass(frozen=True)
class NisanSeed:
    b: int
    x0: int
    hashes: tuple[HashDesc, ...] = ()

    def __post_init__(self):
        if self.x0 < 0 or self.x0 >> self.b:
            raise ValueError(f"x0 does not fit in {self.b} bits")
        for h in self.hashes:
            if h.b != self.b:
                raise ValueError(f"hash over degree {h.b}, expected {self.b}")

    def __len__(self):
        """Seed length in bits."""
        return self.b * (2 * len(self.hashes) + 1)


def levels(t: int) -> int:
    """k = ceil(log2 t)."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    return (t - 1).bit_length()


def seed_length(b: int, t: int) -> int:
    if b < 1:
        raise ValueError(f"b must be >= 1, got {b}")
    return b * (2 * levels(t) + 1)


def expand(seed: NisanSeed, k: int) -> list[int]:
    """All 2^k output blocks; h_k splits at the top level."""
    if len(seed.hashes) != k:
        raise ValueError(f"seed carries {len(seed.hashes)} hashes, expected {k}")

    def g(y: int, j: int) -> list[int]:
        if j == 0:
            return [y]
        return g(y, j - 1) + g(seed.hashes[j - 1](y), j - 1)

    return g(seed.x0, k)


def sample_seed(b: int, t: int, src: EntropySource) -> NisanSeed:
    """Draws x0, then (a_1, c_1), ..., (a_k, c_k); exactly seed_length(b, t) bits."""
    k = levels(t)
    modulus = choose_irreducible(b)
    x0 = src.draw_bits(b)
    hashes = []
    for _ in range(k):
        a = FieldElement(b, src.draw_bits(b), modulus)
        c = FieldElement(b, src.draw_bits(b), modulus)
        hashes.append(HashDesc(a, c))
    return NisanSeed(b, x0, tuple(hashes))


@lru_cache(maxsize=16)
def _mul_table(m: int) -> np.ndarray:
    f = choose_irreducible(m)
    size = 1 << m
    return np.array([[poly_mod(clmul(a, y), f) for y in range(size)] for a in range(size)], dtype=np.int64)


def _state_counts_uniform(wtab: np.ndarray, n: int, t: int, start: int) -> list[int]:
    per_block = np.bincount(wtab, minlength=n + 1).astype(object)
    dist = np.array([1], dtype=object)
    for _ in range(t):
        dist = np.convolve(dist, per_block)
    out = [0] * (start + len(dist))
    for w, c in enumerate(dist):
        out[start + w] = int(c)
    return out


def _state_counts_seeded(wtab: np.ndarray, n: int, b: int, t: int, start: int) -> list[int]:
    k = levels(t)
    total = b * (2 * k + 1)
    idx = np.arange(1 << total, dtype=np.int64)
    mask = (1 << b) - 1
    table = _mul_table(b)
    hashes = []
    for j in range(k):
        a = (idx >> (b * (2 * j + 1))) & mask
        c = (idx >> (b * (2 * j + 2))) & mask
        hashes.append((a, c))

    def g(y, j):
        if j == 0:
            return [y]
        a, c = hashes[j - 1]
        return g(y, j - 1) + g(table[a, y] ^ c, j - 1)

    blocks = g(idx & mask, k)[:t]
    low = (1 << n) - 1
    state = np.full(idx.shape, start, dtype=np.int64)
    for blk in blocks:
        state += wtab[blk & low]
    return [int(v) for v in np.bincount(state)]


def tv_distance_harness(n: int, b: int, t: int, x: int | None = None) -> float:
    """Exact TV distance between the weight program's final state under uniform
    blocks and under generator output, by enumerating every seed.

    ``x`` selects one program; by default the maximum over all nonzero x is returned.
    """
    if not (1 <= n <= 6 and n <= b <= 8 and 1 <= t <= 8):
        raise ValueError(f"need 1 <= n <= 6, n <= b <= 8, 1 <= t <= 8; got n={n}, b={b}, t={t}")
    if seed_length(b, t) > MAX_HARNESS_SEED_BITS:
        raise ValueError(
            f"seed of {seed_length(b, t)} bits is too large to enumerate (limit {MAX_HARNESS_SEED_BITS})"
        )
    xs = range(1, 1 << n) if x is None else [x]
    ntab = _mul_table(n)
    worst = 0.0
    for xv in xs:
        if not 0 < xv < (1 << n):
            raise ValueError(f"x must be a nonzero {n}-bit word")
        wtab = np.bitwise_count(ntab[:, xv].astype(np.uint64)).astype(np.int64)
        start = xv.bit_count()
        uni = _state_counts_uniform(wtab, n, t, start)
        seeded = _state_counts_seeded(wtab, n, b, t, start)
        size = max(len(uni), len(seeded))
        uni += [0] * (size - len(uni))
        seeded += [0] * (size - len(seeded))
        uni_total = 1 << (n * t)
        seed_total = 1 << seed_length(b, t)
        diff = sum(abs(s * uni_total - u * seed_total) for s, u in zip(seeded, uni))
        worst = max(worst, diff / (2 * uni_total * seed_total))
    return worst
