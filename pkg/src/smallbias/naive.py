"""Baseline: i.i.d. uniform vectors, n random bits per element."""

from __future__ import annotations

import math

from .bias import CandidateSet
from .gf2 import BitVector
from .randomness import EntropySource

NAIVE_SIZE_FACTOR = 4


def naive_size(n: int, epsilon: float) -> int:
    return math.ceil(round(NAIVE_SIZE_FACTOR * n / epsilon**2, 9))


def construct_naive(n: int, epsilon: float, src: EntropySource, size: int | None = None) -> CandidateSet:
    if n < 1 or not 0 < epsilon < 1:
        raise ValueError(f"need n >= 1 and 0 < epsilon < 1, got n={n}, epsilon={epsilon}")
    size = naive_size(n, epsilon) if size is None else size
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    start = src.bits_consumed
    elements = tuple(BitVector(n, src.draw_bits(n)) for _ in range(size))
    return CandidateSet(n, elements, method="naive", random_bits=src.bits_consumed - start)
