"""Bit vectors over F_2 and arithmetic in binary extension fields F_{2^m}.

Conventions used everywhere in the package: coordinate ``i`` (1-based) of a
bit vector lives in bit ``i - 1`` of a Python int, and polynomial coefficient
``k`` (of ``X^k``) lives in bit ``k``.  Embedding F_2^n into F_{2^m} therefore
sends coordinate ``i`` to the coefficient of ``X^(i-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

MAX_FIELD_DEGREE = 1 << 16


@dataclass(frozen=True)
class BitVector:
    """An element of F_2^n stored as an n-bit word."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be positive, got {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits {self.bits:#x} do not fit in {self.n} coordinates")

    @classmethod
    def from_coords(cls, coords: Iterable[int]) -> BitVector:
        """Build from a 0/1 sequence, coordinate 1 first."""
        coords = list(coords)
        bits = 0
        for i, c in enumerate(coords):
            if c not in (0, 1):
                raise ValueError(f"coordinate {i + 1} is {c!r}, expected 0 or 1")
            bits |= c << i
        return cls(len(coords), bits)

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> BitVector:
        return cls(n, (1 << n) - 1)

    @classmethod
    def unit(cls, n: int, i: int) -> BitVector:
        if not 1 <= i <= n:
            raise ValueError(f"unit index {i} outside 1..{n}")
        return cls(n, 1 << (i - 1))

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"coordinate {i} outside 1..{self.n}")
        return (self.bits >> (i - 1)) & 1

    def __xor__(self, other: BitVector) -> BitVector:
        _check_dims(self.n, other.n)
        return BitVector(self.n, self.bits ^ other.bits)

    __add__ = __xor__

    def coords(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.n)]

    def __repr__(self):
        return f"BitVector(n={self.n}, bits={self.bits:#x})"


@dataclass(frozen=True)
class IndexSet:
    """A subset T of {1..n}; empty only when ``trivial`` is set."""

    n: int
    members: frozenset[int]
    trivial: bool = False

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        bad = [i for i in self.members if not 1 <= i <= self.n]
        if bad:
            raise ValueError(f"indices {sorted(bad)} outside 1..{self.n}")
        if not self.members and not self.trivial:
            raise ValueError("empty index set must be flagged trivial")

    @classmethod
    def from_mask(cls, n: int, mask: int) -> IndexSet:
        if mask < 0 or mask >> n:
            raise ValueError(f"mask {mask:#x} does not fit in {n} coordinates")
        return cls(n, frozenset(i + 1 for i in range(n) if (mask >> i) & 1), trivial=mask == 0)

    @property
    def mask(self) -> int:
        return sum(1 << (i - 1) for i in self.members)

    def indicator(self) -> BitVector:
        return BitVector(self.n, self.mask)

    def __len__(self):
        return len(self.members)

    def __repr__(self):
        return f"IndexSet(n={self.n}, {sorted(self.members)})"


def _check_dims(a: int, b: int):
    if a != b:
        raise ValueError(f"dimension mismatch: {a} != {b}")


def parity(x: BitVector, T: IndexSet) -> int:
    """XOR of the coordinates of ``x`` indexed by ``T``."""
    _check_dims(x.n, T.n)
    return (x.bits & T.mask).bit_count() & 1


def hamming_weight(x: BitVector) -> int:
    return x.bits.bit_count()


# -- polynomials over F_2 packed into ints ---------------------------------

_SPREAD = [sum(((b >> i) & 1) << (2 * i) for i in range(8)) for b in range(256)]


def clmul(a: int, b: int) -> int:
    """Carry-less product of two F_2[X] polynomials."""
    if a.bit_count() < b.bit_count():
        a, b = b, a
    r = 0
    i = 0
    while b:
        if b & 1:
            r ^= a << i
        b >>= 1
        i += 1
    return r


def clsquare(a: int) -> int:
    """Square in F_2[X]: interleave zeros between coefficient bits."""
    r = 0
    shift = 0
    while a:
        r |= _SPREAD[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return r


def poly_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def is_irreducible(f: int) -> bool:
    """Ben-Or test: f of degree m is irreducible iff gcd(X^(2^i) - X, f) = 1 for i <= m/2."""
    m = f.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if not f & 1 or f.bit_count() % 2 == 0:
        # root at 0 or at 1
        return False
    u = 0b10
    for _ in range(m // 2):
        u = poly_mod(clsquare(u), f)
        if poly_gcd(f, u ^ 0b10) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def choose_irreducible(m: int) -> int:
    """Smallest (as an integer) irreducible polynomial of degree ``m`` over F_2."""
    if m < 1:
        raise ValueError(f"degree must be >= 1, got {m}")
    if m > MAX_FIELD_DEGREE:
        raise ValueError(f"field degree {m} exceeds supported maximum {MAX_FIELD_DEGREE}")
    top = 1 << m
    for low in range(top):
        if is_irreducible(top | low):
            return top | low
    raise AssertionError(f"no irreducible polynomial of degree {m}")  # pragma: no cover


def poly_str(f: int) -> str:
    terms = []
    for k in range(f.bit_length() - 1, -1, -1):
        if (f >> k) & 1:
            terms.append("1" if k == 0 else "X" if k == 1 else f"X^{k}")
    return "+".join(terms) or "0"


# -- field elements ----------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    """An element of F_{2^m} = F_2[X] / (modulus)."""

    m: int
    coeffs: int
    modulus: int

    def __post_init__(self):
        if self.modulus.bit_length() - 1 != self.m:
            raise ValueError(f"modulus {poly_str(self.modulus)} does not have degree {self.m}")
        if self.coeffs < 0 or self.coeffs >> self.m:
            raise ValueError(f"coefficients {self.coeffs:#x} exceed degree {self.m - 1}")

    @classmethod
    def of(cls, m: int, coeffs: int) -> FieldElement:
        """Element of the default field of degree m (smallest irreducible modulus)."""
        return cls(m, coeffs, choose_irreducible(m))

    def _same_field(self, other: FieldElement):
        if (self.m, self.modulus) != (other.m, other.modulus):
            raise ValueError(
                f"mismatched fields: degree {self.m} mod {poly_str(self.modulus)} "
                f"vs degree {other.m} mod {poly_str(other.modulus)}"
            )

    def __add__(self, other: FieldElement) -> FieldElement:
        self._same_field(other)
        return FieldElement(self.m, self.coeffs ^ other.coeffs, self.modulus)

    __sub__ = __add__

    def __mul__(self, other: FieldElement) -> FieldElement:
        return field_mul(self, other)

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        result = FieldElement(self.m, 1, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FieldElement:
        if self.coeffs == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self ** ((1 << self.m) - 2)

    def is_zero(self) -> bool:
        return self.coeffs == 0


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._same_field(b)
    return FieldElement(a.m, poly_mod(clmul(a.coeffs, b.coeffs), a.modulus), a.modulus)


def embed(x: BitVector, m: int, modulus: int | None = None) -> FieldElement:
    """Additive embedding of F_2^n into F_{2^m}; needs m >= n."""
    if m < x.n:
        raise ValueError(f"cannot embed dimension {x.n} into degree {m}")
    return FieldElement(m, x.bits, choose_irreducible(m) if modulus is None else modulus)


def project(a: FieldElement, n: int) -> BitVector:
    """Read a field element as n bits (inverse of ``embed`` when n = m)."""
    if n != a.m:
        raise ValueError(f"projection needs n == m, got n={n}, m={a.m}")
    return BitVector(n, a.coeffs)
