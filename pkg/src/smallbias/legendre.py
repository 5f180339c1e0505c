"""Small-bias sets from quadratic characters over a prime field.

``aghp_set`` is the deterministic set {w(x) : x in F_q} with
w(x) = (chi(x+1), ..., chi(x+n)).  ``shifted_legendre_set`` replaces the
consecutive offsets by n uniformly random shifts and x ranges over
{1..ell} only, so q can be much larger than the set.  Character values map
to bits as +1 -> 0 and -1 -> 1; a zero argument also maps to 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bias import CandidateSet
from .gf2 import BitVector
from .randomness import EntropySource

MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)  # deterministic below 3.3e24
MAX_Q = 1 << 63
MAX_BRUTE_Q = 10**7
MAX_SHIFT_RETRIES = 64


class ShiftCollisionError(RuntimeError):
    """Every shift draw put some x + s_j on zero."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if self.q <= 2 or self.q >= MAX_Q or not is_prime(self.q):
            raise ValueError(f"{self.q} is not an odd prime below 2^63")

    def __int__(self):
        return self.q


def next_prime(x: int) -> PrimeField:
    if x < 3:
        raise ValueError(f"next_prime needs x >= 3, got {x}")
    q = x | 1
    while not is_prime(q):
        q += 2
    return PrimeField(q)


def _q(q: PrimeField | int) -> int:
    return q.q if isinstance(q, PrimeField) else int(q)


def legendre_symbol(x: int, q: PrimeField | int) -> int:
    """chi(x) = x^((q-1)/2) mod q, read as -1, 0 or +1."""
    q = _q(q)
    if not 0 <= x < q:
        raise ValueError(f"residue {x} outside [0, {q})")
    r = pow(x, (q - 1) // 2, q)
    return -1 if r == q - 1 else r


@lru_cache(maxsize=8)
def _chi_table(q: int) -> np.ndarray:
    table = np.full(q, -1, dtype=np.int8)
    xs = np.arange(1, q, dtype=np.int64)
    table[(xs * xs) % q] = 1
    table[0] = 0
    return table


def _chi_bit(v: int, q: int) -> int:
    return 0 if pow(v, (q - 1) // 2, q) == 1 else 1


# -- polynomials over F_q, coefficient lists lowest degree first --------------


def _trim(p: list[int]) -> list[int]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_eval_all(coeffs: list[int], q: int) -> np.ndarray:
    """p(x) mod q for every x in F_q (Horner, vectorized)."""
    xs = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c % q) % q
    return acc


def poly_derivative(p: list[int], q: int) -> list[int]:
    return _trim([(i * c) % q for i, c in enumerate(p)][1:])


def poly_divmod_rem(a: list[int], b: list[int], q: int) -> list[int]:
    a, b = _trim([c % q for c in a]), _trim([c % q for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, q)
    while len(a) >= len(b):
        f = a[-1] * inv % q
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % q
        a = _trim(a)
    return a


def poly_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    a, b = _trim([c % q for c in a]), _trim([c % q for c in b])
    while b:
        a, b = b, poly_divmod_rem(a, b, q)
    if a:
        inv = pow(a[-1], -1, q)
        a = [c * inv % q for c in a]
    return a


def is_squarefree(p: list[int], q: PrimeField | int) -> bool:
    q = _q(q)
    p = _trim([c % q for c in p])
    if len(p) <= 1:
        return True
    dp = poly_derivative(p, q)
    if not dp:
        return False
    return len(poly_gcd(p, dp, q)) == 1


def weil_sum(coeffs: list[int], q: PrimeField | int) -> float:
    """|(1/q) sum_x chi(p(x))| by direct summation."""
    q = _q(q)
    p = _trim([c % q for c in coeffs])
    if len(p) < 2:
        raise ValueError("polynomial must have degree >= 1")
    if q > MAX_BRUTE_Q:
        raise ValueError(f"q={q} too large for brute force (limit {MAX_BRUTE_Q})")
    total = int(_chi_table(q)[poly_eval_all(p, q)].sum(dtype=np.int64))
    return abs(total) / q


def weil_bound(degree: int, q: PrimeField | int) -> float:
    return (degree - 1) / math.sqrt(_q(q))


# -- constructions ------------------------------------------------------------


def aghp_set(n: int, epsilon: float) -> CandidateSet:
    """Deterministic set of size q = next prime >= n^2 / eps^2."""
    if n < 1 or not 0 < epsilon < 1:
        raise ValueError(f"need n >= 1 and 0 < epsilon < 1, got n={n}, epsilon={epsilon}")
    q = next_prime(max(3, math.ceil(round(n * n / epsilon**2, 9)))).q
    chi = _chi_table(q) if q <= MAX_BRUTE_Q else None
    elements = []
    for x in range(q):
        bits = 0
        for i in range(1, n + 1):
            v = (x + i) % q
            bit = int(chi[v] != 1) if chi is not None else _chi_bit(v, q)
            bits |= bit << (i - 1)
        elements.append(BitVector(n, bits))
    return CandidateSet(n, tuple(elements), method="aghp", params={"q": q}, random_bits=0)


@dataclass(frozen=True)
class ShiftParams:
    n: int
    epsilon: float
    delta: float
    ell: int
    q: int
    shifts: tuple[int, ...]
    random_bits: int = 0

    @property
    def X(self) -> range:
        return range(1, self.ell + 1)


def shift_sizes(n: int, epsilon: float, delta: float) -> tuple[int, int]:
    """(ell, q) with ell = ceil(6n / (delta eps^2)) and q the first prime >= ceil(4 (e ell)^2)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 0 < delta <= 1:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    ell = math.ceil(round(6 * n / (delta * epsilon**2), 9))
    q = next_prime(math.ceil(4 * (math.e * ell) ** 2)).q
    return ell, q


def _collides(shifts, ell: int, q: int) -> bool:
    # x + s = 0 mod q for some x in 1..ell  <=>  s in [q - ell, q - 1]
    return any(s >= q - ell for s in shifts)


def derive_shift_params(n: int, epsilon: float, delta: float, src: EntropySource) -> ShiftParams:
    ell, q = shift_sizes(n, epsilon, delta)
    if ell >= q:
        raise ValueError(f"evaluation set of size {ell} does not fit in F_{q}")
    start = src.bits_consumed
    for _ in range(MAX_SHIFT_RETRIES):
        shifts = tuple(src.draw_mod(q) for _ in range(n))
        if not _collides(shifts, ell, q):
            return ShiftParams(n, epsilon, delta, ell, q, shifts, src.bits_consumed - start)
    raise ShiftCollisionError(f"{MAX_SHIFT_RETRIES} shift draws all hit zero on X = 1..{ell}")


def shifted_legendre_set(params: ShiftParams) -> CandidateSet:
    q, n = params.q, params.n
    if _collides(params.shifts, params.ell, q):
        raise ShiftCollisionError("some x + s_j is zero mod q")
    elements = []
    for x in params.X:
        bits = 0
        for j, s in enumerate(params.shifts):
            bits |= _chi_bit((x + s) % q, q) << j
        elements.append(BitVector(n, bits))
    info = {"delta": params.delta, "ell": params.ell, "q": q, "shifts": list(params.shifts)}
    return CandidateSet(n, tuple(elements), method="legendre-shift", params=info, random_bits=params.random_bits)


def construct_legendre_shift(n: int, epsilon: float, delta: float, src: EntropySource) -> CandidateSet:
    return shifted_legendre_set(derive_shift_params(n, epsilon, delta, src))


# -- bound calculators --------------------------------------------------------


def moment_bound(n: int, ell: float, q: float, k: int, T_size: int) -> float:
    """sqrt(2) (2k / (e ell))^k + (2k / sqrt q)^|T|, bounding E[b_T^(2k)] over the shifts."""
    if k < 1 or T_size < 1:
        raise ValueError(f"k and |T| must be >= 1, got k={k}, |T|={T_size}")
    if T_size > n:
        raise ValueError(f"|T|={T_size} exceeds n={n}")
    return math.sqrt(2) * (2 * k / (math.e * ell)) ** k + (2 * k / math.sqrt(q)) ** T_size


def markov_tail(n: int, ell: float, q: float, epsilon: float, T_size: int) -> float:
    """Pr[|b_T| > eps] <= moment / eps^(2k) with k = |T|."""
    return moment_bound(n, ell, q, T_size, T_size) / epsilon ** (2 * T_size)


def simplified_tail(ell: float, epsilon: float, T_size: int) -> float:
    """2 (2|T| / (e ell eps^2))^|T|, valid when q = 4 (e ell)^2."""
    return 2 * (2 * T_size / (math.e * ell * epsilon**2)) ** T_size


def union_bound(n: int, ell: float, epsilon: float, delta: float) -> float:
    """2 * sum_{w=1..n} (2n / (ell eps^2))^w, the bound on any parity exceeding eps."""
    if ell < 6 * n / (delta * epsilon**2) * (1 - 1e-12):
        warnings.warn(f"ell={ell} is below 6n/(delta eps^2); the bound need not reach delta", stacklevel=2)
    ratio = 2 * n / (ell * epsilon**2)
    if ratio >= 1:
        raise ValueError(f"geometric ratio {ratio:.4g} >= 1: the series bound diverges")
    return 2 * sum(ratio**w for w in range(1, n + 1))


def geometric_closed_form(delta: float) -> float:
    """(2 delta / 3) / (1 - delta / 3), the infinite-series value at ratio delta / 3."""
    return (2 * delta / 3) / (1 - delta / 3)


def matching_probability(k: int, ell: float) -> tuple[float, float]:
    """(exact (2k-1)!! / ell^k, Stirling-form bound sqrt(2) (2k / (e ell))^k)."""
    if k < 1 or ell < 1:
        raise ValueError(f"need k >= 1 and ell >= 1, got k={k}, ell={ell}")
    double_fact = math.prod(range(1, 2 * k, 2))
    exact = double_fact / ell**k
    bound = math.sqrt(2) * (2 * k / (math.e * ell)) ** k
    return exact, bound
