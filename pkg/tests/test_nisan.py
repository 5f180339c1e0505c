import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from smallbias.gf2 import FieldElement, choose_irreducible
from smallbias.nisan import (
    HashDesc,
    NisanSeed,
    expand,
    levels,
    sample_seed,
    seed_length,
    tv_distance_harness,
)
from smallbias.randomness import EntropySource


def affine(b, a, c):
    f = choose_irreducible(b)
    return HashDesc(FieldElement(b, a, f), FieldElement(b, c, f))


def all_seeds(b, k):
    for x0 in range(1 << b):
        for coeffs in itertools.product(range(1 << b), repeat=2 * k):
            yield NisanSeed(b, x0, tuple(affine(b, coeffs[2 * j], coeffs[2 * j + 1]) for j in range(k)))


def test_seed_length():
    assert seed_length(7, 1) == 7
    assert seed_length(8, 4) == 40
    assert seed_length(12, 8) == 84
    assert [seed_length(5, 2**k) for k in range(6)] == [5 * (2 * k + 1) for k in range(6)]
    assert seed_length(5, 5) == seed_length(5, 8)


def test_expand_base_case():
    assert expand(NisanSeed(4, 0b1010), 0) == [0b1010]


def test_expand_identity_hash_duplicates():
    assert expand(NisanSeed(4, 0b0110, (affine(4, 1, 0),)), 1) == [0b0110, 0b0110]


def test_expand_hand_unrolled():
    seed = NisanSeed(4, 0b0011, (affine(4, 1, 0b0001), affine(4, 1, 0b0100)))
    assert expand(seed, 2) == [0b0011, 0b0010, 0b0111, 0b0110]


def test_expand_hash_count_mismatch():
    with pytest.raises(ValueError):
        expand(NisanSeed(4, 1, (affine(4, 1, 0),)), 2)


@given(st.integers(1, 12), st.integers(0, 5), st.binary(min_size=1, max_size=6))
def test_prefix_property(b, k, seed_bytes):
    src = EntropySource(seed_bytes)
    longer = sample_seed(b, 1 << (k + 1), src)
    shorter = NisanSeed(b, longer.x0, longer.hashes[:k])
    assert expand(longer, k + 1)[: 1 << k] == expand(shorter, k)


@given(st.integers(1, 40), st.integers(1, 40), st.binary(min_size=1, max_size=6))
def test_sample_seed_accounting(b, t, seed_bytes):
    src = EntropySource(seed_bytes)
    seed = sample_seed(b, t, src)
    assert src.bits_consumed == seed_length(b, t) == len(seed)
    assert len(seed.hashes) == levels(t)
    again = sample_seed(b, t, EntropySource(seed_bytes))
    assert again == seed


def test_single_block_consumes_b_bits():
    src = EntropySource(b"one")
    sample_seed(9, 1, src)
    assert src.bits_consumed == 9


@pytest.mark.parametrize("b,k", [(2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (2, 2), (3, 2), (2, 3)])
def test_uniform_marginals_exhaustive(b, k):
    counts = [Counter() for _ in range(1 << k)]
    total = 0
    for seed in all_seeds(b, k):
        for i, blk in enumerate(expand(seed, k)):
            counts[i][blk] += 1
        total += 1
    for c in counts:
        assert len(c) == 1 << b
        assert set(c.values()) == {total >> b}


@pytest.mark.parametrize("b", [1, 2, 3, 4])
def test_pairwise_independence_exhaustive(b):
    for u, v in itertools.permutations(range(1 << b), 2):
        pairs = Counter()
        for a, c in itertools.product(range(1 << b), repeat=2):
            h = affine(b, a, c)
            pairs[h(u), h(v)] += 1
        assert len(pairs) == 1 << (2 * b)
        assert set(pairs.values()) == {1}


# -- total variation harness -----------------------------------------------


def brute_force_tv(n, b, t, x):
    """Loop over every seed through ``expand`` (oracle for the vectorized harness)."""
    f = choose_irreducible(n)
    k = levels(t)
    ex = FieldElement(n, x, f)
    low = (1 << n) - 1
    seeded = Counter()
    for seed in all_seeds(b, k):
        state = x.bit_count()
        for blk in expand(seed, k)[:t]:
            state += (FieldElement(n, blk & low, f) * ex).coeffs.bit_count()
        seeded[state] += 1
    uniform = Counter()
    for alphas in itertools.product(range(1 << n), repeat=t):
        uniform[x.bit_count() + sum((FieldElement(n, a, f) * ex).coeffs.bit_count() for a in alphas)] += 1
    s_tot, u_tot = sum(seeded.values()), sum(uniform.values())
    keys = set(seeded) | set(uniform)
    return sum(abs(seeded[s] / s_tot - uniform[s] / u_tot) for s in keys) / 2


@pytest.mark.parametrize("n,b,t,x", [(2, 2, 2, 1), (2, 3, 3, 3), (3, 3, 4, 5), (2, 2, 4, 2)])
def test_tv_harness_matches_brute_force(n, b, t, x):
    assert tv_distance_harness(n, b, t, x) == pytest.approx(brute_force_tv(n, b, t, x), abs=1e-12)


@pytest.mark.parametrize("n,b", [(1, 1), (3, 5), (4, 4), (6, 8)])
def test_tv_single_block_is_zero(n, b):
    assert tv_distance_harness(n, b, 1) == 0


@settings(deadline=None, max_examples=10)
@given(st.integers(1, 4), st.data())
def test_tv_two_blocks_is_zero(n, data):
    # one affine hash makes (x0, h(x0)) uniform over pairs
    b = data.draw(st.integers(n, 6))
    assert tv_distance_harness(n, b, 2) == 0


def test_tv_regression_b4_t4_n4():
    # frozen from exhaustive enumeration of all 2^20 seeds
    assert tv_distance_harness(4, 4, 4, x=0b0001) == 0.03125
    assert tv_distance_harness(4, 4, 4) == 0.03125


@pytest.mark.parametrize("n,b,t", [(7, 8, 2), (4, 9, 2), (4, 4, 9), (5, 4, 2), (4, 8, 4)])
def test_tv_rejects_large_params(n, b, t):
    with pytest.raises(ValueError):
        tv_distance_harness(n, b, t)
