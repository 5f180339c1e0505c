"""Small-bias subsets of F_2^n built from few random bits."""

from .bias import (
    BiasReport,
    CandidateSet,
    LinearCodeView,
    bias_for,
    exact_max_bias,
    sampled_max_bias,
    to_code,
    walsh_hadamard,
)
from .codegen import (
    CodeParams,
    WeightProgram,
    biased_set_from_alphas,
    codeword,
    construct_code_nisan,
    construct_code_uniform,
    derive_params,
    entropy_h,
    failure_bound,
    run_weight_program,
)
from .gf2 import BitVector, FieldElement, IndexSet, choose_irreducible, embed, field_mul, hamming_weight, parity, project
from .legendre import (
    PrimeField,
    ShiftParams,
    aghp_set,
    construct_legendre_shift,
    derive_shift_params,
    legendre_symbol,
    matching_probability,
    moment_bound,
    next_prime,
    shifted_legendre_set,
    union_bound,
    weil_sum,
)
from .naive import construct_naive
from .nisan import HashDesc, NisanSeed, expand, sample_seed, seed_length, tv_distance_harness
from .randomness import EntropySource

__version__ = "0.1.0"
