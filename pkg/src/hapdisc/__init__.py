"""Discrepancy of sequences along homogeneous arithmetic progressions.

Exact number theory (characters, factorization), completely multiplicative
constructions, discrepancy scans, pretentious distances, the Fourier
reduction to random multiplicative functions, and extremal searches.
"""

from .discrepancy import (
    DiscrepancyReport,
    MomentEstimate,
    adversarial_bcc,
    bcc_sign_sum,
    brute_force_discrepancy,
    cesaro_sum,
    cesaro_sums,
    discrepancy_growth,
    exact_second_moment,
    hap_discrepancy,
    hap_discrepancy_cm,
    mc_second_moment,
    prefix_sums,
    quadratic_form_check,
    quadratic_form_matrix,
    vector_bcc_norm,
    vector_bcc_norms,
)
from .mulfun import (
    CompletelyMultiplicativeFn,
    EvaluationError,
    MultiplicativeFn,
    StochasticBCC,
    VectorBCC,
    bcc_function,
    chi2_family,
    chi2_period,
    evaluate,
    factorial_alternating,
    lift_character,
    materialize,
    random_bcc,
)
from .numtheory import (
    DirichletCharacter,
    DomainError,
    PrimeTable,
    UnitGroup,
    base_digits,
    character_interval_sum,
    count_digit,
    digit_counts,
    divisors,
    enumerate_characters,
    euler_phi,
    factorize,
    prime_table,
    primes_upto,
    principal_character,
    quadratic_character,
    unit_group,
)
from .pretentious import (
    ModulatedCharacter,
    PretentiousFactorization,
    log_avg_correlation,
    log_weight_sum,
    mertens_sum,
    pretentious_dist_sq,
    pretentious_distance,
    pretentious_factorize,
    singular_series,
    triangle_check,
    window_variance,
)
from .reduction import (
    FreqDistribution,
    GroupArray,
    build_F,
    discrepancy_identity_check,
    expected_square_sum,
    fourier_transform,
    frequency_distribution,
    inverse_fourier_transform,
    pi_map,
    plancherel_sums,
    sample_gX,
    smooth_prefix,
    WrapSplit,
    wraparound_split,
)
from .search import (
    Certificate,
    CertificateError,
    SearchConfig,
    SearchResult,
    brute_force_longest,
    decode_model,
    dfs_longest,
    dfs_longest_cm,
    emit_cnf,
    solve_dimacs,
    verify_certificate,
)
from .seqfile import SeqFile, SeqFileError, read_seqfile, write_seqfile
from .sequence import SeqWindow

__version__ = "0.1.0"
