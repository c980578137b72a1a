"""Kummer ratio of the first class-number factor of prime cyclotomic fields."""

from .arith import PrimeContext, build_context, factorize, find_primitive_root, is_prime
from .ek import EkResult, ek_difference
from .errors import InternalInconsistencyError, PreconditionError
from .kummer import (
    KummerResult,
    kummer_ratio,
    log10_G,
    log_r_bernoulli,
    log_r_digamma,
    log_r_oracle,
)
from .specfun import cot_pi, digamma, log_gamma
from .transform import dft_fast, dft_naive, dif_fold, odd_character_sums

__all__ = [
    "EkResult",
    "InternalInconsistencyError",
    "KummerResult",
    "PreconditionError",
    "PrimeContext",
    "build_context",
    "cot_pi",
    "dft_fast",
    "dft_naive",
    "dif_fold",
    "digamma",
    "ek_difference",
    "factorize",
    "find_primitive_root",
    "is_prime",
    "kummer_ratio",
    "log10_G",
    "log_gamma",
    "log_r_bernoulli",
    "log_r_digamma",
    "log_r_oracle",
    "odd_character_sums",
]
