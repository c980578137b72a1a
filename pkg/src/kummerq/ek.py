"""Difference of the Euler-Kronecker constants of Q(zeta_q) and its real subfield.

The difference is the sum of ``L'/L(1, chi)`` over odd characters, which
equals

    m (gamma + log 2 pi) + sum_chi (1 / B_{1, conj chi}) sum_a conj chi(a) log Gamma(a/q).

Numerators and denominators both come from half-length transforms with the
negative twiddle sign, since they run over ``conj chi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import DEFAULT_MAX_ENTRIES, PrimeContext, build_context
from .specfun import CONSTANTS
from .transform import check_nonvanishing, odd_character_sums

REALNESS_TOLERANCE = 1e-6


@dataclass(frozen=True)
class EkResult:
    q: int
    diff: float
    normalized: float
    residual_imag: float


def odd_log_derivative_terms(ctx: PrimeContext, numerator_sign: int = -1, denominator_sign: int = -1) -> np.ndarray:
    """Per-character terms ``N[t] / D[t]``; both signs are -1 in the real computation."""
    numer = odd_character_sums(ctx, "loggamma", numerator_sign)
    denom = odd_character_sums(ctx, "identity", denominator_sign)
    check_nonvanishing(denom, "B_1 denominator")
    return numer / denom


def ek_difference(q: int, max_entries: int = DEFAULT_MAX_ENTRIES) -> EkResult:
    ctx = build_context(q, max_entries)
    terms = odd_log_derivative_terms(ctx)
    const = ctx.m * (CONSTANTS.euler_gamma + CONSTANTS.log_2pi)
    diff = math.fsum([const, *terms.real.tolist()])
    return EkResult(
        q=q,
        diff=diff,
        normalized=diff / math.log(q),
        residual_imag=math.fsum(terms.imag.tolist()),
    )
