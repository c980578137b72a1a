"""Kummer ratio r(q) = h_1(q) / G(q) for an odd prime q.

Three engines compute ``log r(q)`` as a sum of logarithms over the
``m = (q-1)/2`` odd characters modulo ``q``:

``oracle``
    ``L(1, chi) = -(1/q) sum_a chi(a) psi(a/q)`` with every character
    evaluated explicitly, O(q^2).
``digamma``
    the same sums produced by one length-``m`` FFT of the cotangent fold.
``bernoulli``
    ``sum_a a chi(a)`` from one length-``m`` FFT of the identity fold.

``h_1(q)`` itself is never formed; it has thousands of digits already at
``q ~ 10^4``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .arith import DEFAULT_MAX_ENTRIES, PrimeContext, build_context, is_prime
from .errors import InternalInconsistencyError, PreconditionError
from .specfun import CONSTANTS, digamma
from .transform import check_nonvanishing, odd_character_sums

Method = Literal["oracle", "digamma", "bernoulli"]
METHODS: tuple[str, ...] = ("oracle", "digamma", "bernoulli")

DEFAULT_ORACLE_CAP = 10**4
ARG_TOLERANCE = 1e-6


@dataclass(frozen=True)
class KummerResult:
    q: int
    log_r: float
    r: float
    method: str
    arg_defect: float
    elapsed_ns: int


def log10_G(q: int) -> float:
    """log10 of Kummer's size estimate ``G(q) = 2q (q / 4 pi^2)^((q-1)/4)``."""
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise PreconditionError(f"q must be an odd prime, got {q}")
    return math.log10(2 * q) + (q - 1) / 4 * math.log10(q / (4 * CONSTANTS.pi**2))


def log_abs_sum(sums: np.ndarray) -> float:
    """Compensated sum of ``log|s|``; the order is fixed, so results are reproducible."""
    return math.fsum(np.log(np.abs(sums)).tolist())


def argument_defect(sums: np.ndarray, m: int) -> float:
    """Distance of ``sum arg(s)`` from ``-pi m`` modulo ``2 pi``, in ``[-pi, pi]``.

    ``-pi m`` is ``0`` or ``pi`` modulo ``2 pi`` by the parity of ``m``.
    """
    total = math.fsum(np.arctan2(sums.imag, sums.real).tolist())
    if m % 2:
        total += math.pi
    return math.remainder(total, 2 * math.pi)


def discrete_log_table(ctx: PrimeContext) -> np.ndarray:
    """``ind[a] = k`` with ``g^k = a mod q``; entry 0 is unused."""
    ind = np.zeros(ctx.q, dtype=np.int64)
    ind[ctx.powers.astype(np.int64)] = np.arange(ctx.q - 1)
    return ind


def explicit_odd_sums(ctx: PrimeContext, values: np.ndarray, sign: int = 1) -> np.ndarray:
    """``sum_{a=1}^{q-1} chi_1^j(a) values[a-1]`` for odd ``j = 1, 3, ..., q-2``.

    Plain character-table evaluation: every ``chi(a)`` is looked up from an
    exactly reduced exponent ``j * ind(a) mod (q-1)``.  ``sign=-1`` sums
    the conjugate characters.
    """
    n = ctx.q - 1
    ind = discrete_log_table(ctx)[1:]
    angle = (2.0 * np.pi / n) * np.arange(n)
    cos_t, sin_t = np.cos(angle), sign * np.sin(angle)
    values = np.asarray(values, dtype=np.float64)
    js = np.arange(1, n, 2, dtype=np.int64)
    out = np.empty(js.size, dtype=np.complex128)
    rows = max(1, (1 << 21) // n)
    for i0 in range(0, js.size, rows):
        idx = np.outer(js[i0 : i0 + rows], ind) % n
        out[i0 : i0 + rows] = (cos_t[idx] @ values) + 1j * (sin_t[idx] @ values)
    return out


def _check_q(q: int) -> None:
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise PreconditionError(f"q must be an odd prime, got {q}")


def log_r_oracle(q: int, oracle_cap: int = DEFAULT_ORACLE_CAP) -> KummerResult:
    _check_q(q)
    if q > oracle_cap:
        raise PreconditionError(f"q={q} is above the oracle cap {oracle_cap}")
    start = time.perf_counter_ns()
    ctx = build_context(q)
    a = np.arange(1, q)
    # psi(1 - x) is evaluated at (q - a)/q exactly like psi(x) at a/q
    sums = explicit_odd_sums(ctx, digamma(a / q))
    check_nonvanishing(sums)
    # L(1, chi) = -S / q
    log_r = math.fsum(np.log(np.abs(sums) / q).tolist())
    return KummerResult(
        q=q,
        log_r=log_r,
        r=math.exp(log_r),
        method="oracle",
        arg_defect=argument_defect(sums, ctx.m),
        elapsed_ns=time.perf_counter_ns() - start,
    )


def log_r_digamma(q: int, max_entries: int = DEFAULT_MAX_ENTRIES) -> KummerResult:
    start = time.perf_counter_ns()
    ctx = build_context(q, max_entries)
    sums = odd_character_sums(ctx, "cotangent", 1)
    log_r = math.fsum([-ctx.m * math.log(q), log_abs_sum(sums)])
    return KummerResult(
        q=q,
        log_r=log_r,
        r=math.exp(log_r),
        method="digamma",
        arg_defect=argument_defect(sums, ctx.m),
        elapsed_ns=time.perf_counter_ns() - start,
    )


def log_r_bernoulli(q: int, max_entries: int = DEFAULT_MAX_ENTRIES) -> KummerResult:
    start = time.perf_counter_ns()
    ctx = build_context(q, max_entries)
    # sums[t] = B_{1,chi}, so |sum_a a chi(a)| = q |sums[t]|
    sums = odd_character_sums(ctx, "identity", 1)
    m, log_q = ctx.m, math.log(q)
    log_r = math.fsum([m * math.log(CONSTANTS.pi), -1.5 * m * log_q, m * log_q, log_abs_sum(sums)])
    return KummerResult(
        q=q,
        log_r=log_r,
        r=math.exp(log_r),
        method="bernoulli",
        arg_defect=argument_defect(sums, m),
        elapsed_ns=time.perf_counter_ns() - start,
    )


def kummer_ratio(
    q: int,
    method: str = "bernoulli",
    *,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> KummerResult:
    """Compute r(q) with the named engine and check its argument certificate."""
    if method == "oracle":
        result = log_r_oracle(q, oracle_cap)
    elif method == "digamma":
        result = log_r_digamma(q, max_entries)
    elif method == "bernoulli":
        result = log_r_bernoulli(q, max_entries)
    else:
        raise PreconditionError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if not abs(result.arg_defect) <= ARG_TOLERANCE:
        raise InternalInconsistencyError(
            f"argument certificate failed for q={q}: defect {result.arg_defect:.3e}"
        )
    return result
