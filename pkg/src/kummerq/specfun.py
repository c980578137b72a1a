"""Real digamma, log-gamma and cot(pi x) in binary64.

All three accept scalars or numpy arrays.  Digamma and log-gamma shift the
argument upward past ``SHIFT_THRESHOLD`` with the recurrences and finish
with the Stirling series, so there is no table and no dependency beyond
numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError


@dataclass(frozen=True)
class RealConstantSet:
    euler_gamma: float
    pi: float
    log_2pi: float


CONSTANTS = RealConstantSet(
    euler_gamma=0.57721566490153286060651209008240243,
    pi=math.pi,
    log_2pi=math.log(2.0) + math.log(math.pi),
)

SHIFT_THRESHOLD = 10.0

# B_2 .. B_14
_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6)
# digamma tail: -sum B_2k / (2k z^2k)
_PSI_COEF = tuple(b / (2 * k) for k, b in enumerate(_BERNOULLI, start=1))
# log-gamma tail: sum B_2k / (2k (2k-1) z^(2k-1))
_LGAMMA_COEF = tuple(b / (2 * k * (2 * k - 1)) for k, b in enumerate(_BERNOULLI, start=1))


def _positive(x, name):
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(arr > 0):
        raise PreconditionError(f"{name} needs x > 0")
    return arr


def _shift_count(x: np.ndarray) -> int:
    return max(0, math.ceil(SHIFT_THRESHOLD - float(np.min(x))))


def _horner(coef, w):
    acc = np.zeros_like(w)
    for c in reversed(coef):
        acc = acc * w + c
    return acc


def _result(arr, scalar):
    return float(arr) if scalar else arr


def digamma(x):
    """psi(x) = Gamma'(x)/Gamma(x) for x > 0."""
    scalar = np.ndim(x) == 0
    z = _positive(x, "digamma").copy()
    acc = np.zeros_like(z)
    # Shift every entry by the same count so the loop stays vectorised;
    # entries already large just take a few extra harmless steps.
    for _ in range(_shift_count(z)):
        acc -= 1.0 / z
        z = z + 1.0
    w = 1.0 / (z * z)
    tail = w * _horner(_PSI_COEF, w)
    return _result(acc + np.log(z) - 0.5 / z - tail, scalar)


def _zeta_minus_one(k: int, n: int = 10) -> float:
    """zeta(k) - 1 for integer k >= 2 by Euler-Maclaurin from ``n`` on."""
    head = math.fsum(j ** -k for j in range(2, n))
    tail = n ** (1 - k) / (k - 1) + 0.5 * n**-k
    rising = k
    for j, b in enumerate(_BERNOULLI, start=1):
        tail += b * rising / math.factorial(2 * j) * n ** (-k - 2 * j + 1)
        rising *= (k + 2 * j - 1) * (k + 2 * j)
    return head + tail


# log Gamma(1+e) = -log(1+e) + (1-gamma) e + sum_k (-1)^k (zeta(k)-1)/k e^k, |e| < 2;
# with |e| <= 1/2 the terms fall like 4**-k.
_TAYLOR_TERMS = 32
_TAYLOR_COEF = tuple((-1) ** k * _zeta_minus_one(k) / k for k in range(2, _TAYLOR_TERMS))


def _log_gamma_1p(e):
    """log Gamma(1 + e) for |e| <= 1/2, accurate relative to the result."""
    poly = e * e * _horner(_TAYLOR_COEF, e)
    return -np.log1p(e) + (1.0 - CONSTANTS.euler_gamma) * e + poly


def _log_gamma_stirling(z):
    n = _shift_count(z) if z.size else 0
    prod = np.ones_like(z)
    for _ in range(n):
        prod *= z
        z = z + 1.0
    w = 1.0 / (z * z)
    stirling = (z - 0.5) * np.log(z) - z + 0.5 * CONSTANTS.log_2pi + _horner(_LGAMMA_COEF, w) / z
    return stirling - np.log(prod)


def log_gamma(x):
    """log Gamma(x) for x > 0.

    Below 3/2 a Taylor series about 1 keeps the error relative even where
    the result crosses zero; above it the Stirling series takes over.
    """
    scalar = np.ndim(x) == 0
    z = np.atleast_1d(_positive(x, "log_gamma"))
    out = np.empty_like(z)
    low = z < 0.5
    mid = (z >= 0.5) & (z <= 1.5)
    high = z > 1.5
    out[low] = _log_gamma_1p(z[low]) - np.log(z[low])
    out[mid] = _log_gamma_1p(z[mid] - 1.0)
    out[high] = _log_gamma_stirling(z[high])
    if scalar:
        return float(out[0])
    return out.reshape(np.shape(x))


def cot_pi(x):
    """cot(pi x) on the open interval (0, 1).

    Antisymmetric about 1/2 by construction and exactly zero there.
    """
    scalar = np.ndim(x) == 0
    arr = np.asarray(x, dtype=np.float64)
    if not np.all((arr > 0) & (arr < 1)):
        raise PreconditionError("cot_pi needs 0 < x < 1")
    upper = arr > 0.5
    y = np.where(upper, 1.0 - arr, arr)
    out = np.cos(np.pi * y) / np.sin(np.pi * y)
    out = np.where(arr == 0.5, 0.0, out)
    return _result(np.where(upper, -out, out), scalar)


def cot_pi_ratio(a: np.ndarray, q: int) -> np.ndarray:
    """cot(pi a/q) for integers ``0 < a < q``, reflecting in integer arithmetic.

    Using ``q - a`` for the upper half avoids the rounding in ``1 - a/q``.
    """
    a = np.asarray(a, dtype=np.int64)
    upper = 2 * a > q
    y = np.where(upper, q - a, a).astype(np.float64) / q
    out = np.cos(np.pi * y) / np.sin(np.pi * y)
    out = np.where(2 * a == q, 0.0, out)
    return np.where(upper, -out, out)
