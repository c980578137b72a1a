"""Arbitrary-length complex DFT and the half-length odd-frequency fold.

Sign convention: ``dft(x, sign)[t] = sum_k x[k] * exp(sign * 2*pi*i * t*k / n)``.

The fast path is a recursive mixed-radix decimation in frequency with a
single reordering gather at the end.  Small prime factors are grouped into
radices of at most ``MAX_RADIX`` and applied as a dense matrix product;
prime factors above ``BLUESTEIN_CUTOFF`` go through a chirp-z convolution
on a ``2^k`` or ``3*2^k`` grid.  All twiddles are computed
from exactly reduced integer phases, so no error builds up from repeated
rotation.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Literal

import numpy as np

from .arith import PrimeContext, factorize
from .errors import InternalInconsistencyError, PreconditionError
from .specfun import CONSTANTS, cot_pi_ratio, log_gamma

# A ComplexSequence is a 1-D complex128 numpy array of length >= 1.
ComplexSequence = np.ndarray
FoldKind = Literal["identity", "cotangent", "loggamma"]

BLUESTEIN_CUTOFF = 61
MAX_RADIX = 16
NEAR_ZERO = 1e-12


def as_sequence(values) -> ComplexSequence:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.ndim != 1 or arr.size < 1:
        raise PreconditionError("a sequence must be one-dimensional with length >= 1")
    if not np.all(np.isfinite(arr)):
        raise PreconditionError("sequence entries must be finite")
    return arr


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise PreconditionError(f"sign must be +1 or -1, got {sign}")


def roots_of_unity(n: int, sign: int, index) -> np.ndarray:
    """exp(sign * 2*pi*i * r / n) for integer ``r``, reduced mod ``n`` first."""
    r = np.asarray(index, dtype=np.int64) % n
    angle = (2.0 * np.pi / n) * r
    return np.cos(angle) + 1j * sign * np.sin(angle)


def dft_naive(values, sign: int = 1) -> ComplexSequence:
    """Quadratic reference DFT."""
    _check_sign(sign)
    x = as_sequence(values)
    n = x.size
    table = roots_of_unity(n, sign, np.arange(n))
    k = np.arange(n, dtype=np.int64)
    out = np.empty(n, dtype=np.complex128)
    rows = max(1, (1 << 22) // n)
    for t0 in range(0, n, rows):
        t = np.arange(t0, min(n, t0 + rows), dtype=np.int64)
        out[t0 : t0 + t.size] = table[np.outer(t, k) % n] @ x
    return out


@lru_cache(maxsize=None)
def _radices(n: int) -> tuple[int, ...]:
    """Split ``n`` into radices: grouped small primes first, large primes last."""
    if n == 1:
        return ()
    small, large = [], []
    for p in factorize(n):
        (large if p > BLUESTEIN_CUTOFF else small).append(p)
    grouped: list[int] = []
    for p in small:
        if grouped and grouped[-1] * p <= MAX_RADIX:
            grouped[-1] *= p
        else:
            grouped.append(p)
    return tuple(grouped + large)


@lru_cache(maxsize=64)
def _dft_matrix(p: int, sign: int) -> np.ndarray:
    k = np.arange(p)
    return roots_of_unity(p, sign, np.outer(k, k))


@lru_cache(maxsize=32)
def _twiddles(n: int, p: int, sign: int) -> np.ndarray:
    n2 = n // p
    return roots_of_unity(n, sign, np.outer(np.arange(p), np.arange(n2)))


@lru_cache(maxsize=32)
def _scramble(n: int) -> np.ndarray:
    """Natural frequency held at each position of :func:`_dif` output."""
    radices = _radices(n)
    if len(radices) <= 1:
        return np.arange(n)
    p = radices[0]
    inner = _scramble(n // p)
    # position s*n2 + j holds frequency inner[j]*p + s
    return (inner[None, :] * p + np.arange(p)[:, None]).ravel()


@lru_cache(maxsize=32)
def _unscramble(n: int) -> np.ndarray:
    return np.argsort(_scramble(n))


def _bluestein_size(n: int) -> int:
    need = 2 * n - 1
    pow2 = 1 << (need - 1).bit_length()
    three = 3 << max(0, (need - 1) // 3).bit_length()
    return min(pow2, three)


@lru_cache(maxsize=16)
def _chirp(n: int, sign: int) -> tuple[np.ndarray, np.ndarray]:
    """Chirp ``w[j] = exp(sign*pi*i*j^2/n)`` and the transformed kernel."""
    j = np.arange(n, dtype=np.int64)
    w = roots_of_unity(2 * n, sign, j * j % (2 * n))
    size = _bluestein_size(n)
    kernel = np.zeros(size, dtype=np.complex128)
    kernel[:n] = np.conj(w)
    kernel[size - n + 1 :] = np.conj(w[1:][::-1])
    return w, _dif(kernel, 1)


def _bluestein(x: np.ndarray, sign: int) -> np.ndarray:
    n = x.shape[-1]
    w, kernel_hat = _chirp(n, sign)
    size = kernel_hat.size
    padded = np.zeros(x.shape[:-1] + (size,), dtype=np.complex128)
    padded[..., :n] = x * w
    # both factors share the scrambled order, so the product needs one unscramble
    spectrum = (_dif(padded, 1) * kernel_hat)[..., _unscramble(size)]
    conv = _dif(spectrum, -1)[..., _unscramble(size)[:n]]
    return conv * (w / size)


def _dif(x: np.ndarray, sign: int) -> np.ndarray:
    """Decimation-in-frequency DFT along the last axis, output in scrambled order.

    Leading axes are independent batches.  ``_scramble(n)[pos]`` is the
    frequency stored at position ``pos``.
    """
    n = x.shape[-1]
    radices = _radices(n)
    if not radices:
        return x.copy()
    p = radices[0]
    if p == n:
        if p > BLUESTEIN_CUTOFF:
            return _bluestein(x, sign)
        return x @ _dft_matrix(p, sign)
    n2 = n // p
    lead = x.shape[:-1]
    # x[i*n2 + j] -> y[..., i, j];  z[s, j] = sum_i w_p^(is) y[i, j] * w_n^(sj)
    y = x.reshape(lead + (p, n2))
    if p > BLUESTEIN_CUTOFF:
        z = np.swapaxes(_bluestein(np.swapaxes(y, -1, -2), sign), -1, -2)
    elif p == 2:
        z = np.stack((y[..., 0, :] + y[..., 1, :], y[..., 0, :] - y[..., 1, :]), axis=-2)
    else:
        z = _dft_matrix(p, sign) @ y
    z = z * _twiddles(n, p, sign)
    return _dif(z, sign).reshape(lead + (n,))


def _fft(x: np.ndarray, sign: int) -> np.ndarray:
    """DFT along the last axis in natural order."""
    n = x.shape[-1]
    if len(_radices(n)) <= 1:
        return _dif(x, sign)
    return _dif(x, sign)[..., _unscramble(n)]


def dft_fast(values, sign: int = 1) -> ComplexSequence:
    """O(n log n) DFT for any length ``n >= 1``; same contract as :func:`dft_naive`."""
    _check_sign(sign)
    return _fft(as_sequence(values), sign)


def _half_twiddle(ctx: PrimeContext, sign: int) -> np.ndarray:
    # e(sign * k / (q-1)) for k < m
    return roots_of_unity(ctx.q - 1, sign, np.arange(ctx.m))


def dif_fold(f_values, ctx: PrimeContext, sign: int = 1) -> tuple[ComplexSequence, ComplexSequence]:
    """Split the length ``q-1`` transform of ``f(a_k/q)`` into two length-``m`` inputs.

    ``dft(b)[t]`` is the full transform at frequency ``2t`` and ``dft(c)[t]``
    at ``2t+1``.
    """
    _check_sign(sign)
    f = np.asarray(f_values, dtype=np.float64)
    if f.shape != (ctx.q - 1,):
        raise PreconditionError(f"expected {ctx.q - 1} values, got shape {f.shape}")
    lo, hi = f[: ctx.m], f[ctx.m :]
    b = (lo + hi).astype(np.complex128)
    c = _half_twiddle(ctx, sign) * (lo - hi)
    return b, c


def fold_sequence(ctx: PrimeContext, fold_kind: FoldKind, sign: int = 1) -> ComplexSequence:
    """The odd-frequency input ``c_k`` for one of the three supported ``f``."""
    _check_sign(sign)
    a = ctx.powers[: ctx.m].astype(np.int64)
    q = ctx.q
    if fold_kind == "identity":
        # a_k - a_{k+m} = 2 a_k - q, kept on the a/q scale
        diff = (2 * a - q) / q
    elif fold_kind == "cotangent":
        # psi(x) - psi(1-x) = -pi cot(pi x)
        diff = -CONSTANTS.pi * cot_pi_ratio(a, q)
    elif fold_kind == "loggamma":
        # logG(x) - logG(1-x) = 2 logG(x) + log sin(pi x) - log pi
        near = np.minimum(a, q - a) / q
        diff = 2.0 * log_gamma(a / q) + np.log(np.sin(np.pi * near)) - math.log(CONSTANTS.pi)
    else:
        raise PreconditionError(f"unknown fold kind {fold_kind!r}")
    return _half_twiddle(ctx, sign) * diff


def check_nonvanishing(sums: np.ndarray, what: str = "character sum") -> None:
    mags = np.abs(sums)
    peak = float(mags.max())
    if not np.all(mags >= NEAR_ZERO * peak) or peak == 0.0:
        t = int(np.argmin(mags))
        raise InternalInconsistencyError(
            f"{what} at index {t} is numerically zero ({mags[t]:.3e} vs peak {peak:.3e})"
        )


def odd_character_sums(ctx: PrimeContext, fold_kind: FoldKind, sign: int = 1) -> ComplexSequence:
    """Sums over ``a`` of ``chi(a) f(a/q)`` for every odd character.

    Entry ``t`` belongs to ``chi_1^(2t+1)`` (its conjugate when ``sign=-1``),
    where ``chi_1(g) = exp(2*pi*i/(q-1))``.  For ``identity`` the result is
    ``B_{1,chi} = (1/q) sum_a a chi(a)``.  Sums that are proportional to
    ``L(1, chi)`` (identity, cotangent) are checked to be nonzero.
    """
    sums = _fft(fold_sequence(ctx, fold_kind, sign), sign)
    if fold_kind != "loggamma":
        check_nonvanishing(sums)
    return sums
