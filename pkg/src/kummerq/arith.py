"""64-bit modular arithmetic, primality, factorization and primitive roots.

Everything here works on Python integers (exact for any size) except the
power table, which is built as a ``uint64`` numpy array by repeated
doubling: the block ``a[L:2L]`` is ``a[0:L]`` times ``g^L`` modulo ``q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import PreconditionError

U64_MAX = (1 << 64) - 1
TRIAL_DIVISION_BOUND = 10**6
# 2**31 table entries is 16 GiB of uint64; anything larger is not a desk job.
DEFAULT_MAX_ENTRIES = 1 << 31

# The first twelve primes are a deterministic witness set for n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every 64-bit ``n``."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> np.ndarray:
    """All primes ``<= n`` (Eratosthenes on a byte array)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


@lru_cache(maxsize=1)
def _small_primes() -> np.ndarray:
    return primes_up_to(TRIAL_DIVISION_BOUND)


def primes_in_range(start: int, end: int, segment: int = 1 << 20) -> Iterator[int]:
    """Yield the primes in ``[start, end]`` in increasing order.

    Segmented sieve: each window of ``segment`` integers is crossed off with
    the base primes up to ``sqrt(end)``.
    """
    start = max(start, 2)
    if end < start:
        return
    base = primes_up_to(math.isqrt(end))
    lo = start
    while lo <= end:
        hi = min(lo + segment - 1, end)
        mark = np.ones(hi - lo + 1, dtype=bool)
        for p in base:
            p = int(p)
            if p * p > hi:
                break
            first = max(p * p, (lo + p - 1) // p * p)
            mark[first - lo :: p] = False
        for off in np.flatnonzero(mark):
            yield lo + int(off)
        lo = hi + 1


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed on {n}")  # pragma: no cover


def factorize(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, in increasing order.

    Trial division by the primes below 10**6, then Pollard-Brent rho on
    whatever cofactor is left.
    """
    if n < 2:
        raise PreconditionError(f"factorize needs n >= 2, got {n}")
    if n > U64_MAX:
        raise PreconditionError(f"factorize is limited to 64-bit input, got {n}")
    factors: list[int] = []
    small = _small_primes()
    small = small[: np.searchsorted(small, math.isqrt(n), side="right")]
    if small.size:
        hits = small[np.uint64(n) % small.astype(np.uint64) == 0]
        for p in hits:
            p = int(p)
            while n % p == 0:
                factors.append(p)
                n //= p
    stack = [n] if n > 1 else []
    while stack:
        x = stack.pop()
        if x < TRIAL_DIVISION_BOUND**2 or is_prime(x):
            # every prime factor below 10**6 is already gone
            factors.append(x)
            continue
        d = _pollard_brent(x)
        stack.extend((d, x // d))
    return sorted(factors)


def _check_odd_prime(q: int) -> None:
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise PreconditionError(f"q must be an odd prime, got {q}")


def find_primitive_root(q: int) -> int:
    """Smallest generator of the multiplicative group modulo the odd prime ``q``."""
    _check_odd_prime(q)
    exponents = [(q - 1) // p for p in sorted(set(factorize(q - 1)))]
    g = 2
    while any(pow(g, e, q) == 1 for e in exponents):
        g += 1
    return g


def mulmod_array(a: np.ndarray, b: int, q: int) -> np.ndarray:
    """Elementwise ``a * b mod q`` for a ``uint64`` array with entries below ``q``.

    For ``q < 2**32`` the product fits in 64 bits.  Larger moduli feed ``b``
    in chunks of ``c`` bits with ``bits(q) + c <= 64`` (Horner); past
    ``2**63`` the arithmetic falls back to Python integers.
    """
    b %= q
    if q <= 1 << 32:
        return a * np.uint64(b) % np.uint64(q)
    bits = q.bit_length()
    c = 64 - bits
    if c < 1:
        return np.array([int(x) * b % q for x in a], dtype=np.uint64)
    uq = np.uint64(q)
    out = np.zeros_like(a)
    nchunks = -(-b.bit_length() // c)
    mask = (1 << c) - 1
    for i in reversed(range(nchunks)):
        chunk = np.uint64((b >> (i * c)) & mask)
        out = (out << np.uint64(c)) % uq
        out = (out + a * chunk % uq) % uq
    return out


@dataclass(frozen=True)
class PrimeContext:
    """Rader reindexing state for an odd prime ``q``.

    ``powers[k] = g**k mod q`` for ``k = 0..q-2``; the array is read-only.
    """

    q: int
    g: int
    m: int
    powers: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.powers.setflags(write=False)


def power_table(g: int, q: int) -> np.ndarray:
    n = q - 1
    a = np.empty(n, dtype=np.uint64)
    a[0] = 1
    filled = 1
    step = g % q  # g ** filled
    while filled < n:
        take = min(filled, n - filled)
        a[filled : filled + take] = mulmod_array(a[:take], step, q)
        filled += take
        step = step * step % q
    return a


def build_context(q: int, max_entries: int = DEFAULT_MAX_ENTRIES) -> PrimeContext:
    _check_odd_prime(q)
    if q - 1 > max_entries:
        raise PreconditionError(
            f"q={q} needs a power table of {q - 1} entries, above the budget of {max_entries}"
        )
    g = find_primitive_root(q)
    return PrimeContext(q=q, g=g, m=(q - 1) // 2, powers=power_table(g, q))
