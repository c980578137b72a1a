import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kummerq.arith import (
    build_context,
    factorize,
    find_primitive_root,
    is_prime,
    mulmod_array,
    power_table,
    primes_in_range,
    primes_up_to,
)
from kummerq.errors import PreconditionError


def trial_division(n):
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def brute_order(g, q):
    x, k = g % q, 1
    while x != 1:
        x = x * g % q
        k += 1
    return k


SMALL_PRIMES = [p for p in range(2, 10_001) if trial_division(p) == [p]]


def test_is_prime_examples():
    assert not is_prime(1)
    assert is_prime(6766811)
    assert is_prime(305741)
    assert not is_prime(0) and is_prime(2) and not is_prime(4)


def test_is_prime_matches_trial_division_below_10k():
    expected = set(SMALL_PRIMES)
    assert [n for n in range(10_001) if is_prime(n)] == sorted(expected)


@pytest.mark.parametrize(
    "n",
    [
        3215031751,  # strong pseudoprime to bases 2, 3, 5, 7
        3825123056546413051,  # strong pseudoprime to bases 2..23
        (1 << 61) - 1,
        (1 << 64) - 59,  # largest 64-bit prime
        9854964401,
    ],
)
def test_is_prime_hard_cases(n):
    assert is_prime(n) == (n in {(1 << 61) - 1, (1 << 64) - 59, 9854964401})


def test_factorize_examples():
    assert factorize(12) == [2, 2, 3]
    assert factorize(10) == [2, 5]
    assert factorize(5230) == trial_division(5230) == [2, 5, 523]


def test_factorize_rejects_small():
    with pytest.raises(PreconditionError):
        factorize(1)


def test_factorize_recomposes_up_to_1e5():
    for n in range(2, 100_001, 7):
        f = factorize(n)
        assert math.prod(f) == n
    for n in range(2, 3000):
        assert factorize(n) == trial_division(n)


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=2, max_value=(1 << 64) - 1))
def test_factorize_recomposes_random_64bit(n):
    f = factorize(n)
    assert math.prod(f) == n
    assert all(is_prime(p) for p in f)


def test_factorize_semiprime_beyond_trial_bound():
    p, q = 1000003, 2147483647
    assert factorize(p * q) == [p, q]
    assert factorize((1 << 64) - 1) == [3, 5, 17, 257, 641, 65537, 6700417]


@pytest.mark.parametrize("q,g", [(3, 2), (7, 3), (11, 2), (23, 5), (41, 6), (6766811, 2)])
def test_primitive_root_examples(q, g):
    assert find_primitive_root(q) == g


def test_primitive_root_is_smallest_generator_up_to_2000():
    for q in SMALL_PRIMES[1:]:
        if q > 2000:
            break
        g = find_primitive_root(q)
        assert brute_order(g, q) == q - 1
        assert all(brute_order(h, q) < q - 1 for h in range(2, g))


@pytest.mark.parametrize("q", [1, 4, 9, 2, 561])
def test_primitive_root_rejects_non_odd_primes(q):
    with pytest.raises(PreconditionError):
        find_primitive_root(q)


def test_build_context_examples():
    ctx = build_context(5)
    assert (ctx.g, ctx.m, ctx.powers.tolist()) == (2, 2, [1, 2, 4, 3])
    ctx = build_context(7)
    assert (ctx.g, ctx.powers.tolist()) == (3, [1, 3, 2, 6, 4, 5])
    ctx = build_context(11)
    a = ctx.powers.tolist()
    assert all(a[k + 5] == 11 - a[k] for k in range(5))


def test_context_invariants_below_10k():
    for q in SMALL_PRIMES[1:]:
        ctx = build_context(q)
        a = ctx.powers.astype(np.int64)
        assert a[0] == 1 and ctx.m == (q - 1) // 2
        assert np.array_equal(np.sort(a), np.arange(1, q))
        assert np.array_equal(a[ctx.m :], q - a[: ctx.m])


def test_context_is_read_only():
    ctx = build_context(13)
    with pytest.raises(ValueError):
        ctx.powers[0] = 5


def test_build_context_memory_budget():
    with pytest.raises(PreconditionError, match="budget"):
        build_context(6766811, max_entries=1_000_000)
    with pytest.raises(PreconditionError):
        build_context(15)


def test_power_table_matches_sequential_iteration():
    q = 1_000_003
    g = find_primitive_root(q)
    table = power_table(g, q)
    x = 1
    for k in range(0, q - 1, 9973):
        assert int(table[k]) == pow(g, k, q)
    for k in range(50):
        assert int(table[k]) == x
        x = x * g % q


@pytest.mark.parametrize("q", [(1 << 32) + 15, 9854964401, (1 << 62) + 135, (1 << 63) + 29])
def test_mulmod_array_wide_moduli(q):
    rng = random.Random(q)
    a = [rng.randrange(q) for _ in range(200)]
    b = rng.randrange(q)
    got = mulmod_array(np.array(a, dtype=np.uint64), b, q)
    assert got.tolist() == [x * b % q for x in a]


def test_power_table_large_modulus():
    # the full table would be 79 GB; check one doubling step on a prefix
    q = 9854964401
    g = find_primitive_root(q)
    prefix = np.array([pow(g, k, q) for k in range(64)], dtype=np.uint64)
    step = pow(g, 64, q)
    assert mulmod_array(prefix, step, q).tolist() == [pow(g, 64 + k, q) for k in range(64)]


def test_sieves():
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert list(primes_in_range(24, 28)) == []
    assert list(primes_in_range(0, 1000)) == SMALL_PRIMES[:168]
    got = list(primes_in_range(10**6, 10**6 + 2000, segment=97))
    assert got == [n for n in range(10**6, 10**6 + 2001) if is_prime(n)]
