import math

import numpy as np
import pytest

from kummerq import kummer as km
from kummerq.arith import build_context, primes_up_to
from kummerq.errors import InternalInconsistencyError, PreconditionError
from kummerq.kummer import (
    KummerResult,
    argument_defect,
    explicit_odd_sums,
    kummer_ratio,
    log10_G,
    log_r_bernoulli,
    log_r_digamma,
    log_r_oracle,
)

R3 = math.pi / 3**1.5

# prod over odd chi of L(1, chi) from mpmath Hurwitz zeta at s = 1 + 1e-40 (dps 140)
HURWITZ_ORACLE = {
    3: 0.6045997880780726168647,
    5: 0.7895683520871486895068,
    7: 0.9566751857508418754795,
    11: 1.10916191287000575897,
    13: 1.077149056209857567486,
}

ODD_PRIMES_1000 = [int(p) for p in primes_up_to(1000)[1:]]


@pytest.mark.parametrize("q,r", HURWITZ_ORACLE.items())
@pytest.mark.parametrize("engine", [log_r_oracle, log_r_digamma, log_r_bernoulli])
def test_small_q_against_hurwitz_oracle(engine, q, r):
    assert engine(q).r == pytest.approx(r, rel=1e-13)


def test_q3_closed_forms():
    assert log_r_digamma(3).log_r == pytest.approx(-math.log(3) + math.log(math.pi / math.sqrt(3)), abs=1e-15)
    assert log_r_bernoulli(3).log_r == pytest.approx(math.log(math.pi) - 1.5 * math.log(3), abs=1e-15)
    for method in km.METHODS:
        assert kummer_ratio(3, method).r == pytest.approx(R3, rel=1e-14)


def test_small_q_examples():
    assert log_r_oracle(5).r == pytest.approx(0.789568352087148689, rel=1e-13)
    assert log_r_oracle(11).r == pytest.approx(1.109161912870005758, rel=1e-13)
    assert kummer_ratio(997, "oracle").r == pytest.approx(0.855757544913, abs=1e-12)


def test_mid_range_examples():
    assert kummer_ratio(1451, "digamma").r == pytest.approx(1.489316072, abs=1e-9)
    assert log_r_digamma(5231).r == pytest.approx(1.556562248, abs=1e-9)


def test_sweep_maximum():
    assert log_r_bernoulli(305741).r == pytest.approx(1.661436, abs=1e-6)


def test_engines_agree_up_to_1000():
    worst = 0.0
    for q in ODD_PRIMES_1000:
        a = log_r_oracle(q).log_r
        b = log_r_digamma(q).log_r
        c = log_r_bernoulli(q).log_r
        worst = max(worst, abs(a - b), abs(a - c), abs(b - c))
    assert worst <= 1e-9


def test_argument_certificate_and_range():
    for q in ODD_PRIMES_1000:
        for method in ("digamma", "bernoulli"):
            res = kummer_ratio(q, method)
            assert abs(res.arg_defect) <= 1e-6
            assert 0.6 < res.r < 1.6
            assert res.r == math.exp(res.log_r)


def test_positivity_range_below_10k():
    for q in primes_up_to(10_000)[1:]:
        assert 0.6 < log_r_bernoulli(int(q)).r < 1.6


def test_product_of_bernoulli_sums_has_sign_minus_one_to_m():
    for q in ODD_PRIMES_1000:
        if q > 500:
            break
        ctx = build_context(q)
        sums = explicit_odd_sums(ctx, np.arange(1, q, dtype=float))
        phase = 1.0 + 0j
        for s in sums:
            phase *= s / abs(s)
        assert abs(phase.imag) < 1e-9
        assert phase.real == pytest.approx((-1) ** ctx.m, abs=1e-9)


def test_argument_defect_reduction():
    m = 3
    sums = np.array([1j, -1j, -1.0])  # args pi/2, -pi/2, pi
    assert argument_defect(sums, m) == pytest.approx(0.0, abs=1e-15)
    assert abs(argument_defect(np.array([1j, 1j]), 2)) == pytest.approx(math.pi)


def test_deterministic():
    first = log_r_bernoulli(9689)
    for _ in range(3):
        again = log_r_bernoulli(9689)
        assert again.log_r == first.log_r


@pytest.mark.parametrize("q,lo", [(439, 117), (3331, 1607), (9689, 5792)])
def test_log10_G(q, lo):
    assert lo <= log10_G(q) < lo + 1


def test_log10_G_small():
    assert log10_G(3) == pytest.approx(math.log10(6 * (3 / (4 * math.pi**2)) ** 0.5), abs=1e-14)
    with pytest.raises(PreconditionError):
        log10_G(9)


def test_oracle_cap():
    with pytest.raises(PreconditionError, match="cap"):
        log_r_oracle(10007)
    assert log_r_oracle(101, oracle_cap=101).method == "oracle"
    with pytest.raises(PreconditionError):
        kummer_ratio(10007, "oracle")


@pytest.mark.parametrize("q", [1, 2, 4, 9, 91])
@pytest.mark.parametrize("method", km.METHODS)
def test_rejects_non_odd_prime(q, method):
    with pytest.raises(PreconditionError, match="odd prime"):
        kummer_ratio(q, method)


def test_unknown_method():
    with pytest.raises(PreconditionError, match="unknown method"):
        kummer_ratio(7, "lfun")


def test_memory_budget_propagates():
    with pytest.raises(PreconditionError, match="budget"):
        kummer_ratio(5231, "bernoulli", max_entries=1000)


def test_certificate_failure_is_internal_error(monkeypatch):
    bad = KummerResult(q=7, log_r=0.0, r=1.0, method="bernoulli", arg_defect=0.5, elapsed_ns=0)
    monkeypatch.setattr(km, "log_r_bernoulli", lambda q, max_entries: bad)
    with pytest.raises(InternalInconsistencyError, match="certificate"):
        kummer_ratio(7, "bernoulli")
