"""Quantized frequency tables: determinism, losslessness, redundancy bound."""

import math
from fractions import Fraction

import numpy as np
import pytest

from msetzip.distributions import betabin_log2pmf_table, binomial_log2pmf_table
from msetzip.errors import ModelMismatchError
from msetzip.quantize import (
    TOTAL_TARGET,
    QuantizedPmf,
    quantize,
    quantized_betabin,
    quantized_binomial,
)
from msetzip.rangecoder import TOTAL_MAX


def test_dyadic_binomial_is_exact():
    # After gcd reduction Binomial(7, 1/2) is literally C(7, k) / 128
    q = quantized_binomial(7, Fraction(1, 2))
    assert q.total == 128
    assert list(q.freqs) == [math.comb(7, k) for k in range(8)]
    # the worked example: k=3 costs -log2(35/128) = 1.8707 bits
    assert -q.log2prob(3) == pytest.approx(7 - math.log2(35), abs=1e-12)


def test_small_dyadic_binomials_all_exact():
    for n in range(0, 24):
        q = quantized_binomial(n, Fraction(1, 2))
        assert q.total == 2**n
        assert list(q.freqs) == [math.comb(n, k) for k in range(n + 1)]


def test_every_live_outcome_gets_mass():
    for n in (1, 10, 100, 2000):
        q = quantized_binomial(n, Fraction(1, 2))
        assert np.all(q.freqs >= 1)  # theta=1/2 has full support
        assert q.total <= TOTAL_MAX


def test_zero_probability_outcomes_get_none():
    q = quantize(binomial_log2pmf_table(6, 0))
    assert list(q.freqs) == [1, 0, 0, 0, 0, 0, 0]
    assert q.total == 1
    with pytest.raises(ModelMismatchError):
        q.interval_of(3)


def test_point_mass_is_free():
    q = quantize(binomial_log2pmf_table(9, 1))
    assert q.total == 1
    assert q.log2prob(9) == 0.0


def test_sum_abs_error_binomial_100():
    q = quantized_binomial(100, Fraction(1, 2))
    pmf = np.exp2(binomial_log2pmf_table(100, Fraction(1, 2)))
    err = np.abs(q.freqs / q.total - pmf).sum()
    assert err <= 1e-4, err


@pytest.mark.parametrize(
    "log2pmf",
    [
        binomial_log2pmf_table(100, Fraction(1, 2)),
        binomial_log2pmf_table(1000, Fraction(1, 2)),
        binomial_log2pmf_table(1000, Fraction(1, 10)),
        betabin_log2pmf_table(500, 0.5, 0.5),
        betabin_log2pmf_table(2000, 2, 5),
        np.full(1 << 10, -10.0),  # uniform over 1024 outcomes
    ],
    ids=["bin100", "bin1000", "bin1000skew", "bb500", "bb2000", "uniform1k"],
)
def test_redundancy_bound(log2pmf):
    # -log2(freq/total) + log2 p(k) <= 0.01 whenever p(k) >= 2**-16
    q = quantize(log2pmf)
    for k, lp in enumerate(log2pmf):
        if lp >= -16.0:
            penalty = -q.log2prob(k) + float(lp)
            assert penalty <= 0.01, (k, penalty)


def test_deterministic():
    t = betabin_log2pmf_table(333, 0.5, 0.5)
    a, b = quantize(t), quantize(t)
    assert a.total == b.total
    assert np.array_equal(a.freqs, b.freqs)


def test_symbol_of_interval_of_agree():
    q = quantized_betabin(40, Fraction(1, 2), Fraction(1, 2))
    for k in range(41):
        iv = q.interval_of(k)
        assert q.symbol_of(iv.cum) == k
        assert q.symbol_of(iv.cum + iv.freq - 1) == k


def test_symbol_of_skips_dead_outcomes():
    q = quantize(np.array([math.log2(0.5), -np.inf, math.log2(0.5)]))
    assert list(q.freqs[[0, 2]]) == [1, 1]
    assert q.freqs[1] == 0
    assert q.symbol_of(0) == 0
    assert q.symbol_of(1) == 2


def test_support_larger_than_budget_rejected():
    with pytest.raises(ValueError):
        quantize(np.full(TOTAL_TARGET + 1, -30.0))


def test_interval_out_of_support_rejected():
    q = quantized_binomial(4, Fraction(1, 2))
    with pytest.raises(ModelMismatchError):
        q.interval_of(5)


def test_total_never_exceeds_cap():
    # heavy tails force many tiny entries; the budget must still hold
    t = betabin_log2pmf_table(20000, 0.5, 0.5)
    q = quantize(t)
    assert q.total <= TOTAL_MAX
    assert np.all(q.freqs[np.isfinite(t)] >= 1)
