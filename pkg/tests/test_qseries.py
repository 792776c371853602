"""Puiseux series ring: operation examples, oracles, truncation semantics."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from rctheta.cyclotomic import CycNum, zeta
from rctheta.qseries import (OrderTooHigh, PuiseuxSeries, ZeroSeries,
                             ps_equal_to_order, ps_inv, ps_mul, ps_pow,
                             ps_scale_exponents)

PS = PuiseuxSeries


def naive_mul(a, b):
    """Double-loop convolution oracle over rational exponents."""
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[ea + eb] = out.get(ea + eb, CycNum.from_rational(0)) + ca * cb
    va = a.valuation() if not a.is_zero_series() else a.trunc
    vb = b.valuation() if not b.is_zero_series() else b.trunc
    T = min(a.trunc + vb, b.trunc + va)
    return PS.from_terms({e: c for e, c in out.items() if e < T and not c.is_zero()}, T)


def random_series(rng, invertible=False, nterms=6):
    D = rng.choice([1, 2, 3, 4, 8])
    T = F(rng.randint(6, 12))
    terms = {}
    lo = rng.randint(-4, 2)
    for _ in range(rng.randint(1 if invertible else 0, nterms)):
        k = rng.randint(lo, int(T * D) - 1)
        L = rng.choice([1, 3, 4])
        terms[F(k, D)] = CycNum.from_vector(L, [rng.randint(-3, 3) for _ in range(L)])
    if invertible and not any(not c.is_zero() for c in terms.values()):
        terms[F(lo, D)] = CycNum.from_rational(1)
    return PS.from_terms({e: c for e, c in terms.items() if not c.is_zero()}, T)


def test_add_examples():
    a = PS.from_terms({0: 1, 1: 2}, 5)
    zero = PS.zero(5)
    assert (a + zero).equal_to_order(a, 5).equal
    diff = a - a
    assert diff.is_zero_series() and diff.trunc == 5
    two = PS.from_terms({0: 1, 1: 1}, 5) + PS.from_terms({0: 1, 1: -1}, 5)
    assert two.items() == [(F(0), CycNum.from_rational(2))]


def test_mul_examples():
    geom = PS.from_terms({n: 1 for n in range(12)}, 12)
    one_minus_q = PS.from_terms({0: 1, 1: -1})
    prod = one_minus_q * geom
    assert prod.items() == [(F(0), CycNum.from_rational(1))]
    eighth = PS.monomial(1, F(1, 8))
    assert (eighth * eighth).exponents() == [F(1, 4)]


def test_mul_matches_pair_counting():
    # squaring sum over n in Z of q^(n^2) counts representations as two squares
    terms = {0: 1}
    for n in range(1, 11):
        terms[n * n] = 2
    sq = PS.from_terms(terms, 101)
    sq2 = sq * sq
    from rctheta.arith import CountFamily, count
    for n in range(51):
        expect = count(CountFamily("S2"), n)
        got = sq2.coeff(n)
        assert got == expect, (n, got.to_text(), expect)


def test_mul_against_naive_oracle():
    rng = random.Random(4242)
    for _ in range(40):
        a, b = random_series(rng), random_series(rng)
        got = ps_mul(a, b)
        want = naive_mul(a, b)
        assert got.trunc == want.trunc
        T = min(got.trunc, want.trunc)
        assert got.equal_to_order(want, T).equal


def test_inverse_examples():
    assert ps_inv(PS.one()).items() == [(F(0), CycNum.from_rational(1))]
    geom = ps_inv(PS.from_terms({0: 1, 1: -1}, 9))
    assert geom.items() == [(F(n), CycNum.from_rational(1)) for n in range(9)]
    s = PS.from_terms({F(1, 8): 2, F(9, 8): 2}, 4)
    back = s * ps_inv(s)
    assert back.items() == [(F(0), CycNum.from_rational(1))]
    assert ps_inv(s).valuation() == F(-1, 8)
    assert ps_inv(s).coeff(F(-1, 8)) == F(1, 2)


def test_inverse_of_zero_series_raises():
    with pytest.raises(ZeroSeries):
        ps_inv(PS.zero(5))


def test_inverse_multiply_back_100_random():
    rng = random.Random(20240601)
    for _ in range(100):
        a = random_series(rng, invertible=True)
        prod = a * ps_inv(a)
        T = prod.trunc
        assert T is not None
        assert prod.equal_to_order(PS.one(T), T).equal


def test_pow_examples():
    a = PS.from_terms({0: 1, 1: 1}, 10)
    assert ps_pow(a, 0).items() == [(F(0), CycNum.from_rational(1))]
    sq = ps_pow(a, 2)
    assert [c for _, c in sq.items()] == [CycNum.from_rational(x) for x in (1, 2, 1)]
    # spot-check a 5th power against repeated multiplication
    rng = random.Random(7)
    b = random_series(rng, invertible=True)
    byhand = b * b * b * b * b
    T = min(ps_pow(b, 5).trunc, byhand.trunc)
    assert ps_pow(b, 5).equal_to_order(byhand, T).equal


def test_scale_examples():
    a = PS.from_terms({F(1, 2): 3, 2: 1}, 7)
    assert a.scale_exponents(1).equal_to_order(a, 7).equal
    assert PS.monomial(1, F(1, 2)).scale_exponents(4).exponents() == [F(2)]
    assert a.scale_exponents(F(1, 3)).trunc == F(7, 3)


def test_scale_is_multiplicative():
    rng = random.Random(99)
    for _ in range(20):
        a, b = random_series(rng), random_series(rng)
        m = F(rng.randint(1, 5), rng.randint(1, 3))
        lhs = (a * b).scale_exponents(m)
        rhs = a.scale_exponents(m) * b.scale_exponents(m)
        T = min(lhs.trunc, rhs.trunc)
        assert lhs.equal_to_order(rhs, T).equal


def test_equal_to_order_examples():
    a = PS.from_terms({0: 1, 1: 1}, 10)
    b = PS.from_terms({0: 1, 1: 1, 3: 1}, 10)
    assert a.equal_to_order(a, 10).equal
    assert ps_equal_to_order(a, b, 2).equal
    res = ps_equal_to_order(a, b, 4)
    assert not res.equal and res.exponent == 3 and res.diff == -1
    with pytest.raises(OrderTooHigh):
        ps_equal_to_order(a, b, 11)


def test_truncation_soundness_against_higher_order():
    # coefficients below the truncation agree with a higher-order rebuild
    from rctheta.theta import Characteristic, ThetaSpec, theta_constant
    spec = ThetaSpec(Characteristic(F(1, 5), F(3, 5)))
    low = theta_constant(spec, 8)
    high = theta_constant(spec, 16)
    assert low.equal_to_order(high, 8).equal
    prod_low = low * low
    prod_high = high * high
    assert prod_low.equal_to_order(prod_high, prod_low.trunc).equal


def test_serialization_round_trip():
    rng = random.Random(11)
    for _ in range(10):
        a = random_series(rng)
        assert PS.from_text(a.to_text()) == a
        assert PS.from_json_dict(a.to_json_dict()) == a


def test_coeff_beyond_truncation_raises():
    a = PS.from_terms({0: 1}, 3)
    assert a.coeff(2).is_zero()
    with pytest.raises(OrderTooHigh):
        a.coeff(3)


_small = st.integers(min_value=-3, max_value=3)


@st.composite
def hyp_series(draw):
    T = draw(st.integers(min_value=3, max_value=8))
    n = draw(st.integers(min_value=0, max_value=5))
    terms = {}
    for _ in range(n):
        k = draw(st.integers(min_value=-3, max_value=T * 2 - 1))
        c = draw(_small)
        if c and F(k, 2) < T:
            terms[F(k, 2)] = c
    return PS.from_terms(terms, T)


@given(hyp_series(), hyp_series(), hyp_series())
@settings(max_examples=40, deadline=None)
def test_ring_axioms_up_to_truncation(a, b, c):
    lhs = (a + b) * c
    rhs = a * c + b * c
    T = min(lhs.trunc, rhs.trunc)
    assert lhs.equal_to_order(rhs, T).equal
    lhs2 = (a * b) * c
    rhs2 = a * (b * c)
    T2 = min(lhs2.trunc, rhs2.trunc)
    assert lhs2.equal_to_order(rhs2, T2).equal
