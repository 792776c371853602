"""Theta constant/derivative constructors and both expansion routes."""

from fractions import Fraction as F

import pytest

from rctheta.cyclotomic import CycNum, I_UNIT, zeta, zeta_frac
from rctheta.qseries import PuiseuxSeries
from rctheta.theta import (Characteristic, ThetaSpec, mumford_convert,
                           reduce_characteristic, shift_reduce_characteristic,
                           theta_constant, theta_derivative_reduced,
                           theta_triple_product, theta_zero_location)


def ch(e, ep):
    return Characteristic(F(e), F(ep))


def spec(e, ep, m=1, derived=False):
    return ThetaSpec(ch(e, ep), F(m), derived)


def direct_sum(eps, epsp, m, T):
    """Independent re-derivation: raw summation with its own loop bounds."""
    terms = {}
    for n in range(-60, 61):
        e = F(m) * (2 * n + F(eps)) ** 2 / 8
        if e < T:
            c = zeta_frac(F(epsp) * (2 * n + F(eps)) / 4)
            terms[e] = terms.get(e, CycNum.from_rational(0)) + c
    return PuiseuxSeries.from_terms({e: c for e, c in terms.items() if not c.is_zero()}, T)


def test_theta00_expansion():
    s = theta_constant(spec(0, 0), 5)
    assert [(e, c) for e, c in s.items()] == [
        (F(0), CycNum.from_rational(1)),
        (F(1, 2), CycNum.from_rational(2)),
        (F(2), CycNum.from_rational(2)),
        (F(9, 2), CycNum.from_rational(2)),
    ]
    assert s.equal_to_order(direct_sum(0, 0, 1, 5), 5).equal


def test_theta11_vanishes():
    assert theta_constant(spec(1, 1), 40).is_zero_series()


def test_theta10_truncation():
    s = theta_constant(spec(1, 0), 3)
    assert s.exponents() == [F(1, 8), F(9, 8)]
    assert all(c == 2 for _, c in s.items())


def test_reduced_derivative_11():
    s = theta_derivative_reduced(spec(1, 1, derived=True), 2)
    i = I_UNIT
    assert s.items() == [(F(1, 8), 2 * i), (F(9, 8), -6 * i)]


def test_even_derivatives_vanish():
    for e, ep in ((0, 0), (0, 1), (1, 0)):
        assert theta_derivative_reduced(spec(e, ep, derived=True), 30).is_zero_series()


def test_jacobi_product_form():
    T = 6
    lhs = theta_derivative_reduced(spec(1, 1, derived=True), T)
    rhs = I_UNIT * (theta_constant(spec(0, 0), T)
                    * theta_constant(spec(1, 0), T)
                    * theta_constant(spec(0, 1), T))
    assert lhs.equal_to_order(rhs, T).equal


def test_triple_product_equals_sum():
    for e, ep in ((0, 0), (F(1, 5), F(3, 5)), (1, F(1, 2)), (F(1, 3), 1), (F(1, 2), F(3, 2))):
        s = spec(e, ep)
        assert theta_constant(s, 10).equal_to_order(theta_triple_product(s, 10), 10).equal


def test_triple_product_at_tau_multiples():
    for m in (2, 4):
        s = spec(F(1, 2), 1, m=m)
        assert theta_constant(s, 12).equal_to_order(theta_triple_product(s, 12), 12).equal


def test_scaling_matches_direct_construction():
    scaled = theta_constant(spec(0, 0), 5).scale_exponents(2)
    direct = theta_constant(spec(0, 0, m=2), 10)
    assert scaled.equal_to_order(direct, 10).equal


def test_valuation_formula():
    for e, ep, m in ((F(1, 5), F(3, 5), 1), (1, F(1, 2), 2), (F(2, 3), F(4, 3), 1),
                     (0, F(1, 4), 4)):
        s = theta_constant(spec(e, ep, m=m), 12)
        e_hat = min(abs(2 * n + F(e)) for n in range(-3, 4))
        assert s.valuation() == F(m) * e_hat ** 2 / 8


def test_reduce_characteristic_examples():
    c, s = reduce_characteristic(F(1, 5), F(9, 5) + 2)
    assert (c.eps, c.eps_prime) == (F(1, 5), F(9, 5)) and s == zeta(10, 1)
    c, s = reduce_characteristic(F(0), F(0))
    assert (c.eps, c.eps_prime) == (0, 0) and s == 1
    c, s = reduce_characteristic(F(-1, 5), F(-3, 5))
    assert (c.eps, c.eps_prime) == (F(1, 5), F(3, 5)) and s == 1
    # derivative picks up the sign of the argument flip
    c, s = reduce_characteristic(F(-1, 5), F(-3, 5), derived=True)
    assert (c.eps, c.eps_prime) == (F(1, 5), F(3, 5)) and s == -1


def test_reduce_characteristic_is_consistent_with_series():
    # theta[input] = scalar * theta[canonical], checked on expansions
    for raw in ((F(9, 5), F(7, 5) + 2), (F(-1, 3), F(5, 3)), (F(5, 2), F(-7, 2))):
        c, s = reduce_characteristic(*raw)
        # build the raw series by direct summation and compare
        raw_series = direct_sum(raw[0], raw[1], 1, 6)
        canon = theta_constant(ThetaSpec(c), 6)
        assert raw_series.equal_to_order(canon * s, 6).equal


def test_shift_reduce_matches_series_too():
    c, s = shift_reduce_characteristic(F(6, 5), F(18, 5))
    raw_series = direct_sum(F(6, 5), F(18, 5), 1, 6)
    canon = theta_constant(ThetaSpec(c), 6)
    assert raw_series.equal_to_order(canon * s, 6).equal


def test_zero_location():
    assert theta_zero_location(ch(1, 1)) == (0, 0)
    assert theta_zero_location(ch(0, 0)) == (F(1, 2), F(1, 2))
    assert theta_zero_location(ch(F(1, 5), F(3, 5))) == (F(2, 5), F(1, 5))


def test_mumford_convert():
    c, s = mumford_convert(F(1, 2), F(1, 2))
    assert (c.eps, c.eps_prime) == (1, 1) and s == 1
    c, s = mumford_convert(0, 0)
    assert (c.eps, c.eps_prime) == (0, 0) and s == 1


def test_mumford_convert_numeric():
    from rctheta.numerics import EvalParams, mumford_eval, theta_eval
    params = EvalParams(0.1 + 0.9j, precision=25)
    a, b = F(1, 3), F(1, 5)
    c, s = mumford_convert(a, b)
    lhs = mumford_eval(a, b, 0.07 + 0.02j, params)
    rhs = s.embed(25) * theta_eval(c, 0.07 + 0.02j, params)
    assert abs(lhs - rhs) < 1e-10


def test_coefficient_order_round_trip():
    # promote round-trips preserve the numeric embedding of coefficients
    s = theta_constant(spec(F(1, 5), F(7, 5)), 6)
    L = s.coeff_order
    for _, c in s.items():
        assert c.order == L or L % c.order == 0
        assert abs(c.embed(20) - c.promote(2 * L).embed(20)) < 1e-12


def test_characteristic_range_enforced():
    with pytest.raises(ValueError):
        Characteristic(F(5, 2), F(0))
    with pytest.raises(ValueError):
        ThetaSpec(ch(0, 0), F(0))


def test_constructor_argument_validation():
    with pytest.raises(ValueError):
        theta_constant(spec(1, 1, derived=True), 5)
    with pytest.raises(ValueError):
        theta_derivative_reduced(spec(1, 1), 5)
    with pytest.raises(ValueError):
        theta_constant(spec(0, 0), 0)
