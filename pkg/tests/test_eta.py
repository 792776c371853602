"""Dedekind eta expansions and the named quotients."""

from fractions import Fraction as F

import pytest

from rctheta.eta import (EtaQuotient, eta_quotient_series, eta_series,
                         parse_eta_quotient)
from rctheta.qseries import PuiseuxSeries


def pentagonal_sum(m, T):
    """Independent oracle: q^(m/24) * sum_k (-1)^k q^(m*k*(3k-1)/2)."""
    terms = {}
    for k in range(-40, 41):
        e = F(m, 24) + m * F(k * (3 * k - 1), 2)
        if e < T:
            terms[e] = terms.get(e, 0) + (-1) ** k
    return PuiseuxSeries.from_terms({e: c for e, c in terms.items() if c}, T)


def test_eta_matches_pentagonal_oracle():
    for m in (1, 2, 3, 6):
        T = F(10)
        assert eta_series(m, T).equal_to_order(pentagonal_sum(m, T), T).equal


def test_eta_first_terms():
    T = F(8 * 24 + 1, 24)
    s = eta_series(1, T)
    want = {F(1, 24): 1, F(1, 24) + 1: -1, F(1, 24) + 2: -1,
            F(1, 24) + 5: 1, F(1, 24) + 7: 1}
    assert dict(s.items()) == {e: c for e, c in ((e, s.coeff(e)) for e in want)}
    assert all(s.coeff(e) == c for e, c in want.items())


def test_eta_scaling_law():
    lhs = eta_series(2, 12)
    rhs = eta_series(1, 6).scale_exponents(2)
    assert lhs.equal_to_order(rhs, 12).equal


def test_leading_term():
    for m in (1, 2, 5):
        s = eta_series(m, 3)
        assert s.valuation() == F(m, 24)
        assert s.coeff(F(m, 24)) == 1


def test_quotient_inverse_cancels():
    q = eta_quotient_series(EtaQuotient(((1, 1),)), 4) \
        * eta_quotient_series(EtaQuotient(((1, -1),)), 4)
    assert q.coeff(0) == 1
    assert all(c.is_zero() for e, c in q.items() if e != 0)


def test_km_quotient_values():
    s = eta_quotient_series(EtaQuotient(((2, 5), (1, -2))), 12)
    assert s.valuation() == F(1, 3)
    expected = {F(1, 3): 1, F(4, 3): 2, F(3): 0, F(16, 3): -4, F(25, 3): -5}
    for e, c in expected.items():
        assert s.coeff(e) == c


def test_quotient_valuations():
    cases = [
        (((2, 5), (1, -2)), F(1, 3)),
        (((1, 5), (2, -2)), F(1, 24)),
        (((1, 1), (6, 6), (2, -2), (3, -3)), F(1)),
        (((1, 2), (4, 2), (2, -1)), F(1, 3)),
        (((2, 1), (3, 3), (12, 3), (1, -1), (4, -1), (6, -3)), F(1)),
        (((2, 6), (3, 1), (1, -3), (6, -2)), F(0)),
    ]
    for factors, val in cases:
        quot = EtaQuotient(factors)
        assert quot.valuation() == val
        s = eta_quotient_series(quot, val + 3)
        got = s.valuation()
        assert got == val, (factors, got)


def test_quotient_integer_coefficients():
    # all six named quotients expand with rational-integer coefficients
    six = [((2, 5), (1, -2)), ((1, 5), (2, -2)),
           ((1, 1), (6, 6), (2, -2), (3, -3)),
           ((1, 2), (4, 2), (2, -1)),
           ((2, 1), (3, 3), (12, 3), (1, -1), (4, -1), (6, -3)),
           ((2, 6), (3, 1), (1, -3), (6, -2))]
    for factors in six:
        s = eta_quotient_series(EtaQuotient(factors), 8)
        for _, c in s.items():
            assert c.is_rational() and c.coeffs[0].denominator == 1, factors


def test_parse_eta_quotient():
    quot = parse_eta_quotient("2^5 * 1^-2")
    assert quot.factors == ((2, 5), (1, -2))
    assert parse_eta_quotient("3").factors == ((3, 1),)
    with pytest.raises(ValueError):
        parse_eta_quotient("2^5 * 2^1")  # duplicate multiplier
    with pytest.raises(ValueError):
        EtaQuotient(((1, 0),))


def test_quotient_window_is_exact():
    s = eta_quotient_series(EtaQuotient(((1, 5), (2, -2))), 10)
    assert s.trunc == 10
    longer = eta_quotient_series(EtaQuotient(((1, 5), (2, -2))), 16)
    assert s.equal_to_order(longer, 10).equal
