"""q-expansions of theta constants with rational characteristics.

Two independent constructions are provided: the defining exponential sum
and the triple-product expansion.  Both return exact PuiseuxSeries with
root-of-unity coefficients; the reduced derivative divides the plain
derivative by pi*i so its coefficients are cyclotomic as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CycNum, zeta_frac
from .qseries import PuiseuxSeries

Rational = Fraction


@dataclass(frozen=True)
class Characteristic:
    """Canonical pair (eps, eps_prime), both in [0, 2)."""

    eps: Fraction
    eps_prime: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "eps_prime", Fraction(self.eps_prime))
        if not (0 <= self.eps < 2 and 0 <= self.eps_prime < 2):
            raise ValueError("characteristic outside canonical range [0,2)^2; "
                             "use reduce_characteristic first")

    def __str__(self):
        return f"[{self.eps};{self.eps_prime}]"


@dataclass(frozen=True)
class ThetaSpec:
    """One theta object: characteristic, tau multiplier, constant/derivative."""

    char: Characteristic
    tau_mult: Fraction = Fraction(1)
    derived: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tau_mult", Fraction(self.tau_mult))
        if self.tau_mult <= 0:
            raise ValueError("tau multiplier must be positive")


def reduce_characteristic(eps, eps_prime, derived: bool = False):
    """Canonicalize (eps, eps_prime) into [0,2)^2.

    Returns (Characteristic, scalar) with
        theta[input](0, .) = scalar * theta[canonical](0, .)
    combining the period-2 shift law with evenness in the argument (which
    contributes a sign for derivatives).  Of the two equivalent canonical
    images (direct and negated) the lexicographically smaller one is chosen.

    >>> reduce_characteristic(Fraction(-1, 5), Fraction(-3, 5))[0]
    Characteristic(eps=Fraction(1, 5), eps_prime=Fraction(3, 5))
    """
    a, b = Fraction(eps), Fraction(eps_prime)

    def route(x, y, sign):
        e, ep = x % 2, y % 2
        n_shift = (y - ep) / 2  # integer
        scalar = zeta_frac(e * n_shift / 2)  # exp(pi*i*e*n)
        if sign < 0:
            scalar = -scalar
        return (e, ep), scalar

    direct = route(a, b, +1)
    negated = route(-a, -b, -1 if derived else +1)
    (e, ep), scalar = min(direct, negated, key=lambda r: r[0])
    return Characteristic(e, ep), scalar


def shift_reduce_characteristic(eps, eps_prime):
    """Canonicalize using the period-2 shift law only.

    Unlike reduce_characteristic this is valid at every argument z, not
    just z = 0 (the evenness route flips the sign of z)."""
    a, b = Fraction(eps), Fraction(eps_prime)
    e, ep = a % 2, b % 2
    n_shift = (b - ep) / 2
    return Characteristic(e, ep), zeta_frac(e * n_shift / 2)


def theta_zero_location(char: Characteristic):
    """The unique zero of theta[char](z, tau) in the fundamental cell,
    as lattice coordinates (a, b) meaning z = a*tau + b."""
    return (1 - char.eps) / 2, (1 - char.eps_prime) / 2


def mumford_convert(a, b):
    """Translate the (a, b) index convention theta_{a,b} into a canonical
    characteristic: theta_{a,b} = theta[2a; 2b].  Returns (Characteristic,
    scalar); the scalar is 1 whenever (2a, 2b) already lies in [0,2)^2."""
    return reduce_characteristic(2 * Fraction(a), 2 * Fraction(b))


def _exponent_range(eps: Fraction, m: Fraction, T: Fraction):
    """All n with m*(2n+eps)^2/8 < T, by exact quadratic comparison."""
    bound = 8 * T / m  # need (2n+eps)^2 < bound
    if bound <= 0:
        return range(0)
    center = -eps / 2
    n0 = math.floor(center)
    lo = n0
    while (2 * (lo - 1) + eps) ** 2 < bound:
        lo -= 1
    if (2 * lo + eps) ** 2 >= bound:
        lo += 1
    hi = n0
    while (2 * (hi + 1) + eps) ** 2 < bound:
        hi += 1
    if (2 * hi + eps) ** 2 >= bound:
        hi -= 1
    return range(lo, hi + 1)


@lru_cache(maxsize=None)
def _theta_sum(spec: ThetaSpec, T: Fraction) -> PuiseuxSeries:
    eps, epsp = spec.char.eps, spec.char.eps_prime
    m = spec.tau_mult
    D = 8 * eps.denominator ** 2 * m.denominator
    acc: dict[int, CycNum] = {}
    for n in _exponent_range(eps, m, T):
        w = 2 * n + eps
        e = m * w * w / 8
        c = zeta_frac(epsp * w / 4)
        if spec.derived:
            c = c * w
        k = int(e * D)
        cur = acc.get(k)
        s = c if cur is None else cur + c
        if s.is_zero():
            acc.pop(k, None)
        else:
            acc[k] = s
    return PuiseuxSeries(D, acc, T)


def theta_constant(spec: ThetaSpec, T) -> PuiseuxSeries:
    """Defining-sum expansion of theta[char](0, m*tau), exact below T."""
    if spec.derived:
        raise ValueError("spec.derived must be False for theta_constant")
    T = Fraction(T)
    if T <= 0:
        raise ValueError("truncation must be positive")
    return _theta_sum(spec, T)


def theta_derivative_reduced(spec: ThetaSpec, T) -> PuiseuxSeries:
    """Expansion of theta'[char](0, m*tau) / (pi*i), exact below T."""
    if not spec.derived:
        raise ValueError("spec.derived must be True for theta_derivative_reduced")
    T = Fraction(T)
    if T <= 0:
        raise ValueError("truncation must be positive")
    return _theta_sum(spec, T)


@lru_cache(maxsize=None)
def theta_triple_product(spec: ThetaSpec, T) -> PuiseuxSeries:
    """Triple-product construction of the same constant.

    The product over n of (1-x^{2n}) (1+e^{pi*i*eps'} x^{2n-1+eps})
    (1+e^{-pi*i*eps'} x^{2n-1-eps}) with prefactor
    exp(pi*i*eps*eps'/2) x^{eps^2/4}, specialized to z=1, rewritten on the
    q = x^2 grid.  Factors stop once they can no longer touch exponents
    below the requested order.
    """
    if spec.derived:
        raise ValueError("triple product is defined for constants only")
    T = Fraction(T)
    if T <= 0:
        raise ValueError("truncation must be positive")
    eps, epsp = spec.char.eps, spec.char.eps_prime
    m = spec.tau_mult
    T1 = T / m  # build at tau, scale afterwards
    # partial products are exact below (2N+1-eps)/2 - 1/2; +1 margin
    n_stop = math.ceil(T1 + (eps + 2) / 2) + 1
    keep = T1 + 1
    plus = zeta_frac(epsp / 2)
    minus = zeta_frac(-epsp / 2)

    def binomial(expo: Fraction, coeff) -> PuiseuxSeries:
        # 1 + coeff*q^expo, merging the terms if expo happens to be 0
        terms = {Fraction(0): CycNum.from_rational(1)}
        terms[expo] = terms.get(expo, CycNum.from_rational(0)) + coeff
        return PuiseuxSeries.from_terms(terms)

    prod = PuiseuxSeries.monomial(zeta_frac(eps * epsp / 4), eps * eps / 8)
    for n in range(1, n_stop + 1):
        f = binomial(Fraction(n), CycNum.from_rational(-1))
        f = f * binomial(Fraction(2 * n - 1 + eps, 2), plus)
        f = f * binomial(Fraction(2 * n - 1 - eps, 2), minus)
        prod = prod * f
        if prod.trunc is None or prod.trunc > keep:
            prod = prod.with_trunc(keep)
    return prod.scale_exponents(m).with_trunc(T)
