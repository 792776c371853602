"""Dedekind eta q-expansions and eta quotients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qseries import PuiseuxSeries

Rational = Fraction


@dataclass(frozen=True)
class EtaQuotient:
    """Product of eta(m*tau)^r factors, multipliers distinct, exponents nonzero."""

    factors: tuple  # of (multiplier, exponent)

    def __post_init__(self):
        facs = tuple((int(m), int(r)) for m, r in self.factors)
        if any(m < 1 for m, _ in facs):
            raise ValueError("multipliers must be positive")
        if any(r == 0 for _, r in facs):
            raise ValueError("exponents must be nonzero")
        if len({m for m, _ in facs}) != len(facs):
            raise ValueError("multipliers must be distinct")
        object.__setattr__(self, "factors", facs)

    def valuation(self) -> Fraction:
        return sum((Fraction(m * r, 24) for m, r in self.factors), Fraction(0))

    def __str__(self):
        return " * ".join(f"{m}^{r}" for m, r in self.factors)


def parse_eta_quotient(text: str) -> EtaQuotient:
    """Parse the CLI grammar `mult^exp [* mult^exp ...]`, e.g. "2^5 * 1^-2"."""
    factors = []
    for piece in text.split("*"):
        piece = piece.strip()
        if not piece:
            raise ValueError("empty factor in eta quotient")
        m, _, r = piece.partition("^")
        factors.append((int(m), int(r) if r else 1))
    return EtaQuotient(tuple(factors))


@lru_cache(maxsize=None)
def _eta_base(T: Fraction) -> PuiseuxSeries:
    # q^(1/24) * prod_{n>=1} (1 - q^n), factors skipped once n >= T - 1/24
    prod = PuiseuxSeries.monomial(1, Fraction(1, 24))
    keep = T
    n = 1
    while Fraction(n) + Fraction(1, 24) < T:
        prod = prod * PuiseuxSeries.from_terms({0: 1, Fraction(n): -1})
        if prod.trunc is None or prod.trunc > keep:
            prod = prod.with_trunc(keep)
        n += 1
    if prod.trunc is None or prod.trunc > T:
        prod = prod.with_trunc(T)
    return prod


def eta_series(m: int, T) -> PuiseuxSeries:
    """Expansion of eta(m*tau), exact below T; built once at m=1 and
    re-gridded by exponent scaling."""
    if m < 1:
        raise ValueError("multiplier must be a positive integer")
    T = Fraction(T)
    if T <= 0:
        raise ValueError("truncation must be positive")
    base_T = T / m
    # keep the cache small: round the base window up to the next 1/24 step
    base_T = Fraction(math.ceil(base_T * 24), 24)
    return _eta_base(base_T).scale_exponents(m).with_trunc(T)


def eta_quotient_series(spec: EtaQuotient, T) -> PuiseuxSeries:
    """Expansion of the quotient, exact below T.

    Truncation propagation through negative powers can shave the window, so
    factor windows are widened until the requested order is reached.
    """
    T = Fraction(T)
    if T <= 0:
        raise ValueError("truncation must be positive")
    slack = Fraction(0)
    for _ in range(8):
        prod = PuiseuxSeries.one()
        for m, r in spec.factors:
            base = eta_series(m, T + slack - spec.valuation() + Fraction(m * abs(r), 24) + 1)
            prod = prod * base ** r
        if prod.trunc is None or prod.trunc >= T:
            return prod.with_trunc(T) if prod.trunc != T else prod
        slack = (slack + 1) * 2
    raise RuntimeError("eta quotient truncation did not converge")  # pragma: no cover
