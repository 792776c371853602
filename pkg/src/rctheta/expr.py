"""Expression trees over series constructors, and their evaluator.

A SeriesExpr is a small immutable tree whose leaves name exact series
(theta constants/derivatives, eta quotients, counting series, residue-class
q-products, a few lacunary sums, cyclotomic constants) and whose inner
nodes are ring operations.  evaluate(expr, T) produces a PuiseuxSeries
exact below T, widening leaf windows automatically when truncation
propagation through inverses or negative valuations eats into the target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import CountFamily, count
from .cyclotomic import CycNum
from .eta import EtaQuotient, eta_quotient_series
from .qseries import PuiseuxSeries
from .theta import ThetaSpec, theta_constant, theta_derivative_reduced


class SeriesExpr:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Sub(self, _coerce(other))

    def __rsub__(self, other):
        return Sub(_coerce(other), self)

    def __mul__(self, other):
        return Mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return Pow(self, int(k))

    def __neg__(self):
        return Mul(Const.of(CycNum.from_rational(-1)), self)

    def inv(self):
        return Inv(self)


def _coerce(x) -> SeriesExpr:
    if isinstance(x, SeriesExpr):
        return x
    if isinstance(x, CycNum):
        return Const.of(x)
    if isinstance(x, (int, Fraction)):
        return Const.of(CycNum.from_rational(x))
    raise TypeError(f"cannot use {type(x).__name__} in a series expression")


@dataclass(frozen=True)
class Theta(SeriesExpr):
    """theta constant (derived=False) or reduced derivative (derived=True)."""
    spec: ThetaSpec


@dataclass(frozen=True)
class Eta(SeriesExpr):
    quotient: EtaQuotient


@dataclass(frozen=True)
class Counting(SeriesExpr):
    """sum of count(n) * q^((alpha*n+beta)/D) over n >= n_min."""
    family: CountFamily
    grid: int
    alpha: int
    beta: int
    n_min: int = 0


@dataclass(frozen=True)
class QProd(SeriesExpr):
    """q^prefactor * product over residue classes of (1-q^n)^power,
    n >= 1, n = residue (mod modulus)."""
    prefactor: Fraction
    factors: tuple  # of (residue, modulus, power)


@dataclass(frozen=True)
class Lacunary(SeriesExpr):
    """Named sparse sums used by the corollaries:
      alt_n_chi3 : sum_{n>=1} (-1)^(n-1) n chi3(n) q^(n^2/3)
      n_chi3     : sum_{n>=1} n chi3(n) q^(n^2/3)
      odd_n_chi3 : sum_{n>=1, n odd} n chi3(n) q^(n^2/24)
    with chi3 the nontrivial character mod 3."""
    name: str


@dataclass(frozen=True)
class Const(SeriesExpr):
    order: int
    coeffs: tuple

    @staticmethod
    def of(value: CycNum) -> "Const":
        return Const(value.order, value.coeffs)

    @property
    def cyc(self) -> CycNum:
        return CycNum(self.order, self.coeffs)


@dataclass(frozen=True)
class Add(SeriesExpr):
    left: SeriesExpr
    right: SeriesExpr


@dataclass(frozen=True)
class Sub(SeriesExpr):
    left: SeriesExpr
    right: SeriesExpr


@dataclass(frozen=True)
class Mul(SeriesExpr):
    left: SeriesExpr
    right: SeriesExpr


@dataclass(frozen=True)
class Pow(SeriesExpr):
    base: SeriesExpr
    exponent: int


@dataclass(frozen=True)
class Inv(SeriesExpr):
    child: SeriesExpr


_CHI3 = (0, 1, -1)


@lru_cache(maxsize=None)
def _lacunary_series(name: str, T: Fraction) -> PuiseuxSeries:
    terms = {}
    if name in ("alt_n_chi3", "n_chi3"):
        n = 1
        while Fraction(n * n, 3) < T:
            c = _CHI3[n % 3] * n
            if name == "alt_n_chi3" and n % 2 == 0:
                c = -c
            if c:
                terms[Fraction(n * n, 3)] = c
            n += 1
    elif name == "odd_n_chi3":
        n = 1
        while Fraction(n * n, 24) < T:
            c = _CHI3[n % 3] * n
            if c:
                terms[Fraction(n * n, 24)] = c
            n += 2
    else:
        raise ValueError(f"unknown lacunary sum {name!r}")
    return PuiseuxSeries.from_terms(terms, T)


@lru_cache(maxsize=None)
def _qprod_series(leaf: QProd, T: Fraction) -> PuiseuxSeries:
    window = T - leaf.prefactor
    prod = PuiseuxSeries.one()
    for residue, modulus, power in leaf.factors:
        n = residue % modulus
        if n == 0:
            n = modulus
        while Fraction(n) < window:
            if power > 0:
                base = PuiseuxSeries.from_terms({0: 1, Fraction(n): -1})
                factor = base ** power
            else:
                # (1-q^n)^power = sum_j C(j+|p|-1, |p|-1) q^(n*j)
                p = -power
                terms = {}
                j = 0
                while Fraction(n * j) < window:
                    terms[Fraction(n * j)] = math.comb(j + p - 1, p - 1)
                    j += 1
                factor = PuiseuxSeries.from_terms(terms, window)
            prod = prod * factor
            if prod.trunc is None or prod.trunc > window:
                prod = prod.with_trunc(window)
            n += modulus
    if prod.trunc is None or prod.trunc > window:
        prod = prod.with_trunc(window)
    if leaf.prefactor:
        prod = prod * PuiseuxSeries.monomial(1, leaf.prefactor)
    return prod


@lru_cache(maxsize=None)
def _counting_series(leaf: Counting, T: Fraction) -> PuiseuxSeries:
    terms = {}
    n = leaf.n_min
    while Fraction(leaf.alpha * n + leaf.beta, leaf.grid) < T:
        c = count(leaf.family, n)
        if c:
            terms[Fraction(leaf.alpha * n + leaf.beta, leaf.grid)] = c
        n += 1
    return PuiseuxSeries.from_terms(terms, T)


def _eval(expr: SeriesExpr, T: Fraction, memo: dict) -> PuiseuxSeries:
    key = (expr, T)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(expr, Theta):
        build = theta_derivative_reduced if expr.spec.derived else theta_constant
        out = build(expr.spec, T)
    elif isinstance(expr, Eta):
        out = eta_quotient_series(expr.quotient, T)
    elif isinstance(expr, Counting):
        out = _counting_series(expr, T)
    elif isinstance(expr, QProd):
        out = _qprod_series(expr, T)
    elif isinstance(expr, Lacunary):
        out = _lacunary_series(expr.name, T)
    elif isinstance(expr, Const):
        out = PuiseuxSeries.from_terms({0: expr.cyc})
    elif isinstance(expr, Add):
        out = _eval(expr.left, T, memo) + _eval(expr.right, T, memo)
    elif isinstance(expr, Sub):
        out = _eval(expr.left, T, memo) - _eval(expr.right, T, memo)
    elif isinstance(expr, Mul):
        out = _eval(expr.left, T, memo) * _eval(expr.right, T, memo)
    elif isinstance(expr, Pow):
        if expr.exponent == 0:
            out = PuiseuxSeries.one()
        else:
            out = _eval(expr.base, T, memo) ** expr.exponent
    elif isinstance(expr, Inv):
        out = _eval(expr.child, T, memo).inverse()
    else:
        raise TypeError(f"not a series expression: {expr!r}")
    memo[key] = out
    return out


_GLOBAL_MEMO: dict = {}


def evaluate(expr: SeriesExpr, T, memo: dict | None = None) -> PuiseuxSeries:
    """Evaluate to a series exact below T (ZeroSeries may bubble up from
    inversion of a vanishing series)."""
    T = Fraction(T)
    if T <= 0:
        raise ValueError("evaluation order must be positive")
    if memo is None:
        memo = _GLOBAL_MEMO
    window = T
    for _ in range(8):
        out = _eval(expr, window, memo)
        if out.trunc is None or out.trunc >= T:
            return out if out.trunc is None or out.trunc == T else out.with_trunc(T)
        window = window + (T - out.trunc) + 1
    raise RuntimeError("evaluation window did not converge")  # pragma: no cover


def clear_cache():
    _GLOBAL_MEMO.clear()
