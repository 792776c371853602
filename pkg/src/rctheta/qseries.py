"""Truncated Puiseux series in q with cyclotomic coefficients.

A series lives on the exponent grid (1/D)*Z, may contain negative
exponents, and is *exact* strictly below its truncation T: every stored
coefficient below T is the true coefficient, and absent exponents below T
are exactly zero.  trunc=None marks an exact polynomial (known everywhere).

Multiplication propagates truncations through valuations so that no
inexact coefficient is ever stored; the whole verification harness rests
on that guarantee.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Optional

from .cyclotomic import CycNum, _reduce_cyclic

Rational = Fraction


class ZeroSeries(ZeroDivisionError):
    """Inversion of a series with no term below its truncation."""


class OrderTooHigh(ValueError):
    """Comparison order exceeds what the operands know exactly."""


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _tmin(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _tadd(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    if a is None or b is None:
        return None
    return a + b


def _coerce_coeff(c) -> CycNum:
    if isinstance(c, CycNum):
        return c
    return CycNum.from_rational(c)


class PuiseuxSeries:
    """Sparse mapping exponent-numerator -> CycNum over the grid (1/D)*Z."""

    __slots__ = ("denom", "coeff_order", "_terms", "trunc")

    def __init__(self, denom: int, terms: dict, trunc: Optional[Fraction],
                 coeff_order: Optional[int] = None, _checked: bool = False):
        if denom < 1:
            raise ValueError("grid denominator must be positive")
        if _checked:
            kept = terms
            L = coeff_order if coeff_order is not None else 1
        else:
            kept = {}
            L = 1
            for k, c in terms.items():
                c = _coerce_coeff(c)
                if c.is_zero():
                    continue
                if trunc is not None and Fraction(k, denom) >= trunc:
                    raise ValueError("stored exponent at or above truncation")
                kept[int(k)] = c
                L = _lcm(L, c.order)
            if coeff_order is not None:
                L = _lcm(L, coeff_order)
        object.__setattr__(self, "denom", denom)
        object.__setattr__(self, "coeff_order", L)
        object.__setattr__(self, "_terms", kept)
        object.__setattr__(self, "trunc", Fraction(trunc) if trunc is not None else None)

    def __setattr__(self, *a):
        raise AttributeError("PuiseuxSeries is immutable")

    def __reduce__(self):
        return (PuiseuxSeries, (self.denom, self._terms, self.trunc,
                                self.coeff_order, True))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_terms(terms: dict, trunc=None) -> "PuiseuxSeries":
        """Build from {rational exponent: coefficient}."""
        D = 1
        items = [(Fraction(e), c) for e, c in terms.items()]
        for e, _ in items:
            D = _lcm(D, e.denominator)
        t = Fraction(trunc) if trunc is not None else None
        return PuiseuxSeries(D, {int(e * D): c for e, c in items}, t)

    @staticmethod
    def zero(trunc=None) -> "PuiseuxSeries":
        return PuiseuxSeries(1, {}, Fraction(trunc) if trunc is not None else None)

    @staticmethod
    def one(trunc=None) -> "PuiseuxSeries":
        return PuiseuxSeries.from_terms({0: 1}, trunc)

    @staticmethod
    def monomial(coeff, exponent, trunc=None) -> "PuiseuxSeries":
        return PuiseuxSeries.from_terms({Fraction(exponent): coeff}, trunc)

    # -- inspection --------------------------------------------------------

    def items(self):
        """Sorted (rational exponent, coefficient) pairs."""
        return [(Fraction(k, self.denom), self._terms[k]) for k in sorted(self._terms)]

    def exponents(self):
        return [Fraction(k, self.denom) for k in sorted(self._terms)]

    def is_zero_series(self) -> bool:
        return not self._terms

    def valuation(self) -> Optional[Fraction]:
        """Smallest stored exponent, or None for an (apparent) zero series."""
        if not self._terms:
            return None
        return Fraction(min(self._terms), self.denom)

    def coeff(self, exponent) -> CycNum:
        e = Fraction(exponent)
        if self.trunc is not None and e >= self.trunc:
            raise OrderTooHigh(f"coefficient at q^{e} is beyond the truncation {self.trunc}")
        num = e * self.denom
        if num.denominator != 1:
            return CycNum.from_rational(0)
        return self._terms.get(int(num), CycNum.from_rational(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        if self.trunc != other.trunc:
            return False
        return dict(self.items()) == dict(other.items())

    __hash__ = None

    def __repr__(self) -> str:
        parts = [f"q^({e})*({c.to_text()})" for e, c in self.items()[:6]]
        if len(self._terms) > 6:
            parts.append("...")
        tail = " + O(q^(%s))" % self.trunc if self.trunc is not None else ""
        return "<PuiseuxSeries " + (" + ".join(parts) if parts else "0") + tail + ">"

    # -- grid/truncation helpers -------------------------------------------

    def with_trunc(self, T) -> "PuiseuxSeries":
        """Restrict knowledge to exponents below T (T <= current trunc)."""
        T = Fraction(T)
        if self.trunc is not None and T > self.trunc:
            raise OrderTooHigh("cannot extend a truncation")
        kept = {k: c for k, c in self._terms.items() if Fraction(k, self.denom) < T}
        return PuiseuxSeries(self.denom, kept, T, self.coeff_order, _checked=True)

    def _rescaled(self, D: int):
        f = D // self.denom
        if f == 1:
            return self._terms
        return {k * f: c for k, c in self._terms.items()}

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "PuiseuxSeries":
        if isinstance(other, (int, Fraction, CycNum)):
            other = PuiseuxSeries.from_terms({0: other})
        D = _lcm(self.denom, other.denom)
        T = _tmin(self.trunc, other.trunc)
        out = dict(self._rescaled(D))
        for k, c in other._rescaled(D).items():
            cur = out.get(k)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        if T is not None:
            out = {k: c for k, c in out.items() if Fraction(k, D) < T}
        return PuiseuxSeries(D, out, T, _lcm(self.coeff_order, other.coeff_order), _checked=True)

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxSeries":
        return PuiseuxSeries(self.denom, {k: -c for k, c in self._terms.items()},
                             self.trunc, self.coeff_order, _checked=True)

    def __sub__(self, other) -> "PuiseuxSeries":
        if isinstance(other, (int, Fraction, CycNum)):
            other = PuiseuxSeries.from_terms({0: other})
        return self + (-other)

    def __rsub__(self, other) -> "PuiseuxSeries":
        return (-self) + other

    def __mul__(self, other) -> "PuiseuxSeries":
        if isinstance(other, (int, Fraction, CycNum)):
            c = _coerce_coeff(other)
            if c.is_zero():
                return PuiseuxSeries(1, {}, self.trunc, 1, _checked=True)
            return PuiseuxSeries(self.denom, {k: v * c for k, v in self._terms.items()},
                                 self.trunc, _lcm(self.coeff_order, c.order))
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return _mul_series(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PuiseuxSeries":
        if k < 0:
            return self.inverse() ** (-k)
        # cap the truncation first so squaring does not do wasted work
        result = PuiseuxSeries.one(None)
        base = self
        while True:
            if k & 1:
                result = result * base
            k >>= 1
            if not k:
                return result
            base = base * base

    def inverse(self) -> "PuiseuxSeries":
        """Multiplicative inverse; requires a nonzero term below trunc.

        For a = q^v*(c0 + ...) exact below T, the result is exact below
        T - 2v (triangular solve against the convolution).  Exact
        polynomials invert to a window of twice their exponent span.
        """
        if not self._terms:
            raise ZeroSeries("cannot invert a series with no known nonzero term")
        D = self.denom
        ks = sorted(self._terms)
        v = ks[0]
        c0_inv = self._terms[v].inv()
        if len(ks) == 1:
            T = None if self.trunc is None else self.trunc - Fraction(2 * v, D)
            return PuiseuxSeries(D, {-v: c0_inv}, T)
        if self.trunc is None:
            T_rel = 2 * Fraction(ks[-1] - v, D) + 2
            trunc = T_rel - Fraction(v, D)
        else:
            T_rel = self.trunc - Fraction(v, D)  # window of u = a*q^(-v/D)
            trunc = self.trunc - Fraction(2 * v, D)
        shifted = {k - v: c for k, c in self._terms.items()}
        offsets = sorted(shifted)[1:]
        out = {0: c0_inv}
        bound = T_rel * D
        maxnum = math.ceil(bound) if bound.denominator > 1 else int(bound)
        for e in range(1, maxnum):
            acc = None
            for f in offsets:
                if f > e:
                    break
                d = out.get(e - f)
                if d is None:
                    continue
                term = shifted[f] * d
                acc = term if acc is None else acc + term
            if acc is not None:
                val = -(c0_inv * acc)
                if not val.is_zero():
                    out[e] = val
        terms = {e - v: c for e, c in out.items() if Fraction(e - v, D) < trunc}
        return PuiseuxSeries(D, terms, trunc)

    def scale_exponents(self, m) -> "PuiseuxSeries":
        """Substitute q -> q^m (tau -> m*tau) for rational m > 0."""
        m = Fraction(m)
        if m <= 0:
            raise ValueError("exponent scale must be positive")
        D = self.denom * m.denominator
        out = {k * m.numerator: c for k, c in self._terms.items()}
        T = None if self.trunc is None else self.trunc * m
        return PuiseuxSeries(D, out, T, self.coeff_order, _checked=True)

    # -- comparison ---------------------------------------------------------

    def equal_to_order(self, other: "PuiseuxSeries", T) -> "EqualityResult":
        T = Fraction(T)
        for s in (self, other):
            if s.trunc is not None and T > s.trunc:
                raise OrderTooHigh(f"requested order {T} exceeds truncation {s.trunc}")
        diff = self - other
        for k in sorted(diff._terms):
            e = Fraction(k, diff.denom)
            if e < T:
                return EqualityResult(False, e, diff._terms[k])
            break
        return EqualityResult(True, None, None)

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        if self.trunc is None:
            raise ValueError("text form requires a finite truncation")
        lines = [f"D={self.denom}; L={self.coeff_order}; T={self.trunc}"]
        for k in sorted(self._terms):
            lines.append(f"q^({k}/{self.denom}): {self._terms[k].to_text()}")
        return "\n".join(lines)

    @staticmethod
    def from_text(text: str) -> "PuiseuxSeries":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        head = dict(part.strip().split("=") for part in lines[0].split(";"))
        D, L, T = int(head["D"]), int(head["L"]), Fraction(head["T"])
        terms = {}
        for ln in lines[1:]:
            expo, _, cyc = ln.partition(":")
            num = Fraction(expo.strip()[3:-1])  # strip "q^(" and ")"
            terms[int(num * D)] = CycNum.from_text(cyc.strip())
        return PuiseuxSeries(D, terms, T, L)

    def to_json_dict(self) -> dict:
        if self.trunc is None:
            raise ValueError("JSON form requires a finite truncation")
        return {
            "D": self.denom,
            "L": self.coeff_order,
            "T": str(self.trunc),
            "terms": [[f"{k}/{self.denom}", self._terms[k].to_text()]
                      for k in sorted(self._terms)],
        }

    @staticmethod
    def from_json_dict(obj) -> "PuiseuxSeries":
        D = int(obj["D"])
        terms = {int(Fraction(e) * D): CycNum.from_text(c) for e, c in obj["terms"]}
        return PuiseuxSeries(D, terms, Fraction(obj["T"]), int(obj["L"]))


class EqualityResult(NamedTuple):
    equal: bool
    exponent: Optional[Fraction]
    diff: Optional[CycNum]


def _mul_series(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    """Convolution with truncation propagation T = min(Ta+vb, Tb+va).

    Hot path: coefficients are unpacked once into sparse integer vectors
    over Q(zeta_L) and accumulated cyclically mod x^L - 1; each retained
    output coefficient is reduced mod Phi_L at the end.
    """
    D = _lcm(a.denom, b.denom)
    L = _lcm(a.coeff_order, b.coeff_order)
    if (not a._terms and a.trunc is None) or (not b._terms and b.trunc is None):
        return PuiseuxSeries(1, {}, None, 1, _checked=True)  # exact zero factor
    va = a.valuation() if a._terms else a.trunc
    vb = b.valuation() if b._terms else b.trunc
    T = _tmin(_tadd(a.trunc, vb), _tadd(b.trunc, va))
    if not a._terms or not b._terms:
        return PuiseuxSeries(1, {}, T, 1, _checked=True)

    def prep(s: PuiseuxSeries):
        f = D // s.denom
        den = 1
        items = []
        for k in sorted(s._terms):
            c = s._terms[k].promote(L)
            d, nz = c.sparse_int()
            items.append((k * f, d, nz))
            den = _lcm(den, d)
        # rescale numerators to the series-wide denominator
        out = []
        for k, d, nz in items:
            scale = den // d
            out.append((k, [(i, n * scale) for i, n in nz]))
        return den, out

    den_a, items_a = prep(a)
    den_b, items_b = prep(b)

    if T is not None:
        bound = T * D
        bound_num = math.ceil(bound) if bound.denominator > 1 else int(bound)
    else:
        bound_num = None

    acc: dict[int, list[int]] = {}
    kb0 = items_b[0][0]
    for ka, sa in items_a:
        if bound_num is not None and ka + kb0 >= bound_num:
            break
        for kb, sb in items_b:
            k = ka + kb
            if bound_num is not None and k >= bound_num:
                break
            vec = acc.get(k)
            if vec is None:
                vec = acc[k] = [0] * L
            for i, ci in sa:
                for j, cj in sb:
                    idx = i + j
                    if idx >= L:
                        idx -= L
                    vec[idx] += ci * cj
    den = den_a * den_b
    out = {}
    for k, vec in acc.items():
        low = _reduce_cyclic(L, vec)
        if any(low):
            out[k] = CycNum(L, tuple(Fraction(n, den) for n in low))
    return PuiseuxSeries(D, out, T, L, _checked=True)


# -- functional aliases (module-level operation names) -----------------------

def ps_add(a, b):
    return a + b


def ps_sub(a, b):
    return a - b


def ps_mul(a, b):
    return a * b


def ps_neg(a):
    return -a


def ps_inv(a):
    return a.inverse()


def ps_pow(a, k):
    return a ** k


def ps_scale_exponents(a, m):
    return a.scale_exponents(m)


def ps_equal_to_order(a, b, T):
    return a.equal_to_order(b, T)
