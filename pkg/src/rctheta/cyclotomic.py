"""Exact arithmetic in cyclotomic fields Q(zeta_L).

Elements are kept in canonical form: a coefficient vector of rationals of
length phi(L) for the basis 1, zeta, ..., zeta^(phi(L)-1), fully reduced
modulo the L-th cyclotomic polynomial.  Canonical form makes equality a
plain vector comparison, which the series layer relies on for its exact
zero tests.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

Rational = Fraction


class DivisionByZero(ZeroDivisionError):
    """Inverse of the zero element requested."""


class IncompatibleOrder(ValueError):
    """promote() target is not a multiple of the element's order."""


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    result = n
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _polydiv_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # Exact division of integer polynomials (ascending coefficients),
    # remainder must vanish.  den is monic for every cyclotomic factor.
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for i, t in enumerate(den):
                num[k + i] -= c * t
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the L-th cyclotomic polynomial.

    Computed by dividing x^L - 1 by Phi_d for every proper divisor d of L.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    >>> cyclotomic_polynomial(12)
    (1, 0, -1, 0, 1)
    """
    if L < 1:
        raise ValueError("order must be a positive integer")
    num = [-1] + [0] * (L - 1) + [1]
    for d in _divisors(L):
        if d != L:
            num = _polydiv_exact(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_rows(L: int) -> tuple[int, tuple[tuple[tuple[int, int], ...], ...]]:
    # rows[k - phi] is the sparse integer vector of x^k mod Phi_L for
    # phi <= k < L; enough for cyclic (mod x^L - 1) inputs.
    phi_poly = cyclotomic_polynomial(L)
    deg = len(phi_poly) - 1
    rows: list[tuple[tuple[int, int], ...]] = []
    cur = [-c for c in phi_poly[:deg]]  # x^deg = -(c_0 + ... + c_{deg-1} x^{deg-1})
    for _ in range(deg, L):
        rows.append(tuple((i, c) for i, c in enumerate(cur) if c))
        nxt = [0] + cur[:-1]
        top = cur[-1]
        if top:
            for i, c in enumerate(phi_poly[:deg]):
                nxt[i] -= top * c
        cur = nxt
    return deg, tuple(rows)


def _reduce_cyclic(L: int, vec: list) -> list:
    """Reduce a length-L coefficient vector (basis zeta^0..zeta^(L-1))
    modulo Phi_L; returns a length-phi(L) list."""
    deg, rows = _reduction_rows(L)
    low = list(vec[:deg])
    for k in range(deg, L):
        c = vec[k]
        if c:
            for i, t in rows[k - deg]:
                low[i] += c * t
    return low


class CycNum:
    """An element of Q(zeta_L), canonical modulo Phi_L.

    >>> zeta(4, 2) == CycNum.from_rational(-1)
    True
    >>> (zeta(8, 1) + zeta(8, 7)) ** 2 == CycNum.from_rational(2)
    True
    """

    __slots__ = ("order", "coeffs")
    __hash__ = None  # cross-order canonical hashing is not needed

    def __init__(self, order: int, coeffs) -> None:
        coeffs = tuple(Fraction(c) for c in coeffs)
        if order < 1:
            raise ValueError("order must be positive")
        if len(coeffs) != euler_phi(order):
            raise ValueError("coefficient vector has wrong length")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("CycNum is immutable")

    def __reduce__(self):
        return (CycNum, (self.order, self.coeffs))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_vector(order: int, vec) -> "CycNum":
        """Build from any coefficient sequence in basis zeta^0..zeta^(k-1),
        k <= order; reduces modulo Phi_L."""
        full = [Fraction(0)] * order
        for i, c in enumerate(vec):
            if c:
                full[i % order] += Fraction(c)
        return CycNum(order, _reduce_cyclic(order, full))

    @staticmethod
    def from_rational(r) -> "CycNum":
        return CycNum(1, (Fraction(r),))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # -- order management --------------------------------------------------

    def promote(self, M: int) -> "CycNum":
        """Re-express in Q(zeta_M);  requires order | M."""
        if M % self.order:
            raise IncompatibleOrder(f"order {self.order} does not divide {M}")
        if M == self.order:
            return self
        step = M // self.order
        full = [Fraction(0)] * M
        for i, c in enumerate(self.coeffs):
            if c:
                full[i * step] += c
        return CycNum(M, _reduce_cyclic(M, full))

    @staticmethod
    def _common(a: "CycNum", b: "CycNum"):
        M = a.order * b.order // math.gcd(a.order, b.order)
        return a.promote(M), b.promote(M), M

    # -- ring operations ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b, _ = CycNum._common(self, other)
        return a.coeffs == b.coeffs

    def __add__(self, other) -> "CycNum":
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other)
        a, b, M = CycNum._common(self, other)
        return CycNum(M, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other) -> "CycNum":
        return self + (-other if isinstance(other, CycNum) else CycNum.from_rational(-Fraction(other)))

    def __rsub__(self, other) -> "CycNum":
        return CycNum.from_rational(other) - self

    def __mul__(self, other) -> "CycNum":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycNum(self.order, tuple(c * f for c in self.coeffs))
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b, M = CycNum._common(self, other)
        out = [Fraction(0)] * M
        bc = b.coeffs
        nz_b = [(j, c) for j, c in enumerate(bc) if c]
        for i, ci in enumerate(a.coeffs):
            if ci:
                for j, cj in nz_b:
                    k = i + j
                    if k >= M:
                        k -= M
                    out[k] += ci * cj
        return CycNum(M, _reduce_cyclic(M, out))

    __rmul__ = __mul__

    def inv(self) -> "CycNum":
        """Multiplicative inverse via the extended Euclidean algorithm
        against Phi_L."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        L = self.order
        phi_poly = [Fraction(c) for c in cyclotomic_polynomial(L)]

        def polmod(p):
            while p and not p[-1]:
                p.pop()
            return p

        r0, r1 = phi_poly[:], polmod(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or (r1 and r1[0]):
            # divide r0 by r1
            q = [Fraction(0)] * max(1, len(r0) - len(r1) + 1)
            rem = r0[:]
            for k in range(len(rem) - len(r1), -1, -1):
                if len(rem) >= len(r1) + k:
                    c = rem[k + len(r1) - 1] / r1[-1]
                    q[k] = c
                    if c:
                        for i, t in enumerate(r1):
                            rem[k + i] -= c * t
            rem = polmod(rem)
            # s_next = s0 - q*s1
            prod = [Fraction(0)] * (len(q) + len(s1) - 1)
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        prod[i + j] += qi * sj
            s_next = [Fraction(0)] * max(len(s0), len(prod))
            for i, c in enumerate(s0):
                s_next[i] += c
            for i, c in enumerate(prod):
                s_next[i] -= c
            r0, r1 = r1, rem if rem else [Fraction(0)]
            s0, s1 = s1, polmod(s_next) or [Fraction(0)]
        g = r0[0]  # gcd is a nonzero constant (Phi_L irreducible)
        inv_vec = [c / g for c in s0]
        return CycNum.from_vector(L, inv_vec)

    def __truediv__(self, other) -> "CycNum":
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, 1) / CycNum.from_rational(other)
        return self * other.inv()

    def __rtruediv__(self, other) -> "CycNum":
        return CycNum.from_rational(other) / self

    def __pow__(self, k: int) -> "CycNum":
        if k < 0:
            return self.inv() ** (-k)
        result = CycNum.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- numeric bridge ----------------------------------------------------

    def embed(self, precision: int = 30):
        """Evaluate at exp(2*pi*i/L) with `precision` decimal digits."""
        if precision < 1:
            raise ValueError("precision must be >= 1")
        with mpmath.workdps(precision + 10):
            root = mpmath.exp(2j * mpmath.pi / self.order)
            acc = mpmath.mpc(0)
            power = mpmath.mpc(1)
            for c in self.coeffs:
                if c:
                    acc += mpmath.mpf(c.numerator) / c.denominator * power
                power *= root
            return +acc

    # -- serialization -----------------------------------------------------

    def to_text(self) -> str:
        """`L=<order>; ` followed by `rat*z^k` terms in ascending powers.

        Output is canonical (powers below phi(L)); the parser accepts any
        power below L, e.g. `L=8; 1*z^1 + 1*z^7` reads back as the element
        printed `L=8; 1*z^1 - 1*z^3`.
        """
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = f"{abs(c)}*z^{k}"
            if not parts:
                parts.append(mag if c > 0 else f"-{mag}")
            else:
                parts.append(f"+ {mag}" if c > 0 else f"- {mag}")
        body = " ".join(parts) if parts else "0"
        return f"L={self.order}; {body}"

    @staticmethod
    def from_text(text: str) -> "CycNum":
        head, _, body = text.partition(";")
        if not head.strip().startswith("L="):
            raise ValueError("missing L= header")
        order = int(head.strip()[2:])
        body = body.strip()
        vec = [Fraction(0)] * order
        if body and body != "0":
            normalized = body.replace("- ", "-").replace("+ ", "+").replace(" ", "")
            for piece in normalized.replace("-", "+-").split("+"):
                if not piece:
                    continue
                rat, _, pw = piece.partition("*z^")
                vec[int(pw) % order] += Fraction(rat)
        return CycNum.from_vector(order, vec)

    def __repr__(self) -> str:
        return f"CycNum({self.to_text()!r})"

    # -- fast-kernel helpers (used by the series layer) ---------------------

    def sparse_int(self):
        """(denominator, [(power, integer numerator), ...]) over the common
        denominator of the coefficient vector."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        nz = [(k, int(c * den)) for k, c in enumerate(self.coeffs) if c]
        return den, nz


def zeta(L: int, j: int = 1) -> CycNum:
    """Canonical representative of zeta_L^j (j reduced mod L).

    >>> zeta(4, 2) == -1
    True
    >>> zeta(3, 0) + zeta(3, 1) + zeta(3, 2) == 0
    True
    """
    if L < 1:
        raise ValueError("order must be positive")
    j %= L
    vec = [0] * L
    vec[j] = 1
    return CycNum.from_vector(L, vec)


def zeta_frac(r) -> CycNum:
    """Root of unity exp(2*pi*i*r) for rational r."""
    r = Fraction(r) % 1
    return zeta(r.denominator, r.numerator)


ONE = CycNum.from_rational(1)
ZERO = CycNum.from_rational(0)
I_UNIT = zeta(4, 1)
SQRT2 = zeta(8, 1) + zeta(8, 7)
