"""Brute-force counting functions and their generating series.

Everything here is deliberately dumb: divisor counts by trial division,
representation counts by full enumeration.  These are the oracles the
series identities are checked against, so clarity beats speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .qseries import PuiseuxSeries

Rational = Fraction

_KINDS = {"d", "d_star", "S2", "S_ab", "T2", "T_ab", "M_ab", "legendre3"}


class DomainError(ValueError):
    """Count requested outside the family's domain (e.g. divisors of 0)."""


class UnknownRelation(KeyError):
    pass


@dataclass(frozen=True)
class CountFamily:
    kind: str
    j: int = 0
    k: int = 0
    a: int = 1
    b: int = 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown counting family {self.kind!r}")
        if self.kind in ("d", "d_star") and not (1 <= self.j <= self.k):
            raise ValueError("divisor families need 1 <= j <= k")
        if self.kind in ("S_ab", "T_ab", "M_ab") and (self.a < 1 or self.b < 1):
            raise ValueError("form coefficients must be >= 1")


def _triangular_rep_count(n: int) -> int:
    # number of x in Z with x(x+1)/2 = n; always 0 or 2 (x and -1-x)
    s = 8 * n + 1
    r = math.isqrt(s)
    return 2 if r * r == s else 0


def count(family: CountFamily, n: int) -> int:
    """Exact value by enumeration; see the family table in the README."""
    if n < 0:
        raise DomainError("counts are defined for n >= 0")
    kind = family.kind
    if kind == "legendre3":
        return (0, 1, -1)[n % 3]
    if kind in ("d", "d_star"):
        if n == 0:
            raise DomainError("divisor counts need n >= 1")
        total = 0
        for d in range(1, math.isqrt(n) + 1):
            if n % d == 0:
                for div in {d, n // d}:
                    if div % family.k == family.j % family.k:
                        if kind == "d" or (n // div) % 2 == 1:
                            total += 1
        return total
    if kind == "S2":
        return count(CountFamily("S_ab", a=1, b=1), n)
    if kind == "S_ab":
        a, b = family.a, family.b
        total = 0
        x = 0
        while a * x * x <= n:
            rem = n - a * x * x
            if rem % b == 0:
                y = math.isqrt(rem // b)
                if b * y * y == rem:
                    cnt = 1 if y == 0 else 2
                    total += cnt if x == 0 else 2 * cnt
            x += 1
        return total
    if kind == "T2":
        return count(CountFamily("T_ab", a=1, b=1), n)
    if kind == "T_ab":
        a, b = family.a, family.b
        total = 0
        x = 0
        while a * x * (x + 1) // 2 <= n:
            rem = n - a * x * (x + 1) // 2
            if rem % b == 0:
                hits = _triangular_rep_count(rem // b)
                # x and -1-x give the same t_x; x = 0 pairs with -1
                total += 2 * hits
            x += 1
        return total
    if kind == "M_ab":
        a, b = family.a, family.b
        total = 0
        x = 0
        while a * x * x <= n:
            rem = n - a * x * x
            if rem % b == 0:
                hits = _triangular_rep_count(rem // b)
                total += hits if x == 0 else 2 * hits
            x += 1
        return total
    raise AssertionError(kind)


def generating_series(family: CountFamily, grid_denominator: int,
                      exponent_map, T) -> PuiseuxSeries:
    """Sum of count(n) * q^((alpha*n+beta)/D) truncated at T.

    exponent_map is the pair (alpha, beta) of the affine index map.
    """
    alpha, beta = exponent_map
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    D = grid_denominator
    T = Fraction(T)
    terms = {}
    n = 0
    while Fraction(alpha * n + beta, D) < T:
        c = count(family, n) if not (family.kind in ("d", "d_star") and n == 0) else 0
        if c:
            terms[Fraction(alpha * n + beta, D)] = c
        n += 1
    return PuiseuxSeries.from_terms(terms, T)


@dataclass(frozen=True)
class RelationReport:
    relation: str
    n_max: int
    passed: bool
    first_counterexample: Optional[tuple] = None  # (n, lhs, rhs)


def _fam(kind, **kw):
    return CountFamily(kind, **kw)


# Pointwise relations: name -> (description, lhs(n), rhs(n))
_RELATIONS = {
    "s2-even": ("S2(2n)=S2(n)",
                lambda n: count(_fam("S2"), 2 * n), lambda n: count(_fam("S2"), n)),
    "s2-4n+1": ("S2(4n+1)=T2(n)",
                lambda n: count(_fam("S2"), 4 * n + 1), lambda n: count(_fam("T2"), n)),
    "s2-4n+3": ("S2(4n+3)=0",
                lambda n: count(_fam("S2"), 4 * n + 3), lambda n: 0),
    "s12-8n+1": ("S_{1,2}(8n+1)=M_{1-1}(n)",
                 lambda n: count(_fam("S_ab", a=1, b=2), 8 * n + 1),
                 lambda n: count(_fam("M_ab", a=1, b=1), n)),
    "s12-8n+3": ("S_{1,2}(8n+3)=T_{1,2}(n)",
                 lambda n: count(_fam("S_ab", a=1, b=2), 8 * n + 3),
                 lambda n: count(_fam("T_ab", a=1, b=2), n)),
    "s12-8n+5": ("S_{1,2}(8n+5)=0",
                 lambda n: count(_fam("S_ab", a=1, b=2), 8 * n + 5), lambda n: 0),
    "s12-8n+7": ("S_{1,2}(8n+7)=0",
                 lambda n: count(_fam("S_ab", a=1, b=2), 8 * n + 7), lambda n: 0),
    "s12-4n": ("S_{1,2}(4n)=S_{1,2}(n)",
               lambda n: count(_fam("S_ab", a=1, b=2), 4 * n),
               lambda n: count(_fam("S_ab", a=1, b=2), n)),
    "s12-4n+2": ("S_{1,2}(4n+2)=M_{1-4}(n)",
                 lambda n: count(_fam("S_ab", a=1, b=2), 4 * n + 2),
                 lambda n: count(_fam("M_ab", a=1, b=4), n)),
    "s2-divisors": ("S2(n)=4(d_{1,4}-d_{3,4})(n), n>=1",
                    lambda n: count(_fam("S2"), n + 1),
                    lambda n: 4 * (count(_fam("d", j=1, k=4), n + 1)
                                   - count(_fam("d", j=3, k=4), n + 1))),
    "s12-divisors": ("S_{1,2}(n)=2(d_{1,8}+d_{3,8}-d_{5,8}-d_{7,8})(n), n>=1",
                     lambda n: count(_fam("S_ab", a=1, b=2), n + 1),
                     lambda n: 2 * (count(_fam("d", j=1, k=8), n + 1)
                                    + count(_fam("d", j=3, k=8), n + 1)
                                    - count(_fam("d", j=5, k=8), n + 1)
                                    - count(_fam("d", j=7, k=8), n + 1))),
}

# Grouped ids matching the registry's non-series entries.
RELATION_GROUPS = {
    "s7-thm7.3": ("s2-even", "s2-4n+1", "s2-4n+3"),
    "s7-thm7.5": ("s12-8n+1", "s12-8n+3", "s12-8n+5", "s12-8n+7", "s12-4n", "s12-4n+2"),
    "s1-thm1.1": ("s2-divisors", "s12-divisors"),
}


def relation_ids():
    return list(_RELATIONS) + list(RELATION_GROUPS)


def check_count_relation(relation: str, n_max: int) -> RelationReport:
    """Verify a named pointwise relation for all n <= n_max by enumeration."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if relation in RELATION_GROUPS:
        for sub in RELATION_GROUPS[relation]:
            rep = check_count_relation(sub, n_max)
            if not rep.passed:
                return RelationReport(relation, n_max, False, rep.first_counterexample)
        return RelationReport(relation, n_max, True)
    if relation not in _RELATIONS:
        raise UnknownRelation(relation)
    _, lhs, rhs = _RELATIONS[relation]
    for n in range(n_max + 1):
        left, right = lhs(n), rhs(n)
        if left != right:
            return RelationReport(relation, n_max, False, (n, left, right))
    return RelationReport(relation, n_max, True)
