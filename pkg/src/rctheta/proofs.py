"""Registry of the elliptic ratios used in the residue arguments.

Each entry carries the ratio, the stated pole list (lattice coordinates
a*tau + b with multiplicities), and any displayed closed-form residues.
Pole lists are *also* recomputed from zero locations plus the lattice;
`stated_poles_match` flags a discrepancy instead of trusting either side.

A displayed residue is a product of theta-constant values (z = 0),
theta-derivative values, a root-of-unity scalar, and optionally a bracket
holding a combination of logarithmic derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .cyclotomic import CycNum, zeta
from .numerics import (EllipticRatio, EvalParams, poles_in_cell,
                       theta_deriv_eval, theta_eval)
from .theta import Characteristic

F = Fraction


def _ch(e, ep) -> Characteristic:
    return Characteristic(Fraction(e), Fraction(ep))


@dataclass(frozen=True, eq=False)
class ResidueFormula:
    """scalar * prod theta[...]^power * (optional bracket of c*th'/th)."""

    scalar: CycNum
    factors: tuple  # of (Characteristic, power, derived)
    bracket: Optional[tuple] = None  # of (int coeff, Characteristic)

    def eval(self, params: EvalParams):
        out = self.scalar.embed(params.precision)
        for ch, p, derived in self.factors:
            v = (theta_deriv_eval if derived else theta_eval)(ch, 0, params)
            out *= v ** p
        if self.bracket is not None:
            acc = mpmath.mpc(0)
            for coeff, ch in self.bracket:
                acc += coeff * theta_deriv_eval(ch, 0, params) / theta_eval(ch, 0, params)
            out *= acc
        return out


@dataclass(frozen=True, eq=False)
class ProofRatio:
    id: str
    ratio: EllipticRatio
    stated_poles: tuple  # of (Fraction a, Fraction b, order), z = a*tau + b
    residues: tuple = ()  # of ((a, b), ResidueFormula)
    note: str = ""

    def stated_poles_match(self) -> bool:
        """Compare the stated pole list against zero-location + lattice
        (modulo lattice translation)."""
        computed = poles_in_cell(self.ratio, (F(0), F(0)))
        want = sorted(((a % 1, b % 1, o) for a, b, o in self.stated_poles))
        have = sorted(((a % 1, b % 1, o) for a, b, o in computed))
        return want == have


_ONE = CycNum.from_rational(1)
_T11 = _ch(1, 1)


def _phi_psi(num3, den_sq, den_one):
    """theta^3[num3] / (theta^2[den_sq] * theta[den_one])."""
    return EllipticRatio(((num3, 3),), ((den_sq, 2), (den_one, 1)))


def _build() -> dict:
    w = zeta(3)
    z5 = zeta(5)
    entries = []

    # -- level 4 proofs: six ratios, poles of order 2 and 1 ------------------
    entries.append(ProofRatio(
        "s3-thm3.1-phi", _phi_psi(_T11, _ch(1, F(1, 2)), _ch(1, 0)),
        ((F(0), F(1, 4), 2), (F(0), F(1, 2), 1)),
        (((F(0), F(1, 4)),
          ResidueFormula(CycNum.from_rational(4),
                         ((_ch(1, F(1, 2)), 1, False), (_ch(1, F(1, 2)), 1, True),
                          (_T11, -2, True)))),
         ((F(0), F(1, 2)),
          ResidueFormula(CycNum.from_rational(-1),
                         ((_ch(1, 0), 3, False), (_ch(1, F(1, 2)), -2, False),
                          (_T11, -1, True)))))))
    entries.append(ProofRatio(
        "s3-thm3.1-psi", _phi_psi(_T11, _ch(0, F(1, 2)), _ch(1, 0)),
        ((F(1, 2), F(1, 4), 2), (F(0), F(1, 2), 1))))
    entries.append(ProofRatio(
        "s3-thm3.2-phi", _phi_psi(_T11, _ch(F(1, 2), 1), _ch(0, 1)),
        ((F(1, 4), F(0), 2), (F(1, 2), F(0), 1))))
    entries.append(ProofRatio(
        "s3-thm3.2-psi", _phi_psi(_T11, _ch(F(1, 2), 0), _ch(0, 1)),
        ((F(1, 4), F(1, 2), 2), (F(1, 2), F(0), 1))))
    entries.append(ProofRatio(
        "s3-thm3.3-phi", _phi_psi(_T11, _ch(F(1, 2), F(1, 2)), _ch(0, 0)),
        ((F(1, 4), F(1, 4), 2), (F(1, 2), F(1, 2), 1))))
    entries.append(ProofRatio(
        "s3-thm3.3-psi", _phi_psi(_T11, _ch(F(1, 2), F(3, 2)), _ch(0, 0)),
        ((F(1, 4), F(-1, 4), 2), (F(1, 2), F(1, 2), 1))))

    # -- level 5 proof with displayed residues --------------------------------
    X, Y = _ch(F(1, 5), F(1, 5)), _ch(F(3, 5), F(3, 5))
    entries.append(ProofRatio(
        "s4-thm4.1-phi", _phi_psi(_T11, X, Y),
        ((F(2, 5), F(2, 5), 2), (F(1, 5), F(1, 5), 1)),
        (((F(2, 5), F(2, 5)),
          ResidueFormula(z5 ** 3,
                         ((X, 3, False), (_T11, -2, True), (Y, -1, False)),
                         bracket=((-3, X), (1, Y)))),
         ((F(1, 5), F(1, 5)),
          ResidueFormula(-(z5 ** 2), ((Y, 1, False), (_T11, -1, True)))))))

    # -- level 3 proofs: four phi ratios plus the inverted psi ratios ---------
    def cubic(a_ch, b_ch, c_ch, den2=_T11, den1=None):
        den1 = den1 if den1 is not None else _ch(1, 0)
        return EllipticRatio(((a_ch, 1), (b_ch, 1), (c_ch, 1)),
                             ((den2, 2), (den1, 1)))

    X1, W1 = _ch(F(1, 3), F(1, 3)), _ch(F(2, 3), F(5, 3))
    A1, B1 = _ch(F(1, 3), F(4, 3)), _ch(F(2, 3), F(2, 3))
    entries.append(ProofRatio(
        "s6-thm6.1-phi", cubic(X1, W1, _ch(0, 0)),
        ((F(0), F(0), 2), (F(0), F(1, 2), 1)),
        (((F(0), F(0)),
          ResidueFormula(_ONE,
                         ((X1, 1, False), (W1, 1, False), (_ch(0, 0), 1, False),
                          (_T11, -2, True), (_ch(1, 0), -1, False)),
                         bracket=((1, X1), (1, W1)))),
         ((F(0), F(1, 2)),
          ResidueFormula(w,
                         ((A1, 1, False), (B1, 1, False), (_ch(0, 1), 1, False),
                          (_ch(1, 0), -2, False), (_T11, -1, True)))))))
    entries.append(ProofRatio(
        "s6-thm6.2-psi",
        EllipticRatio(((_T11, 2), (_ch(1, 0), 1)),
                      ((X1, 1), (W1, 1), (_ch(0, 0), 1))),
        ((F(1, 3), F(1, 3), 1), (F(1, 6), F(-1, 3), 1), (F(1, 2), F(1, 2), 1)),
        (((F(1, 3), F(1, 3)),
          ResidueFormula(-(w ** 2),
                         ((X1, 2, False), (A1, 1, False),
                          (_T11, -1, True), (W1, -1, False), (B1, -1, False)))),
         ((F(1, 6), F(-1, 3)),
          ResidueFormula(-w,
                         ((W1, 1, False), (B1, 1, False),
                          (_T11, -1, True), (A1, -1, False)))),
         ((F(1, 2), F(1, 2)),
          ResidueFormula(w ** 2,
                         ((_ch(0, 0), 2, False), (_ch(0, 1), 1, False),
                          (_T11, -1, True), (B1, -1, False), (A1, -1, False))))),
        note="the printed denominator factor theta[2/3;3/5] is read as theta[2/3;5/3]"))

    X3, W3 = _ch(F(1, 3), 1), _ch(F(2, 3), 1)
    entries.append(ProofRatio(
        "s6-thm6.3-phi", cubic(X3, W3, _ch(0, 0)),
        ((F(0), F(0), 2), (F(0), F(1, 2), 1)),
        (((F(0), F(0)),
          ResidueFormula(_ONE,
                         ((X3, 1, False), (W3, 1, False), (_ch(0, 0), 1, False),
                          (_T11, -2, True), (_ch(1, 0), -1, False)),
                         bracket=((1, X3), (1, W3)))),
         ((F(0), F(1, 2)),
          ResidueFormula(CycNum.from_rational(-1),
                         ((_ch(F(1, 3), 0), 1, False), (_ch(F(2, 3), 0), 1, False),
                          (_ch(0, 1), 1, False), (_ch(1, 0), -2, False),
                          (_T11, -1, True)))))))
    entries.append(ProofRatio(
        "s6-thm6.4-psi",
        EllipticRatio(((_T11, 2), (_ch(1, 0), 1)),
                      ((X3, 1), (W3, 1), (_ch(0, 0), 1))),
        ((F(1, 3), F(0), 1), (F(1, 6), F(0), 1), (F(1, 2), F(1, 2), 1))))

    X5, W5 = _ch(F(1, 3), F(5, 3)), _ch(F(2, 3), F(1, 3))
    entries.append(ProofRatio(
        "s6-thm6.5-phi", cubic(X5, W5, _ch(0, 0)),
        ((F(0), F(0), 2), (F(0), F(1, 2), 1)),
        (((F(0), F(0)),
          ResidueFormula(_ONE,
                         ((X5, 1, False), (W5, 1, False), (_ch(0, 0), 1, False),
                          (_T11, -2, True), (_ch(1, 0), -1, False)),
                         bracket=((1, X5), (1, W5)))),
         ((F(0), F(1, 2)),
          ResidueFormula(-(w ** 2),
                         ((_ch(F(1, 3), F(2, 3)), 1, False),
                          (_ch(F(2, 3), F(4, 3)), 1, False),
                          (_ch(0, 1), 1, False), (_ch(1, 0), -2, False),
                          (_T11, -1, True)))))))
    entries.append(ProofRatio(
        "s6-thm6.6-psi",
        EllipticRatio(((_T11, 2), (_ch(1, 0), 1)),
                      ((X5, 1), (W5, 1), (_ch(0, 0), 1))),
        ((F(1, 3), F(-1, 3), 1), (F(1, 6), F(1, 3), 1), (F(1, 2), F(1, 2), 1))))

    X7, W7 = _ch(1, F(1, 3)), _ch(1, F(2, 3))
    entries.append(ProofRatio(
        "s6-thm6.7-phi",
        EllipticRatio(((X7, 1), (W7, 1), (_ch(0, 1), 1)),
                      ((_T11, 2), (_ch(0, 0), 1))),
        ((F(0), F(0), 2), (F(1, 2), F(1, 2), 1)),
        (((F(0), F(0)),
          ResidueFormula(_ONE,
                         ((X7, 1, False), (W7, 1, False), (_ch(0, 1), 1, False),
                          (_T11, -2, True), (_ch(0, 0), -1, False)),
                         bracket=((1, X7), (1, W7)))),
         ((F(1, 2), F(1, 2)),
          ResidueFormula(CycNum.from_rational(-1),
                         ((_ch(0, F(1, 3)), 1, False), (_ch(0, F(2, 3)), 1, False),
                          (_ch(1, 0), 1, False), (_ch(0, 0), -2, False),
                          (_T11, -1, True)))))))
    entries.append(ProofRatio(
        "s6-thm6.8-psi",
        EllipticRatio(((_T11, 2), (_ch(0, 0), 1)),
                      ((X7, 1), (W7, 1), (_ch(0, 1), 1))),
        ((F(0), F(1, 3), 1), (F(0), F(1, 6), 1), (F(1, 2), F(0), 1))))

    return {e.id: e for e in entries}


PROOFS: dict = _build()

# the residue suite required by the acceptance gate
SECTION3_IDS = tuple(i for i in PROOFS if i.startswith("s3-"))
SECTION6_PHI_IDS = tuple(i for i in PROOFS if i.startswith("s6-") and i.endswith("-phi"))
