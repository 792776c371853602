"""Arbitrary-precision complex evaluation and the residue-sum checker.

theta_eval sums the defining series with an explicit tail bound; the
contour machinery integrates ratios of theta functions around the
fundamental parallelogram (their residue sums must vanish) and around
small circles (residues at single poles).  Pole locations are recomputed
from the zero-location formula plus the lattice rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath
from mpmath import mp

from .theta import (Characteristic, reduce_characteristic,
                    shift_reduce_characteristic, theta_zero_location)


class NonconvergentTau(ValueError):
    """Im(tau) <= 0: the series does not converge."""


class PoleOnContour(ArithmeticError):
    """The integration contour runs too close to a pole."""


@dataclass(frozen=True)
class EvalParams:
    tau: complex
    precision: int = 30
    tail_tolerance: float = 1e-20

    def __post_init__(self):
        if mpmath.im(mpmath.mpmathify(self.tau)) <= 0:
            raise NonconvergentTau("tau must lie in the upper half plane")


def _workdps(params: EvalParams):
    return mp.workdps(max(params.precision, 15))


_TERMS_CACHE: dict = {}


def _sum_range(eps: Fraction, tau_im, z_im_max, tol) -> int:
    """Largest |n| needed so the omitted tail stays below tol: solve
    pi*Im(tau)*u^2 - 2*pi*u*|Im z| >= log(4/tol) for u = |n + eps/2|."""
    t = float(tau_im)
    b = float(z_im_max)
    budget = math.log(4.0 / float(tol)) / math.pi
    u = (b + math.sqrt(b * b + t * budget)) / t
    return int(math.ceil(u + abs(float(eps)) / 2)) + 2


def _theta_terms(char: Characteristic, params: EvalParams, z_im_max: float):
    """Cached per (char, tau, dps, Im-z bucket): list of (u, A) with
    theta(z) = sum A * exp(2*pi*i*u*z), u = n + eps/2."""
    tau = mpmath.mpmathify(params.tau)
    bucket = math.ceil(z_im_max)  # coarse key; extra terms are harmless
    key = (char, mp.dps, tau, bucket)
    hit = _TERMS_CACHE.get(key)
    if hit is not None:
        return hit
    N = _sum_range(char.eps, mpmath.im(tau), bucket, params.tail_tolerance)
    e2, ep2 = mpmath.mpf(char.eps.numerator) / char.eps.denominator / 2, \
        mpmath.mpf(char.eps_prime.numerator) / char.eps_prime.denominator / 2
    twopii = 2j * mp.pi
    terms = []
    for n in range(-N, N + 1):
        u = n + e2
        A = mpmath.exp(twopii * (u * u * tau / 2 + u * ep2))
        terms.append((u, A))
    _TERMS_CACHE[key] = terms
    return terms


def _theta_core(char: Characteristic, z, params: EvalParams, derived: bool):
    # one exp for the fractional part, then iterated multiplication by
    # y = exp(2*pi*i*z): exp(2*pi*i*u*z) = exp(2*pi*i*(eps/2)*z) * y^n
    z = mpmath.mpmathify(z)
    zim = max(1.0, abs(float(mpmath.im(z))) * 1.25 + 0.1)
    terms = _theta_terms(char, params, zim)
    twopii = 2j * mp.pi
    y = mpmath.exp(twopii * z)
    y_inv = 1 / y
    mid = len(terms) // 2  # index of n = 0
    total = mpmath.mpc(0)
    power = mpmath.mpc(1)
    for u, A in terms[mid:]:
        total += (A * twopii * u if derived else A) * power
        power *= y
    power = y_inv
    for u, A in terms[mid - 1::-1]:
        total += (A * twopii * u if derived else A) * power
        power *= y_inv
    e2 = mpmath.mpf(char.eps.numerator) / char.eps.denominator / 2
    return total * mpmath.exp(twopii * e2 * z)


def theta_eval(char: Characteristic, z, params: EvalParams):
    """theta[char](z, tau) with absolute error below tail_tolerance."""
    with _workdps(params):
        return +_theta_core(char, z, params, False)


def theta_deriv_eval(char: Characteristic, z, params: EvalParams):
    """d/dz theta[char](z, tau), termwise-differentiated partial sum."""
    with _workdps(params):
        return +_theta_core(char, z, params, True)


def theta_eval_any(eps, eps_prime, z, params: EvalParams, derived=False):
    """Evaluate for an arbitrary rational characteristic, canonicalized via
    the shift law (the only reduction valid at general z)."""
    ch, sc = shift_reduce_characteristic(Fraction(eps), Fraction(eps_prime))
    base = (theta_deriv_eval if derived else theta_eval)(ch, z, params)
    return base * sc.embed(params.precision)


def mumford_eval(a, b, z, params: EvalParams):
    """Direct partial sum of the (a, b)-indexed series
    sum exp(pi*i*(n+a)^2 tau + 2*pi*i*(n+a)(z+b))."""
    a, b = Fraction(a), Fraction(b)
    with _workdps(params):
        tau = mpmath.mpmathify(params.tau)
        z = mpmath.mpmathify(z)
        zim = max(1.0, abs(float(mpmath.im(z))) * 1.25 + 0.1)
        N = _sum_range(2 * a, mpmath.im(tau), zim, params.tail_tolerance)
        af = mpmath.mpf(a.numerator) / a.denominator
        bf = mpmath.mpf(b.numerator) / b.denominator
        total = mpmath.mpc(0)
        for n in range(-N, N + 1):
            u = n + af
            total += mpmath.exp(1j * mp.pi * u * u * tau + 2j * mp.pi * u * (z + bf))
        return +total


def series_eval(series, tau, precision: int = 30):
    """Numeric value of an exact q-series at tau (q = exp(2*pi*i*tau))."""
    with mp.workdps(precision + 10):
        tau = mpmath.mpmathify(tau)
        total = mpmath.mpc(0)
        for e, c in series.items():
            ef = mpmath.mpf(e.numerator) / e.denominator
            total += c.embed(precision) * mpmath.exp(2j * mp.pi * tau * ef)
        return +total


def quasi_periodicity_check(char: Characteristic, z, m: int, n: int,
                            params: EvalParams) -> float:
    """|theta(z + n + m*tau) - factor * theta(z)| for the displayed
    lattice-shift factor exp(2*pi*i*[(n*eps - m*eps')/2 - m*z - m^2*tau/2])."""
    with _workdps(params):
        tau = mpmath.mpmathify(params.tau)
        z = mpmath.mpmathify(z)
        eps = mpmath.mpf(char.eps.numerator) / char.eps.denominator
        epsp = mpmath.mpf(char.eps_prime.numerator) / char.eps_prime.denominator
        shifted = theta_eval(char, z + n + m * tau, params)
        factor = mpmath.exp(2j * mp.pi * ((n * eps - m * epsp) / 2 - m * z - m * m * tau / 2))
        return float(abs(shifted - factor * theta_eval(char, z, params)))


def half_period_shift_check(char: Characteristic, z, m: int, n: int,
                            params: EvalParams) -> float:
    """Defect of the half-period shift law (with the exponent applied to the
    whole bracket): theta[eps;eps'](z + (n+m*tau)/2) =
    exp(2*pi*i*[-m*z/2 - m^2*tau/8 - m*(eps'+n)/4]) * theta[eps+m;eps'+n](z)."""
    with _workdps(params):
        tau = mpmath.mpmathify(params.tau)
        z = mpmath.mpmathify(z)
        epsp = char.eps_prime
        epf = mpmath.mpf(epsp.numerator) / epsp.denominator
        shifted = theta_eval(char, z + (n + m * tau) / 2, params)
        factor = mpmath.exp(2j * mp.pi * (-m * z / 2 - m * m * tau / 8
                                          - m * (epf + n) / 4))
        other = theta_eval_any(char.eps + m, epsp + n, z, params)
        return float(abs(shifted - factor * other))


# --------------------------------------------------------------------------
# elliptic ratios and contours

@dataclass(frozen=True)
class EllipticRatio:
    """Ratio of products of theta[char](z, tau)^power, degree-balanced."""

    numerator: tuple  # of (Characteristic, power)
    denominator: tuple

    def __post_init__(self):
        if sum(p for _, p in self.numerator) != sum(p for _, p in self.denominator):
            raise ValueError("numerator and denominator degrees must balance")
        if any(p < 1 for _, p in self.numerator + self.denominator):
            raise ValueError("factor powers must be positive")

    def eval_num(self, z, params: EvalParams):
        out = mpmath.mpc(1)
        for ch, p in self.numerator:
            out *= theta_eval(ch, z, params) ** p
        return out

    def eval_den(self, z, params: EvalParams):
        out = mpmath.mpc(1)
        for ch, p in self.denominator:
            out *= theta_eval(ch, z, params) ** p
        return out

    def __call__(self, z, params: EvalParams):
        return self.eval_num(z, params) / self.eval_den(z, params)


def ratio_points(f: EllipticRatio, offset=(Fraction(-1, 10), Fraction(-1, 10))):
    """Net multiplicity of zeros/poles inside the cell offset+[0,1)^2,
    in lattice coordinates: {(a, b): order}, order < 0 at poles."""
    oa, ob = Fraction(offset[0]), Fraction(offset[1])
    net: dict = {}
    for sign, factors in ((1, f.numerator), (-1, f.denominator)):
        for ch, p in factors:
            a0, b0 = theta_zero_location(ch)
            a = a0 - math.floor(a0 - oa)
            b = b0 - math.floor(b0 - ob)
            net[(a, b)] = net.get((a, b), 0) + sign * p
    return {pt: o for pt, o in net.items() if o != 0}


def poles_in_cell(f: EllipticRatio, offset=(Fraction(-1, 10), Fraction(-1, 10))):
    """[(a, b, pole_order)] inside the cell, sorted for determinism."""
    out = [(a, b, -o) for (a, b), o in ratio_points(f, offset).items() if o < 0]
    return sorted(out)


def _lattice_point(a: Fraction, b: Fraction, tau):
    return (mpmath.mpf(a.numerator) / a.denominator) * tau \
        + mpmath.mpf(b.numerator) / b.denominator


DEFAULT_OFFSET = (Fraction(-1, 10), Fraction(-1, 10))
RETRY_OFFSETS = ((Fraction(-1, 14), Fraction(-1, 14)),
                 (Fraction(-3, 26), Fraction(-1, 22)),
                 (Fraction(-1, 34), Fraction(-5, 38)))


def residue_sum(f: EllipticRatio, params: EvalParams,
                origin_offset=DEFAULT_OFFSET):
    """(1/2*pi*i) * contour integral of f over the parallelogram with
    corners origin_offset + {0, 1, 1+tau, tau}; ~0 for an elliptic ratio.

    origin_offset is given in lattice coordinates (a, b), the corner being
    a*tau + b.  Raises PoleOnContour when a denominator zero sits on (or
    numerically too near) the boundary; the caller picks another offset.
    """
    oa, ob = Fraction(origin_offset[0]), Fraction(origin_offset[1])
    # exact hit test: any pole with a lattice coordinate on the boundary lines
    for (a, b), order in ratio_points(f, (oa, ob)).items():
        if order < 0 and (a in (oa, oa + 1) or b in (ob, ob + 1)):
            raise PoleOnContour(f"pole at lattice point ({a},{b}) lies on the contour")
    with _workdps(params):
        tau = mpmath.mpmathify(params.tau)
        corner = _lattice_point(oa, ob, tau)
        corners = [corner, corner + 1, corner + 1 + tau, corner + tau, corner]
        # sampled floor check on the denominator
        samples = []
        for k in range(4):
            a, b = corners[k], corners[k + 1]
            for j in range(9):
                zz = a + (b - a) * (j + 0.5) / 9
                samples.append(abs(f.eval_den(zz, params)))
        floor = 1e-6 * max(1.0, float(sorted(samples)[len(samples) // 2]))
        if float(min(samples)) < floor:
            raise PoleOnContour("denominator too small on the contour")
        total = mpmath.mpc(0)
        for k in range(4):
            a, b = corners[k], corners[k + 1]
            seg = b - a
            total += mpmath.quad(lambda s, a=a, seg=seg: f(a + seg * s, params) * seg,
                                 [0, 0.5, 1])
        return +(total / (2j * mp.pi))


def residue_sum_robust(f: EllipticRatio, params: EvalParams):
    """residue_sum with the documented offset retries."""
    last = None
    for off in (DEFAULT_OFFSET,) + RETRY_OFFSETS:
        try:
            return residue_sum(f, params, off)
        except PoleOnContour as exc:  # pragma: no cover - depends on ratio
            last = exc
    raise last


def residue_at(f: EllipticRatio, pole, params: EvalParams,
               radius: Optional[float] = None):
    """(1/2*pi*i) * integral of f around a small circle at the pole.

    `pole` is (a, b) in lattice coordinates.  The radius stays below half
    the distance to every other zero/pole of the ratio.
    """
    a, b = Fraction(pole[0]), Fraction(pole[1])
    with _workdps(params):
        tau = mpmath.mpmathify(params.tau)
        p = _lattice_point(a, b, tau)
        if radius is None:
            dmin = None
            for (ca, cb) in _all_points_near(f):
                q = _lattice_point(ca, cb, tau)
                d = abs(q - p)
                if d > 1e-9 and (dmin is None or d < dmin):
                    dmin = d
            radius = float(min(0.45 * dmin, 0.2))
        r = mpmath.mpf(radius)

        def integrand(t):
            w = r * mpmath.exp(1j * t)
            return f(p + w, params) * w

        total = mpmath.quad(integrand, [0, mp.pi, 2 * mp.pi])
        return +(total / (2 * mp.pi))


def _all_points_near(f: EllipticRatio):
    """Zero/pole lattice coordinates of all factors, with one ring of
    lattice translates (enough for radius selection)."""
    pts = set()
    for ch, _ in f.numerator + f.denominator:
        a0, b0 = theta_zero_location(ch)
        for da in (-1, 0, 1):
            for db in (-1, 0, 1):
                pts.add((a0 + da, b0 + db))
    return pts
