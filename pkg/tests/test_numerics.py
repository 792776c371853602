"""Floating-point layer: evaluation, lattice laws, contours and residues."""

import random
from fractions import Fraction as F

import mpmath
import pytest

from rctheta.cyclotomic import zeta
from rctheta.numerics import (DEFAULT_OFFSET, EllipticRatio, EvalParams,
                              NonconvergentTau, PoleOnContour, half_period_shift_check,
                              mumford_eval, poles_in_cell, quasi_periodicity_check,
                              residue_at, residue_sum, residue_sum_robust,
                              series_eval, theta_deriv_eval, theta_eval,
                              theta_eval_any)
from rctheta.proofs import PROOFS, SECTION3_IDS, SECTION6_PHI_IDS
from rctheta.theta import (Characteristic, ThetaSpec, theta_constant,
                           theta_derivative_reduced)

P = EvalParams(0.1 + 0.9j, precision=30, tail_tolerance=1e-24)


def ch(e, ep):
    return Characteristic(F(e), F(ep))


def test_tau_validation():
    with pytest.raises(NonconvergentTau):
        EvalParams(0.5 - 0.1j)
    with pytest.raises(NonconvergentTau):
        EvalParams(0.7)


def test_odd_characteristic_vanishes_at_zero():
    assert abs(theta_eval(ch(1, 1), 0, EvalParams(0.1 + 0.8j))) < 1e-12


def test_large_imaginary_tau_two_term_value():
    params = EvalParams(2j, precision=30)
    v = theta_eval(ch(0, 0), 0, params)
    two_terms = 1 + 2 * mpmath.exp(-2 * mpmath.pi)
    assert abs(v - two_terms) < 1e-5          # next term ~ e^{-8 pi}
    four_terms = two_terms + 2 * mpmath.exp(-8 * mpmath.pi)
    assert abs(v - four_terms) < 1e-12


def test_tail_bound_doubling_invariant():
    # a much longer summation changes nothing beyond the tolerance
    loose = EvalParams(0.1 + 0.9j, precision=30, tail_tolerance=1e-18)
    v1 = theta_eval_any(F(1, 5), F(3, 5), 0.2 + 0.1j, loose)
    v2 = mumford_eval(F(1, 10), F(3, 10), 0.2 + 0.1j,
                      EvalParams(0.1 + 0.9j, precision=40, tail_tolerance=1e-40))
    with mpmath.mp.workdps(45):
        assert abs(v1 - v2) < 1e-18


def test_exact_series_bridge():
    for e, ep in ((0, 0), (1, 0), (F(1, 5), F(3, 5)), (F(2, 3), F(4, 3))):
        spec = ThetaSpec(ch(e, ep))
        exact = series_eval(theta_constant(spec, 20), 0.05 + 1.1j, 30)
        numeric = theta_eval(ch(e, ep), 0, EvalParams(0.05 + 1.1j, precision=30))
        assert abs(exact - numeric) < 1e-10, (e, ep)


def test_derivative_vs_reduced_series():
    spec = ThetaSpec(ch(1, 1), derived=True)
    exact = series_eval(theta_derivative_reduced(spec, 20), 0.1 + 0.9j, 30)
    numeric = theta_deriv_eval(ch(1, 1), 0, P)
    rel = abs(numeric - exact * 1j * mpmath.pi) / abs(numeric)
    assert rel < 1e-9


def test_derivative_vs_finite_differences():
    rng = random.Random(31)
    h = mpmath.mpf(1) / 100000
    for _ in range(8):
        e = F(rng.randint(0, 5), rng.choice([1, 2, 3, 4, 5]))
        ep = F(rng.randint(0, 5), rng.choice([1, 2, 3, 4, 5]))
        z = mpmath.mpc(rng.uniform(-0.3, 0.3), rng.uniform(-0.2, 0.2))
        tau = mpmath.mpc(rng.uniform(-0.4, 0.4), rng.uniform(0.8, 1.6))
        params = EvalParams(tau, precision=30)
        c = Characteristic(e % 2, ep % 2)
        fd = (theta_eval(c, z + h, params) - theta_eval(c, z - h, params)) / (2 * h)
        dv = theta_deriv_eval(c, z, params)
        assert abs(fd - dv) / max(1e-12, abs(dv)) < 1e-6


def test_quasi_periodicity():
    assert quasi_periodicity_check(ch(0, 0), 0.1 + 0.2j, 0, 0, P) == 0
    assert quasi_periodicity_check(ch(0, 0), 0.1 + 0.2j, 0, 1, P) < 1e-10
    params = EvalParams(0.2 + 1.0j, precision=30)
    assert quasi_periodicity_check(ch(F(1, 5), F(3, 5)), 0.1 + 0.2j, 1, 1, params) < 1e-9
    assert quasi_periodicity_check(ch(F(2, 3), F(5, 3)), -0.2 + 0.1j, 2, 1, params) < 1e-9


def test_half_period_shift_corrected_reading():
    params = EvalParams(0.2 + 1.0j, precision=30)
    cases = [(ch(F(1, 5), F(3, 5)), 0.07 + 0.11j, 1, 1),
             (ch(F(1, 2), F(1, 2)), -0.04 + 0.2j, 2, 3),
             (ch(F(2, 3), F(5, 3)), 0.02 - 0.05j, 3, 2),
             (ch(1, 1), 0.3 + 0.1j, 1, 0)]
    for c, z, m, n in cases:
        assert half_period_shift_check(c, z, m, n, params) < 1e-12


def test_elliptic_ratio_validation():
    with pytest.raises(ValueError):
        EllipticRatio(((ch(1, 1), 3),), ((ch(1, 0), 2),))


def test_constant_ratio_residue_sum_is_zero():
    one = EllipticRatio(((ch(0, 0), 1),), ((ch(0, 0), 1),))
    assert abs(residue_sum(one, P)) < 1e-12


def test_pole_on_contour_detected():
    phi = PROOFS["s6-thm6.1-phi"].ratio  # double pole at the lattice origin
    with pytest.raises(PoleOnContour):
        residue_sum(phi, P, (F(0), F(0)))
    # the robust wrapper picks a shifted contour instead
    assert abs(residue_sum_robust(phi, P)) < 1e-8


def test_pole_lists_match_recomputation():
    for pid, proof in sorted(PROOFS.items()):
        assert proof.stated_poles_match(), pid


def test_residue_sum_equals_sum_of_residues():
    params = EvalParams(0.15 + 1.05j, precision=30)
    for pid in ("s3-thm3.1-phi", "s6-thm6.2-psi"):
        proof = PROOFS[pid]
        total = residue_sum_robust(proof.ratio, params)
        parts = sum(residue_at(proof.ratio, (a, b), params)
                    for a, b, _ in proof.stated_poles)
        assert abs(total - parts) < 1e-7, pid


def test_displayed_residues_match_contour_integrals():
    params = EvalParams(0.15 + 1.05j, precision=30)
    for query in ("s3-thm3.1-phi", "s4-thm4.1-phi", "s6-thm6.3-phi"):
        proof = PROOFS[query]
        for point, formula in proof.residues:
            numeric = residue_at(proof.ratio, point, params)
            displayed = formula.eval(params)
            assert abs(numeric - displayed) / abs(displayed) < 1e-7, (query, point)


def test_residue_at_regular_point_is_zero():
    phi = PROOFS["s3-thm3.1-phi"].ratio
    params = EvalParams(0.15 + 1.05j, precision=30)
    v = residue_at(phi, (F(0), F(3, 8)), params, radius=0.05)
    assert abs(v) < 1e-10


def test_required_ratio_sets():
    assert len(SECTION3_IDS) == 6
    assert len(SECTION6_PHI_IDS) == 4
