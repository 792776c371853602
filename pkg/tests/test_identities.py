"""Registry structure, the evaluator, verification reports, negative controls."""

import json
from fractions import Fraction as F

import pytest

from rctheta.cyclotomic import CycNum, I_UNIT
from rctheta.expr import Counting, Inv, Lacunary, QProd, Theta, evaluate
from rctheta.qseries import ZeroSeries
from rctheta.registry import (REGISTRY, UnknownIdentity, corrupt, get_identity,
                              registry_ids, tc, td, verify, verify_all,
                              verify_identity)
from rctheta.theta import Characteristic, ThetaSpec


def test_registry_shape():
    ids = registry_ids()
    assert len(ids) == len(set(ids))
    assert "s1-jacobi" in ids and "s4-thm4.3-a" in ids
    series = [e for e in REGISTRY if e.kind == "series"]
    # the level 4..8 sections carry the bulk of the registry
    assert len([e for e in series if e.id.startswith(("s3", "s4", "s5", "s6", "s7"))]) >= 45
    counts = [e for e in REGISTRY if e.kind == "count"]
    assert sorted(e.id for e in counts) == ["s1-thm1.1", "s7-thm7.3", "s7-thm7.5"]


def test_level_filter_counts():
    assert len(registry_ids(4)) == 6          # three statements, two formulas each
    assert len(registry_ids(3)) == 8          # four chains + four constant identities
    level3 = registry_ids(3)
    assert {"s6-thm6.2", "s6-thm6.4", "s6-thm6.6", "s6-thm6.8"} <= set(level3)
    assert len(registry_ids()) == len(REGISTRY)


def test_default_orders():
    assert get_identity("s3-thm3.1-a").default_order == 30
    assert get_identity("s4-thm4.1-a").default_order == 20
    assert get_identity("s5-thm5.1-a").default_order == 30
    assert get_identity("s7-thm7.7-a").default_order == 30


def test_evaluate_constant_leaf():
    s = evaluate(tc(0, 0) * 0 + 1, 5)
    assert s.coeff(0) == 1


def test_evaluate_jacobi_product_leading_term():
    expr = I_UNIT * (tc(0, 0) * tc(1, 0) * tc(0, 1))
    s = evaluate(expr, 6)
    assert s.valuation() == F(1, 8)
    assert s.coeff(F(1, 8)) == 2 * I_UNIT


def test_evaluate_inverse_of_vanishing_series_raises():
    dead = Theta(ThetaSpec(Characteristic(F(1), F(1))))
    with pytest.raises(ZeroSeries):
        evaluate(Inv(dead), 4)


def test_evaluate_with_inverse_widens_window():
    # 1/theta[0;0] needs a wider internal window but must come back exact at T
    expr = Inv(tc(0, 0))
    s = evaluate(expr, 6)
    assert s.trunc == 6
    prod = evaluate(tc(0, 0), 8) * s
    assert prod.coeff(0) == 1
    assert all(c.is_zero() for e, c in prod.items() if e != 0)


def test_verify_jacobi():
    rep = verify("s1-jacobi", 12)
    assert rep.passed and rep.order_checked == 12 and rep.first_mismatch is None
    data = rep.to_json_dict()
    assert data["passed"] is True and data["mismatch"] is None
    json.dumps(data)


def test_verify_fk_lemma_instance():
    assert verify("s2-fk-lemma-00", 12).passed


def test_verify_unknown_identity():
    with pytest.raises(UnknownIdentity):
        verify("s9-nope")


def test_verify_chain_reports_equation_index():
    rep = verify("s3-thm3.1-a", 10)
    assert rep.passed and len(get_identity("s3-thm3.1-a").equations) == 2


def test_count_entries_dispatch():
    rep = verify("s7-thm7.3", 200)
    assert rep.passed and rep.order_checked == 200


def test_whole_registry_at_low_order():
    for entry in REGISTRY:
        order = None if entry.kind == "count" else min(entry.default_order, F(8))
        rep = verify_identity(entry, F(100) if entry.kind == "count" else order)
        assert rep.passed, (entry.id, rep.first_mismatch)


def test_negative_controls_fail_finitely():
    for id_ in ("s1-jacobi", "s3-thm3.2-a", "s5-thm5.1-a", "s6-thm6.2", "s7-thm7.7-a"):
        bad = corrupt(get_identity(id_))
        rep = verify_identity(bad, F(10))
        assert not rep.passed
        assert rep.first_mismatch is not None
        exponent, diff = rep.first_mismatch
        assert exponent < 10 and not diff.is_zero()


def test_verify_deterministic_and_parallel_equivalent():
    seq = verify_all(T=6, level=4, jobs=1)
    par = verify_all(T=6, level=4, jobs=2)
    assert [r.id for r in seq] == [r.id for r in par] == registry_ids(4)
    assert [r.passed for r in seq] == [r.passed for r in par]
    again = verify_all(T=6, level=4, jobs=1)
    assert [(r.id, r.passed, r.order_checked) for r in seq] == \
        [(r.id, r.passed, r.order_checked) for r in again]


def test_report_json_schema_for_failure():
    bad = corrupt(get_identity("s1-jacobi"))
    rep = verify_identity(bad, F(8))
    data = rep.to_json_dict()
    assert set(data) == {"id", "passed", "order", "mismatch", "millis"}
    assert data["mismatch"] is not None
    assert set(data["mismatch"]) == {"exponent", "diff"}
    CycNum.from_text(data["mismatch"]["diff"])  # parses back


def test_qprod_leaf_matches_eta_style_product():
    # prod over all n of (1-q^n) == eta without its q^(1/24) prefactor
    from rctheta.eta import eta_series
    s = evaluate(QProd(F(0), ((0, 1, 1),)), 10)
    eta_shifted = eta_series(1, F(10) + F(1, 24)).scale_exponents(1)
    # shift eta back by q^(-1/24)
    from rctheta.qseries import PuiseuxSeries
    unshift = eta_shifted * PuiseuxSeries.monomial(1, F(-1, 24))
    assert s.equal_to_order(unshift, 10).equal


def test_lacunary_leaves():
    km = evaluate(Lacunary("alt_n_chi3"), 15)
    assert km.coeff(F(1, 3)) == 1
    assert km.coeff(F(4, 3)) == 2
    assert km.coeff(F(16, 3)) == -4
    odd = evaluate(Lacunary("odd_n_chi3"), 3)
    assert odd.coeff(F(1, 24)) == 1
    assert odd.coeff(F(25, 24)) == -5
    with pytest.raises(ValueError):
        evaluate(Lacunary("mystery"), 3)


def test_counting_leaf_skips_below_n_min():
    s = evaluate(Counting(__import__("rctheta.arith", fromlist=["CountFamily"])
                          .CountFamily("d", j=1, k=4), 1, 1, 0, n_min=1), 6)
    assert s.coeff(1) == 1  # d_{1,4}(1) = 1
    assert s.valuation() == 1
