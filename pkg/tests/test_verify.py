import json

import pytest

from qwmds.algebra import RatFunc, SparsePoly
from qwmds.verify import (
    any_failed,
    bound_battery,
    check_convolution_A3,
    check_invariance,
    check_siegel_rule,
    check_stable_form,
    check_T_bound,
    check_T_functional_equation,
    extract_constants,
    reports_table,
    reports_to_json,
    run_all,
    summarize,
    t_function,
    tfe_battery,
)


def test_t_function_a2_examples(inv_a2):
    t, x1, x2 = (SparsePoly.gen(inv_a2.vars, v) for v in inv_a2.vars)
    # coefficient of x1^2 in f_A2, as a function of x2
    assert t_function(inv_a2, 1, (2,)) == RatFunc(1 - x2 + t ** 2 * x2 ** 2, 1 - x2)
    assert t_function(inv_a2, 1, (1,)) == RatFunc(SparsePoly.one(inv_a2.vars))


@pytest.mark.parametrize("khat,case", [((2,), "even"), ((1,), "odd"), ((0,), "even")])
def test_tfe_a2_examples(inv_a2, khat, case):
    rep = check_T_functional_equation(inv_a2, 1, khat)
    assert rep.passed and rep.params["case"] == case


def test_tfe_a3_trivial_direction(inv_a3):
    assert check_T_functional_equation(inv_a3, 1, (0, 0)).passed


def test_tfe_batteries(inv_a2, inv_a3):
    for inv in (inv_a2, inv_a3):
        reports = tfe_battery(inv, 4)
        assert reports and not any_failed(reports)


def test_tfe_detects_wrong_function(inv_a2):
    # a perturbed numerator is not invariant and the identity breaks
    from qwmds.invariant import InvariantFunction
    t, x1, x2 = (SparsePoly.gen(inv_a2.vars, v) for v in inv_a2.vars)
    bad = InvariantFunction(inv_a2.rs, inv_a2.ctx, inv_a2.f0_factored, inv_a2.ppart + 2 * x1 * x2)
    reports = tfe_battery(bad, 2)
    assert any_failed(reports)
    failed = [r for r in reports if r.failed]
    assert failed[0].witness["lhs_minus_rhs"]


def test_bound(inv_a1, inv_a2, inv_a3):
    for inv in (inv_a1, inv_a2, inv_a3):
        assert not any_failed(bound_battery(inv, 4))


def test_bound_constants_a2(inv_a2):
    C1, C2 = extract_constants(inv_a2)
    assert C1 == 1.0
    assert C2 == pytest.approx(0.25)


def test_bound_rejects_nonsquare_q(inv_a2):
    with pytest.raises(ValueError):
        check_T_bound(inv_a2, 0, (1,), 1.0, 0.25, q=3)


def test_bound_fails_with_too_small_constant(inv_a2):
    rep = check_T_bound(inv_a2, 1, (4,), 0.1, 0.0)
    assert rep.failed


def test_siegel_examples(inv_a2):
    rep = check_siegel_rule(inv_a2, 24)
    assert rep.passed
    assert rep.detail["entries"] == 325


def test_siegel_needs_a2(inv_a3):
    with pytest.raises(ValueError):
        check_siegel_rule(inv_a3, 4)


@pytest.mark.parametrize("N", [0, 4, 8])
def test_convolution(inv_a3, inv_a2, N):
    assert check_convolution_A3(inv_a3, inv_a2, N).passed


def test_series_degraded_invariance(inv_a3):
    rep = check_invariance(inv_a3, 1, series_degree=6)
    assert rep.passed and rep.degraded


def test_stable_form_reports(inv_a2, inv_a3):
    a2 = check_stable_form(inv_a2)
    assert a2.passed
    signs = a2.detail["displayed_sign_comparison"]
    assert list(signs.values()).count("differ") == 1
    a3 = check_stable_form(inv_a3)
    assert a3.passed and a3.detail["x_monomials"] == 26 and a3.detail["tx_terms"] == 28


def test_run_all_a2():
    reports = run_all([("A", 2)])
    assert not any_failed(reports)
    names = {r.name for r in reports}
    assert {"rootsys", "cocycle", "invariance", "tfe", "bound", "siegel", "q_one"} <= names
    json.loads(reports_to_json(reports))
    assert reports_table(reports).splitlines()[0].split()[:2] == ["system", "check"]


def test_run_all_a3_summary():
    summary = summarize(run_all([("A", 3)], checks=["stable_form", "convolution", "limit"]))
    assert summary["fail"] == 0
    assert summary["A3_x_monomials"] == 26


def test_run_all_deterministic():
    a = run_all([("A", 2)], checks=["rootsys", "tfe"])
    b = run_all([("A", 2)], checks=["rootsys", "tfe"])
    assert [(r.name, r.params, r.verdict) for r in a] == [(r.name, r.params, r.verdict) for r in b]


def test_run_all_budget_degrades():
    reports = run_all([("A", 4)], budget=0.0, checks=["invariance", "limit"])
    assert any(r.degraded for r in reports)
    assert not any_failed(reports)


def test_run_all_unknown_check():
    with pytest.raises(ValueError):
        run_all([("A", 2)], checks=["nope"])
