"""Exact algebra: sparse polynomials, rational functions, series, factored form.

sympy is used only here, as an independent oracle.
"""
import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qwmds.algebra import (
    FactoredRational,
    MonomialMap,
    NotDivisible,
    NotExpandable,
    RatFunc,
    SparsePoly,
    UPoly,
    VariableMismatch,
    default_vars,
    geometric_product,
    poly_exact_div,
    series_expand,
    try_exact_div,
)
from qwmds.algebra.series import coeff_extract_univariate

V = default_vars(2)
T, X1, X2 = (SparsePoly.gen(V, n) for n in V)
SYM = sympy.symbols(V)

exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exps, st.integers(-5, 5), max_size=6).map(lambda d: SparsePoly(V, d))
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def to_sympy(p: SparsePoly):
    return sum((c * sympy.Mul(*[s ** e for s, e in zip(SYM, k)]) for k, c in p.terms.items()), sympy.Integer(0))


def rf_to_sympy(f: RatFunc):
    return to_sympy(f.num) / to_sympy(f.den)


# ---------------------------------------------------------------------------
# SparsePoly


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_poly_ring_ops_match_sympy(a, b):
    assert sympy.expand(to_sympy(a + b) - (to_sympy(a) + to_sympy(b))) == 0
    assert sympy.expand(to_sympy(a - b) - (to_sympy(a) - to_sympy(b))) == 0
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@settings(max_examples=40, deadline=None)
@given(polys, nonzero_polys)
def test_exact_division_roundtrip(a, b):
    assert poly_exact_div(a * b, b) == a


@settings(max_examples=40, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == SparsePoly.zero(V)


def test_exact_division_rejects_remainder():
    with pytest.raises(NotDivisible):
        poly_exact_div(1 + X1, 1 - X1)
    assert try_exact_div(1 + X1, 1 - X1) is None
    assert try_exact_div(1 - X1 ** 3, 1 - X1) == 1 + X1 + X1 ** 2


def test_binomial_chain_division():
    q = T * T
    b = 1 - q * X1 ** 2 * X2 ** 2
    assert poly_exact_div(b * (1 - X1) * (2 + X2), b) == (1 - X1) * (2 + X2)


def test_variable_mismatch():
    other = SparsePoly.gen(("t", "y1", "y2"), "y1")
    with pytest.raises(VariableMismatch):
        X1 + other


def test_poly_basics():
    p = 3 * X1 ** 2 * X2 - T + 1
    assert p.nterms == 3
    assert p.constant_term() == 1
    assert p.degree("x1") == 2 and p.degree() == 3
    assert p.specialize("t", 2) == 3 * X1 ** 2 * X2 - 1
    assert p.evaluate({"t": 1, "x1": 2, "x2": 3}) == 36
    assert SparsePoly.from_json(p.to_json()) == p
    assert str(SparsePoly.zero(V)) == "0"


def test_big_integer_coefficients():
    big = 10 ** 40
    p = big * X1 + 1
    assert (p * p).terms[(0, 2, 0)] == big * big


# ---------------------------------------------------------------------------
# RatFunc


rats = st.tuples(polys, nonzero_polys).map(lambda nd: RatFunc(nd[0], nd[1]))


@settings(max_examples=40, deadline=None)
@given(rats, rats)
def test_ratfunc_field_ops_match_sympy(f, g):
    assert sympy.cancel(rf_to_sympy(f + g) - (rf_to_sympy(f) + rf_to_sympy(g))) == 0
    assert sympy.cancel(rf_to_sympy(f * g) - rf_to_sympy(f) * rf_to_sympy(g)) == 0


@settings(max_examples=30, deadline=None)
@given(rats, rats)
def test_ratfunc_equality_is_cross_multiplication(f, g):
    same = sympy.cancel(rf_to_sympy(f) - rf_to_sympy(g)) == 0
    assert (f == g) == same


def test_ratfunc_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        RatFunc(X1, SparsePoly.zero(V))


def test_ratfunc_roundtrip_dict():
    f = RatFunc(1 - X1 * X2, (1 - X1) * (1 - X2))
    assert RatFunc.from_dict(f.to_dict()) == f


def test_monomial_map_substitution():
    # x1 -> t x1 x2, x2 -> 1/(t^2 x2)
    rule = MonomialMap(((1, 1, (1, 1)), (1, -2, (0, -1))))
    f = RatFunc(X1 * X2)
    g = f.substitute(rule)
    assert g == RatFunc(X1, T)
    assert rule.then(MonomialMap.identity(2)).images == rule.images


# ---------------------------------------------------------------------------
# series


def test_series_of_geometric():
    s = series_expand(RatFunc(SparsePoly.one(V), 1 - X1 - X2), 5)
    for a in range(6):
        for b in range(6 - a):
            assert s.coefficient((a, b)) == math.comb(a + b, a)


def test_series_against_sympy():
    q = T * T
    f = RatFunc(1 - X1 * X2, (1 - X1) * (1 - X2) * (1 - q * X1 ** 2 * X2 ** 2))
    s = series_expand(f, 6)
    t, x1, x2 = SYM
    expr = sympy.series(sympy.series(rf_to_sympy(f), x1, 0, 7).removeO(), x2, 0, 7).removeO()
    poly = sympy.Poly(sympy.expand(expr), x1, x2)
    for (a, b), c in poly.terms():
        if a + b <= 6:
            got = s.coefficient((a, b))
            assert sympy.expand(sum(v * t ** k for k, v in enumerate(got.coeffs)) - c) == 0


def test_series_requires_unit_constant():
    with pytest.raises(NotExpandable):
        series_expand(RatFunc(SparsePoly.one(V), X1 + X2), 3)


def test_geometric_product_matches_expansion():
    factors = [((0, 1, 0), 1), ((2, 1, 1), 1)]
    terms = geometric_product(V, factors, 6)
    direct = series_expand(RatFunc(SparsePoly.one(V), (1 - X1) * (1 - T ** 2 * X1 * X2)), 6)
    assert terms == direct.terms


def test_coefficient_extraction():
    f = RatFunc(SparsePoly.one(V), (1 - X1) * (1 - X2))
    # coefficient of x2^2, as a function of x1
    g = coeff_extract_univariate(f, 0, (2,))
    assert g == RatFunc(SparsePoly.one(V), 1 - X1)


# ---------------------------------------------------------------------------
# UPoly


@given(st.lists(st.integers(-50, 50), max_size=6))
def test_upoly_parse_roundtrip(coeffs):
    p = UPoly(tuple(coeffs))
    assert UPoly.parse(str(p)) == p


def test_upoly_evaluate():
    p = UPoly.parse("q^2 - 3*q + 1")
    assert p(3) == 1 and p.degree == 2
    assert str(UPoly(())) == "0"


# ---------------------------------------------------------------------------
# FactoredRational


def test_factored_matches_ratfunc():
    key = (2, 2, 2)  # 1 - t^2 x1^2 x2^2
    f = FactoredRational({(0, 0, 0): 1, (0, 1, 1): -1}, {key: 1, (0, 1, 0): 1})
    r = f.to_ratfunc(V)
    assert r == RatFunc(1 - X1 * X2, (1 - T ** 2 * X1 ** 2 * X2 ** 2) * (1 - X1))


def test_factored_equality_over_different_denominators():
    a = FactoredRational({(0, 0, 0): 1}, {(0, 1, 0): 1})
    b = FactoredRational({(0, 0, 0): 1, (0, 1, 0): 1}, {(0, 2, 0): 1})
    assert a == b
    assert a.cancel() == b.cancel()


def test_factored_parity_split():
    f = FactoredRational({(0, 0, 0): 1, (0, 0, 1): 2, (0, 1, 1): 3}, {(0, 0, 2): 1})
    even, odd = f.split_parity([0, 0, 1])
    assert (even + odd) == f
    assert set(odd.num) == {(0, 0, 1), (0, 1, 1)}
