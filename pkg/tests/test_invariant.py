import json

import pytest

from conftest import built
from qwmds.algebra import RatFunc, SparsePoly, series_expand
from qwmds.invariant import (
    BudgetExceeded,
    CoeffTable,
    InvariantFunction,
    build_f,
    coeff_table,
    f0_at_q_one,
    is_invariant,
    limiting_condition,
    normalization,
    series_coefficients,
    stable_form,
    stable_terms_by_weyl,
    x_monomial_count,
)
from qwmds.algebra.upoly import UPoly
from qwmds.rootsys import EnumerationCapExceeded, build_root_system


def gens(inv):
    return [SparsePoly.gen(inv.vars, v) for v in inv.vars]


def closed_a2(inv):
    t, x1, x2 = gens(inv)
    return RatFunc(1 - x1 * x2, (1 - x1) * (1 - x2) * (1 - t ** 2 * x1 ** 2 * x2 ** 2))


def closed_a3(inv):
    t, x1, x2, x3 = gens(inv)
    q = t * t
    num = (1 - x1 * x2 - x2 * x3 + x1 * x2 * x3 + q * x1 * x2 ** 2 * x3 - q * x1 ** 2 * x2 ** 2 * x3
           - q * x1 * x2 ** 2 * x3 ** 2 + q * x1 ** 2 * x2 ** 3 * x3 ** 2)
    den = ((1 - x1) * (1 - x2) * (1 - x3) * (1 - q * x1 ** 2 * x2 ** 2) * (1 - q * x2 ** 2 * x3 ** 2)
           * (1 - q * q * x1 ** 2 * x2 ** 2 * x3 ** 2))
    return RatFunc(num, den)


def test_a1(inv_a1):
    t, x = gens(inv_a1)
    assert inv_a1.f == RatFunc(SparsePoly.one(inv_a1.vars), 1 - x)
    assert inv_a1.ppart == 1 + x


def test_a2_closed_form(inv_a2):
    assert inv_a2.f == closed_a2(inv_a2)


def test_a3_closed_form(inv_a3):
    assert inv_a3.f == closed_a3(inv_a3)


def test_f_is_f0_over_delta(inv_a2, inv_a3):
    for inv in (inv_a2, inv_a3):
        assert inv.f == inv.f0 / RatFunc(inv.delta)


@pytest.mark.parametrize("name", ["A1", "A2", "A3"])
def test_invariance_small(name):
    inv = built(name[0], int(name[1]))
    assert all(is_invariant(inv, i) for i in range(inv.rs.rank))


def test_invariance_a4_d4(inv_a4, inv_d4):
    for inv in (inv_a4, inv_d4):
        assert all(is_invariant(inv, i) for i in range(inv.rs.rank)), inv.rs.name


def test_limit_and_normalization(inv_a1, inv_a2, inv_a3, inv_a4, inv_d4):
    for inv in (inv_a1, inv_a2, inv_a3, inv_a4, inv_d4):
        assert normalization(inv)
        assert all(limiting_condition(inv, i) for i in range(inv.rs.rank)), inv.rs.name


def test_perturbed_f_breaks_invariance(inv_a2):
    t, x1, x2 = gens(inv_a2)
    bad = InvariantFunction(inv_a2.rs, inv_a2.ctx, inv_a2.f0_factored, inv_a2.ppart + x1 ** 3)
    assert not is_invariant(bad, 0)


def test_diagram_symmetry(inv_a2, inv_a3):
    for inv in (inv_a2, inv_a3):
        flipped = inv.ppart.map_exponents(lambda e: (e[0], *reversed(e[1:])))
        assert flipped == inv.ppart


# ---------------------------------------------------------------------------
# coefficients


def siegel(k, l):
    m = min(k, l)
    return UPoly.from_dict({m // 2: 1}) if m % 2 == 0 else UPoly(())


def test_a2_table_examples(inv_a2):
    table = coeff_table(inv_a2, 6)
    assert table[(2, 2)] == UPoly.parse("q")
    assert table[(1, 1)] == 0
    assert table[(0, 0)] == 1
    assert table.specialize(3)[(2, 2)] == 3


def test_a2_table_matches_min_rule(inv_a2):
    table = coeff_table(inv_a2, 16)
    for k in range(17):
        for l in range(17 - k):
            assert table[(k, l)] == siegel(k, l), (k, l)


def test_table_matches_expansion_of_closed_form(inv_a3):
    table = coeff_table(inv_a3, 6)
    s = series_expand(closed_a3(inv_a3), 6)
    for k in table.keys():
        direct = s.coefficient(k)
        assert all(c == 0 for c in direct.coeffs[1::2])
        assert table[k].coeffs == direct.coeffs[::2], k


def test_series_fallback_agrees(inv_a3):
    exact = coeff_table(inv_a3, 6)
    fallback = series_coefficients(inv_a3.rs, 6)
    assert fallback.source == "series"
    assert {k: exact[k] for k in exact.keys()} == {k: fallback[k] for k in fallback.keys()}


def test_table_csv_and_dict_roundtrip(inv_a2):
    table = coeff_table(inv_a2, 4)
    again = CoeffTable.from_dict(json.loads(json.dumps(table.to_dict())))
    assert again.to_csv() == table.to_csv()
    lines = table.to_csv(3).splitlines()
    assert lines[0] == "k1,k2,coefficient"
    assert len(lines) == 1 + 15
    assert "2,2,3" in lines


def test_table_beyond_degree(inv_a2):
    with pytest.raises(KeyError):
        coeff_table(inv_a2, 3)[(2, 2)]


# ---------------------------------------------------------------------------
# p-part polynomial


def test_a2_stable_form(inv_a2):
    st = stable_form(inv_a2)
    t, x, y = gens(inv_a2)
    # computed sign of the top term is negative
    assert st == 1 + t * x + t * y - t ** 3 * x ** 2 * y - t ** 3 * x * y ** 2 - t ** 4 * x ** 2 * y ** 2
    assert x_monomial_count(st) == 6


def test_a3_term_counts(inv_a3):
    st = stable_form(inv_a3)
    assert x_monomial_count(st) == 26
    weyl, extra = stable_terms_by_weyl(inv_a3)
    assert len(weyl) == 24
    assert extra == {(1, 2, 1), (2, 2, 2)}


def test_ppart_has_even_t(inv_a3, inv_d4):
    for inv in (inv_a3, inv_d4):
        assert all(e[0] % 2 == 0 for e in inv.ppart.terms)


def test_serialization_roundtrip(inv_a3):
    again = InvariantFunction.from_json(inv_a3.to_json())
    assert again.ppart == inv_a3.ppart
    assert again.f == inv_a3.f


def test_corrupt_record_is_rejected(inv_a2):
    data = inv_a2.to_dict()
    data["ppart"]["terms"] = data["ppart"]["terms"][:-1]
    with pytest.raises(ValueError):
        InvariantFunction.from_dict(data)


# ---------------------------------------------------------------------------
# q = 1


def test_q_one_examples():
    a1 = f0_at_q_one(build_root_system("A", 1))
    t, x = (SparsePoly.gen(a1.vars, v) for v in a1.vars)
    assert a1 == 1 + x
    a2 = f0_at_q_one(build_root_system("A", 2))
    t, x1, x2 = (SparsePoly.gen(a2.vars, v) for v in a2.vars)
    assert a2 == 1 + x1 + x2 - x1 ** 2 * x2 - x1 * x2 ** 2 - x1 ** 2 * x2 ** 2


@pytest.mark.parametrize("family,rank,order", [("A", 2, 6), ("A", 3, 24), ("A", 4, 120), ("D", 4, 192)])
def test_q_one_term_count(family, rank, order):
    p = f0_at_q_one(build_root_system(family, rank))
    assert p.nterms == order


# ---------------------------------------------------------------------------
# limits


def test_cap_and_budget():
    with pytest.raises(EnumerationCapExceeded):
        build_f(build_root_system("A", 3), cap=10)
    with pytest.raises(BudgetExceeded):
        build_f(build_root_system("A", 4), term_budget=50)


def test_observed_nonnegativity(inv_a3):
    table = coeff_table(inv_a3, 6)
    assert all(v(p) >= 0 for v in table.entries.values() for p in (3, 5, 7))
