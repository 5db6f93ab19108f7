"""The W-invariant function f, its numerator f0, coefficients and p-part polynomial.

``f0 = sum_w j(w, x) (1|w)(x)`` and ``f = f0 / Delta``.  The sum is done in
factored form (Laurent numerator over binomials ``1 - t^e x^{2a}``), which
keeps additions cheap and makes every cancellation an exact chain test.
"""
from __future__ import annotations

import csv
import io
import json
import time
from collections import Counter
from dataclasses import dataclass, field

from .action import ActionContext, bar_action, cocycle_exponent, one_bar
from .algebra._terms import div_binomial, iadd_terms, shift_terms
from .algebra.factored import FactoredRational
from .algebra.poly import SparsePoly
from .algebra.ratfunc import RatFunc
from .algebra.series import SeriesTruncation, _mul_trunc, _xdeg, geometric_product
from .algebra.upoly import UPoly
from .rootsys import DEFAULT_CAP, RootSystem, enumerate_weyl, rho_minus_w_rho


class BudgetExceeded(RuntimeError):
    """The exact W-sum went over its time or term budget."""


class CertificationError(ArithmeticError):
    """f times D failed to divide out to a polynomial (an implementation bug)."""


def _count_terms(f: FactoredRational) -> int:
    return len(f.num)


@dataclass
class InvariantFunction:
    rs: RootSystem
    ctx: ActionContext = field(repr=False)
    f0_factored: FactoredRational = field(repr=False)
    ppart: SparsePoly = field(repr=False)
    build_seconds: float = 0.0

    @property
    def vars(self):
        return self.ctx.vars

    @property
    def delta(self) -> SparsePoly:
        return self.ctx.delta

    @property
    def D(self) -> SparsePoly:
        return self.ctx.D

    @property
    def f_factored(self) -> FactoredRational:
        return FactoredRational(dict(self.ppart.terms), Counter(self.ctx.d_keys()))

    @property
    def f(self) -> RatFunc:
        return RatFunc(self.ppart, self.D)

    @property
    def f0(self) -> RatFunc:
        return self.f0_factored.to_ratfunc(self.vars)

    # serialization ------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "root_system": self.rs.to_dict(),
            "vars": list(self.vars),
            "ppart": self.ppart.to_dict(),
            "D": self.D.to_dict(),
            "delta": self.delta.to_dict(),
            "f": self.f.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> "InvariantFunction":
        """Rebuild from a serialized record.

        ``f0`` is recomputed as ``ppart * Delta / D`` (no W-sum).  The stored
        ``f`` is cross-checked against ``ppart / D`` so a corrupted file is
        caught here rather than silently trusted.
        """
        rs = RootSystem.from_dict(data["root_system"])
        ctx = ActionContext(rs)
        ppart = SparsePoly.from_dict(data["ppart"])
        if "f" in data:
            f = RatFunc.from_dict(data["f"])
            if f != RatFunc(ppart, ctx.D):
                raise ValueError("stored f disagrees with stored ppart / D")
        num = dict(ppart.terms)
        for k in ctx.delta_keys():
            num = _mul_binomial(num, k)
        f0 = FactoredRational(num, Counter(ctx.d_keys())).cancel()
        return cls(rs, ctx, f0, ppart)

    @classmethod
    def from_json(cls, text: str) -> "InvariantFunction":
        return cls.from_dict(json.loads(text))


def _mul_binomial(terms: dict, key) -> dict:
    out = dict(terms)
    iadd_terms(out, shift_terms(terms, key), -1)
    return out


# ---------------------------------------------------------------------------
# construction


def weyl_sum(rs: RootSystem, ctx: ActionContext | None = None, cap: int = DEFAULT_CAP,
             term_budget: int | None = None, time_budget: float | None = None) -> FactoredRational:
    """``f0 = sum_w j(w,x) (1|w)`` in factored form, fully cancelled."""
    ctx = ctx or ActionContext(rs)
    start = time.monotonic()
    total = FactoredRational({}, Counter())
    for w in enumerate_weyl(rs, cap):
        sign, e = cocycle_exponent(w, ctx)
        total = total + one_bar(w, ctx).mul_monomial(e, sign)
        if term_budget is not None and _count_terms(total) > term_budget:
            raise BudgetExceeded(f"W-sum numerator exceeded {term_budget} terms")
        if time_budget is not None and time.monotonic() - start > time_budget:
            raise BudgetExceeded(f"W-sum exceeded {time_budget}s")
    return total.cancel()


def _times_binomials(f: FactoredRational, keys) -> FactoredRational:
    """Multiply by ``prod (1 - X^k)``, cancelling against the denominator first."""
    num, den = f.num, Counter(f.den)
    for k in keys:
        if den[k] > 0:
            den[k] -= 1
        else:
            num = _mul_binomial(num, k)
    return FactoredRational(num, +den)


def ppart_from_f0(f0: FactoredRational, ctx: ActionContext) -> SparsePoly:
    """Certified polynomial ``f * D = f0 * D / Delta``."""
    fD = _times_binomials(f0, ctx.d_keys())
    num = fD.num
    for k in ctx.delta_keys():
        if fD.den[k] > 0:
            raise CertificationError("Delta factor already present in the denominator")
        q = div_binomial(num, k)
        if q is None:
            raise CertificationError(f"numerator of f0 * D not divisible by 1 - X^{k}")
        num = q
    if +fD.den:
        raise CertificationError(f"f * D keeps denominator factors {dict(+fD.den)}")
    if any(v < 0 for e in num for v in e):
        raise CertificationError("f * D has negative exponents")
    return SparsePoly(ctx.vars, num)


def build_f(rs: RootSystem, cap: int = DEFAULT_CAP, term_budget: int | None = None,
            time_budget: float | None = None) -> InvariantFunction:
    """Exact construction of f for ``rs``.

    Raises ``EnumerationCapExceeded`` if |W| is over ``cap`` and
    ``BudgetExceeded`` if the exact sum is too large; see
    ``series_coefficients`` for the truncated fallback.
    """
    t0 = time.monotonic()
    ctx = ActionContext(rs)
    f0 = weyl_sum(rs, ctx, cap, term_budget, time_budget)
    ppart = ppart_from_f0(f0, ctx)
    inv = InvariantFunction(rs, ctx, f0, ppart, time.monotonic() - t0)
    if ppart.constant_term() != 1:
        raise CertificationError("f(0) != 1")
    return inv


# ---------------------------------------------------------------------------
# coefficients


@dataclass
class CoeffTable:
    """a(k_1..k_r; q) for every k with |k| <= N (zero entries included)."""

    rs: RootSystem
    max_total_degree: int
    entries: dict
    source: str = "exact"

    def __getitem__(self, k) -> UPoly:
        k = tuple(k)
        if sum(k) > self.max_total_degree:
            raise KeyError(f"{k} is beyond total degree {self.max_total_degree}")
        return self.entries.get(k, UPoly((), "q"))

    def specialize(self, q: int) -> dict:
        return {k: v(q) for k, v in self.entries.items()}

    def keys(self):
        return _all_exponents(self.rs.rank, self.max_total_degree)

    def rows(self, q: int | None = None):
        for k in self.keys():
            v = self[k]
            yield k, (str(v) if q is None else v(q))

    def to_csv(self, q: int | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"k{i + 1}" for i in range(self.rs.rank)] + ["coefficient"])
        for k, v in self.rows(q):
            w.writerow(list(k) + [v])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "root_system": self.rs.to_dict(),
            "max_total_degree": self.max_total_degree,
            "source": self.source,
            "entries": [[list(k), str(self[k])] for k in self.keys()],
        }

    @classmethod
    def from_dict(cls, data) -> "CoeffTable":
        rs = RootSystem.from_dict(data["root_system"])
        entries = {tuple(k): UPoly.parse(v) for k, v in data["entries"]}
        return cls(rs, int(data["max_total_degree"]), {k: v for k, v in entries.items() if not v.is_zero()},
                   data.get("source", "exact"))


def _all_exponents(r: int, N: int):
    """All k in N^r with |k| <= N, graded then lexicographic."""
    def parts(n, slots):
        if slots == 1:
            yield (n,)
            return
        for first in range(n + 1):
            for rest in parts(n - first, slots - 1):
                yield (first, *rest)

    return [k for d in range(N + 1) for k in parts(d, r)]


def _series_to_table(rs, terms: dict, N: int, source: str) -> CoeffTable:
    grouped: dict = {}
    for e, c in terms.items():
        if e[0] % 2:
            raise ArithmeticError(f"odd power of sqrt(q) at x^{e[1:]}")
        if e[0] < 0:
            raise ArithmeticError(f"negative power of q at x^{e[1:]}")
        grouped.setdefault(e[1:], {})[e[0] // 2] = c
    return CoeffTable(rs, N, {k: UPoly.from_dict(v, "q") for k, v in grouped.items()}, source)


def f_series(inv: InvariantFunction, N: int) -> SeriesTruncation:
    terms = geometric_product(inv.vars, [(k, 1) for k in inv.ctx.d_keys()], N,
                              start={e: c for e, c in inv.ppart.terms.items() if _xdeg(e) <= N})
    return SeriesTruncation(inv.vars, N, terms)


def coeff_table(inv: InvariantFunction, N: int) -> CoeffTable:
    return _series_to_table(inv.rs, f_series(inv, N).terms, N, "exact")


def series_coefficients(rs: RootSystem, N: int, cap: int = DEFAULT_CAP,
                        time_budget: float | None = None) -> CoeffTable:
    """CoeffTable of f to degree N without forming f exactly.

    Each term ``j(w) (1|w)`` is expanded as a Laurent series truncated at
    total degree N, the truncations are summed, and the sum is multiplied by
    the expansion of ``1/Delta``.  Truncation is linear, so the result is the
    exact truncation of f.
    """
    start = time.monotonic()
    ctx = ActionContext(rs)
    acc: dict = {}
    for w in enumerate_weyl(rs, cap):
        sign, e = cocycle_exponent(w, ctx)
        term = one_bar(w, ctx).mul_monomial(e, sign)
        iadd_terms(acc, _laurent_series(term, N))
        if time_budget is not None and time.monotonic() - start > time_budget:
            raise BudgetExceeded(f"series construction exceeded {time_budget}s")
    if any(_xdeg(e) < 0 for e in acc):
        raise ArithmeticError("f0 has terms of negative total degree")
    inv_delta = geometric_product(ctx.vars, [(k, 1) for k in ctx.delta_keys()], N)
    return _series_to_table(rs, _mul_trunc(acc, inv_delta, N), N, "series")


def _laurent_series(f: FactoredRational, N: int) -> dict:
    if not f.num:
        return {}
    low = min(_xdeg(e) for e in f.num)
    inv = geometric_product([0] * f.nvars, sorted(f.den.items()), N - low)
    out: dict = {}
    for e, c in f.num.items():
        room = N - _xdeg(e)
        for g, d in inv.items():
            if _xdeg(g) <= room:
                key = tuple(a + b for a, b in zip(e, g))
                v = out.get(key, 0) + c * d
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


# ---------------------------------------------------------------------------
# p-part polynomial and q = 1


def ppart_polynomial(inv: InvariantFunction) -> SparsePoly:
    return inv.ppart


def stable_form(inv: InvariantFunction) -> SparsePoly:
    """``f * D`` after ``x_i -> t x_i``."""
    return inv.ppart.map_exponents(lambda e: (e[0] + sum(e[1:]), *e[1:]))


def x_monomial_count(p: SparsePoly) -> int:
    """Number of distinct x-monomials, each carrying a polynomial coefficient in t."""
    return len(p.x_support())


def stable_terms_by_weyl(inv: InvariantFunction) -> tuple[set, set]:
    """Split the x-support of the p-part polynomial into the W-indexed part and the rest."""
    ws = {rho_minus_w_rho(w) for w in enumerate_weyl(inv.rs)}
    support = inv.ppart.x_support()
    return support & ws, support - ws


def f0_closed_form_q_one(rs: RootSystem, cap: int = DEFAULT_CAP) -> SparsePoly:
    """``sum_w (-1)^{l(w) + d(rho - w rho)} x^{rho - w rho}``."""
    vars = ActionContext(rs).vars
    terms: dict = {}
    for w in enumerate_weyl(rs, cap):
        a = rho_minus_w_rho(w)
        e = (0, *a)
        if e in terms:
            raise ArithmeticError(f"x^{a} occurs twice")
        terms[e] = (-1) ** (w.length + sum(a))
    return SparsePoly(vars, terms)


def f0_construction_q_one(rs: RootSystem, cap: int = DEFAULT_CAP) -> SparsePoly:
    """Run the W-sum with every power of t dropped."""
    ctx = ActionContext(rs, q_one=True)
    f0 = weyl_sum(rs, ctx, cap)
    if f0.den:
        raise ArithmeticError(f"f0(x;1) kept denominator {dict(f0.den)}")
    if any(v < 0 for e in f0.num for v in e):
        raise ArithmeticError("f0(x;1) has negative exponents")
    return SparsePoly(ctx.vars, f0.num)


def f0_at_q_one(rs: RootSystem, cap: int = DEFAULT_CAP) -> SparsePoly:
    closed = f0_closed_form_q_one(rs, cap)
    built = f0_construction_q_one(rs, cap)
    if closed != built:
        raise ArithmeticError("closed form and construction of f0(x;1) disagree")
    return closed


# ---------------------------------------------------------------------------
# structural checks on a built f


def is_invariant(inv: InvariantFunction, i: int) -> bool:
    return bar_action(inv.f_factored, i, inv.ctx) == inv.f_factored


def limiting_condition(inv: InvariantFunction, i: int) -> bool:
    """With ``x_j = 0`` for j adjacent to i, ``(1 - x_i) f`` does not depend on x_i."""
    f = inv.f
    for j in inv.rs.neighbors(i):
        f = f.specialize(inv.vars[j + 1], 0)
    xi = inv.vars[i + 1]
    g = f * RatFunc(SparsePoly.one(inv.vars) - SparsePoly.gen(inv.vars, xi))
    return g == g.specialize(xi, 0)


def normalization(inv: InvariantFunction) -> bool:
    return inv.ppart.constant_term() == 1 and inv.D.constant_term() == 1
