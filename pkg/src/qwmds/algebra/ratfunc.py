"""Rational functions as unreduced numerator/denominator pairs.

No multivariate gcd is attempted.  Equality is decided by
cross-multiplication, and cancellation is only ever opportunistic: a
common monomial content is always stripped, and callers may pass a list of
candidate factors to divide out when both sides admit them exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from ._terms import add_terms, min_exponents, mul_terms, shift_terms
from .poly import SparsePoly, VariableMismatch, default_vars, try_exact_div


@dataclass(frozen=True)
class MonomialMap:
    """Substitution ``x_j -> sign_j * t**texp_j * x**xexp_j`` (t is fixed).

    ``images[j]`` describes the image of the j-th x-variable (0-based);
    image exponents may be negative.
    """

    images: tuple[tuple[int, int, tuple[int, ...]], ...]

    @property
    def rank(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, rank: int) -> "MonomialMap":
        return cls(tuple((1, 0, tuple(int(i == j) for i in range(rank))) for j in range(rank)))

    def apply_exponent(self, e: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        """Image of the monomial ``t**e[0] * x**e[1:]`` as (sign, exponent)."""
        sign = 1
        tpow = e[0]
        xs = [0] * self.rank
        for k, (s, te, xe) in zip(e[1:], self.images):
            if not k:
                continue
            if s < 0 and k % 2:
                sign = -sign
            tpow += k * te
            for i, v in enumerate(xe):
                xs[i] += k * v
        return sign, (tpow, *xs)

    def apply_terms(self, terms: dict) -> dict:
        out: dict = {}
        for e, c in terms.items():
            s, f = self.apply_exponent(e)
            v = out.get(f, 0) + s * c
            if v:
                out[f] = v
            else:
                out.pop(f, None)
        return out

    def then(self, other: "MonomialMap") -> "MonomialMap":
        """Substituting ``self`` and then ``other`` equals substituting the result."""
        imgs = []
        for s, te, xe in self.images:
            s2, f = other.apply_exponent((te, *xe))
            imgs.append((s * s2, f[0], tuple(f[1:])))
        return MonomialMap(tuple(imgs))


def _clear(num_terms: dict, den_terms: dict):
    mins = min_exponents(num_terms, den_terms)
    shift = [-m if m < 0 else 0 for m in mins]
    if any(shift):
        num_terms = shift_terms(num_terms, shift)
        den_terms = shift_terms(den_terms, shift)
    return num_terms, den_terms


def _strip_content(num_terms: dict, den_terms: dict):
    g = 0
    for c in num_terms.values():
        g = gcd(g, c)
    for c in den_terms.values():
        g = gcd(g, c)
        if g == 1:
            return num_terms, den_terms
    if g > 1:
        num_terms = {e: c // g for e, c in num_terms.items()}
        den_terms = {e: c // g for e, c in den_terms.items()}
    return num_terms, den_terms


def _strip_common_monomial(num_terms: dict, den_terms: dict):
    if not num_terms:
        return num_terms, den_terms
    mins = min_exponents(num_terms, den_terms)
    if any(mins):
        neg = [-m for m in mins]
        return shift_terms(num_terms, neg), shift_terms(den_terms, neg)
    return num_terms, den_terms


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: SparsePoly, den: SparsePoly | None = None):
        if den is None:
            den = SparsePoly.one(num.vars)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def _from_terms(cls, vars, num_terms, den_terms, strip=True):
        num_terms, den_terms = _clear(num_terms, den_terms)
        if strip:
            num_terms, den_terms = _strip_common_monomial(num_terms, den_terms)
            num_terms, den_terms = _strip_content(num_terms, den_terms)
        if not num_terms:
            den_terms = {(0,) * len(vars): 1}
        return cls(SparsePoly._wrap(vars, num_terms), SparsePoly._wrap(vars, den_terms))

    @classmethod
    def constant(cls, vars, c: int = 1):
        return cls(SparsePoly.constant(vars, c))

    @property
    def vars(self):
        return self.num.vars

    @property
    def rank(self) -> int:
        return len(self.vars) - 1

    def den_constant_term(self) -> int:
        return self.den.constant_term()

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.vars != self.vars:
                raise VariableMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, SparsePoly):
            return RatFunc(other)
        if isinstance(other, int):
            return RatFunc.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc._from_terms(self.vars, add_terms(self.num.terms, other.num.terms), self.den.terms)
        num = add_terms(mul_terms(self.num.terms, other.den.terms), mul_terms(other.num.terms, self.den.terms))
        return RatFunc._from_terms(self.vars, num, mul_terms(self.den.terms, other.den.terms))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc._from_terms(self.vars, mul_terms(self.num.terms, other.num.terms),
                                   mul_terms(self.den.terms, other.den.terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc._from_terms(self.vars, mul_terms(self.num.terms, other.den.terms),
                                   mul_terms(self.den.terms, other.num.terms))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc.constant(self.vars, 1) / (self ** -n)
        return RatFunc(self.num ** n, self.den ** n)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul_terms(self.num.terms, other.den.terms) == mul_terms(other.num.terms, self.den.terms)

    __hash__ = None

    def __repr__(self):
        return f"RatFunc(({self.num}) / ({self.den}))"

    # transformations -----------------------------------------------------------
    def substitute(self, rule: MonomialMap) -> "RatFunc":
        num = rule.apply_terms(self.num.terms)
        den = rule.apply_terms(self.den.terms)
        if not den:
            raise ZeroDivisionError("substitution annihilates the denominator")
        return RatFunc._from_terms(self.vars, num, den)

    def specialize(self, var, value: int) -> "RatFunc":
        den = self.den.specialize(var, value)
        if den.is_zero():
            raise ZeroDivisionError(f"denominator vanishes at {var}={value}")
        return RatFunc._from_terms(self.vars, self.num.specialize(var, value).terms, den.terms)

    def reduce(self, candidates: Iterable[SparsePoly] = ()) -> "RatFunc":
        """Divide out every candidate factor that divides both sides exactly."""
        num, den = self.num, self.den
        for b in candidates:
            if b.is_constant():
                continue
            while True:
                qd = try_exact_div(den, b)
                if qd is None:
                    break
                qn = try_exact_div(num, b)
                if qn is None:
                    break
                num, den = qn, qd
        if den.constant_term() < 0 or (den.constant_term() == 0 and den.leading_term()[1] < 0):
            num, den = -num, -den
        return RatFunc._from_terms(self.vars, num.terms, den.terms)

    def evaluate(self, values):
        return self.num.evaluate(values) / self.den.evaluate(values)

    def to_dict(self) -> dict:
        return {"num": self.num.to_dict(), "den": self.den.to_dict()}

    @classmethod
    def from_dict(cls, data) -> "RatFunc":
        return cls(SparsePoly.from_dict(data["num"]), SparsePoly.from_dict(data["den"]))


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def substitute(f: RatFunc, rule: MonomialMap) -> RatFunc:
    return f.substitute(rule)


def x_vars(rank: int) -> Sequence[SparsePoly]:
    """Generators ``t, x1, ..., xr`` of ``Z[t, x1..xr]`` for interactive use."""
    vars = default_vars(rank)
    return [SparsePoly.gen(vars, v) for v in vars]
