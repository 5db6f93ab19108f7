"""Laurent numerators over products of binomials ``1 - X**e``.

Every rational function produced by the W-action on ``1`` has this shape,
with ``e = (t-power, 2*gamma)`` for positive roots ``gamma``.  Keeping the
denominator as a multiset of binomial keys makes addition a matter of
taking the least common multiple of two multisets, and cancellation a
cheap chain-sum test (see ``div_binomial``).
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable

from ._terms import add_terms, div_binomial, min_exponents, mul_terms, shift_terms
from .poly import SparsePoly
from .ratfunc import MonomialMap, RatFunc


def binomial_terms(key: tuple[int, ...]) -> dict:
    return {(0,) * len(key): 1, tuple(key): -1}


def canonical_key(e: tuple[int, ...]):
    """Orient ``1 - X**e`` so its x-part is nonnegative.

    Returns ``(key, unit)`` with ``1 - X**e == unit * (1 - X**key)`` where
    ``unit`` is a signed monomial given as a one-term dict.
    """
    xs = e[1:]
    if not any(xs):
        raise ValueError(f"binomial 1 - X^{e} has no x-dependence")
    if min(xs) >= 0:
        return tuple(e), {(0,) * len(e): 1}
    if max(xs) <= 0:
        # 1 - X^e = -X^e (1 - X^-e)
        return tuple(-v for v in e), {tuple(e): -1}
    raise ValueError(f"binomial 1 - X^{e} has mixed-sign x-part")


class FactoredRational:
    __slots__ = ("num", "den")

    def __init__(self, num: dict, den: Counter | dict | None = None):
        self.num = num
        self.den = Counter(den or {})

    @classmethod
    def one(cls, nvars: int) -> "FactoredRational":
        return cls({(0,) * nvars: 1})

    @classmethod
    def from_poly(cls, p: SparsePoly) -> "FactoredRational":
        return cls(dict(p.terms))

    @property
    def nvars(self) -> int:
        if self.num:
            return len(next(iter(self.num)))
        if self.den:
            return len(next(iter(self.den)))
        raise ValueError("empty FactoredRational has no variable count")

    def is_zero(self) -> bool:
        return not self.num

    def copy(self) -> "FactoredRational":
        return FactoredRational(dict(self.num), Counter(self.den))

    # arithmetic -------------------------------------------------------------
    def _lift(self, target: Counter) -> dict:
        num = self.num
        for key, m in (target - self.den).items():
            b = binomial_terms(key)
            for _ in range(m):
                num = mul_terms(num, b)
        return num

    def __add__(self, other: "FactoredRational") -> "FactoredRational":
        if not self.num:
            return other.copy()
        if not other.num:
            return self.copy()
        lcm = self.den | other.den
        return FactoredRational(add_terms(self._lift(lcm), other._lift(lcm)), lcm)

    def __neg__(self):
        return FactoredRational({e: -c for e, c in self.num.items()}, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        return FactoredRational(mul_terms(self.num, other.num), self.den + other.den)

    def mul_terms(self, terms: dict) -> "FactoredRational":
        return FactoredRational(mul_terms(self.num, terms), self.den)

    def mul_monomial(self, exponent, coef: int = 1) -> "FactoredRational":
        return FactoredRational(shift_terms(self.num, exponent, coef), self.den)

    def divide_by(self, keys: Iterable[tuple[int, ...]]) -> "FactoredRational":
        den = Counter(self.den)
        for k in keys:
            den[k] += 1
        return FactoredRational(self.num, den)

    def cancel(self) -> "FactoredRational":
        """Divide out every denominator binomial that divides the numerator."""
        num, den = self.num, Counter(self.den)
        if not num:
            return FactoredRational({}, Counter())
        for key in sorted(den):
            while den[key] > 0:
                q = div_binomial(num, key)
                if q is None:
                    break
                num = q
                den[key] -= 1
        return FactoredRational(num, +den)

    def try_divide_binomial(self, key) -> "FactoredRational | None":
        q = div_binomial(self.num, key)
        return None if q is None else FactoredRational(q, self.den)

    # substitution -----------------------------------------------------------
    def substitute(self, rule: MonomialMap) -> "FactoredRational":
        """Apply a sign-free monomial substitution to numerator and factors."""
        num = rule.apply_terms(self.num)
        den: Counter = Counter()
        for key, m in self.den.items():
            s, img = rule.apply_exponent(key)
            if s != 1:
                raise ValueError("substitution flips the sign of a denominator binomial")
            ckey, unit = canonical_key(img)
            den[ckey] += m
            (ue, uc), = unit.items()
            if any(ue) or uc != 1:
                # 1/(u*(1-X^k)) : multiply numerator by u^-1 (u is +-monomial)
                inv = tuple(-v * m for v in ue)
                num = shift_terms(num, inv, uc ** m)
        return FactoredRational(num, den)

    def split_parity(self, weights) -> tuple["FactoredRational", "FactoredRational"]:
        """Terms whose weighted exponent sum is even / odd.

        This is the even/odd split for ``x_j -> -x_j`` (j with weight 1)
        provided every denominator binomial is even in those variables.
        """
        for key in self.den:
            if sum(w * k for w, k in zip(weights, key)) % 2:
                raise ValueError("denominator is not even under the sign change")
        even, odd = {}, {}
        for e, c in self.num.items():
            (odd if sum(w * k for w, k in zip(weights, e)) % 2 else even)[e] = c
        return FactoredRational(even, self.den), FactoredRational(odd, self.den)

    # comparison / export --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FactoredRational):
            return NotImplemented
        lcm = self.den | other.den
        return self._lift(lcm) == other._lift(lcm)

    __hash__ = None

    def is_laurent_polynomial(self) -> bool:
        return not self.den

    def to_ratfunc(self, vars) -> RatFunc:
        den = {(0,) * len(vars): 1}
        for key, m in sorted(self.den.items()):
            b = binomial_terms(key)
            for _ in range(m):
                den = mul_terms(den, b)
        return RatFunc._from_terms(tuple(vars), dict(self.num), den)

    def numerator_poly(self, vars) -> tuple[SparsePoly, tuple[int, ...]]:
        """Numerator as a polynomial times ``X**shift`` (shift <= 0 clears Laurent terms)."""
        mins = min_exponents(self.num) or [0] * len(vars)
        shift = tuple(min(m, 0) for m in mins)
        terms = shift_terms(self.num, tuple(-s for s in shift))
        return SparsePoly._wrap(tuple(vars), terms), shift

    def __repr__(self):
        return f"FactoredRational({len(self.num)} terms / {dict(self.den)})"
