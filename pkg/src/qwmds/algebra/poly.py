"""Sparse multivariate polynomials with integer coefficients.

Polynomials live in ``Z[t, x1, ..., xr]`` where ``t`` stands for the square
root of ``q``.  Exponents are nonnegative; arbitrary precision comes for
free from Python ints.
"""
from __future__ import annotations

import heapq
import json
from typing import Iterable, Mapping, Sequence

from ._terms import add_terms, div_binomial, eval_terms_at, mul_terms


class VariableMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder.

    The remainder is attached as ``remainder`` so callers can report it.
    """

    def __init__(self, remainder: "SparsePoly"):
        super().__init__(f"nonzero remainder with {remainder.nterms} terms")
        self.remainder = remainder


def default_vars(rank: int) -> tuple[str, ...]:
    return ("t",) + tuple(f"x{i}" for i in range(1, rank + 1))


class SparsePoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, int] | None = None, *, _trusted=False):
        self.vars = tuple(vars)
        if _trusted:
            self.terms = terms
            return
        clean = {}
        n = len(self.vars)
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != n:
                raise VariableMismatch(f"exponent {e} does not match {self.vars}")
            if min(e, default=0) < 0:
                raise ValueError(f"negative exponent {e}")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    # construction -----------------------------------------------------------
    @classmethod
    def zero(cls, vars):
        return cls(vars, {}, _trusted=True)

    @classmethod
    def constant(cls, vars, c: int = 1):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): int(c)} if c else {}, _trusted=True)

    @classmethod
    def one(cls, vars):
        return cls.constant(vars, 1)

    @classmethod
    def monomial(cls, vars, exps: Sequence[int], coef: int = 1):
        return cls(vars, {tuple(exps): coef})

    @classmethod
    def gen(cls, vars, name: str):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): 1}, _trusted=True)

    @classmethod
    def _wrap(cls, vars, terms):
        return cls(vars, terms, _trusted=True)

    # basic queries ----------------------------------------------------------
    @property
    def nterms(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> int:
        return self.terms.get((0,) * len(self.vars), 0)

    def degree(self, var: str | int | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = var if isinstance(var, int) else self.vars.index(var)
        return max(e[i] for e in self.terms)

    def x_support(self) -> set[tuple[int, ...]]:
        """Distinct exponent vectors after forgetting ``t`` (slot 0)."""
        return {e[1:] for e in self.terms}

    def _check(self, other: "SparsePoly"):
        if self.vars != other.vars:
            raise VariableMismatch(f"{self.vars} vs {other.vars}")

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return SparsePoly.constant(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return SparsePoly._wrap(self.vars, add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return SparsePoly._wrap(self.vars, add_terms(self.terms, other.terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return SparsePoly._wrap(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return SparsePoly.zero(self.vars)
            return SparsePoly._wrap(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return SparsePoly._wrap(self.vars, mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = SparsePoly.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = SparsePoly.constant(self.vars, other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # substitution / specialization -------------------------------------------
    def specialize(self, var: str | int, value: int) -> "SparsePoly":
        """Set one variable to an integer; the variable slot stays with exponent 0."""
        i = var if isinstance(var, int) else self.vars.index(var)
        return SparsePoly._wrap(self.vars, eval_terms_at(self.terms, i, value))

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at arbitrary numeric values (int, Fraction, float, complex)."""
        idx = [values[v] if v in values else None for v in self.vars]
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(idx, e):
                if k:
                    if v is None:
                        raise KeyError("missing value for a variable that occurs")
                    term = term * v ** k
            total = total + term
        return total

    def map_exponents(self, fn) -> "SparsePoly":
        out: dict = {}
        for e, c in self.terms.items():
            f = tuple(fn(e))
            out[f] = out.get(f, 0) + c
        return SparsePoly(self.vars, out)

    def homogeneous_parts(self, slots: Iterable[int]) -> dict[int, "SparsePoly"]:
        """Split by total degree in the given variable slots."""
        slots = tuple(slots)
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e[i] for i in slots), {})[e] = c
        return {d: SparsePoly._wrap(self.vars, t) for d, t in parts.items()}

    # ordering / display -----------------------------------------------------
    def order_key(self, e):
        # graded lex, t (slot 0) compared last
        if self.vars and self.vars[0] == "t":
            return (sum(e),) + e[1:] + e[:1]
        return (sum(e),) + e

    def sorted_terms(self, descending: bool = True) -> list[tuple[tuple, int]]:
        return sorted(self.terms.items(), key=lambda kv: self.order_key(kv[0]), reverse=descending)

    def leading_term(self):
        return max(self.terms.items(), key=lambda kv: self.order_key(kv[0]))

    def __repr__(self):
        return f"SparsePoly({self})"

    def __str__(self):
        return format_terms(self.vars, self.sorted_terms(descending=False))

    # interchange ---------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[list(e), str(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SparsePoly":
        return cls(data["vars"], {tuple(e): int(c) for e, c in data["terms"]})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "SparsePoly":
        return cls.from_dict(json.loads(text))


def format_terms(vars, items) -> str:
    if not items:
        return "0"
    out = []
    for e, c in items:
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(vars, e) if k)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        out.append(("- " if c < 0 else "+ ") + body)
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else "-" + s[1:]


def poly_arith(a: SparsePoly, b: SparsePoly, op: str) -> SparsePoly:
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def _binomial_shape(b: SparsePoly):
    """Return (direction, sign) if ``b == +-(1 - sign*X**direction)``."""
    if len(b.terms) != 2:
        return None
    zero = (0,) * len(b.vars)
    c0 = b.terms.get(zero)
    if c0 not in (1, -1):
        return None
    e = next(k for k in b.terms if k != zero)
    c = b.terms[e]
    if c not in (1, -1):
        return None
    return e, -c * c0, c0


def poly_exact_div(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    """Return ``c`` with ``a == b*c``; raise NotDivisible otherwise.

    Uses division with remainder under the graded order of ``order_key``;
    a single divisor divides exactly iff the remainder is zero.
    """
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return SparsePoly.zero(a.vars)
    shape = _binomial_shape(b)
    if shape is not None:
        direction, sign, c0 = shape
        q = div_binomial(a.terms, direction, sign)
        if q is not None:
            return SparsePoly._wrap(a.vars, {e: c * c0 for e, c in q.items()})
        # fall through to produce a remainder certificate
    key = a.order_key
    lt_e, lt_c = b.leading_term()
    rest = [(e, c) for e, c in b.terms.items() if e != lt_e]
    work = dict(a.terms)
    heap = [tuple(-k for k in key(e)) + (e,) for e in work]
    heapq.heapify(heap)
    quot: dict = {}
    rem: dict = {}
    while heap:
        e = heapq.heappop(heap)[-1]
        c = work.pop(e, 0)
        if not c:
            continue
        diff = tuple(x - y for x, y in zip(e, lt_e))
        if min(diff) >= 0 and c % lt_c == 0:
            m = c // lt_c
            quot[diff] = quot.get(diff, 0) + m
            for f, d in rest:
                g = tuple(x + y for x, y in zip(f, diff))
                if g in work:
                    work[g] -= m * d
                else:
                    work[g] = -m * d
                    heapq.heappush(heap, tuple(-k for k in key(g)) + (g,))
        else:
            rem[e] = c
    if rem:
        raise NotDivisible(SparsePoly(a.vars, rem))
    return SparsePoly(a.vars, quot)


def try_exact_div(a: SparsePoly, b: SparsePoly) -> SparsePoly | None:
    try:
        return poly_exact_div(a, b)
    except NotDivisible:
        return None
