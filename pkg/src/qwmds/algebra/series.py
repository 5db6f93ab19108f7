"""Truncated power series in the x-variables with polynomial-in-t coefficients."""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from ._terms import add_terms, mul_terms
from .poly import SparsePoly
from .ratfunc import RatFunc
from .upoly import UPoly


class NotExpandable(ValueError):
    """The denominator is not a unit at the origin of the x-variables."""


def _xdeg(e) -> int:
    return sum(e) - e[0]


def _truncate(terms: dict, N: int) -> dict:
    return {e: c for e, c in terms.items() if _xdeg(e) <= N}


def _mul_trunc(a: dict, b: dict, N: int) -> dict:
    if not a or not b:
        return {}
    bydeg: dict[int, list] = defaultdict(list)
    for e, c in b.items():
        bydeg[_xdeg(e)].append((e, c))
    degs = sorted(bydeg)
    out: dict = defaultdict(int)
    for ea, ca in a.items():
        room = N - _xdeg(ea)
        for d in degs:
            if d > room:
                break
            for eb, cb in bydeg[d]:
                out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return {e: c for e, c in out.items() if c}


class SeriesTruncation:
    """All x-monomials of total degree <= N of an expansion about x = 0.

    ``terms`` maps full exponent tuples ``(t, x1, ..., xr)`` to integers;
    ``coefficient`` regroups them as polynomials in ``t``.
    """

    __slots__ = ("vars", "max_total_degree", "terms")

    def __init__(self, vars, max_total_degree: int, terms: dict):
        self.vars = tuple(vars)
        self.max_total_degree = int(max_total_degree)
        self.terms = _truncate(terms, self.max_total_degree)

    @property
    def rank(self) -> int:
        return len(self.vars) - 1

    def coefficient(self, k: Iterable[int]) -> UPoly:
        k = tuple(k)
        if sum(k) > self.max_total_degree:
            raise ValueError(f"exponent {k} is beyond the truncation degree {self.max_total_degree}")
        return UPoly.from_dict({e[0]: c for e, c in self.terms.items() if e[1:] == k}, "t")

    def coefficients(self) -> dict[tuple[int, ...], UPoly]:
        grouped: dict = defaultdict(dict)
        for e, c in self.terms.items():
            grouped[e[1:]][e[0]] = c
        return {k: UPoly.from_dict(v, "t") for k, v in grouped.items()}

    def truncate(self, N: int) -> "SeriesTruncation":
        return SeriesTruncation(self.vars, min(N, self.max_total_degree), self.terms)

    def __mul__(self, other: "SeriesTruncation") -> "SeriesTruncation":
        N = min(self.max_total_degree, other.max_total_degree)
        return SeriesTruncation(self.vars, N, _mul_trunc(self.terms, other.terms, N))

    def __add__(self, other: "SeriesTruncation") -> "SeriesTruncation":
        N = min(self.max_total_degree, other.max_total_degree)
        return SeriesTruncation(self.vars, N, add_terms(_truncate(self.terms, N), _truncate(other.terms, N)))

    def __sub__(self, other):
        N = min(self.max_total_degree, other.max_total_degree)
        return SeriesTruncation(self.vars, N, add_terms(_truncate(self.terms, N), _truncate(other.terms, N), -1))

    def __eq__(self, other):
        if not isinstance(other, SeriesTruncation):
            return NotImplemented
        N = min(self.max_total_degree, other.max_total_degree)
        return _truncate(self.terms, N) == _truncate(other.terms, N)

    __hash__ = None

    def as_poly(self) -> SparsePoly:
        return SparsePoly(self.vars, self.terms)

    def __repr__(self):
        return f"SeriesTruncation(N={self.max_total_degree}, {self.as_poly()})"


def series_inverse(den: SparsePoly, N: int) -> dict:
    xslots = range(1, len(den.vars))
    parts = {d: p.terms for d, p in den.homogeneous_parts(xslots).items()}
    d0 = parts.get(0, {})
    zero = (0,) * len(den.vars)
    if set(d0) != {zero} or d0[zero] not in (1, -1):
        raise NotExpandable("denominator restricted to x = 0 must be +1 or -1")
    s = d0[zero]
    inv = {0: {zero: s}}
    for n in range(1, N + 1):
        acc: dict = {}
        for k in range(1, n + 1):
            if k in parts and inv[n - k]:
                acc = add_terms(acc, _mul_trunc(parts[k], inv[n - k], N))
        inv[n] = {e: -s * c for e, c in acc.items()}
    out: dict = {}
    for p in inv.values():
        out.update(p)
    return out


def series_expand(f: RatFunc, N: int) -> SeriesTruncation:
    """Expand ``f`` about x = 0 to total x-degree ``N``."""
    inv = series_inverse(f.den, N)
    return SeriesTruncation(f.vars, N, _mul_trunc(_truncate(f.num.terms, N), inv, N))


def geometric_product(vars, factors: Iterable[tuple[tuple[int, ...], int]], N: int, start: dict | None = None) -> dict:
    """Multiply ``start`` by ``prod 1/(1 - X**e)**m`` truncated at x-degree ``N``.

    Each exponent ``e`` must have positive x-degree (``e[0]`` is the t-power
    and may be any integer, so this also serves Laurent-in-t series).
    """
    zero = (0,) * len(vars)
    acc = dict(start) if start is not None else {zero: 1}
    for e, mult in factors:
        if _xdeg(e) <= 0:
            raise NotExpandable(f"factor 1 - X^{e} is not a unit at the origin")
        for _ in range(mult):
            acc = _geometric_once(acc, e, N)
    return {k: v for k, v in acc.items() if v}


def _geometric_once(acc: dict, e, N: int) -> dict:
    step = _xdeg(e)
    out: dict = defaultdict(int)
    for k, c in acc.items():
        g = k
        d = _xdeg(k)
        while d <= N:
            out[g] += c
            g = tuple(a + b for a, b in zip(g, e))
            d += step
    return {k: v for k, v in out.items() if v}


def coeff_extract_univariate(f: RatFunc, keep: int, khat: Iterable[int]) -> RatFunc:
    """Coefficient of ``prod_{j != keep} x_j**khat_j`` in ``f``, as a function of ``x_keep``.

    ``keep`` is a 0-based x-index and ``khat`` lists the exponents of the
    remaining x-variables in order.  The result is exact: writing the
    denominator as ``D0 + R`` with ``D0`` free of the other variables,
    ``1/den = sum_n (-R)**n / D0**(n+1)`` and only ``n <= |khat|`` contribute.
    """
    r = f.rank
    khat = tuple(khat)
    if len(khat) != r - 1:
        raise ValueError(f"expected {r - 1} exponents, got {len(khat)}")
    others = [j + 1 for j in range(r) if j != keep]
    target = dict(zip(others, khat))
    K = sum(khat)

    def prune(terms):
        return {e: c for e, c in terms.items() if all(e[s] <= target[s] for s in others)}

    d0 = {e: c for e, c in f.den.terms.items() if all(e[s] == 0 for s in others)}
    if not d0:
        raise NotExpandable("denominator vanishes when the other variables are set to 0")
    rest = {e: -c for e, c in f.den.terms.items() if e not in d0}
    def pick(terms):
        return {e: c for e, c in terms.items() if all(e[s] == target[s] for s in others)}

    def drop_others(terms):
        out = {}
        for e, c in terms.items():
            g = list(e)
            for s in others:
                g[s] = 0
            out[tuple(g)] = c
        return out

    vars = f.vars
    D0 = SparsePoly._wrap(vars, d0)
    P = prune(f.num.terms)
    num = SparsePoly.zero(vars)
    for n in range(K + 1):
        Cn = SparsePoly._wrap(vars, drop_others(pick(P)))
        if Cn:
            num = num + Cn * D0 ** (K - n)
        if n < K:
            P = prune(mul_terms(P, rest))
            if not P:
                break
    den = D0 ** (K + 1)
    return RatFunc(num, den).reduce([D0])
