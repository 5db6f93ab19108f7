"""Coefficients H(m_1, ..., m_r) of the series over Q with S = {2, infinity}.

Arguments are odd positive integers and the residue symbol ``(a/b)`` is the
Jacobi symbol.  Prime-power coefficients come from the table of f at
``q = p``; general arguments are reduced to prime powers by twisted
multiplicativity, one prime at a time.  The twist uses the products over
adjacent ``i < j`` in the labeling of the given root system, so relabeling
nodes can change signs.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator

from .invariant import CoeffTable, InvariantFunction, build_f, coeff_table
from .rootsys import RootSystem


class InsufficientDepth(LookupError):
    """The coefficient table does not reach the requested total degree."""

    def __init__(self, needed: int, available: int):
        super().__init__(f"insufficient expansion depth: need total degree {needed}, table has {available}")
        self.needed = needed
        self.available = available


def _check_odd_positive(n: int, what: str = "argument"):
    if not isinstance(n, int) or n <= 0 or n % 2 == 0:
        raise ValueError(f"{what} must be an odd positive integer, got {n!r}")


def jacobi(a: int, n: int) -> int:
    _check_odd_positive(n, "modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=65536)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division, as sorted (p, e) pairs."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    return n > 1 and factorize(n) == ((n, 1),)


def twist(rs: RootSystem, m, mp) -> int:
    """``prod_{i<j adjacent} (m_i / m'_j) (m'_i / m_j)``."""
    s = 1
    for i in range(rs.rank):
        for j in range(i + 1, rs.rank):
            if rs.adjacent(i, j):
                s *= jacobi(m[i], mp[j]) * jacobi(mp[i], m[j])
                if not s:
                    return 0
    return s


class HContext:
    """Coefficient oracle for one root system and labeling.

    ``depth`` is the total degree of the coefficient table.  If ``inv`` is
    given the table grows on demand; otherwise a request beyond the table
    raises ``InsufficientDepth``.
    """

    def __init__(self, rs: RootSystem, inv: InvariantFunction | None = None,
                 table: CoeffTable | None = None, depth: int = 8):
        if table is None and inv is None:
            inv = build_f(rs)
        self.rs = rs
        self.inv = inv
        self.table = table if table is not None else coeff_table(inv, depth)
        self._cache: dict = {}

    @property
    def depth(self) -> int:
        return self.table.max_total_degree

    def ensure_depth(self, n: int):
        if n <= self.depth:
            return
        if self.inv is None:
            raise InsufficientDepth(n, self.depth)
        self.table = coeff_table(self.inv, max(n, 2 * self.depth))

    def export_constant(self) -> float:
        """C with ``|a(k; p)| <= p^{C|k|}`` for every odd prime p and every k in the table."""
        c = 0.0
        for k, v in self.table.entries.items():
            if not sum(k) or v.is_zero():
                continue
            l1 = sum(abs(x) for x in v.coeffs)
            c = max(c, (v.degree + math.log(l1, 3)) / sum(k))
        return c


def h_prime_power(ctx: HContext, p: int, k) -> int:
    _check_odd_positive(p, "p")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    k = tuple(k)
    if len(k) != ctx.rs.rank:
        raise ValueError(f"expected {ctx.rs.rank} exponents")
    if sum(k) > ctx.depth:
        if ctx.inv is None:
            raise InsufficientDepth(sum(k), ctx.depth)
        ctx.ensure_depth(sum(k))
    return ctx.table[k](p)


def h_general(ctx: HContext, m) -> int:
    m = tuple(m)
    if len(m) != ctx.rs.rank:
        raise ValueError(f"expected {ctx.rs.rank} arguments")
    for v in m:
        _check_odd_positive(v)
    hit = ctx._cache.get(m)
    if hit is not None:
        return hit
    primes = sorted({p for v in m for p, _ in factorize(v)})
    if not primes:
        val = 1
    else:
        p = primes[0]
        ks = tuple(dict(factorize(v)).get(p, 0) for v in m)
        block = tuple(p ** k for k in ks)
        rest = tuple(v // b for v, b in zip(m, block))
        val = h_prime_power(ctx, p, ks)
        if val:
            val *= twist(ctx.rs, block, rest)
        if val:
            val *= h_general(ctx, rest)
    ctx._cache[m] = val
    return val


def coprime_closed_form(rs: RootSystem, m) -> int:
    """``prod_{i<j adjacent} (m_i / m_j)`` for pairwise coprime arguments."""
    s = 1
    for i in range(rs.rank):
        for j in range(i + 1, rs.rank):
            if rs.adjacent(i, j):
                s *= jacobi(m[i], m[j])
    return s


@dataclass(frozen=True)
class CoeffRecord:
    m: tuple
    value: int


def coeff_export(ctx: HContext, M: int) -> Iterator[CoeffRecord]:
    """All tuples of odd ``1 <= m_i <= M`` in lexicographic order with their H."""
    if M < 1:
        raise ValueError("bound must be at least 1")
    odds = range(1, M + 1, 2)
    need = ctx.rs.rank * int(math.floor(math.log(M, 3) + 1e-9)) if M >= 3 else 0
    ctx.ensure_depth(need)
    for m in product(odds, repeat=ctx.rs.rank):
        yield CoeffRecord(m, h_general(ctx, m))


def export_csv(ctx: HContext, M: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    edges = [f"{i + 1}-{j + 1}" for i in range(ctx.rs.rank) for j in range(i + 1, ctx.rs.rank)
             if ctx.rs.adjacent(i, j)]
    buf.write(f"# {ctx.rs.name} edges {' '.join(edges) or 'none'}; C = {ctx.export_constant():.6f}\n")
    w.writerow([f"m{i + 1}" for i in range(ctx.rs.rank)] + ["H"])
    for rec in coeff_export(ctx, M):
        w.writerow(list(rec.m) + [rec.value])
    return buf.getvalue()


def within_bound(record: CoeffRecord, C: float) -> bool:
    return abs(record.value) <= math.prod(record.m) ** C + 1e-9
