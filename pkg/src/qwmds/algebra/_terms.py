"""Raw term-dictionary kernels shared by the polynomial classes.

A term dictionary maps an exponent tuple to a nonzero Python int.  The
kernels here do not care whether exponents are nonnegative, so the same
code serves ordinary polynomials and the Laurent numerators used by the
factored representation.
"""
from __future__ import annotations

from collections import defaultdict

Terms = dict  # dict[tuple[int, ...], int]


def add_terms(a: Terms, b: Terms, scale: int = 1) -> Terms:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def iadd_terms(acc: Terms, b: Terms, scale: int = 1) -> None:
    for e, c in b.items():
        v = acc.get(e, 0) + scale * c
        if v:
            acc[e] = v
        else:
            del acc[e]


def mul_terms(a: Terms, b: Terms) -> Terms:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return {}
    out: dict = defaultdict(int)
    if len(b) == 1:
        (eb, cb), = b.items()
        return {tuple(x + y for x, y in zip(ea, eb)): ca * cb for ea, ca in a.items()}
    for eb, cb in b.items():
        for ea, ca in a.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return {e: c for e, c in out.items() if c}


def shift_terms(a: Terms, shift, coef: int = 1) -> Terms:
    """Multiply by the monomial ``coef * X**shift``."""
    return {tuple(x + y for x, y in zip(e, shift)): c * coef for e, c in a.items()}


def min_exponents(*polys: Terms):
    mins = None
    for p in polys:
        for e in p:
            mins = list(e) if mins is None else [min(m, x) for m, x in zip(mins, e)]
    return mins


def div_binomial(num: Terms, direction, sign: int = 1):
    """Exact quotient of ``num`` by ``1 - sign * X**direction``, or None.

    ``direction`` must be a nonzero exponent vector.  Terms of ``num`` are
    grouped into chains ``base + k*direction``; along each chain the
    division is a one-variable synthetic division, which is exact iff the
    running remainder vanishes at the top of the chain.
    """
    pivot = next(i for i, d in enumerate(direction) if d)
    step = direction[pivot]
    chains: dict = defaultdict(dict)
    for e, c in num.items():
        k = e[pivot] // step
        base = tuple(x - k * d for x, d in zip(e, direction))
        chains[base][k] = c
    out = {}
    for base, chain in chains.items():
        lo, hi = min(chain), max(chain)
        acc = 0
        for k in range(lo, hi + 1):
            acc = chain.get(k, 0) + sign * acc
            if k < hi and acc:
                out[tuple(x + k * d for x, d in zip(base, direction))] = acc
        if acc:
            return None
    return out


def eval_terms_at(a: Terms, index: int, value: int) -> Terms:
    """Specialize variable ``index`` to an integer; the slot is kept with exponent 0."""
    out: dict = defaultdict(int)
    for e, c in a.items():
        k = e[index]
        if value == 0 and k:
            continue
        if k < 0:
            if value not in (1, -1):
                raise ValueError("negative exponent at a non-unit value")
            k = -k
        out[e[:index] + (0,) + e[index + 1:]] += c * value ** k
    return {e: c for e, c in out.items() if c}
