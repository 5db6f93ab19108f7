"""The W-action on rational functions in x_1..x_r.

Conventions (0-based generator indices):

* ``sigma_on_x(ctx, i)`` is the substitution ``x_j -> t x_i x_j`` for j
  adjacent to i, ``x_i -> 1/(t^2 x_i)``, other variables fixed.
* For ``w = s_i1 ... s_ik`` the point map is ``g(wx) = g`` substituted by
  ``s_i1`` first, then ``s_i2`` and so on.  On monomials this sends
  ``x^a`` to ``t^{d(w^-1 a - a)} x^{w^-1 a}``.
* The bar action is a right action, ``f|(w s_i) = (f|w)|s_i``, so a word
  is consumed from its first letter.  With these choices
  ``Delta(x)/Delta(wx) = sgn(w) q^{d(a)} x^{2a}`` with ``a = rho - w^-1 rho``.
"""
from __future__ import annotations

import threading

from .algebra._terms import add_terms, mul_terms
from .algebra.factored import FactoredRational
from .algebra.poly import SparsePoly, default_vars
from .algebra.ratfunc import MonomialMap, RatFunc
from .rootsys import RootSystem, WeylElement, apply_w, element_from_word, rho_minus_w_rho


class ActionContext:
    """Root system plus the cached substitutions and products the action needs.

    With ``q_one=True`` every power of t is dropped, which models the
    formal specialization q = 1 while keeping the same code paths.
    """

    def __init__(self, rs: RootSystem, q_one: bool = False):
        self.rs = rs
        self.rank = rs.rank
        self.q_one = q_one
        self.vars = default_vars(rs.rank)
        self.nvars = rs.rank + 1
        self._sigma = tuple(self._make_sigma(i) for i in range(rs.rank))
        self._eps = tuple(self._make_eps(i) for i in range(rs.rank))
        self._memo: dict = {}
        self._lock = threading.Lock()

    # exponent helpers ---------------------------------------------------------
    def tpow(self, e: int) -> int:
        return 0 if self.q_one else e

    def exponent(self, texp: int, xexp) -> tuple[int, ...]:
        return (self.tpow(texp), *xexp)

    def delta_keys(self) -> list[tuple[int, ...]]:
        """Binomial keys of Delta: ``1 - t^{2d(a)} x^{2a}`` per positive root a."""
        return [self.exponent(2 * sum(a), [2 * k for k in a]) for a in self.rs.positive_roots]

    def d_keys(self) -> list[tuple[int, ...]]:
        """Binomial keys of D: ``1 - t^{2d(a)-2} x^{2a}`` per positive root a."""
        return [self.exponent(2 * sum(a) - 2, [2 * k for k in a]) for a in self.rs.positive_roots]

    def _product(self, keys) -> SparsePoly:
        acc = {(0,) * self.nvars: 1}
        for k in keys:
            acc = mul_terms(acc, {(0,) * self.nvars: 1, k: -1})
        return SparsePoly._wrap(self.vars, acc)

    @property
    def delta(self) -> SparsePoly:
        return self._product(self.delta_keys())

    @property
    def D(self) -> SparsePoly:
        return self._product(self.d_keys())

    # substitution rules -------------------------------------------------------
    def _make_sigma(self, i: int) -> MonomialMap:
        imgs = []
        for j in range(self.rank):
            if j == i:
                imgs.append((1, self.tpow(-2), tuple(-int(k == i) for k in range(self.rank))))
            elif self.rs.adjacent(i, j):
                imgs.append((1, self.tpow(1), tuple(int(k in (i, j)) for k in range(self.rank))))
            else:
                imgs.append((1, 0, tuple(int(k == j) for k in range(self.rank))))
        return MonomialMap(tuple(imgs))

    def _make_eps(self, i: int) -> MonomialMap:
        ident = MonomialMap.identity(self.rank).images
        return MonomialMap(tuple((-1 if self.rs.adjacent(i, j) else 1, te, xe)
                                 for j, (_, te, xe) in enumerate(ident)))

    def sigma(self, i: int) -> MonomialMap:
        return self._sigma[i]

    def eps(self, i: int) -> MonomialMap:
        return self._eps[i]

    def point_rule(self, w: WeylElement | tuple) -> MonomialMap:
        """Substitution realizing ``g -> g(wx)``."""
        word = w.word if isinstance(w, WeylElement) else tuple(w)
        rule = MonomialMap.identity(self.rank)
        for i in word:
            rule = rule.then(self._sigma[i])
        return rule


def sigma_on_x(ctx: ActionContext, i: int) -> MonomialMap:
    return ctx.sigma(i)


def epsilon_on_x(ctx: ActionContext, i: int) -> MonomialMap:
    return ctx.eps(i)


# ---------------------------------------------------------------------------
# bar action on general rational functions


def _ratfunc(ctx, terms_num, terms_den) -> RatFunc:
    return RatFunc._from_terms(ctx.vars, terms_num, terms_den)


def _coefficients(ctx: ActionContext, i: int):
    """The two multipliers ``-(1-q x_i)/(q x_i (1-x_i))`` and ``1/(t x_i)``."""
    z = [0] * ctx.nvars

    def mono(te, xe):
        e = list(z)
        e[0] = ctx.tpow(te)
        e[i + 1] = xe
        return tuple(e)

    plus = _ratfunc(ctx, {mono(0, 0): -1, mono(2, 1): 1}, {mono(2, 1): 1, mono(2, 2): -1})
    minus = _ratfunc(ctx, {mono(0, 0): 1}, {mono(1, 1): 1})
    return plus, minus


def even_odd_parts(f: RatFunc, i: int, ctx: ActionContext) -> tuple[RatFunc, RatFunc]:
    """``f_i^+`` and ``f_i^-``: averages of ``f`` and ``f`` with ``x_j -> -x_j`` (j adjacent to i)."""
    fe = f.substitute(ctx.eps(i))
    two = RatFunc.constant(ctx.vars, 2)
    return (f + fe) / two, (f - fe) / two


def bar_action(f, i: int, ctx: ActionContext, method: str = "parity"):
    """``f|s_i``.

    ``method="parity"`` forms ``f_i^+, f_i^-`` and substitutes;
    ``method="cd"`` uses ``c_i(x) f(s_i x) + d_i(x) f(e_i s_i x)``.
    A ``FactoredRational`` input takes the factored fast path.
    """
    if isinstance(f, FactoredRational):
        return _bar_factored(f, i, ctx)
    A, B = _coefficients(ctx, i)
    sig = ctx.sigma(i)
    if method == "parity":
        fp, fm = even_odd_parts(f, i, ctx)
        return A * fp.substitute(sig) + B * fm.substitute(sig)
    if method == "cd":
        two = RatFunc.constant(ctx.vars, 2)
        c = (A + B) / two
        d = (A - B) / two
        return c * f.substitute(sig) + d * f.substitute(ctx.eps(i)).substitute(sig)
    raise ValueError(f"unknown method {method!r}")


def _bar_factored(f: FactoredRational, i: int, ctx: ActionContext) -> FactoredRational:
    # Every denominator binomial is even in the x_j adjacent to i, so the
    # even/odd split is a split of the numerator terms by parity.
    weights = [0] + [int(ctx.rs.adjacent(i, j)) for j in range(ctx.rank)]
    fp, fm = f.split_parity(weights)
    sig = ctx.sigma(i)
    fp, fm = fp.substitute(sig), fm.substitute(sig)
    z = [0] * ctx.nvars

    def mono(te, xe):
        e = list(z)
        e[0] = ctx.tpow(te)
        e[i + 1] = xe
        return tuple(e)

    # over the common denominator 1 - x_i^2:
    # -(1-q x)(1+x)/(q x) and (1-x^2)/(t x)
    A = add_terms({mono(-2, -1): -1, mono(-2, 0): -1}, {mono(0, 0): 1, mono(0, 1): 1})
    B = {mono(-1, -1): 1, mono(-1, 1): -1}
    out = fp.mul_terms(A) + fm.mul_terms(B)
    return out.divide_by([mono(0, 2)]).cancel()


def bar_action_word(f, w: WeylElement | tuple, ctx: ActionContext, method: str = "parity"):
    """``f|w``: letters of the word are applied starting from the first one."""
    word = w.word if isinstance(w, WeylElement) else tuple(w)
    for i in word:
        f = bar_action(f, i, ctx, method)
    return f


def one_bar(w: WeylElement, ctx: ActionContext) -> FactoredRational:
    """``1|w`` in factored form, memoized by group element."""
    memo = ctx._memo
    key = w.root_action
    hit = memo.get(key)
    if hit is not None:
        return hit
    if not w.word:
        val = FactoredRational.one(ctx.nvars)
    else:
        parent = element_from_word(ctx.rs, w.word[:-1])
        val = _bar_factored(one_bar(parent, ctx), w.word[-1], ctx)
    with ctx._lock:
        memo.setdefault(key, val)
    return memo[key]


# ---------------------------------------------------------------------------
# cocycle and monomials


def cocycle_exponent(w: WeylElement, ctx: ActionContext) -> tuple[int, tuple[int, ...]]:
    """(sign, exponent) of ``j(w, x) = sgn(w) q^{d(a)} x^{2a}``, ``a = rho - w^-1 rho``."""
    a = rho_minus_w_rho(w.inverse())
    return w.sign, ctx.exponent(2 * sum(a), [2 * k for k in a])


def cocycle_j(w: WeylElement, ctx: ActionContext) -> SparsePoly:
    s, e = cocycle_exponent(w, ctx)
    return SparsePoly.monomial(ctx.vars, e, s)


def cocycle_from_delta(w: WeylElement, ctx: ActionContext) -> RatFunc:
    """``Delta(x)/Delta(wx)`` computed directly by substitution."""
    delta = RatFunc(ctx.delta)
    return delta / delta.substitute(ctx.point_rule(w))


def monomial_action(alpha, w: WeylElement, ctx: ActionContext) -> tuple[int, tuple[int, ...]]:
    """Exponent of ``x^alpha`` evaluated at ``wx``: ``t^{d(b - alpha)} x^b`` with ``b = w^-1 alpha``.

    Returned as the full exponent tuple (t-power first), which may have
    negative entries.
    """
    b = apply_w(w.inverse(), alpha)
    return ctx.exponent(sum(b) - sum(alpha), b)


def evaluate_at_wx(g, w: WeylElement, ctx: ActionContext):
    """``g(wx)`` for a RatFunc, SparsePoly or FactoredRational ``g``."""
    rule = ctx.point_rule(w)
    if isinstance(g, SparsePoly):
        g = RatFunc(g)
    return g.substitute(rule)


def one_bar_parts(ctx: ActionContext, i: int) -> tuple[RatFunc, RatFunc]:
    """Even functions g1, g2 of x_i with ``1|s_i = g1(x_i) + g2(x_i)/x_i``.

    ``g1 = (q-1)/(q(1-x_i^2))`` and ``g2 = (q x_i^2 - 1)/(q(1-x_i^2))``.
    """
    z = [0] * ctx.nvars

    def mono(te, xe):
        e = list(z)
        e[0] = ctx.tpow(te)
        e[i + 1] = xe
        return tuple(e)

    den = {mono(2, 0): 1, mono(2, 2): -1}
    g1 = _ratfunc(ctx, add_terms({mono(2, 0): 1}, {mono(0, 0): -1}), den)
    g2 = _ratfunc(ctx, {mono(2, 2): 1, mono(0, 0): -1}, den)
    return g1, g2


def delta_factored(ctx: ActionContext) -> FactoredRational:
    """``1/Delta`` as a factored rational."""
    return FactoredRational.one(ctx.nvars).divide_by(ctx.delta_keys())


__all__ = [
    "ActionContext", "sigma_on_x", "epsilon_on_x", "even_odd_parts", "bar_action", "bar_action_word",
    "one_bar", "cocycle_j", "cocycle_exponent", "cocycle_from_delta", "monomial_action",
    "evaluate_at_wx", "one_bar_parts", "delta_factored",
]
