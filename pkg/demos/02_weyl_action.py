# # The twisted action on rational functions
#
# Variables are t = sqrt(q) and x_1..x_r.  The generator s_i substitutes
# x_i -> 1/(q x_i) and x_j -> sqrt(q) x_i x_j for neighbours j, and mixes the
# even and odd parts of f in the neighbouring variables.

# %%
from qwmds.action import ActionContext, bar_action, bar_action_word, cocycle_from_delta, cocycle_j
from qwmds.algebra import RatFunc, SparsePoly
from qwmds.rootsys import build_root_system, enumerate_weyl, longest_element

ctx = ActionContext(build_root_system("A", 2))
one = RatFunc(SparsePoly.one(ctx.vars))
print("1|s1 =", bar_action(one, 0, ctx))

# %%
# The action respects the group relations.
print("(1|s1)|s1 == 1:", bar_action_word(one, (0, 0), ctx) == one)
print("braid relation:", bar_action_word(one, (0, 1, 0), ctx) == bar_action_word(one, (1, 0, 1), ctx))

# %%
# Delta(x)/Delta(wx) is a signed monomial for every w.
print("Delta =", ctx.delta)
for w in enumerate_weyl(ctx.rs):
    assert cocycle_from_delta(w, ctx) == RatFunc(cocycle_j(w, ctx))
print("j(w0) =", cocycle_j(longest_element(ctx.rs), ctx))
