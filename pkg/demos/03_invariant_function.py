# # The invariant function f and its p-part polynomial
#
# f0 is the sum over W of j(w) (1|w) and f = f0/Delta.  Multiplying f by
# D = prod (1 - q^{d(a)-1} x^{2a}) leaves a polynomial.

# %%
from qwmds.invariant import build_f, coeff_table, f0_at_q_one, stable_form, stable_terms_by_weyl, x_monomial_count
from qwmds.rootsys import build_root_system

a2 = build_f(build_root_system("A", 2))
print("f_A2 * D =", a2.ppart)
print("after x -> sqrt(q) x:", stable_form(a2))

# %%
# Coefficients of f_A2 follow q^{min(k,l)/2} when min(k,l) is even and vanish otherwise.
table = coeff_table(a2, 6)
for k in [(2, 2), (4, 2), (3, 3), (0, 6)]:
    print(k, table[k])

# %%
a3 = build_f(build_root_system("A", 3))
st = stable_form(a3)
weyl, extra = stable_terms_by_weyl(a3)
print(f"A3: {x_monomial_count(st)} x-monomials, {len(weyl)} indexed by W, extra {sorted(extra)}")

# %%
# With every power of q dropped, f0 has exactly one monomial per Weyl element.
print("f0(x;1) for A2 =", f0_at_q_one(build_root_system("A", 2)))
print("D4 terms:", f0_at_q_one(build_root_system("D", 4)).nterms)
