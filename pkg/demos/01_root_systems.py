# # Root systems and Weyl groups
#
# Simple roots are labeled 1..r on screen and 0..r-1 in code.  A Weyl
# element is stored by the images of the simple roots, so two reduced words
# for the same element compare equal.

# %%
from qwmds.rootsys import (
    build_root_system, element_from_word, enumerate_weyl, longest_element, phi_set, rho, rho_minus_w_rho,
)

a3 = build_root_system("A", 3)
print(a3.name, "positive roots:", a3.positive_roots)
print("2*rho =", rho(a3))

# %%
# Breadth-first enumeration gives elements in order of length.
W = enumerate_weyl(a3)
print("|W| =", len(W), " lengths:", sorted({w.length for w in W}))

# %%
w0 = longest_element(a3)
print("w0 =", w0, " length", w0.length)
print("s1 s2 s1 == s2 s1 s2:", element_from_word(a3, (0, 1, 0)) == element_from_word(a3, (1, 0, 1)))

# %%
# rho - w rho is the sum of the positive roots that w^-1 makes negative.
w = element_from_word(a3, (1, 0, 2))
print("Phi(w^-1) =", sorted(phi_set(w.inverse())))
print("rho - w rho =", rho_minus_w_rho(w))

# %%
for fam, r in [("A", 4), ("D", 4), ("E", 6)]:
    print(fam, r, build_root_system(fam, r).weyl_order())
