# # Coefficients of the series over Q
#
# Prime-power coefficients come from the table of f at q = p; coprime
# arguments combine with a Jacobi-symbol twist along the Dynkin edges.

# %%
from qwmds.invariant import build_f
from qwmds.qcoeffs import HContext, export_csv, h_general, jacobi
from qwmds.rootsys import build_root_system

inv = build_f(build_root_system("A", 2))
ctx = HContext(inv.rs, inv)
print("H(3,5) =", h_general(ctx, (3, 5)), " (3/5) =", jacobi(3, 5))
print("H(9,25) =", h_general(ctx, (9, 25)))
print("H(9,9) =", h_general(ctx, (9, 9)), "= a(2,2; 3)")

# %%
print(export_csv(ctx, 7))
