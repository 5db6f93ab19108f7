# # Running the verification battery
#
# Every check is an exact identity.  Reports marked [obs] record a measured
# fact that the construction does not promise.

# %%
from qwmds.verify import run_all, reports_table, summarize

reports = run_all([("A", 2), ("A", 3)])
print(reports_table([r for r in reports if r.name not in ("tfe", "bound")]))
print(summarize(reports))

# %%
# One functional equation in detail: the coefficient of x1^2 in f_A2 as a function of x2.
from qwmds.invariant import build_f
from qwmds.rootsys import build_root_system
from qwmds.verify import check_T_functional_equation, t_function

inv = build_f(build_root_system("A", 2))
print("T(x2; 2) =", t_function(inv, 1, (2,)))
print(check_T_functional_equation(inv, 1, (2,)).verdict)
