"""
The two constants behind every error formula
============================================

c_app(d) is the mean of |x|/2 over the unit cube and c_int(d) the mean of
|x - y|/2 over pairs of points. Tensor Gauss-Legendre gives them to about
1e-9; plain Monte Carlo is the independent check.
"""

# %%
from isowiener import RngStream, mc_cross_check, problem_constants

for d in range(1, 6):
    pc = problem_constants(d)
    print(f"d={d}  c_int={pc.c_int:.10f}  c_app={pc.c_app:.10f}  accuracy~{pc.accuracy:.1e}")

# %%
# Monte Carlo with a million samples lands within a few standard errors.
for d in (1, 2, 3):
    est_int, est_app, se_int, se_app = mc_cross_check(d, 10**6, RngStream(d))
    pc = problem_constants(d)
    print(f"d={d}  int: {(est_int - pc.c_int) / se_int:+.2f} se   app: {(est_app - pc.c_app) / se_app:+.2f} se")
