"""
Haber's stratified quadrature versus classical Monte Carlo
==========================================================

Split the cube into n = p^d cells and draw one uniform node per cell. The
average error is sqrt(c_int) / n^(1/2 + 1/(2d)), a factor n^(1/(2d)) below
plain Monte Carlo with n uniform nodes.
"""

# %%
from isowiener import RngStream, build_partition, haber_rule
from isowiener import experiments as exp

part = build_partition(2, 3)
rule = haber_rule(part, RngStream(0))
print("one node per cell:\n", rule.nodes.round(3))

# %%
# The closed form next to a simulation that averages the exact
# conditional error over 400 node draws.
rows = exp.rate_study("int", 2, [1, 2, 3, 4], replicates=400, rng=RngStream(1))
print(exp.write_csv(rows))
slope, _, _ = exp.rows_slope(rows, "empirical_error")
print(f"fitted slope {slope:.3f}, expected {-(0.5 + 0.25):.3f}")

# %%
# How much stratification buys over plain Monte Carlo.
print(exp.write_csv([exp.mc_comparison(d, 4) for d in (1, 2, 3)]))

# %%
# Cell centers as fixed nodes: the error is reported, not claimed optimal.
print(exp.write_csv([exp.midpoint_vs_haber(d, p) for d in (1, 2) for p in (1, 2, 4)]))
