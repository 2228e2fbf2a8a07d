"""
Piecewise-constant L2 approximation
===================================

Sample f at the n cell centers and hold each value constant over its cell.
The average L2 error is sqrt(c_app) / n^(1/(2d)): halving the error needs
4^d times more function values.
"""

# %%
import numpy as np

from isowiener import (RngStream, build_partition, build_pc_approx, evaluate,
                       pc_avg_error, pc_avg_error_exact_sum, sample_field)

part = build_partition(1, 4)
f = sample_field(part.centers, RngStream(5))
approx = build_pc_approx(part, f.values)
x = np.linspace(0, 1, 9)
print(np.c_[x, evaluate(approx, x[:, None])].round(3))

# %%
# Closed form against the cell-by-cell integral of |x - center|.
for d in (1, 2, 3):
    for p in (1, 2, 4):
        print(d, p, pc_avg_error(d, p), pc_avg_error_exact_sum(build_partition(d, p)))

# %%
# Simulated L2 errors on a midpoint grid.
from isowiener import experiments as exp

rows = exp.rate_study("app", 1, [1, 2, 4, 8], replicates=400, rng=RngStream(2), grid_m=64)
print(exp.write_csv(rows))
