"""
How many evaluations for a target error
=======================================

For the stratified quadrature n(eps) grows like eps^(-2/(1 + 1/d)); for the
piecewise-constant approximation like eps^(-2d). The second explodes with
dimension.
"""

# %%
import numpy as np

from isowiener import experiments as exp

eps = np.geomspace(0.05, 0.003, 40)
for d in (1, 2, 3):
    for problem in ("int", "app"):
        curve = exp.complexity_curve(problem, d, eps)
        last = curve.rows[-1]
        print(f"{problem} d={d}: slope {curve.slope():.3f} (expected {curve.expected_slope():.3f}),"
              f" n at eps={last.epsilon:.3g}: {last.n:.3e}")

# %%
# Every cardinality meets its target.
curve = exp.complexity_curve("app", 2, [0.3, 0.2, 0.1, 0.05])
print(exp.write_csv(curve.rows))
