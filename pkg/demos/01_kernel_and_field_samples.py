"""
Sampling the isotropic Wiener field
===================================

The field lives on the unit cube and has covariance
K(x, y) = (|x| + |y| - |x - y|) / 2. In one dimension it is ordinary
Brownian motion, pinned to zero at the origin.
"""

# %%
# The kernel at a few points. On the diagonal K(x, x) = |x|.
import numpy as np

from isowiener import RngStream, covariance_matrix, kernel_eval, sample_field

print("K((0.6, 0.8), (0.6, 0.8)) =", kernel_eval([0.6, 0.8], [0.6, 0.8]))
print("K(0.3, 0.7) in 1-d        =", kernel_eval([0.3], [0.7]))

# %%
# A Gram matrix over a handful of points. The row of the origin is zero,
# so the matrix is only semidefinite; the sampler copes with that.
pts = np.array([[0.0, 0.0], [0.5, 0.5], [1.0, 0.25]])
print(covariance_matrix(pts))

# %%
# One realization on a 1-d grid. Same seed, same path.
grid = np.linspace(0, 1, 11)[:, None]
path = sample_field(grid, RngStream(master_seed=3))
print(np.round(path.values, 3))
again = sample_field(grid, RngStream(master_seed=3))
print("reproducible:", np.array_equal(path.values, again.values))

# %%
# Increments have variance equal to the distance between the points.
from isowiener.sampler import FieldSampler

x, y = np.array([0.2, 0.3]), np.array([0.7, 0.9])
rng = RngStream(11)
f = FieldSampler([x, y]).draw_many([rng.substream(r) for r in range(5000)])
print("E (f(x) - f(y))^2 ~", np.mean((f[:, 0] - f[:, 1]) ** 2), " |x - y| =", np.linalg.norm(x - y))
