"""Quadrature and approximation algorithms and their average errors.

The two algorithms studied here both live on a ``p**d`` cube partition:

* Haber's stratified rule: one uniform node per cell, equal weights ``1/n``.
* The piecewise-constant approximant: ``f`` at each cell center, extended
  as a constant over the cell.

Their average errors under the isotropic Wiener measure are exact power laws,

    haber:  sqrt(c_int(d)) / n**(1/2 + 1/(2d))
    pc:     sqrt(c_app(d)) / n**(1/(2d))

and classical Monte Carlo sits ``n**(1/(2d))`` above Haber. The estimators at
the bottom of the module check those formulas by simulation.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import c_app, c_int, default_order
from .geometry import (CubePartition, as_points, build_partition, check_dimension,
                       locate_cell, sample_stratified)
from .kernel import covariance_matrix, kernel_double_integral, kernel_mean_embedding
from ._gauss import norm_box_integrals
from ._parallel import ordered_map
from .sampler import FieldSampler
from .streams import as_stream


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    randomized: bool = False

    def __post_init__(self):
        if self.nodes.ndim != 2:
            raise ValueError("nodes must have shape (n, d)")
        if len(self.nodes) != len(self.weights):
            raise ValueError(
                f"{len(self.nodes)} nodes but {len(self.weights)} weights"
            )

    @property
    def d(self) -> int:
        return self.nodes.shape[1]

    def __len__(self):
        return len(self.weights)


def empty_rule(d: int) -> QuadratureRule:
    """The rule with no nodes; it always returns 0."""
    return QuadratureRule(np.empty((0, check_dimension(d))), np.empty(0))


def _equal_weights(n):
    return np.full(n, 1.0 / n)


def haber_rule(partition: CubePartition, rng) -> QuadratureRule:
    nodes = sample_stratified(partition, rng)
    return QuadratureRule(nodes, _equal_weights(partition.n), randomized=True)


def classical_mc_rule(n: int, d: int, rng) -> QuadratureRule:
    """``n`` i.i.d. uniform nodes on the cube with weights ``1/n``."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    d = check_dimension(d)
    nodes = as_stream(rng).uniform((n, d))
    return QuadratureRule(nodes, _equal_weights(n), randomized=True)


def midpoint_rule(partition: CubePartition) -> QuadratureRule:
    """Cell centers with weights ``1/n``; deterministic."""
    return QuadratureRule(np.array(partition.centers), _equal_weights(partition.n))


def apply_quadrature(rule: QuadratureRule, fvalues) -> float:
    fvalues = np.asarray(fvalues, dtype=float)
    if fvalues.shape[-1] != len(rule):
        raise ValueError(f"rule has {len(rule)} nodes, got {fvalues.shape[-1]} values")
    return fvalues @ rule.weights


@dataclass(frozen=True)
class PiecewiseConstantApprox:
    partition: CubePartition
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != self.partition.n:
            raise ValueError(
                f"partition has {self.partition.n} cells, got {len(self.values)} values"
            )

    def __call__(self, x):
        return evaluate(self, x)


def build_pc_approx(partition: CubePartition, fvalues) -> PiecewiseConstantApprox:
    """Piecewise-constant interpolant of the values ``f(center_i)``."""
    return PiecewiseConstantApprox(partition, np.asarray(fvalues, dtype=float))


def evaluate(approx: PiecewiseConstantApprox, x):
    idx = locate_cell(approx.partition, x)
    return approx.values[idx]


# -- exact average errors ---------------------------------------------------

def linear_rule_avg_error(rule: QuadratureRule, quad_order: int = None) -> float:
    """Root-mean-square integration error of a fixed linear rule.

    For nodes ``x_i`` and weights ``w_i``,

        e**2 = int int K - 2 sum_i w_i int K(u, x_i) du + sum_ij w_i w_j K(x_i, x_j).
    """
    d = rule.d
    order = quad_order or default_order(d)
    err2 = kernel_double_integral(d, order)
    if len(rule):
        nodes = as_points(rule.nodes, d)
        w = rule.weights
        err2 += -2.0 * w @ kernel_mean_embedding(nodes, order) + w @ covariance_matrix(nodes) @ w
    return math.sqrt(max(err2, 0.0))


def _cells(d, p):
    d = check_dimension(d)
    if int(p) != p or p < 1:
        raise ValueError(f"cells per axis must be a positive integer, got {p}")
    return d, int(p), float(p) ** d


def haber_avg_error(d: int, p: int, quad_order: int = None) -> float:
    d, p, n = _cells(d, p)
    return math.sqrt(c_int(d, quad_order)) / n ** (0.5 + 0.5 / d)


def pc_avg_error(d: int, p: int, quad_order: int = None) -> float:
    d, p, n = _cells(d, p)
    return math.sqrt(c_app(d, quad_order)) / n ** (0.5 / d)


def classical_mc_avg_error(d: int, n: int, quad_order: int = None) -> float:
    d = check_dimension(d)
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return math.sqrt(c_int(d, quad_order) / n)


def pc_avg_error_exact_sum(partition: CubePartition, quad_order: int = None) -> float:
    """Average L2 error of the piecewise-constant approximant, cell by cell.

    Sums ``integral_{U_i} ||x - x_i|| dx`` over all cells (each cell cut at its
    center into 2**d corner boxes) and takes the square root.
    """
    d = partition.d
    order = quad_order or default_order(d)
    h = partition.half_width
    total = 0.0
    for lo, c in zip(partition.lower_corners(), partition.centers):
        below = c - lo
        above = (lo + 2.0 * h) - c
        corners = np.array(np.meshgrid(*zip(below, above), indexing="ij")).reshape(d, -1).T
        total += norm_box_integrals(corners, order).sum()
    return math.sqrt(total)


def _ceil_nudged(value):
    # guards against ceil(4.000000000001) == 5 when the value is analytically 4
    return max(1, math.ceil(value * (1.0 - 1e-12)))


def n_int_for_epsilon(eps: float, d: int, quad_order: int = None) -> int:
    """Cardinality ``ceil((c_int / eps**2)**(1/(d+1)))**d`` for the Haber rule."""
    return p_int_for_epsilon(eps, d, quad_order) ** check_dimension(d)


def n_app_for_epsilon(eps: float, d: int, quad_order: int = None) -> int:
    """Cardinality ``ceil(c_app / eps**2)**d`` for the piecewise-constant approximant."""
    return p_app_for_epsilon(eps, d, quad_order) ** check_dimension(d)


def p_int_for_epsilon(eps, d, quad_order=None):
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    d = check_dimension(d)
    return _ceil_nudged((c_int(d, quad_order) / eps**2) ** (1.0 / (d + 1)))


def p_app_for_epsilon(eps, d, quad_order=None):
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    d = check_dimension(d)
    return _ceil_nudged(c_app(d, quad_order) / eps**2)


# -- simulation estimators ----------------------------------------------------

def _sqrt_mean_with_stderr(samples):
    """Square root of the sample mean and its delta-method standard error."""
    samples = np.asarray(samples, dtype=float)
    mean = samples.mean()
    se_mean = samples.std(ddof=1) / math.sqrt(len(samples))
    est = math.sqrt(max(mean, 0.0))
    return est, float(se_mean / (2.0 * est)) if est > 0 else 0.0


def conditional_haber_error2(partition: CubePartition, rng, quad_order: int = None) -> float:
    """Mean-square error over the field of one Haber rule with its nodes frozen."""
    return linear_rule_avg_error(haber_rule(partition, rng), quad_order) ** 2


def empirical_haber_error(d: int, p: int, replicates: int = 400, rng=None,
                          quad_order: int = None):
    """Estimate the Haber average error by averaging over node draws.

    For each replicate the nodes are drawn once and the exact mean-square
    error over the field is computed for those nodes; averaging these over
    replicates integrates out the node randomness.

    Returns
    -------
    estimate, stderr : float
    """
    if replicates < 30:
        raise ValueError(f"need at least 30 replicates, got {replicates}")
    partition = build_partition(d, p)
    rng = as_stream(rng)
    err2 = ordered_map(
        lambda r: conditional_haber_error2(partition, rng.substream(r), quad_order),
        range(replicates),
    )
    return _sqrt_mean_with_stderr(err2)


def midpoint_grid(m: int, d: int) -> np.ndarray:
    """The ``m**d`` midpoints of the uniform grid with ``m`` cells per axis."""
    return build_partition(d, m).centers


def _app_grid(d, p, grid_m):
    if grid_m < 2 * p:
        raise ValueError(f"grid_m={grid_m} is too coarse for p={p}; need grid_m >= 2p")
    partition = build_partition(d, p)
    grid = midpoint_grid(grid_m, d)
    return partition, grid, locate_cell(partition, grid)


def app_grid_expectation(d: int, p: int, grid_m: int) -> float:
    """Expected value of the grid estimate of the squared L2 error.

    Equals the grid average of ``||g - center(g)||`` since the increment
    variance of the field is the distance.
    """
    partition, grid, cell = _app_grid(d, p, grid_m)
    return float(np.linalg.norm(grid - partition.centers[cell], axis=1).mean())


def empirical_app_error(d: int, p: int, grid_m: int = None, replicates: int = 400,
                        rng=None, batch: int = 100):
    """Estimate the piecewise-constant L2 error by field simulation.

    ``f`` is drawn jointly at the cell centers and at the ``grid_m**d``
    midpoint grid; the squared L2 error is replaced by the grid average of
    squared residuals. The grid average is a midpoint rule, so the estimate
    carries an O(1/grid_m) discretization bias against the continuum norm;
    :func:`app_grid_expectation` gives its exact expectation.

    Returns
    -------
    estimate, stderr : float
    """
    if replicates < 30:
        raise ValueError(f"need at least 30 replicates, got {replicates}")
    grid_m = grid_m or 8 * p
    partition, grid, cell = _app_grid(d, p, grid_m)
    sampler = FieldSampler(np.vstack([partition.centers, grid]))
    n = partition.n
    rng = as_stream(rng)
    sq_l2 = np.empty(replicates)
    for start in range(0, replicates, batch):
        stop = min(start + batch, replicates)
        f = sampler.draw_many([rng.substream(r) for r in range(start, stop)])
        resid = f[:, n:] - f[:, :n][:, cell]
        sq_l2[start:stop] = np.mean(resid**2, axis=1)
    return _sqrt_mean_with_stderr(sq_l2)
