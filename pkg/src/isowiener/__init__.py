"""Average-case integration and L2 approximation under the isotropic Wiener measure.

The field ``f`` on [0, 1]^d is zero-mean Gaussian with covariance
``K(x, y) = (||x|| + ||y|| - ||x - y||) / 2`` (Levy's Brownian motion).
"""

from .algorithms import (PiecewiseConstantApprox, QuadratureRule, apply_quadrature,
                         build_pc_approx, classical_mc_avg_error, classical_mc_rule,
                         empirical_app_error, empirical_haber_error, empty_rule, evaluate,
                         haber_avg_error, haber_rule, linear_rule_avg_error, midpoint_rule,
                         n_app_for_epsilon, n_int_for_epsilon, pc_avg_error,
                         pc_avg_error_exact_sum)
from .constants import ProblemConstants, c_app, c_int, mc_cross_check, problem_constants
from .geometry import CubePartition, SizingError, build_partition, locate_cell, sample_stratified
from .kernel import (covariance_matrix, increment_variance, kernel_double_integral,
                     kernel_eval, kernel_mean_embedding)
from .sampler import FieldSample, FieldSampler, KernelViolationError, factorize, sample_field
from .streams import RngStream

__version__ = "0.1.0"
