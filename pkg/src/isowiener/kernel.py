"""Covariance of the isotropic Wiener field (Levy's Brownian motion).

    K(x, y) = (||x|| + ||y|| - ||x - y||) / 2,   Euclidean norms.

In one dimension this is ``min(x, y)``. Increments satisfy
``E (f(x) - f(y))**2 = ||x - y||``.
"""

import itertools

import numpy as np
from scipy.spatial.distance import cdist

from ._gauss import norm_box_integrals
from .constants import c_app, c_int, default_order
from .geometry import as_points, check_dimension


def _pair(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return x, y


def kernel_eval(x, y) -> float:
    x, y = _pair(x, y)
    nx, ny, nxy = np.linalg.norm(x), np.linalg.norm(y), np.linalg.norm(x - y)
    return float((nx + ny - nxy) / 2.0)


def increment_variance(x, y) -> float:
    """Variance of ``f(x) - f(y)``, which is ``||x - y||``."""
    x, y = _pair(x, y)
    return float(np.linalg.norm(x - y))


def cross_covariance(xs, ys):
    """Matrix ``K(xs[i], ys[j])`` for two point sets of equal dimension."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    ys = np.atleast_2d(np.asarray(ys, dtype=float))
    if xs.shape[1] != ys.shape[1]:
        raise ValueError(f"dimension mismatch: d={xs.shape[1]} vs d={ys.shape[1]}")
    nx = np.linalg.norm(xs, axis=1)
    ny = np.linalg.norm(ys, axis=1)
    return 0.5 * (nx[:, None] + ny[None, :] - cdist(xs, ys))


def covariance_matrix(points):
    """Gram matrix of the kernel over a point set of shape (n, d).

    The result is exactly symmetric with ``||x_i||`` on the diagonal.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("covariance_matrix needs a nonempty (n, d) point array")
    cov = cross_covariance(pts, pts)
    cov = 0.5 * (cov + cov.T)
    np.fill_diagonal(cov, np.linalg.norm(pts, axis=1))
    return cov


def _orthant_sides(x):
    """Side lengths of the 2**d boxes obtained by cutting the cube at ``x``."""
    lo, hi = x, 1.0 - x
    choices = np.stack([lo, hi], axis=-1)  # (m, d, 2)
    d = x.shape[1]
    combos = np.array(list(itertools.product((0, 1), repeat=d)))  # (2**d, d)
    return np.take_along_axis(
        choices[:, None, :, :], combos[None, :, :, None], axis=-1
    )[..., 0]  # (m, 2**d, d)


def distance_mean(x, quad_order=None):
    """Integral over the unit cube of ``||u - x||`` du, for each row of ``x``.

    The cube is cut at ``x`` into 2**d boxes so that the kink of the
    integrand sits at a box corner, where Gauss-Legendre behaves well.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    m, d = x.shape
    order = quad_order or default_order(d)
    sides = _orthant_sides(x).reshape(-1, d)
    return norm_box_integrals(sides, order).reshape(m, 2**d).sum(axis=1)


def kernel_mean_embedding(x, quad_order=None):
    """``integral_D K(u, x) du``.

    Accepts one point (returns a float) or an (m, d) array (returns shape
    (m,)).

    >>> kernel_mean_embedding([0.5], 32)
    0.375
    """
    single = np.ndim(x) <= 1
    d = 1 if np.ndim(x) == 0 else np.shape(x)[-1]
    pts = as_points(x, d)
    d = check_dimension(pts.shape[1])
    order = quad_order or default_order(d)
    if int(order) != order or order < 2:
        raise ValueError(f"quadrature order must be an integer >= 2, got {order}")
    # integral of ||u|| over D is 2 c_app(d)
    emb = 0.5 * (2.0 * c_app(d, order) + np.linalg.norm(pts, axis=1) - distance_mean(pts, order))
    return float(emb[0]) if single else emb


def kernel_double_integral(d: int, quad_order: int = None) -> float:
    """Double integral of K over the unit cube squared, ``2 c_app - c_int``."""
    d = check_dimension(d)
    return 2.0 * c_app(d, quad_order) - c_int(d, quad_order)
