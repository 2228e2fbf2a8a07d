"""Mean-norm and mean-distance constants of the unit cube.

``c_app(d)`` is the integral of ``||x|| / 2`` over [0, 1]^d and ``c_int(d)``
is the double integral of ``||x - y|| / 2`` over [0, 1]^d x [0, 1]^d. Both
set the scale of the exact average errors of the stratified quadrature and
the piecewise-constant approximation.

The double integral is reduced to a d-dimensional one through the density of
``u = |x - y|`` (coordinate-wise), which is ``prod_i 2 (1 - u_i)`` on
[0, 1]^d. The only non-smooth point of either integrand is the corner at the
origin, where tensor Gauss-Legendre still converges quickly (about 1e-10 at
32 points per axis in d = 2).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._gauss import norm_box_integrals
from .geometry import check_dimension
from .streams import as_stream


def default_order(d: int) -> int:
    """Points per axis: 32 up to d = 3, 16 for d = 4 and 5."""
    return 32 if d <= 3 else 16


def _check_order(order):
    if int(order) != order or order < 2:
        raise ValueError(f"quadrature order must be an integer >= 2, got {order}")
    return int(order)


@lru_cache(maxsize=None)
def _c_app(d, order):
    return float(norm_box_integrals(np.ones((1, d)), order)[0]) / 2.0


@lru_cache(maxsize=None)
def _c_int(d, order):
    reduced = float(norm_box_integrals(np.ones((1, d)), order, damped=True)[0])
    return 2.0**d * reduced / 2.0


def c_app(d: int, quad_order: int = None) -> float:
    """Integral of ``||x||/2`` over the unit cube.

    >>> round(c_app(1), 12)
    0.25
    """
    d = check_dimension(d)
    return _c_app(d, _check_order(quad_order or default_order(d)))


def c_int(d: int, quad_order: int = None) -> float:
    """Double integral of ``||x - y||/2`` over the unit cube squared.

    >>> round(c_int(1), 12) == round(1 / 6, 12)
    True
    """
    d = check_dimension(d)
    return _c_int(d, _check_order(quad_order or default_order(d)))


@dataclass(frozen=True)
class ProblemConstants:
    d: int
    c_int: float
    c_app: float
    method: str
    accuracy: float


def problem_constants(d: int, quad_order: int = None) -> ProblemConstants:
    """Both constants with an a-posteriori accuracy estimate.

    The accuracy is the larger change of either constant when the order is
    raised by 8 points per axis.
    """
    d = check_dimension(d)
    order = _check_order(quad_order or default_order(d))
    ci, ca = c_int(d, order), c_app(d, order)
    finer = order + 8
    acc = max(abs(ci - c_int(d, finer)), abs(ca - c_app(d, finer)))
    return ProblemConstants(d, ci, ca, "deterministic-quadrature", acc)


def mc_cross_check(d: int, samples: int, rng=None, chunk: int = 1_000_000):
    """Plain Monte Carlo estimates of ``(c_int, c_app)`` with standard errors.

    Returns
    -------
    estimate_int, estimate_app, stderr_int, stderr_app : float
    """
    d = check_dimension(d)
    if samples < 100:
        raise ValueError(f"need at least 100 samples, got {samples}")
    rng = as_stream(rng)
    sums = np.zeros(2)
    sq_sums = np.zeros(2)
    done = 0
    for k, start in enumerate(range(0, samples, chunk)):
        m = min(chunk, samples - start)
        u = rng.substream(k).uniform((m, 2 * d))
        x, y = u[:, :d], u[:, d:]
        vals = np.stack([np.linalg.norm(x - y, axis=1), np.linalg.norm(x, axis=1)]) / 2.0
        sums += vals.sum(axis=1)
        sq_sums += (vals**2).sum(axis=1)
        done += m
    mean = sums / done
    var = (sq_sums - done * mean**2) / (done - 1)
    se = np.sqrt(var / done)
    return float(mean[0]), float(mean[1]), float(se[0]), float(se[1])
