"""Tensor-product Gauss-Legendre rules on boxes anchored at the origin."""

from functools import lru_cache

import numpy as np

# keeps the (boxes x order**d) work array below ~32 MB
_CHUNK_ENTRIES = 4_000_000


@lru_cache(maxsize=None)
def gauss_legendre_01(order: int):
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    if order < 1:
        raise ValueError(f"quadrature order must be >= 1, got {order}")
    x, w = np.polynomial.legendre.leggauss(order)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def norm_box_integrals(sides, order, damped=False):
    """Integrate ``||v||`` over the boxes ``prod_i [0, a_i]``.

    Parameters
    ----------
    sides : array_like, shape (m, d)
        Nonnegative side lengths, one box per row.
    order : int
        Gauss-Legendre points per axis.
    damped : bool
        If true, the integrand carries the extra factor ``prod_i (1 - v_i / a_i)``,
        which is the density of the coordinate-wise difference of two uniform
        points (used for mean-distance integrals).

    Returns
    -------
    ndarray, shape (m,)
    """
    sides = np.atleast_2d(np.asarray(sides, dtype=float))
    m, d = sides.shape
    x, w = gauss_legendre_01(order)
    if damped:
        w = w * (1.0 - x)
    out = np.empty(m)
    chunk = max(1, _CHUNK_ENTRIES // order**d)
    for start in range(0, m, chunk):
        a = sides[start:start + chunk]
        # squared norm on the tensor grid, built one axis at a time
        sq = np.zeros((a.shape[0],) + (order,) * d)
        for axis in range(d):
            shape = [a.shape[0]] + [1] * d
            shape[axis + 1] = order
            sq += ((a[:, axis, None] * x[None, :]) ** 2).reshape(shape)
        vals = np.sqrt(sq)
        for _ in range(d):
            vals = vals @ w
        out[start:start + chunk] = vals * np.prod(a, axis=1)
    return out
