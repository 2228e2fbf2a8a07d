"""Exact joint Gaussian draws of the isotropic Wiener field at finite point sets."""

import csv
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .kernel import covariance_matrix
from .streams import as_stream


class KernelViolationError(np.linalg.LinAlgError):
    """Covariance matrix is indefinite beyond round-off."""


def _tolerance(cov):
    return 1e-8 * (1.0 + float(np.max(np.diag(cov), initial=0.0)))


def factorize(cov):
    """Square-root factor ``L`` with ``L @ L.T`` equal to ``cov`` up to round-off.

    Tries a plain Cholesky factorization first, then Cholesky of
    ``cov + delta*I`` with ``delta`` climbing from ``1e-12`` to ``1e-6`` times
    the mean diagonal, then a symmetric eigendecomposition with negative
    eigenvalues clamped to zero. A jittered factor is only accepted if it
    reproduces ``cov`` within ``1e-8 * (1 + max diagonal)``.

    Rows and columns that are identically zero (points at the origin) give
    zero rows in the factor.

    Raises
    ------
    KernelViolationError
        If ``cov`` is not symmetric or has an eigenvalue below the clamping
        tolerance.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise ValueError(f"covariance must be square, got shape {cov.shape}")
    tol = _tolerance(cov)
    if not np.allclose(cov, cov.T, rtol=0.0, atol=tol):
        raise KernelViolationError("covariance matrix is not symmetric")
    live = np.flatnonzero(np.any(cov != 0.0, axis=1))
    factor = np.zeros_like(cov)
    if live.size == 0:
        return factor
    sub = cov[np.ix_(live, live)]
    factor[np.ix_(live, live)] = _factor_nonzero(sub, _tolerance(sub))
    return factor


def _factor_nonzero(cov, tol):
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        pass
    scale = np.trace(cov) / cov.shape[0]
    eye = np.eye(cov.shape[0])
    for exponent in range(-12, -5):
        try:
            factor = np.linalg.cholesky(cov + 10.0**exponent * scale * eye)
        except np.linalg.LinAlgError:
            continue
        if np.max(np.abs(factor @ factor.T - cov)) <= tol:
            return factor
        break
    vals, vecs = scipy.linalg.eigh(cov)
    if vals[0] < -tol:
        raise KernelViolationError(
            f"covariance has eigenvalue {vals[0]:.3e} below clamping tolerance {-tol:.3e}"
        )
    factor = vecs * np.sqrt(np.clip(vals, 0.0, None))
    if np.max(np.abs(factor @ factor.T - cov)) > tol:
        raise KernelViolationError("eigenvalue clamping did not reproduce the covariance")
    return factor


@dataclass
class FieldSample:
    """Values of one field realization at ``points`` (shape (n, d))."""

    points: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.points) != len(self.values):
            raise ValueError("points and values must have equal length")

    def to_csv(self, fh):
        """Write columns ``x_1..x_d,value`` to an open text file."""
        d = self.points.shape[1]
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"x_{j + 1}" for j in range(d)] + ["value"])
        for x, v in zip(self.points, self.values):
            writer.writerow([f"{c:.12g}" for c in x] + [f"{v:.12g}"])


class FieldSampler:
    """Factorizes the covariance of a point set once and draws from it repeatedly.

    Duplicate points are merged before factorization, so they always receive
    identical values; the origin always receives exactly zero.
    """

    def __init__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("need a nonempty (n, d) point array")
        self.points = pts
        unique, self._inverse = np.unique(pts, axis=0, return_inverse=True)
        self._inverse = self._inverse.ravel()
        self.factor = factorize(covariance_matrix(unique))

    @property
    def size(self):
        return self.factor.shape[0]

    def draw(self, rng) -> np.ndarray:
        z = as_stream(rng).normal(self.size)
        return (self.factor @ z)[self._inverse]

    def draw_many(self, rngs) -> np.ndarray:
        """One realization per stream, stacked into shape (len(rngs), n)."""
        z = np.stack([as_stream(r).normal(self.size) for r in rngs], axis=1)
        return (self.factor @ z).T[:, self._inverse]


def sample_field(points, rng) -> FieldSample:
    """Draw ``f`` at ``points`` from the zero-mean field with kernel covariance."""
    sampler = FieldSampler(points)
    return FieldSample(sampler.points, sampler.draw(rng))
