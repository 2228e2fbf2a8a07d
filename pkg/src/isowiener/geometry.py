"""The unit cube [0, 1]^d and its partition into p^d congruent subcubes.

Points are plain float arrays: a single point has shape ``(d,)`` and a point
set has shape ``(n, d)``. Cells are numbered in lexicographic axis order,
with the first axis most significant, so cell ``(k_1, ..., k_d)`` has index
``sum_j k_j * p**(d - j)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .streams import as_stream

MAX_DIM = 5
MAX_CELLS = 10**6


class SizingError(ValueError):
    """Requested partition or dimension is outside the supported range."""


def check_dimension(d: int) -> int:
    if int(d) != d or not 1 <= d <= MAX_DIM:
        raise SizingError(f"dimension must be an integer in [1, {MAX_DIM}], got {d}")
    return int(d)


def as_points(points, d=None):
    """Coerce to a float array of shape (n, d) and check it lies in [0, 1]^d."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 0:
        pts = pts.reshape(1, 1)
    elif pts.ndim == 1:
        pts = pts.reshape(-1, 1) if d == 1 else pts.reshape(1, -1)
    if pts.ndim != 2:
        raise ValueError(f"expected a point or an (n, d) point array, got shape {pts.shape}")
    if d is not None and pts.shape[1] != d:
        raise ValueError(f"dimension mismatch: points have d={pts.shape[1]}, expected {d}")
    if pts.size and (np.any(pts < 0.0) or np.any(pts > 1.0) or not np.all(np.isfinite(pts))):
        raise ValueError("points must lie in the unit cube [0, 1]^d")
    return pts


@dataclass(frozen=True)
class CubePartition:
    """Partition of [0, 1]^d into ``n = p**d`` cubes of side ``1/p``."""

    d: int
    p: int
    centers: np.ndarray = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.p**self.d

    @property
    def half_width(self) -> float:
        return 0.5 / self.p

    @property
    def cell_volume(self) -> float:
        return float(self.p) ** -self.d

    def lower_corners(self):
        return self.centers - self.half_width

    def multi_index(self, i):
        """Per-axis cell coordinates ``(k_1, ..., k_d)`` of cell ``i``."""
        return np.stack(np.unravel_index(i, (self.p,) * self.d), axis=-1)


def build_partition(d: int, p: int) -> CubePartition:
    """Split the unit cube into ``p`` cells per axis.

    >>> build_partition(1, 2).centers.ravel().tolist()
    [0.25, 0.75]
    """
    d = check_dimension(d)
    if int(p) != p or p < 1:
        raise SizingError(f"cells per axis must be a positive integer, got {p}")
    p = int(p)
    if p**d > MAX_CELLS:
        raise SizingError(f"p**d = {p}**{d} exceeds the supported {MAX_CELLS} cells")
    ticks = (np.arange(p) + 0.5) / p
    grids = np.meshgrid(*([ticks] * d), indexing="ij")
    centers = np.stack([g.ravel() for g in grids], axis=1)
    centers.flags.writeable = False
    return CubePartition(d, p, centers)


def locate_cell(partition: CubePartition, x):
    """Index of the cell containing ``x``.

    Accepts one point or an (m, d) array. A coordinate ``k/p`` on an interior
    face belongs to cell ``k`` (the upper neighbour); ``1.0`` belongs to the
    last cell.
    """
    pts = as_points(x, partition.d)
    k = np.minimum(np.floor(pts * partition.p).astype(np.int64), partition.p - 1)
    idx = np.ravel_multi_index(tuple(k.T), (partition.p,) * partition.d)
    if np.ndim(x) == 0 or (np.ndim(x) == 1 and partition.d > 1):
        return int(idx[0])
    return idx


def sample_stratified(partition: CubePartition, rng) -> np.ndarray:
    """One independent uniform point per cell, row ``i`` in cell ``i``."""
    u = as_stream(rng).uniform((partition.n, partition.d))
    return partition.lower_corners() + u / partition.p
