"""Distance structures for planar point sets.

Everything downstream consumes one of three objects built here: the
squared-Euclidean distance matrix, its integer-ceiling counterpart, and
the sorted ladder of unique distances. Squared values are the canonical
internal representation for real distances; square roots are taken only
when a value leaves the library (reports, files, return values in
coordinate units). Coverage is a single-level threshold test, so working
on squares is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyInstance, NonFiniteCoordinate

REAL = "real"
INTEGER = "integer"


@dataclass(frozen=True, eq=False)
class PointSet:
    """Immutable planar point set with stable 0-based indexing."""

    points: np.ndarray  # (m, 2) float64
    name: str = ""

    @property
    def m(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric distance data for a point set.

    ``sq`` always holds squared Euclidean distances. In integer mode,
    ``d_int`` holds the exact integer ceiling of each plain distance and
    is the matrix all threshold tests run against; ``sq`` is retained
    for provenance only (rounding a squared value is not the same as
    rounding the distance).
    """

    m: int
    sq: np.ndarray  # (m, m) float64, squared distances
    mode: str = REAL
    d_int: np.ndarray | None = None  # (m, m) int64, integer mode only
    name: str = ""

    @property
    def key(self) -> np.ndarray:
        """Matrix in comparison space: squared reals or ceiled integers."""
        return self.sq if self.mode == REAL else self.d_int

    def radius_from_key(self, key_value):
        """Convert a comparison-space value to coordinate units."""
        if self.mode == REAL:
            return math.sqrt(key_value)
        return int(key_value)


@dataclass(frozen=True, eq=False)
class DistanceLadder:
    """Sorted unique distances of an instance, rank 0 .. K.

    ``values[0]`` is always 0 (the diagonal); ``values[K]`` is the matrix
    maximum. ``cell_rank[i, j]`` gives the rank of entry (i, j).
    """

    values: np.ndarray  # strictly increasing
    cell_rank: np.ndarray  # (m, m) int

    @property
    def K(self) -> int:
        return len(self.values) - 1

    def rank_of(self, value) -> int:
        """Rank of an exact ladder member; KeyError for anything else."""
        k = int(np.searchsorted(self.values, value))
        if k >= len(self.values) or self.values[k] != value:
            raise KeyError(f"{value!r} is not a ladder value")
        return k


def build_point_set(records, name: str = "") -> PointSet:
    """Validate coordinate pairs and freeze them into a PointSet."""
    pts = np.asarray(list(records), dtype=np.float64)
    if pts.size == 0:
        raise EmptyInstance("no points given")
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise NonFiniteCoordinate("records must be (x, y) pairs")
    finite = np.isfinite(pts).all(axis=1)
    if not finite.all():
        bad = int(np.flatnonzero(~finite)[0])
        raise NonFiniteCoordinate(f"non-finite coordinate at index {bad}")
    pts.setflags(write=False)
    return PointSet(points=pts, name=name)


def squared_distance_matrix(ps: PointSet) -> DistanceMatrix:
    """Squared Euclidean distances, bitwise symmetric, zero diagonal.

    dx and dy are antisymmetric and IEEE negation is exact, so squaring
    makes the matrix symmetric to the last bit with no post-processing.
    """
    dx = ps.points[:, 0:1] - ps.points[:, 0:1].T
    dy = ps.points[:, 1:2] - ps.points[:, 1:2].T
    sq = dx * dx + dy * dy
    np.fill_diagonal(sq, 0.0)
    sq.setflags(write=False)
    return DistanceMatrix(m=ps.m, sq=sq, mode=REAL, name=ps.name)


def integer_ceiling_matrix(dm: DistanceMatrix) -> DistanceMatrix:
    """Round every distance up to the next integer, exactly.

    The float ceil of a float sqrt can land one off next to perfect
    squares, so the candidate is nudged until (c-1)^2 < sq <= c^2 holds
    for every cell.
    """
    sq = dm.sq
    c = np.ceil(np.sqrt(sq)).astype(np.int64)
    while True:
        too_high = (c > 0) & ((c - 1) * (c - 1) >= sq)
        too_low = c * c < sq
        if not (too_high.any() or too_low.any()):
            break
        c = c - too_high + too_low
    c.setflags(write=False)
    return DistanceMatrix(m=dm.m, sq=dm.sq, mode=INTEGER, d_int=c, name=dm.name)


def unique_distance_ladder(dm: DistanceMatrix) -> DistanceLadder:
    """Deduplicate the comparison-space matrix into the sorted ladder.

    Deduplication is by exact value equality. All entries come from the
    same coordinate arithmetic in one process, so geometrically equal
    distances have identical representations; an epsilon merge would
    silently change K and with it the whole trade-off curve.
    """
    key = dm.key
    values = np.unique(key)
    cell_rank = np.searchsorted(values, key)
    values.setflags(write=False)
    cell_rank.setflags(write=False)
    return DistanceLadder(values=values, cell_rank=cell_rank)
