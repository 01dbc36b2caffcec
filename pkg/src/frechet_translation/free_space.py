"""The 0/1 free-space matrix and the classical stationary baselines.

Row ``i`` of the matrix corresponds to the ``i``-th point of the first
sequence and sits at the *bottom* for ``i = 0``; column ``j`` corresponds
to the ``j``-th point of the second sequence.  A coupled traversal of the
two sequences is a monotone staircase of 1-entries from ``(0, 0)`` to
``(m-1, n-1)`` using up, right, and diagonal steps.  All indices in this
package are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .geometry import DEFAULT_TOL, Point2, Tolerance

__all__ = [
    "PointSequence",
    "FreeSpaceMatrix",
    "GridStep",
    "build_matrix",
    "stationary_decide",
    "stationary_frechet",
    "toggle_entry",
]


class GridStep(Enum):
    """One move of the coupled traversal, as a (row, col) increment."""

    UP = (1, 0)
    RIGHT = (0, 1)
    DIAGONAL = (1, 1)

    @property
    def offset(self) -> tuple[int, int]:
        return self.value


class PointSequence:
    """An ordered, nonempty sequence of planar points."""

    def __init__(self, points):
        arr = np.asarray(points, dtype=np.float64)
        if arr.ndim == 1 and arr.size == 2:
            arr = arr.reshape(1, 2)
        if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
            raise ValueError("a point sequence needs at least one (x, y) point")
        if not np.all(np.isfinite(arr)):
            raise ValueError("point coordinates must be finite")
        self._arr = arr

    @property
    def array(self) -> np.ndarray:
        """The underlying (k, 2) float array."""
        return self._arr

    def __len__(self) -> int:
        return self._arr.shape[0]

    def __getitem__(self, i: int) -> Point2:
        x, y = self._arr[i]
        return Point2(float(x), float(y))

    def __iter__(self):
        for x, y in self._arr:
            yield Point2(float(x), float(y))

    def __repr__(self) -> str:
        return f"PointSequence({self._arr.tolist()!r})"


@dataclass
class FreeSpaceMatrix:
    """Boolean matrix of pointwise closeness at one translation.

    ``bits[i, j]`` starts out as ``dist(p_i, q_j + translation) <= delta``;
    after :func:`toggle_entry` calls the bits field is authoritative.
    """

    bits: np.ndarray
    delta: float
    translation: Point2 = field(default_factory=lambda: Point2(0.0, 0.0))

    @property
    def m(self) -> int:
        return self.bits.shape[0]

    @property
    def n(self) -> int:
        return self.bits.shape[1]

    def copy(self) -> "FreeSpaceMatrix":
        return FreeSpaceMatrix(self.bits.copy(), self.delta, self.translation)


def _pairwise_distances(P: PointSequence, Q: PointSequence, t: Point2) -> np.ndarray:
    shifted = Q.array + np.array([t.x, t.y])
    diff = P.array[:, None, :] - shifted[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1])


def build_matrix(
    P: PointSequence,
    Q: PointSequence,
    t: Point2 = Point2(0.0, 0.0),
    delta: float = 0.0,
    tol: Tolerance = DEFAULT_TOL,
) -> FreeSpaceMatrix:
    """Closed-disk free-space matrix of ``P`` against ``Q + t`` at ``delta``."""
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    dists = _pairwise_distances(P, Q, t)
    return FreeSpaceMatrix(dists <= delta + tol.eps, float(delta), t)


def reachable_table(bits: np.ndarray) -> np.ndarray:
    """Boolean table of entries reachable from (0, 0) by monotone 1-paths."""
    bits = np.asarray(bits, dtype=bool)
    m, n = bits.shape
    reach = np.zeros_like(bits)
    if not bits[0, 0]:
        return reach
    reach[0, 0] = True
    reach[0, 1:] = np.logical_and.accumulate(bits[0, 1:]) & bits[0, 0]
    for i in range(1, m):
        prev = reach[i - 1]
        seed = bits[i] & (prev | np.concatenate(([False], prev[:-1])))
        row = reach[i]
        left = False
        for j in range(n):
            left = bits[i, j] and (seed[j] or left)
            row[j] = left
    return reach


def stationary_decide(M: FreeSpaceMatrix) -> bool:
    """Whether a monotone path of 1s joins the two corners of ``M``."""
    return bool(reachable_table(M.bits)[-1, -1])


def stationary_frechet(
    P: PointSequence, Q: PointSequence, tol: Tolerance = DEFAULT_TOL
) -> float:
    """The stationary coupled-traversal distance between ``P`` and ``Q``.

    The optimum is always one of the pairwise distances, so this runs a
    binary search over the sorted distance multiset rather than a numeric
    bisection.
    """
    dists = _pairwise_distances(P, Q, Point2(0.0, 0.0))
    candidates = np.unique(dists)

    def feasible(delta: float) -> bool:
        return bool(reachable_table(dists <= delta + tol.eps)[-1, -1])

    lo, hi = 0, len(candidates) - 1
    if feasible(float(candidates[0])):
        return float(candidates[0])
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if feasible(float(candidates[mid])):
            hi = mid
        else:
            lo = mid
    return float(candidates[hi])


def toggle_entry(M: FreeSpaceMatrix, i: int, j: int) -> FreeSpaceMatrix:
    """Flip bit ``(i, j)`` in place and return the matrix."""
    if not (0 <= i < M.m and 0 <= j < M.n):
        raise IndexError(f"entry ({i}, {j}) outside {M.m}x{M.n} matrix")
    M.bits[i, j] = not M.bits[i, j]
    return M
