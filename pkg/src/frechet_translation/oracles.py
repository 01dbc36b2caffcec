"""Slow, independent reference implementations used for verification.

These deliberately avoid the block summaries, decomposition trees, and
arrangement traversal: they work from pairwise distances, plain dynamic
programming, and raw circle-intersection enumeration only, so they can
serve as oracles for the fast paths.
"""

from __future__ import annotations

import numpy as np

from .free_space import FreeSpaceMatrix, PointSequence
from .geometry import (
    DEFAULT_TOL,
    Circle,
    IdenticalCircles,
    Point2,
    Tolerance,
    circle_circle_intersections,
    rightmost_point,
)

__all__ = [
    "matrix_reach_bruteforce",
    "naive_decide",
    "naive_optimize",
    "NaiveDecision",
]


def matrix_reach_bruteforce(M: FreeSpaceMatrix) -> np.ndarray:
    """Table of entries reachable from (0, 0), by the plain cell-by-cell DP."""
    bits = M.bits
    m, n = bits.shape
    reach = np.zeros((m, n), dtype=bool)
    for i in range(m):
        for j in range(n):
            if not bits[i, j]:
                continue
            if i == 0 and j == 0:
                reach[i, j] = True
                continue
            ok = False
            if i > 0 and reach[i - 1, j]:
                ok = True
            elif j > 0 and reach[i, j - 1]:
                ok = True
            elif i > 0 and j > 0 and reach[i - 1, j - 1]:
                ok = True
            reach[i, j] = ok
    return reach


class NaiveDecision:
    """Outcome of a brute-force decision: feasibility, witness, and counters."""

    def __init__(self, feasible, witness, candidates, dp_cells):
        self.feasible = feasible
        self.witness = witness
        self.candidates = candidates
        self.dp_cells = dp_cells


def _difference_points(P: PointSequence, Q: PointSequence) -> np.ndarray:
    return (P.array[:, None, :] - Q.array[None, :, :]).reshape(-1, 2)


def _candidate_translations(
    P: PointSequence, Q: PointSequence, delta: float, tol: Tolerance
) -> np.ndarray:
    """Arrangement vertices, one boundary point per disk, and p1 - q1."""
    diffs = _difference_points(P, Q)
    pts: list[tuple[float, float]] = [tuple(P.array[0] - Q.array[0])]
    if delta <= tol.eps:
        pts.extend(map(tuple, diffs))
        return np.asarray(pts)
    # distinct circle centers only; coincident difference points share a circle
    centers: list[np.ndarray] = []
    for d in diffs:
        if not any(np.hypot(*(d - c)) <= tol.eps for c in centers):
            centers.append(d)
    circles = [Circle(Point2(float(x), float(y)), delta) for x, y in centers]
    for c in circles:
        rp = rightmost_point(c)
        pts.append((rp.x, rp.y))
    for a in range(len(circles)):
        for b in range(a + 1, len(circles)):
            try:
                inters = circle_circle_intersections(circles[a], circles[b], tol)
            except IdenticalCircles:  # pragma: no cover - centers are distinct
                continue
            pts.extend((p.x, p.y) for p in inters)
    return np.asarray(pts)


def _feasible_batch(P: PointSequence, Q: PointSequence, cands: np.ndarray, delta: float, tol: Tolerance):
    """Run the corner-to-corner DP for every candidate translation at once."""
    shifted = Q.array[None, :, :] + cands[:, None, :]
    diff = P.array[None, :, None, :] - shifted[:, None, :, :]
    bits = np.hypot(diff[..., 0], diff[..., 1]) <= delta + tol.eps
    k, m, n = bits.shape
    reach = np.zeros((k, m, n), dtype=bool)
    reach[:, 0, 0] = bits[:, 0, 0]
    for i in range(m):
        for j in range(n):
            if i == 0 and j == 0:
                continue
            acc = np.zeros(k, dtype=bool)
            if i > 0:
                acc |= reach[:, i - 1, j]
            if j > 0:
                acc |= reach[:, i, j - 1]
            if i > 0 and j > 0:
                acc |= reach[:, i - 1, j - 1]
            reach[:, i, j] = bits[:, i, j] & acc
    return reach[:, -1, -1], k * m * n


def naive_decide(
    P: PointSequence,
    Q: PointSequence,
    delta: float,
    tol: Tolerance = DEFAULT_TOL,
) -> NaiveDecision:
    """Test feasibility by running the DP at every candidate translation."""
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    cands = _candidate_translations(P, Q, delta, tol)
    feas, cells = _feasible_batch(P, Q, cands, delta, tol)
    hit = np.flatnonzero(feas)
    if hit.size:
        x, y = cands[hit[0]]
        return NaiveDecision(True, Point2(float(x), float(y)), len(cands), cells)
    return NaiveDecision(False, None, len(cands), cells)


def naive_optimize(
    P: PointSequence,
    Q: PointSequence,
    tol: Tolerance = DEFAULT_TOL,
):
    """Scan the critical values in increasing order; return the first feasible.

    Returns ``(delta, witness)``.
    """
    from .optimize import critical_values

    cvs = critical_values(P, Q, tol)
    for value in cvs.values:
        result = naive_decide(P, Q, value, tol)
        if result.feasible:
            return float(value), result.witness
    raise AssertionError("largest critical value must be feasible")
