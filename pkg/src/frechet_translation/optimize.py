"""Decision and optimization for the matching distance under translation.

``decide`` answers "is there a translation bringing the coupled-traversal
distance under ``delta``?".  The fast backend walks the disk-arrangement
traversal plan while maintaining corner-to-corner reachability in the
tiled decomposition tree, querying after every step and probe; the naive
backend reruns the full dynamic program at every candidate translation.

The optimum over translations is always one of finitely many critical
radii: half-distances between difference points (two disks becoming
tangent) or circumradii of difference-point triples (three boundaries
meeting).  ``optimize_exact`` binary-searches the decision procedure over
that sorted set.  ``optimize_bisect`` is a numeric fallback that only
relies on monotonicity of the decision in ``delta``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .arrangement import build_arrangement, build_disks, make_traversal_plan
from .decomp_tree import build_gamma_bar, query_gamma_bar, update_gamma_bar
from .free_space import PointSequence, build_matrix, stationary_frechet
from .geometry import (
    DEFAULT_TOL,
    CollinearPoints,
    Point2,
    Tolerance,
    circumradius,
    dist,
)
from .oracles import naive_decide

__all__ = [
    "DecideStats",
    "DecisionResult",
    "CriticalValues",
    "decide",
    "critical_values",
    "optimize_exact",
    "optimize_bisect",
]


@dataclass
class DecideStats:
    """Work counters for one decision call."""

    faces: int = 0
    toggles: int = 0
    probes: int = 0
    phi_rebuilds: int = 0
    dp_cells: int = 0
    candidates: int = 0
    wall_time: float = 0.0


@dataclass
class DecisionResult:
    feasible: bool
    witness: Point2 | None
    delta: float
    backend: str
    stats: DecideStats = field(default_factory=DecideStats)


def _decide_degenerate(P, Q, delta, tol) -> DecisionResult:
    """delta == 0: the only candidate translations are the difference points."""
    diffs = (P.array[:, None, :] - Q.array[None, :, :]).reshape(-1, 2)
    cands = [Point2(float(x), float(y)) for x, y in dict.fromkeys(map(tuple, diffs))]
    stats = DecideStats(candidates=len(cands))
    from .free_space import stationary_decide

    for t in cands:
        M = build_matrix(P, Q, t, delta, tol)
        stats.dp_cells += M.bits.size
        if stationary_decide(M):
            return DecisionResult(True, t, delta, "fast", stats)
    return DecisionResult(False, None, delta, "fast", stats)


def decide(
    P: PointSequence,
    Q: PointSequence,
    delta: float,
    backend: str = "fast",
    tol: Tolerance = DEFAULT_TOL,
) -> DecisionResult:
    """Whether some translation makes the matching distance at most ``delta``."""
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    start = time.perf_counter()
    if backend == "naive":
        nd = naive_decide(P, Q, delta, tol)
        stats = DecideStats(candidates=nd.candidates, dp_cells=nd.dp_cells)
        stats.wall_time = time.perf_counter() - start
        return DecisionResult(nd.feasible, nd.witness, delta, "naive", stats)
    if backend != "fast":
        raise ValueError(f"unknown backend {backend!r}")

    if delta <= tol.eps:
        res = _decide_degenerate(P, Q, delta, tol)
        res.stats.wall_time = time.perf_counter() - start
        return res

    ds = build_disks(P, Q, delta)
    ag = build_arrangement(ds, tol)
    plan = make_traversal_plan(ag)
    tree = build_gamma_bar(build_matrix(P, Q, plan.start, delta, tol))
    stats = DecideStats()

    def finish(feasible, witness):
        stats.wall_time = time.perf_counter() - start
        return DecisionResult(feasible, witness, delta, "fast", stats)

    if query_gamma_bar(tree):  # pragma: no cover - start face is all-outside
        return finish(True, plan.start)

    for step in plan.steps:
        for (i, j) in step.toggles:
            st = update_gamma_bar(tree, i, j, not tree.bit(i, j))
            stats.toggles += 1
            stats.phi_rebuilds += st.phi_rebuilds
            stats.dp_cells += st.work_units
        if step.face >= 0:
            stats.faces += 1
            if query_gamma_bar(tree):
                return finish(True, ag.faces[step.face].sample)
        for probe in step.probes:
            stats.probes += 1
            for (i, j) in probe.extras:
                st = update_gamma_bar(tree, i, j, True)
                stats.toggles += 1
                stats.phi_rebuilds += st.phi_rebuilds
                stats.dp_cells += st.work_units
            hit = query_gamma_bar(tree)
            for (i, j) in probe.extras:
                st = update_gamma_bar(tree, i, j, False)
                stats.toggles += 1
                stats.phi_rebuilds += st.phi_rebuilds
                stats.dp_cells += st.work_units
            if hit:
                return finish(True, probe.point)
    return finish(False, None)


@dataclass
class CriticalValues:
    """Sorted, deduplicated candidate radii with their origins.

    Kinds: ``"zero"``, ``"pair"`` (half-distance of two difference points),
    ``"triple"`` (circumradius of three difference points).
    """

    values: list
    kinds: list

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, delta: float) -> bool:
        eps = 1e-9
        return any(abs(v - delta) <= max(eps, eps * abs(v)) for v in self.values)


def critical_values(
    P: PointSequence, Q: PointSequence, tol: Tolerance = DEFAULT_TOL
) -> CriticalValues:
    """All radii at which the arrangement of translation disks can change."""
    diffs = (P.array[:, None, :] - Q.array[None, :, :]).reshape(-1, 2)
    pts: list[np.ndarray] = []
    for d in diffs:
        if not any(np.hypot(*(d - e)) <= tol.eps for e in pts):
            pts.append(d)
    tagged: list[tuple[float, str]] = [(0.0, "zero")]
    k = len(pts)
    for a in range(k):
        for b in range(a + 1, k):
            tagged.append((float(np.hypot(*(pts[a] - pts[b])) / 2.0), "pair"))
    for a in range(k):
        pa = Point2(float(pts[a][0]), float(pts[a][1]))
        for b in range(a + 1, k):
            pb = Point2(float(pts[b][0]), float(pts[b][1]))
            for c in range(b + 1, k):
                pc = Point2(float(pts[c][0]), float(pts[c][1]))
                try:
                    tagged.append((circumradius(pa, pb, pc, tol), "triple"))
                except CollinearPoints:
                    continue
    tagged.sort(key=lambda t: t[0])
    values: list[float] = []
    kinds: list[str] = []
    for v, kind in tagged:
        if values and v - values[-1] <= max(tol.eps, tol.eps * abs(v)):
            continue
        values.append(v)
        kinds.append(kind)
    return CriticalValues(values, kinds)


def optimize_exact(
    P: PointSequence,
    Q: PointSequence,
    backend: str = "fast",
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[float, Point2]:
    """Minimum matching distance under translation, with a witness.

    Binary search for the first feasible critical value; the optimum is
    always a member of the critical set.
    """
    cvs = critical_values(P, Q, tol)
    values = cvs.values
    results: dict[int, DecisionResult] = {}

    def feasible(idx: int) -> bool:
        if idx not in results:
            results[idx] = decide(P, Q, values[idx], backend, tol)
        return results[idx].feasible

    lo, hi = 0, len(values) - 1
    if feasible(lo):
        hi = lo
    else:
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if feasible(mid):
                hi = mid
            else:
                lo = mid
        if not feasible(hi):  # pragma: no cover - the largest value is feasible
            raise AssertionError("no feasible critical value found")
    res = results[hi]
    return float(values[hi]), res.witness


def optimize_bisect(
    P: PointSequence,
    Q: PointSequence,
    eps_target: float,
    backend: str = "fast",
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[float, float, Point2]:
    """Bracket the optimum to ``eps_target`` by bisection on the decision.

    Returns ``(lo, hi, witness)`` with ``decide(lo)`` infeasible (unless the
    optimum is 0), ``decide(hi)`` feasible, and ``hi - lo <= eps_target``.
    """
    if eps_target <= 0:
        raise ValueError(f"eps_target must be > 0, got {eps_target}")
    zero = decide(P, Q, 0.0, backend, tol)
    if zero.feasible:
        return 0.0, 0.0, zero.witness
    hi = stationary_frechet(P, Q, tol)
    res = decide(P, Q, hi, backend, tol)
    if not res.feasible:  # pragma: no cover - t=0 certifies feasibility
        raise AssertionError("stationary distance must be feasible under translation")
    lo = 0.0
    witness = res.witness
    while hi - lo > eps_target:
        mid = 0.5 * (lo + hi)
        r = decide(P, Q, mid, backend, tol)
        if r.feasible:
            hi = mid
            witness = r.witness
        else:
            lo = mid
    return lo, hi, witness
