"""Arrangement of translation disks and a single-toggle traversal plan.

Each matrix entry ``(i, j)`` contributes a disk of radius ``delta``
centered at ``p_i - q_j``: the translations that bring the two points
within ``delta``.  All translations inside one face of the arrangement of
these disks induce the same free-space matrix, and stepping to a
neighboring face flips the entries of exactly one boundary circle.

Coincident difference points produce identical disks; those are merged
into one geometric circle carrying the list of matrix entries it toggles.
Vertices are the pairwise boundary intersections (deduplicated within
tolerance) plus the rightmost point of every circle, so every circle
carries at least one vertex and faces without real vertices remain
representable.  Faces are traced with half-edges; each connected
component of the boundary graph is traced separately and entered by an
explicit teleport in the traversal plan.

Testing the 2-faces alone can miss optima that exist only on boundaries,
so the plan also attaches one probe per vertex: the extra entries whose
closed disks pass through that vertex.  Applying the probe on top of the
incident face's state reproduces the matrix at the vertex exactly, which
dominates the matrices of all faces touching it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .free_space import PointSequence
from .geometry import DEFAULT_TOL, Circle, Point2, Tolerance

__all__ = [
    "DiskSet",
    "GeomCircle",
    "ArrangementGraph",
    "TraversalPlan",
    "PlanStep",
    "ProbeRecord",
    "build_disks",
    "build_arrangement",
    "make_traversal_plan",
]


@dataclass
class DiskSet:
    """One disk per matrix entry, all with the same radius."""

    disks: list  # [((i, j), Circle), ...]
    delta: float


def build_disks(P: PointSequence, Q: PointSequence, delta: float) -> DiskSet:
    """Disk of radius ``delta`` at every difference point ``p_i - q_j``."""
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    disks = []
    for i, p in enumerate(P.array):
        for j, q in enumerate(Q.array):
            center = Point2(float(p[0] - q[0]), float(p[1] - q[1]))
            disks.append(((i, j), Circle(center, float(delta))))
    return DiskSet(disks, float(delta))


@dataclass
class GeomCircle:
    """A geometric circle of the arrangement with the entries it toggles."""

    center: Point2
    radius: float
    entries: list


@dataclass
class _Vertex:
    point: Point2
    circles: list = field(default_factory=list)


@dataclass
class _HalfEdge:
    circle: int
    src: int
    dst: int
    a0: float  # start angle along the traversal direction
    a1: float
    ccw: bool
    twin: int = -1
    nxt: int = -1
    face: int = -1


@dataclass
class _Face:
    edges: list
    component: int
    unbounded: bool = False
    entries: frozenset = frozenset()
    sample: Point2 | None = None


@dataclass
class ProbeRecord:
    """Temporary toggles that realize the matrix at one vertex."""

    vertex: int
    point: Point2
    extras: list


@dataclass
class PlanStep:
    """Move to ``face`` by applying ``toggles``; then run ``probes``."""

    face: int
    toggles: list
    probes: list = field(default_factory=list)


@dataclass
class TraversalPlan:
    """Single-toggle walk visiting every face and probing every vertex."""

    start: Point2
    start_entries: frozenset
    steps: list

    @property
    def toggle_count(self) -> int:
        return sum(len(s.toggles) for s in self.steps) + 2 * sum(
            len(p.extras) for s in self.steps for p in s.probes
        )

    @property
    def probe_count(self) -> int:
        return sum(len(s.probes) for s in self.steps)

    @property
    def faces_visited(self) -> set:
        return {s.face for s in self.steps}


class ArrangementGraph:
    """Vertices, arcs, faces, and dual adjacency of the disk arrangement."""

    def __init__(self, circles, vertices, half_edges, faces, components, delta, tol):
        self.circles: list[GeomCircle] = circles
        self.vertices: list[_Vertex] = vertices
        self.half_edges: list[_HalfEdge] = half_edges
        self.faces: list[_Face] = faces
        self.components: list[list[int]] = components
        self.delta = delta
        self.tol = tol

    @property
    def num_arcs(self) -> int:
        return len(self.half_edges) // 2

    def euler_counts(self) -> list[tuple[int, int, int]]:
        """(V, E, F) per connected component, unbounded face included."""
        comp_of_circle = {}
        for k, comp in enumerate(self.components):
            for c in comp:
                comp_of_circle[c] = k
        counts = []
        for k, _ in enumerate(self.components):
            v = sum(1 for vx in self.vertices if comp_of_circle[vx.circles[0]] == k)
            e = sum(1 for h in self.half_edges if comp_of_circle[h.circle] == k) // 2
            f = sum(1 for fc in self.faces if fc.component == k)
            counts.append((v, e, f))
        return counts

    def closed_entry_set(self, t: Point2) -> frozenset:
        """Entries whose closed disk contains ``t``."""
        out = set()
        for c in self.circles:
            if math.hypot(t.x - c.center.x, t.y - c.center.y) <= c.radius + self.tol.eps:
                out.update(c.entries)
        return frozenset(out)

    def strict_entry_set(self, t: Point2) -> frozenset:
        """Entries whose open disk contains ``t``."""
        out = set()
        for c in self.circles:
            if math.hypot(t.x - c.center.x, t.y - c.center.y) < c.radius - self.tol.eps:
                out.update(c.entries)
        return frozenset(out)

    def to_json_dict(self) -> dict:
        """Debug dump: vertices, circles, faces, and dual edges."""
        dual = []
        for hid, h in enumerate(self.half_edges):
            if hid < h.twin:
                dual.append(
                    {
                        "faces": [h.face, self.half_edges[h.twin].face],
                        "entries": sorted(self.circles[h.circle].entries),
                    }
                )
        return {
            "delta": self.delta,
            "circles": [
                {
                    "center": [c.center.x, c.center.y],
                    "radius": c.radius,
                    "entries": sorted(c.entries),
                }
                for c in self.circles
            ],
            "vertices": [
                {"point": [v.point.x, v.point.y], "circles": sorted(v.circles)}
                for v in self.vertices
            ],
            "faces": [
                {
                    "id": i,
                    "component": f.component,
                    "unbounded": f.unbounded,
                    "entries": sorted(f.entries),
                    "sample": [f.sample.x, f.sample.y] if f.sample else None,
                }
                for i, f in enumerate(self.faces)
            ],
            "dual_edges": dual,
        }


def _merge_circles(ds: DiskSet, tol: Tolerance) -> list[GeomCircle]:
    circles: list[GeomCircle] = []
    for entry, circ in ds.disks:
        for gc in circles:
            if (
                math.hypot(circ.center.x - gc.center.x, circ.center.y - gc.center.y)
                <= tol.eps
            ):
                gc.entries.append(entry)
                break
        else:
            circles.append(GeomCircle(circ.center, circ.radius, [entry]))
    return circles


class _VertexPool:
    """Deduplicates near-coincident points with a coarse grid hash."""

    def __init__(self, tol: Tolerance):
        self.tol = tol
        self.h = max(tol.eps * 4.0, 1e-300)
        self.grid: dict = {}
        self.vertices: list[_Vertex] = []

    def add(self, p: Point2) -> int:
        kx = round(p.x / self.h)
        ky = round(p.y / self.h)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for idx in self.grid.get((kx + dx, ky + dy), ()):
                    q = self.vertices[idx].point
                    if math.hypot(p.x - q.x, p.y - q.y) <= self.tol.eps:
                        return idx
        idx = len(self.vertices)
        self.vertices.append(_Vertex(p))
        self.grid.setdefault((kx, ky), []).append(idx)
        return idx


def _rot_ccw(x: float, y: float) -> tuple[float, float]:
    return (-y, x)


def build_arrangement(ds: DiskSet, tol: Tolerance = DEFAULT_TOL) -> ArrangementGraph:
    """Construct the arrangement graph of a disk set.

    Identical disks (coincident difference points) are merged into one
    circle whose crossings toggle several matrix entries at once.
    """
    from .geometry import IdenticalCircles, circle_circle_intersections, rightmost_point

    delta = ds.delta
    if delta <= 0:
        raise ValueError("arrangement needs a positive radius; handle delta=0 separately")
    circles = _merge_circles(ds, tol)
    nc = len(circles)
    pool = _VertexPool(tol)

    for a in range(nc):
        ca = Circle(circles[a].center, circles[a].radius)
        for b in range(a + 1, nc):
            cb = Circle(circles[b].center, circles[b].radius)
            try:
                pts = circle_circle_intersections(ca, cb, tol)
            except IdenticalCircles:  # pragma: no cover - merged above
                continue
            for p in pts:
                pool.add(p)
    for c in circles:
        pool.add(rightmost_point(Circle(c.center, c.radius)))

    vertices = pool.vertices
    on_guard = tol.eps * 4.0
    for v in vertices:
        for ci, c in enumerate(circles):
            d = math.hypot(v.point.x - c.center.x, v.point.y - c.center.y)
            if abs(d - c.radius) <= on_guard:
                v.circles.append(ci)
    for vi, v in enumerate(vertices):
        if not v.circles:  # pragma: no cover - every vertex sits on its parents
            raise AssertionError(f"vertex {vi} lies on no circle")

    # arcs per circle: vertices sorted by angle, consecutive pairs
    half_edges: list[_HalfEdge] = []
    outgoing: dict[int, list[int]] = {i: [] for i in range(len(vertices))}
    for ci, c in enumerate(circles):
        vlist = [vi for vi, v in enumerate(vertices) if ci in v.circles]
        angs = sorted(
            (math.atan2(vertices[vi].point.y - c.center.y, vertices[vi].point.x - c.center.x), vi)
            for vi in vlist
        )
        k = len(angs)
        for idx in range(k):
            a0, v0 = angs[idx]
            a1, v1 = angs[(idx + 1) % k]
            if k == 1:
                a1 = a0 + 2.0 * math.pi
            elif a1 <= a0:
                a1 += 2.0 * math.pi
            hid = len(half_edges)
            fwd = _HalfEdge(ci, v0, v1, a0, a1, True, twin=hid + 1)
            bwd = _HalfEdge(ci, v1, v0, a1, a0, False, twin=hid)
            half_edges.append(fwd)
            half_edges.append(bwd)
            outgoing[v0].append(hid)
            outgoing[v1].append(hid + 1)

    # cyclic order of departures at each vertex: angle, then signed curvature
    def dep_key(hid: int):
        h = half_edges[hid]
        c = circles[h.circle]
        p = vertices[h.src].point
        ux, uy = p.x - c.center.x, p.y - c.center.y
        norm = math.hypot(ux, uy)
        ux, uy = ux / norm, uy / norm
        if h.ccw:
            tx, ty = _rot_ccw(ux, uy)
            kappa = 1.0 / c.radius
        else:
            tx, ty = -_rot_ccw(ux, uy)[0], -_rot_ccw(ux, uy)[1]
            kappa = -1.0 / c.radius
        ang = math.atan2(ty, tx)
        if ang < 0:
            ang += 2.0 * math.pi
        return (ang, kappa)

    order_pos: dict[int, int] = {}
    order_at: dict[int, list[int]] = {}
    for vi, hids in outgoing.items():
        hids_sorted = sorted(hids, key=dep_key)
        order_at[vi] = hids_sorted
        for pos, hid in enumerate(hids_sorted):
            order_pos[hid] = pos

    # next pointer: the departure clockwise-adjacent to the twin
    for hid, h in enumerate(half_edges):
        vtx = h.dst
        twin = h.twin
        ring = order_at[vtx]
        pos = order_pos[twin]
        h.nxt = ring[(pos - 1) % len(ring)]

    # faces = orbits of next
    faces: list[_Face] = []
    comp_of_circle = _circle_components(circles, vertices)
    ncomp = max(comp_of_circle.values()) + 1 if comp_of_circle else 0
    components: list[list[int]] = [[] for _ in range(ncomp)]
    for ci, k in comp_of_circle.items():
        components[k].append(ci)
    for hid, h in enumerate(half_edges):
        if h.face >= 0:
            continue
        cyc = []
        cur = hid
        while True:
            half_edges[cur].face = len(faces)
            cyc.append(cur)
            cur = half_edges[cur].nxt
            if cur == hid:
                break
        faces.append(_Face(cyc, comp_of_circle[h.circle]))

    ag = ArrangementGraph(circles, vertices, half_edges, faces, components, delta, tol)
    _mark_unbounded(ag)
    _assign_entries(ag)
    _assign_samples(ag)
    return ag


def _circle_components(circles, vertices) -> dict:
    parent = list(range(len(circles)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for v in vertices:
        for other in v.circles[1:]:
            union(v.circles[0], other)
    roots: dict[int, int] = {}
    comp = {}
    for ci in range(len(circles)):
        r = find(ci)
        if r not in roots:
            roots[r] = len(roots)
        comp[ci] = roots[r]
    return comp


def _mark_unbounded(ag: ArrangementGraph) -> None:
    """The face left of a northbound walk at a component's leftmost point."""
    for comp in ag.components:
        best = min(comp, key=lambda ci: ag.circles[ci].center.x - ag.circles[ci].radius)
        # the clockwise half-edge of the arc through angle pi on that circle
        target = None
        for hid, h in enumerate(ag.half_edges):
            if h.circle != best or h.ccw:
                continue
            # cw edges run from a1 down to a0 of the underlying arc; the
            # stored span is (a0, a1) with a0 > a1 for cw direction
            lo, hi = min(h.a0, h.a1), max(h.a0, h.a1)
            ang = math.pi
            if lo <= ang <= hi or lo <= ang + 2 * math.pi <= hi:
                target = hid
                break
        if target is None:  # pragma: no cover - every circle has a full cover of arcs
            raise AssertionError("no arc through the leftmost point")
        ag.faces[ag.half_edges[target].face].unbounded = True


def _assign_entries(ag: ArrangementGraph) -> None:
    """Component-local entry sets via breadth-first dual propagation."""
    from collections import deque

    seen = [False] * len(ag.faces)
    for fid, f in enumerate(ag.faces):
        if not f.unbounded:
            continue
        f.entries = frozenset()
        seen[fid] = True
        dq = deque([fid])
        while dq:
            cur = dq.popleft()
            for hid in ag.faces[cur].edges:
                h = ag.half_edges[hid]
                nb = ag.half_edges[h.twin].face
                circle_entries = frozenset(ag.circles[h.circle].entries)
                expected = ag.faces[cur].entries ^ circle_entries
                if seen[nb]:
                    if ag.faces[nb].entries != expected:  # pragma: no cover
                        raise AssertionError("inconsistent face entry propagation")
                    continue
                ag.faces[nb].entries = expected
                seen[nb] = True
                dq.append(nb)
    if not all(seen):  # pragma: no cover
        raise AssertionError("dual graph of a component is not connected")


def _assign_samples(ag: ArrangementGraph) -> None:
    comp_circle_ids = {}
    for k, comp in enumerate(ag.components):
        comp_circle_ids[k] = comp
    for fid, f in enumerate(ag.faces):
        f.sample = _face_sample(ag, fid)


def _face_sample(ag: ArrangementGraph, fid: int) -> Point2:
    """An interior point of the face, validated against its entry set."""
    f = ag.faces[fid]
    comp = ag.components[f.component]
    own = {e for ci in comp for e in ag.circles[ci].entries}
    want = f.entries
    guard = ag.tol.eps * 8.0
    for hid in f.edges:
        h = ag.half_edges[hid]
        c = ag.circles[h.circle]
        for frac in (0.5, 0.25, 0.75, 0.37, 0.63, 0.11, 0.89):
            ang = h.a0 + (h.a1 - h.a0) * frac
            px = c.center.x + c.radius * math.cos(ang)
            py = c.center.y + c.radius * math.sin(ang)
            # left normal of the walk direction: toward the face
            ux, uy = (px - c.center.x) / c.radius, (py - c.center.y) / c.radius
            nx, ny = (-ux, -uy) if h.ccw else (ux, uy)
            eps_seq = [ag.delta * (10.0 ** (-k)) for k in range(1, 10)]
            for off in eps_seq:
                cand = Point2(px + nx * off, py + ny * off)
                if _sample_ok(ag, cand, comp, own, want, guard):
                    return cand
    raise AssertionError(f"could not find an interior sample for face {fid}")


def _sample_ok(ag, cand, comp, own_entries, want, guard) -> bool:
    for ci, c in enumerate(ag.circles):
        d = math.hypot(cand.x - c.center.x, cand.y - c.center.y)
        if abs(d - c.radius) <= guard:
            return False
        if ci in comp:
            inside = d < c.radius
            should = ag.circles[ci].entries[0] in want
            if inside != should:
                return False
    return True


def make_traversal_plan(ag: ArrangementGraph, t0: Point2 | None = None) -> TraversalPlan:
    """Depth-first dual walk visiting every face, with one probe per vertex.

    Teleports (entry-set differences applied as single toggles) bridge the
    start state to each component and the components back to the start.
    Each step's toggles are the exact difference between consecutive
    visited states, so cross-component containment is already accounted
    for; every step lands on a realizable state.
    """
    if t0 is None:
        min_x = min(c.center.x for c in ag.circles)
        t0 = Point2(min_x - 2.0 * ag.delta - 1.0, 0.0)
    start_entries = ag.closed_entry_set(t0)

    # expected full state at each face's sample (own component + the rest)
    expected = [ag.strict_entry_set(f.sample) for f in ag.faces]
    for fid, f in enumerate(ag.faces):
        comp_entries = {e for ci in ag.components[f.component] for e in ag.circles[ci].entries}
        if frozenset(e for e in expected[fid] if e in comp_entries) != f.entries:
            raise AssertionError(f"sample of face {fid} disagrees with its entry set")

    # one probe per vertex, attached to an incident face
    probes_at: dict[int, list[ProbeRecord]] = {}
    for vi, v in enumerate(ag.vertices):
        fid = ag.half_edges[[h for h in range(len(ag.half_edges)) if ag.half_edges[h].src == vi][0]].face
        extras = sorted(ag.closed_entry_set(v.point) - expected[fid])
        probes_at.setdefault(fid, []).append(ProbeRecord(vi, v.point, extras))

    steps: list[PlanStep] = []
    state = set(start_entries)
    visited = [False] * len(ag.faces)

    def arrive(fid: int) -> PlanStep:
        nonlocal state
        toggles = sorted(state ^ expected[fid])
        state = set(expected[fid])
        step = PlanStep(fid, toggles)
        if not visited[fid]:
            visited[fid] = True
            step.probes = probes_at.get(fid, [])
        steps.append(step)
        return step

    for comp_id in range(len(ag.components)):
        roots = [fid for fid, f in enumerate(ag.faces) if f.component == comp_id and f.unbounded]
        root = roots[0]
        arrive(root)
        stack = [(root, iter(list(ag.faces[root].edges)))]
        while stack:
            _fid, it = stack[-1]
            advanced = False
            for hid in it:
                nb = ag.half_edges[ag.half_edges[hid].twin].face
                if not visited[nb]:
                    arrive(nb)
                    stack.append((nb, iter(list(ag.faces[nb].edges))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if stack:
                    arrive(stack[-1][0])

    # restore the start state exactly
    final = sorted(state ^ start_entries)
    state = set(start_entries)
    if final or not steps:
        steps.append(PlanStep(-1, final))
    return TraversalPlan(t0, start_entries, steps)
