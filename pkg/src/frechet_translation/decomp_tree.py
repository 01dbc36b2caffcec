"""Decomposition trees that keep corner-to-corner reachability under toggles.

A :class:`SquareTree` recursively halves both the row range and the column
range of its block into disjoint quadrants (single-axis halving once the
other axis is down to two points), keeping a boundary summary per node.
Leaves are at most 2x2 and are summarized by brute force; an inner node is
summarized by composing its children across the seams.  Because the
children partition the block, a single-entry update touches exactly one
root-to-leaf path.

A :class:`RectTree` covers a wide matrix by square tiles that overlap in
one column, builds a :class:`SquareTree` per tile, restricts each tile's
summary to its vertical boundaries, and combines the tiles in a balanced
binary tree whose nodes hold vertical summaries merged over the shared
columns.  Matrices with more rows than columns are transposed internally;
update indices are mapped accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .block_reach import (
    BlockReachability,
    VerticalReachability,
    build_phi_bruteforce,
    merge_adjacent_phi,
    merge_phi_bar,
    restrict_to_vertical,
)
from .free_space import FreeSpaceMatrix

__all__ = [
    "UpdateStats",
    "SquareTree",
    "RectTree",
    "build_gamma",
    "update_gamma",
    "query_gamma",
    "build_gamma_bar",
    "update_gamma_bar",
    "query_gamma_bar",
]


@dataclass
class UpdateStats:
    """Instrumentation for one update: how much of the structure was touched."""

    phi_rebuilds: int = 0
    depth_touched: int = 0
    work_units: int = 0
    blocks: list = field(default_factory=list)

    def merge(self, other: "UpdateStats") -> None:
        self.phi_rebuilds += other.phi_rebuilds
        self.depth_touched = max(self.depth_touched, other.depth_touched)
        self.work_units += other.work_units
        self.blocks.extend(other.blocks)


class _GNode:
    __slots__ = ("r0", "r1", "c0", "c1", "split", "children", "phi")

    def __init__(self, r0, r1, c0, c1):
        self.r0, self.r1, self.c0, self.c1 = r0, r1, c0, c1
        self.split = "leaf"
        self.children: list[_GNode] = []
        self.phi: BlockReachability | None = None

    def contains(self, i: int, j: int) -> bool:
        return self.r0 <= i < self.r1 and self.c0 <= j < self.c1

    def extent(self) -> tuple[int, int, int, int]:
        return (self.r0, self.r1, self.c0, self.c1)


def _compose(node: _GNode) -> BlockReachability:
    ch = node.children
    if node.split == "rows":
        return merge_adjacent_phi(ch[0].phi, ch[1].phi, "horizontal")
    if node.split == "cols":
        return merge_adjacent_phi(ch[0].phi, ch[1].phi, "vertical")
    bottom = merge_adjacent_phi(ch[0].phi, ch[1].phi, "vertical")
    top = merge_adjacent_phi(ch[2].phi, ch[3].phi, "vertical")
    return merge_adjacent_phi(bottom, top, "horizontal")


class SquareTree:
    """Partition tree over one block; exactly one leaf owns each entry."""

    def __init__(self, bits: np.ndarray):
        self.bits = np.array(bits, dtype=bool)
        if self.bits.ndim != 2 or 0 in self.bits.shape:
            raise ValueError("need a nonempty 2-d bit matrix")
        self.root = self._build(0, self.bits.shape[0], 0, self.bits.shape[1])

    @property
    def m(self) -> int:
        return self.bits.shape[0]

    @property
    def n(self) -> int:
        return self.bits.shape[1]

    def _rebuild_node(self, node: _GNode, stats: UpdateStats) -> None:
        if node.split == "leaf":
            sub = self.bits[node.r0 : node.r1, node.c0 : node.c1]
            node.phi = build_phi_bruteforce(sub)
            ones = int(sub.sum())
            stats.work_units += sub.size * max(1, ones)
        else:
            node.phi = _compose(node)
            stats.work_units += 2 * node.phi.boundary_len
        stats.phi_rebuilds += 1
        stats.blocks.append(node.extent())

    def _build(self, r0, r1, c0, c1) -> _GNode:
        node = _GNode(r0, r1, c0, c1)
        nr, nc = r1 - r0, c1 - c0
        if nr > 2 and nc > 2:
            node.split = "both"
            rm = r0 + (nr + 1) // 2
            cm = c0 + (nc + 1) // 2
            node.children = [
                self._build(r0, rm, c0, cm),
                self._build(r0, rm, cm, c1),
                self._build(rm, r1, c0, cm),
                self._build(rm, r1, cm, c1),
            ]
        elif nr > 2:
            node.split = "rows"
            rm = r0 + (nr + 1) // 2
            node.children = [self._build(r0, rm, c0, c1), self._build(rm, r1, c0, c1)]
        elif nc > 2:
            node.split = "cols"
            cm = c0 + (nc + 1) // 2
            node.children = [self._build(r0, r1, c0, cm), self._build(r0, r1, cm, c1)]
        self._rebuild_node(node, UpdateStats())
        return node

    def set_entry(self, i: int, j: int, value: bool) -> UpdateStats:
        """Write one bit and rebuild the summaries along its leaf path."""
        if not (0 <= i < self.m and 0 <= j < self.n):
            raise IndexError(f"entry ({i}, {j}) outside {self.m}x{self.n} block")
        self.bits[i, j] = value
        stats = UpdateStats()
        self._update(self.root, i, j, stats, depth=1)
        return stats

    def toggle(self, i: int, j: int) -> UpdateStats:
        return self.set_entry(i, j, not self.bits[i, j])

    def _update(self, node: _GNode, i, j, stats: UpdateStats, depth: int) -> None:
        stats.depth_touched = max(stats.depth_touched, depth)
        if node.split != "leaf":
            for child in node.children:
                if child.contains(i, j):
                    self._update(child, i, j, stats, depth + 1)
                    break
        self._rebuild_node(node, stats)

    def query(self) -> bool:
        """Whether the top-right corner is reachable from the bottom-left one."""
        phi = self.root.phi
        start = self.n - 1
        target = self.m - 1
        if not phi.in_ones[start] or phi.sigma_a[start] < 0:
            return False
        return bool(
            phi.sigma_a[start] <= target <= phi.sigma_z[start]
            and phi.out_reach[target]
        )


class _TNode:
    __slots__ = ("lo", "hi", "children", "phibar")

    def __init__(self, lo, hi):
        self.lo, self.hi = lo, hi
        self.children: list[_TNode] = []
        self.phibar: VerticalReachability | None = None


class RectTree:
    """Tile row of square trees plus a balanced tree of vertical summaries."""

    def __init__(self, matrix: FreeSpaceMatrix):
        bits = np.array(matrix.bits, dtype=bool)
        self.transposed = bits.shape[0] > bits.shape[1]
        if self.transposed:
            bits = bits.T.copy()
        self.bits = bits
        rows, cols = bits.shape
        width = max(rows, 2)
        self.tile_spans: list[tuple[int, int]] = []
        s = 0
        while True:
            e = min(s + width, cols)
            self.tile_spans.append((s, e))
            if e == cols:
                break
            s = e - 1
        self.tiles = [SquareTree(bits[:, s:e]) for s, e in self.tile_spans]
        self.troot = self._build_t(0, len(self.tiles))

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    def _build_t(self, lo, hi) -> _TNode:
        node = _TNode(lo, hi)
        if hi - lo == 1:
            node.phibar = restrict_to_vertical(self.tiles[lo].root.phi)
        else:
            mid = (lo + hi) // 2
            node.children = [self._build_t(lo, mid), self._build_t(mid, hi)]
            node.phibar = merge_phi_bar(node.children[0].phibar, node.children[1].phibar)
        return node

    def _map(self, i: int, j: int) -> tuple[int, int]:
        return (j, i) if self.transposed else (i, j)

    def bit(self, i: int, j: int) -> bool:
        i, j = self._map(i, j)
        return bool(self.bits[i, j])

    def set_entry(self, i: int, j: int, value: bool) -> UpdateStats:
        """Write one bit; rebuild inside the owning tile(s) and up the tile tree."""
        i, j = self._map(i, j)
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry outside {self.rows}x{self.cols} matrix")
        self.bits[i, j] = value
        stats = UpdateStats()
        touched = set()
        for k, (s, e) in enumerate(self.tile_spans):
            if s <= j < e:
                touched.add(k)
                stats.merge(self.tiles[k].set_entry(i, j - s, value))
        self._update_t(self.troot, touched, stats, depth=1)
        return stats

    def toggle(self, i: int, j: int) -> UpdateStats:
        mi, mj = self._map(i, j)
        return self.set_entry(i, j, not self.bits[mi, mj])

    def _update_t(self, node: _TNode, touched: set, stats: UpdateStats, depth: int) -> bool:
        if node.hi - node.lo == 1:
            if node.lo not in touched:
                return False
            node.phibar = restrict_to_vertical(self.tiles[node.lo].root.phi)
        else:
            changed = False
            for child in node.children:
                if self._update_t(child, touched, stats, depth + 1):
                    changed = True
            if not changed:
                return False
            node.phibar = merge_phi_bar(node.children[0].phibar, node.children[1].phibar)
        stats.phi_rebuilds += 1
        stats.depth_touched = max(stats.depth_touched, depth)
        stats.work_units += 2 * node.phibar.rows
        return True

    def query(self) -> bool:
        """Constant-time corner reachability check at the tile-tree root."""
        pb = self.troot.phibar
        target = self.rows - 1
        if not pb.in_ones[0] or pb.sigma_a[0] < 0:
            return False
        return bool(pb.sigma_a[0] <= target <= pb.sigma_z[0] and pb.out_reach[target])


def build_gamma(M: FreeSpaceMatrix) -> SquareTree:
    """Decomposition tree of a (typically square) matrix snapshot."""
    return SquareTree(M.bits)


def update_gamma(g: SquareTree, i: int, j: int, newbit: bool) -> UpdateStats:
    """Set one entry and rebuild exactly the summaries whose block contains it."""
    return g.set_entry(i, j, bool(newbit))


def query_gamma(g: SquareTree) -> bool:
    """Corner-to-corner reachability of the tree's current matrix."""
    return g.query()


def build_gamma_bar(M: FreeSpaceMatrix) -> RectTree:
    """Tiled structure for arbitrary matrices (transposes when rows > cols)."""
    return RectTree(M)


def update_gamma_bar(g: RectTree, i: int, j: int, newbit: bool) -> UpdateStats:
    """Set one entry; rebuild inside the owning tile(s) and along the tile tree."""
    return g.set_entry(i, j, bool(newbit))


def query_gamma_bar(g: RectTree) -> bool:
    """Corner-to-corner reachability of the tiled structure."""
    return g.query()
