"""Compact boundary-to-boundary reachability summaries for matrix blocks.

A block is a contiguous submatrix of the free-space matrix.  Its *input
boundary* is the bottom row enumerated right-to-left followed by the left
column bottom-to-top (the shared corner once); its *output boundary* is
the right column bottom-to-top followed by the top row right-to-left.
Both enumerations have ``r + c - 1`` positions for an ``r x c`` block and
share the bottom-right and top-left cells.

For every 1-entry of the input boundary the summary stores the first and
last output-boundary positions reachable by a monotone path inside the
block (``sigma_a`` / ``sigma_z``), and for every 1-entry of the output
boundary a flag marking whether any input reaches it plus the inverse
lists of inputs whose first (resp. last) reachable output is that
position.  Two structural facts make these maps composable:

* crossing paths can be re-spliced, so between ``sigma_a(i)`` and
  ``sigma_z(i)`` every flagged 1-entry is reachable from ``i``;
* for inputs ``i < j`` both maps are nondecreasing, so the reachable
  output sets of ordered inputs form a monotone staircase of intervals.

Merging two summaries whose blocks share a full row or column composes
the maps through the shared boundary.  Composing only at the endpoint of
an interval is not enough: the endpoint's continuation can be undefined
while a later crossing inside the interval still reaches the far side,
so the merge walks to the first/last *usable* crossing with precomputed
index arrays.  Adjacent (non-overlapping) blocks compose the same way,
except that a crossing additionally takes one up/right/diagonal step
across the seam.

The vertical variants restrict both boundaries to the left/right columns
(enumerated bottom-to-top) and are the building blocks for wide
matrices, where every path from corner to corner must cross each interior
column.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BlockReachability",
    "VerticalReachability",
    "input_boundary",
    "output_boundary",
    "build_phi_bruteforce",
    "build_phibar_bruteforce",
    "transpose_phi",
    "propagate",
    "propagate_vertical",
    "merge_phi",
    "merge_adjacent_phi",
    "merge_phi_bar",
    "restrict_to_vertical",
    "validate_phi",
    "validate_phibar",
]

_BIG = np.iinfo(np.int64).max


@dataclass
class BlockReachability:
    """Boundary reachability summary of an ``rows x cols`` block."""

    rows: int
    cols: int
    in_ones: np.ndarray
    out_ones: np.ndarray
    sigma_a: np.ndarray
    sigma_z: np.ndarray
    out_reach: np.ndarray
    lists_a: list
    lists_z: list

    @property
    def boundary_len(self) -> int:
        return self.rows + self.cols - 1


@dataclass
class VerticalReachability:
    """Reachability between the left and right columns of a block."""

    rows: int
    in_ones: np.ndarray
    out_ones: np.ndarray
    sigma_a: np.ndarray
    sigma_z: np.ndarray
    out_reach: np.ndarray
    lists_a: list
    lists_z: list


def input_boundary(r: int, c: int) -> list[tuple[int, int]]:
    """Input-boundary cells of an ``r x c`` block, in enumeration order."""
    cells = [(0, j) for j in range(c - 1, -1, -1)]
    cells += [(i, 0) for i in range(1, r)]
    return cells


def output_boundary(r: int, c: int) -> list[tuple[int, int]]:
    """Output-boundary cells of an ``r x c`` block, in enumeration order."""
    cells = [(i, c - 1) for i in range(r)]
    cells += [(r - 1, j) for j in range(c - 2, -1, -1)]
    return cells


def _reach_from_sources(bits: np.ndarray, sources: list[tuple[int, int]]) -> np.ndarray:
    """Per-source reachability grids, vectorized over sources."""
    r, c = bits.shape
    s = len(sources)
    reach = np.zeros((s, r, c), dtype=bool)
    seed = np.zeros((s, r, c), dtype=bool)
    for k, (i, j) in enumerate(sources):
        seed[k, i, j] = bits[i, j]
    for i in range(r):
        for j in range(c):
            if not bits[i, j]:
                continue
            acc = seed[:, i, j].copy()
            if i > 0:
                acc |= reach[:, i - 1, j]
            if j > 0:
                acc |= reach[:, i, j - 1]
            if i > 0 and j > 0:
                acc |= reach[:, i - 1, j - 1]
            reach[:, i, j] = acc
    return reach


def _bucket(sigma: np.ndarray, nout: int) -> list:
    lists: list = [[] for _ in range(nout)]
    for i, j in enumerate(sigma):
        if j >= 0:
            lists[j].append(i)
    return lists


def build_phi_bruteforce(bits: np.ndarray) -> BlockReachability:
    """Summary of a block computed by exhaustive per-source dynamic programming.

    Used at decomposition-tree leaves and as the reference oracle for every
    merge operation.
    """
    bits = np.asarray(bits, dtype=bool)
    r, c = bits.shape
    bin_cells = input_boundary(r, c)
    bout_cells = output_boundary(r, c)
    n = len(bin_cells)
    in_ones = np.array([bits[cell] for cell in bin_cells], dtype=bool)
    out_ones = np.array([bits[cell] for cell in bout_cells], dtype=bool)
    sigma_a = np.full(n, -1, dtype=np.int64)
    sigma_z = np.full(n, -1, dtype=np.int64)
    out_reach = np.zeros(n, dtype=bool)
    srcs = [cell for cell, one in zip(bin_cells, in_ones) if one]
    src_idx = [k for k, one in enumerate(in_ones) if one]
    if srcs:
        reach = _reach_from_sources(bits, srcs)
        out_rows = np.array([cell[0] for cell in bout_cells])
        out_cols = np.array([cell[1] for cell in bout_cells])
        hits = reach[:, out_rows, out_cols]
        for s, i in enumerate(src_idx):
            where = np.flatnonzero(hits[s])
            if where.size:
                sigma_a[i] = where[0]
                sigma_z[i] = where[-1]
        out_reach = hits.any(axis=0)
    return BlockReachability(
        r, c, in_ones, out_ones, sigma_a, sigma_z, out_reach,
        _bucket(sigma_a, n), _bucket(sigma_z, n),
    )


def build_phibar_bruteforce(bits: np.ndarray) -> VerticalReachability:
    """Left-column to right-column reachability summary, by brute force."""
    bits = np.asarray(bits, dtype=bool)
    r, c = bits.shape
    in_ones = bits[:, 0].copy()
    out_ones = bits[:, c - 1].copy()
    sigma_a = np.full(r, -1, dtype=np.int64)
    sigma_z = np.full(r, -1, dtype=np.int64)
    out_reach = np.zeros(r, dtype=bool)
    srcs = [(i, 0) for i in range(r) if in_ones[i]]
    src_idx = [i for i in range(r) if in_ones[i]]
    if srcs:
        reach = _reach_from_sources(bits, srcs)
        hits = reach[:, :, c - 1]
        for s, i in enumerate(src_idx):
            where = np.flatnonzero(hits[s])
            if where.size:
                sigma_a[i] = where[0]
                sigma_z[i] = where[-1]
        out_reach = hits.any(axis=0)
    return VerticalReachability(
        r, in_ones, out_ones, sigma_a, sigma_z, out_reach,
        _bucket(sigma_a, r), _bucket(sigma_z, r),
    )


def transpose_phi(phi: BlockReachability) -> BlockReachability:
    """Summary of the transposed block.

    Transposition maps monotone paths to monotone paths and reverses both
    boundary enumerations, swapping the roles of first and last.
    """
    n = phi.boundary_len
    last = n - 1
    sigma_a = np.full(n, -1, dtype=np.int64)
    sigma_z = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        src = last - i
        if phi.sigma_a[src] >= 0:
            sigma_a[i] = last - phi.sigma_z[src]
            sigma_z[i] = last - phi.sigma_a[src]
    lists_a: list = [[] for _ in range(n)]
    lists_z: list = [[] for _ in range(n)]
    for j in range(n):
        lists_a[j] = sorted(last - i for i in phi.lists_z[last - j])
        lists_z[j] = sorted(last - i for i in phi.lists_a[last - j])
    return BlockReachability(
        phi.cols, phi.rows,
        phi.in_ones[::-1].copy(), phi.out_ones[::-1].copy(),
        sigma_a, sigma_z, phi.out_reach[::-1].copy(),
        lists_a, lists_z,
    )


def _sweep_intervals(sigma_a, sigma_z, out_reach, marked) -> np.ndarray:
    """Interval sweep of Lemma-4 style propagation (inclusive overlap)."""
    out = np.zeros(len(out_reach), dtype=bool)
    prev_z = -1
    for i in np.flatnonzero(marked):
        a = sigma_a[i]
        if a < 0:
            continue
        z = sigma_z[i]
        lo = a if prev_z < 0 else max(prev_z, a)
        for j in range(lo, z + 1):
            if out_reach[j]:
                out[j] = True
        prev_z = z
    return out


def propagate(phi: BlockReachability, reachable_in: np.ndarray) -> np.ndarray:
    """Output-boundary positions reachable from the marked input positions.

    ``reachable_in`` must mark 1-entries only.  Runs the interval sweep: for
    each marked input, scan from the previous input's last reachable output
    (or its own first) to its last, collecting flagged entries.
    """
    reachable_in = np.asarray(reachable_in, dtype=bool)
    if reachable_in.shape[0] != phi.boundary_len:
        raise ValueError("mark vector length does not match boundary")
    if np.any(reachable_in & ~phi.in_ones):
        raise ValueError("marked positions must be 1-entries of the input boundary")
    return _sweep_intervals(phi.sigma_a, phi.sigma_z, phi.out_reach, reachable_in)


def propagate_vertical(pb: VerticalReachability, reachable_in: np.ndarray) -> np.ndarray:
    """Vertical analogue of :func:`propagate`."""
    reachable_in = np.asarray(reachable_in, dtype=bool)
    if reachable_in.shape[0] != pb.rows:
        raise ValueError("mark vector length does not match column height")
    if np.any(reachable_in & ~pb.in_ones):
        raise ValueError("marked positions must be 1-entries of the input column")
    return _sweep_intervals(pb.sigma_a, pb.sigma_z, pb.out_reach, reachable_in)


def _next_index(cond: np.ndarray) -> np.ndarray:
    """next_idx[k] = smallest k' >= k with cond[k'], else a big sentinel."""
    n = len(cond)
    out = np.full(n, _BIG, dtype=np.int64)
    nxt = _BIG
    for k in range(n - 1, -1, -1):
        if cond[k]:
            nxt = k
        out[k] = nxt
    return out


def _prev_index(cond: np.ndarray) -> np.ndarray:
    """prev_idx[k] = largest k' <= k with cond[k'], else -1."""
    n = len(cond)
    out = np.full(n, -1, dtype=np.int64)
    prv = -1
    for k in range(n):
        if cond[k]:
            prv = k
        out[k] = prv
    return out


def _queue_sweep(w_len, lists_a_w, lists_z_w, out_reach_w, qualifies) -> np.ndarray:
    """Revalidate far-side output flags against the merged input set.

    Walks the far block's output boundary keeping a count of inputs whose
    reachable interval is open and that are either genuine merged inputs or
    crossings fed from the near block.
    """
    f = np.zeros(w_len, dtype=bool)
    added = np.zeros(w_len, dtype=bool)
    active = 0
    for j in range(w_len):
        for i in lists_a_w[j]:
            if qualifies(i):
                added[i] = True
                active += 1
        f[j] = out_reach_w[j] and active > 0
        for i in lists_z_w[j]:
            if added[i]:
                added[i] = False
                active -= 1
    return f


def _merge_vertical(v: BlockReachability, w: BlockReachability, overlap: bool) -> BlockReachability:
    """Merge ``v`` (left) and ``w`` (right).

    With ``overlap`` the blocks share one full column (v's right column is
    w's left column); otherwise they are adjacent and a crossing takes one
    right or diagonal step over the seam.
    """
    if v.rows != w.rows:
        raise ValueError(f"row mismatch: {v.rows} vs {w.rows}")
    r = v.rows
    c1, c2 = v.cols, w.cols
    cols = c1 + c2 - (1 if overlap else 0)
    n_y = r + cols - 1
    len_v = v.boundary_len
    len_w = w.boundary_len
    shift = c2 - 1 if overlap else c2  # v boundary index -> merged index

    # crossing tables over the right column of v (positions 0..r-1)
    g_a = np.full(r, _BIG, dtype=np.int64)
    g_z = np.full(r, -1, dtype=np.int64)
    for k in range(r):
        if overlap:
            cands = [c2 - 1 + k]
        else:
            cands = [c2 - 1 + k]
            if k + 1 <= r - 1:
                cands.append(c2 + k)
        best_a, best_z = _BIG, -1
        for s in cands:
            if w.in_ones[s] and w.sigma_a[s] >= 0:
                best_a = min(best_a, w.sigma_a[s])
                best_z = max(best_z, w.sigma_z[s])
        g_a[k] = best_a
        g_z[k] = best_z
    usable = v.out_reach[:r] & (g_a < _BIG)
    next_usable = _next_index(usable)
    prev_usable = _prev_index(usable)
    next_ftrue_v = _next_index(v.out_reach)

    sigma_a = np.full(n_y, -1, dtype=np.int64)
    sigma_z = np.full(n_y, -1, dtype=np.int64)
    in_ones = np.zeros(n_y, dtype=bool)
    out_ones = np.zeros(n_y, dtype=bool)

    # far-side inputs that live on the merged boundary keep their data
    for k in range(min(c2, len_w)):
        in_ones[k] = w.in_ones[k]
        sigma_a[k] = w.sigma_a[k]
        sigma_z[k] = w.sigma_z[k]

    # near-side inputs, composed through the crossings where needed
    skip_first = 1 if overlap else 0  # shared corner already copied from w
    for i in range(skip_first, len_v):
        t = i + shift
        in_ones[t] = v.in_ones[i]
        a = v.sigma_a[i]
        if a < 0:
            continue
        z = v.sigma_z[i]
        cand_a = _BIG
        cand_z = -1
        zc = min(z, r - 1)
        if a <= r - 1:
            e = next_usable[a]
            if e <= zc:
                cand_a = g_a[e]
            e2 = prev_usable[zc]
            if e2 >= a:
                cand_z = g_z[e2]
        k0 = max(a, r - 1)
        if k0 <= z:
            k = next_ftrue_v[k0]
            if k <= z:
                cand_a = min(cand_a, k + shift)
        if z >= r - 1:
            cand_z = max(cand_z, z + shift)
        if cand_a < _BIG:
            sigma_a[t] = cand_a
            sigma_z[t] = cand_z

    # output bits
    for j in range(len_w):
        out_ones[j] = w.out_ones[j]
    for k in range(r - 1, len_v):
        out_ones[k + shift] = v.out_ones[k]

    # output flags: far side swept against the merged inputs, near side kept
    def qualifies(i: int) -> bool:
        if i <= c2 - 1:
            return True
        if overlap:
            return bool(v.out_reach[i - (c2 - 1)])
        rho = i - (c2 - 1)
        ok = rho <= r - 1 and bool(v.out_reach[rho])
        return ok or bool(v.out_reach[rho - 1])

    out_reach = np.zeros(n_y, dtype=bool)
    out_reach[:len_w] = _queue_sweep(len_w, w.lists_a, w.lists_z, w.out_reach, qualifies)
    for k in range(r - 1, len_v):
        if v.out_reach[k]:
            out_reach[k + shift] = True

    return BlockReachability(
        r, cols, in_ones, out_ones, sigma_a, sigma_z, out_reach,
        _bucket(sigma_a, n_y), _bucket(sigma_z, n_y),
    )


def merge_phi(v: BlockReachability, w: BlockReachability, orientation: str) -> BlockReachability:
    """Summary of the union of two blocks sharing one full row or column.

    ``orientation="horizontal"`` means the blocks share a row with ``v``
    below ``w``; ``"vertical"`` means they share a column with ``v`` to the
    left of ``w``.  Implemented directly for the vertical case; the
    horizontal case conjugates through :func:`transpose_phi`.
    """
    if orientation == "vertical":
        return _merge_vertical(v, w, overlap=True)
    if orientation == "horizontal":
        if v.cols != w.cols:
            raise ValueError(f"column mismatch: {v.cols} vs {w.cols}")
        merged = _merge_vertical(transpose_phi(v), transpose_phi(w), overlap=True)
        return transpose_phi(merged)
    raise ValueError(f"unknown orientation {orientation!r}")


def merge_adjacent_phi(v: BlockReachability, w: BlockReachability, orientation: str) -> BlockReachability:
    """Summary of the concatenation of two edge-adjacent, non-overlapping blocks.

    ``"vertical"``: ``w``'s columns start right after ``v``'s; paths jump
    the seam with a right or diagonal step.  ``"horizontal"``: ``w`` sits on
    top of ``v``; up or diagonal step, handled by transposition.
    """
    if orientation == "vertical":
        return _merge_vertical(v, w, overlap=False)
    if orientation == "horizontal":
        if v.cols != w.cols:
            raise ValueError(f"column mismatch: {v.cols} vs {w.cols}")
        merged = _merge_vertical(transpose_phi(v), transpose_phi(w), overlap=False)
        return transpose_phi(merged)
    raise ValueError(f"unknown orientation {orientation!r}")


def merge_phi_bar(v: VerticalReachability, w: VerticalReachability) -> VerticalReachability:
    """Compose two vertical summaries over their shared full column."""
    if v.rows != w.rows:
        raise ValueError(f"row mismatch: {v.rows} vs {w.rows}")
    r = v.rows
    usable = v.out_reach & (w.sigma_a >= 0)
    next_usable = _next_index(usable)
    prev_usable = _prev_index(usable)
    sigma_a = np.full(r, -1, dtype=np.int64)
    sigma_z = np.full(r, -1, dtype=np.int64)
    for i in range(r):
        a = v.sigma_a[i]
        if a < 0:
            continue
        z = v.sigma_z[i]
        e = next_usable[a]
        if e <= z:
            sigma_a[i] = w.sigma_a[e]
            sigma_z[i] = w.sigma_z[prev_usable[z]]
    out_reach = _queue_sweep(
        r, w.lists_a, w.lists_z, w.out_reach, lambda i: bool(v.out_reach[i])
    )
    return VerticalReachability(
        r, v.in_ones.copy(), w.out_ones.copy(), sigma_a, sigma_z, out_reach,
        _bucket(sigma_a, r), _bucket(sigma_z, r),
    )


def restrict_to_vertical(phi: BlockReachability) -> VerticalReachability:
    """Vertical summary of a block, derived from its full summary.

    The right column occupies the first ``rows`` positions of the output
    boundary, so first-reachable values survive unchanged when they land
    there; last-reachable values are clamped to the last flagged entry of
    the right column inside the reachable interval.  Output flags are
    recomputed against left-column inputs only: a flag raised by a
    bottom-row input does not imply reachability from the left column.
    """
    r, c = phi.rows, phi.cols
    in_map = [c - 1 + ell if ell > 0 else c - 1 for ell in range(r)]
    in_ones = phi.in_ones[in_map].copy()
    out_ones = phi.out_ones[:r].copy()
    prev_ftrue = _prev_index(phi.out_reach[:r])
    sigma_a = np.full(r, -1, dtype=np.int64)
    sigma_z = np.full(r, -1, dtype=np.int64)
    mark = np.zeros(r, dtype=bool)
    for ell in range(r):
        src = in_map[ell]
        a = phi.sigma_a[src]
        if a < 0 or a > r - 1:
            continue
        z = min(phi.sigma_z[src], r - 1)
        sigma_a[ell] = a
        sigma_z[ell] = prev_ftrue[z]
        mark[a : z + 1] = True
    out_reach = phi.out_reach[:r] & mark
    return VerticalReachability(
        r, in_ones, out_ones, sigma_a, sigma_z, out_reach,
        _bucket(sigma_a, r), _bucket(sigma_z, r),
    )


def _validate(in_ones, out_ones, sigma_a, sigma_z, out_reach, lists_a, lists_z):
    n_in = len(in_ones)
    n_out = len(out_ones)
    assert len(sigma_a) == n_in and len(sigma_z) == n_in
    assert len(out_reach) == n_out
    defined = sigma_a >= 0
    assert np.array_equal(defined, sigma_z >= 0), "sigma_a/sigma_z defined together"
    assert np.all(sigma_a[defined] <= sigma_z[defined]), "sigma_a <= sigma_z"
    assert not np.any(defined & ~in_ones), "sigma defined only on 1-entries"
    assert not np.any(out_reach & ~out_ones), "flags only on 1-entries"
    idx = np.flatnonzero(defined)
    if idx.size > 1:
        assert np.all(np.diff(sigma_a[idx]) >= 0), "sigma_a nondecreasing"
        assert np.all(np.diff(sigma_z[idx]) >= 0), "sigma_z nondecreasing"
    for j in range(n_out):
        for i in lists_a[j]:
            assert sigma_a[i] == j
        for i in lists_z[j]:
            assert sigma_z[i] == j
    seen_a = [i for j in range(n_out) for i in lists_a[j]]
    seen_z = [i for j in range(n_out) for i in lists_z[j]]
    assert len(seen_a) == len(set(seen_a)), "input appears in at most one A-list"
    assert len(seen_z) == len(set(seen_z)), "input appears in at most one Z-list"
    assert sorted(seen_a) == sorted(idx.tolist())
    assert sorted(seen_z) == sorted(idx.tolist())
    for i in idx:
        assert out_reach[sigma_a[i]] and out_reach[sigma_z[i]]


def validate_phi(phi: BlockReachability) -> None:
    """Assert the structural invariants of a block summary."""
    assert phi.boundary_len == len(phi.in_ones) == len(phi.out_ones)
    _validate(
        phi.in_ones, phi.out_ones, phi.sigma_a, phi.sigma_z,
        phi.out_reach, phi.lists_a, phi.lists_z,
    )


def validate_phibar(pb: VerticalReachability) -> None:
    """Assert the structural invariants of a vertical summary."""
    assert pb.rows == len(pb.in_ones) == len(pb.out_ones)
    _validate(
        pb.in_ones, pb.out_ones, pb.sigma_a, pb.sigma_z,
        pb.out_reach, pb.lists_a, pb.lists_z,
    )


def phi_equal(a: BlockReachability, b: BlockReachability) -> bool:
    """Structural equality of two block summaries (lists compared as sets)."""
    return (
        a.rows == b.rows
        and a.cols == b.cols
        and np.array_equal(a.in_ones, b.in_ones)
        and np.array_equal(a.out_ones, b.out_ones)
        and np.array_equal(a.sigma_a, b.sigma_a)
        and np.array_equal(a.sigma_z, b.sigma_z)
        and np.array_equal(a.out_reach, b.out_reach)
        and [sorted(x) for x in a.lists_a] == [sorted(x) for x in b.lists_a]
        and [sorted(x) for x in a.lists_z] == [sorted(x) for x in b.lists_z]
    )


def phibar_equal(a: VerticalReachability, b: VerticalReachability) -> bool:
    """Structural equality of two vertical summaries."""
    return (
        a.rows == b.rows
        and np.array_equal(a.in_ones, b.in_ones)
        and np.array_equal(a.out_ones, b.out_ones)
        and np.array_equal(a.sigma_a, b.sigma_a)
        and np.array_equal(a.sigma_z, b.sigma_z)
        and np.array_equal(a.out_reach, b.out_reach)
        and [sorted(x) for x in a.lists_a] == [sorted(x) for x in b.lists_a]
        and [sorted(x) for x in a.lists_z] == [sorted(x) for x in b.lists_z]
    )
