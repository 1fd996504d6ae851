"""Vectorized subset counts for many small abelian-colored graphs at once.

Graphs in a batch share the vertex count n and the edge count m, and are
given as integer arrays of shape (N, m): tails, heads, and color
coordinates (x, y, r). Every edge subset is visited once by a depth-first
walk over include/exclude decisions, so partial union-find states are
shared between subsets with a common prefix.

This is a second, independent implementation of the counts in
`sparsity`; tests compare the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np


@dataclass
class EdgeBatch:
    u: np.ndarray
    v: np.ndarray
    x: np.ndarray
    y: np.ndarray
    r: np.ndarray
    n: int
    order: int  # modulus of the rotation part; 1 for translation groups

    @property
    def size(self) -> int:
        return self.u.shape[0]

    @property
    def m(self) -> int:
        return self.u.shape[1]

    @classmethod
    def from_graphs(cls, graphs) -> "EdgeBatch":
        graphs = list(graphs)
        g0 = graphs[0]
        m = g0.m

        def col(f):
            return np.array([[f(e) for e in g.edges] for g in graphs], dtype=np.int64).reshape(len(graphs), m)

        return cls(
            col(lambda e: e.u), col(lambda e: e.v), col(lambda e: e.color.t[0]),
            col(lambda e: e.color.t[1]), col(lambda e: e.color.r), g0.n, g0.tag.order,
        )

    def with_loops(self, vertex: np.ndarray, colors) -> "EdgeBatch":
        """Append loops at `vertex` (one per graph) with the given (x, y) colors."""
        k = len(colors)
        N = self.size
        vert = np.repeat(vertex.reshape(N, 1), k, axis=1)
        cx = np.tile(np.array([c[0] for c in colors], dtype=np.int64), (N, 1))
        cy = np.tile(np.array([c[1] for c in colors], dtype=np.int64), (N, 1))
        zero = np.zeros((N, k), dtype=np.int64)
        cat = np.concatenate
        return EdgeBatch(
            cat([self.u, vert], 1), cat([self.v, vert], 1), cat([self.x, cx], 1),
            cat([self.y, cy], 1), cat([self.r, zero], 1), self.n, self.order,
        )


@dataclass
class _State:
    comp: np.ndarray  # (N, n) root label of each vertex
    px: np.ndarray  # (N, n) potentials
    py: np.ndarray
    pr: np.ndarray
    nontrivial: np.ndarray  # (N, n) flag stored at root labels
    bx: np.ndarray  # (N,) first non-zero translation seen
    by: np.ndarray
    rank: np.ndarray  # (N,) rank of all translation cycle values
    touched: np.ndarray  # (N, n) bool

    def copy(self) -> "_State":
        return _State(*(a.copy() for a in (self.comp, self.px, self.py, self.pr, self.nontrivial,
                                          self.bx, self.by, self.rank, self.touched)))


def _initial(N: int, n: int) -> _State:
    z = np.zeros((N, n), dtype=np.int64)
    return _State(
        np.tile(np.arange(n, dtype=np.int64), (N, 1)), z.copy(), z.copy(), z.copy(),
        np.zeros((N, n), dtype=bool), np.zeros(N, dtype=np.int64), np.zeros(N, dtype=np.int64),
        np.zeros(N, dtype=np.int64), np.zeros((N, n), dtype=bool),
    )


def _add_edge(s: _State, b: EdgeBatch, j: int) -> None:
    rows = np.arange(b.size)
    u, v = b.u[:, j], b.v[:, j]
    cu, cv = s.comp[rows, u], s.comp[rows, v]
    vx = s.px[rows, u] + b.x[:, j] - s.px[rows, v]
    vy = s.py[rows, u] + b.y[:, j] - s.py[rows, v]
    vr = (s.pr[rows, u] + b.r[:, j] - s.pr[rows, v]) % b.order
    s.touched[rows, u] = True
    s.touched[rows, v] = True
    same = cu == cv

    cyc = same & ((vx != 0) | (vy != 0) | (vr != 0))
    s.nontrivial[rows[cyc], cu[cyc]] = True
    tr = same & ((vx != 0) | (vy != 0))
    first = tr & (s.rank == 0)
    second = tr & (s.rank == 1) & (s.bx * vy - s.by * vx != 0)
    s.bx = np.where(first, vx, s.bx)
    s.by = np.where(first, vy, s.by)
    s.rank = s.rank + first + second

    diff = ~same
    if diff.any():
        moving = (s.comp == cv[:, None]) & diff[:, None]
        s.px = s.px + moving * vx[:, None]
        s.py = s.py + moving * vy[:, None]
        s.pr = (s.pr + moving * vr[:, None]) % b.order
        s.comp = np.where(moving, cu[:, None], s.comp)
        carried = diff & s.nontrivial[rows, cv]
        s.nontrivial[rows[carried], cu[carried]] = True


@dataclass
class SubsetCounts:
    """Arrays of shape (N, 2**m); column `mask` holds the counts of that edge subset."""

    n: np.ndarray
    m: np.ndarray
    c: np.ndarray
    c0: np.ndarray
    rank: np.ndarray

    @property
    def c_nontrivial(self) -> np.ndarray:
        return self.c - self.c0


def subset_counts(b: EdgeBatch) -> SubsetCounts:
    """Counts for every edge subset of every graph in the batch."""
    N, m, n = b.size, b.m, b.n
    full = 1 << m
    out = {k: np.zeros((N, full), dtype=np.int64) for k in ("n", "m", "c", "c0", "rank")}
    popcount = np.array([bin(i).count("1") for i in range(full)], dtype=np.int64)
    out["m"][:] = popcount

    def record(mask: int, s: _State) -> None:
        roots = s.touched & (s.comp == np.arange(n)[None, :])
        out["n"][:, mask] = s.touched.sum(axis=1)
        out["c"][:, mask] = roots.sum(axis=1)
        out["c0"][:, mask] = (roots & ~s.nontrivial).sum(axis=1)
        out["rank"][:, mask] = s.rank

    def walk(j: int, mask: int, s: _State) -> None:
        if j == m:
            record(mask, s)
            return
        walk(j + 1, mask, s)
        t = s.copy()
        _add_edge(t, b, j)
        walk(j + 1, mask | (1 << j), t)

    walk(0, 0, _initial(N, n))
    return SubsetCounts(out["n"], out["m"], out["c"], out["c0"], out["rank"])


# -- bounds on count arrays ---------------------------------------------------------


def f_z2(c: SubsetCounts) -> np.ndarray:
    return 2 * c.n + np.maximum(2 * c.rank - 1, 0) - 3 * c.c0 - 2 * c.c_nontrivial


def g_z2(c: SubsetCounts) -> np.ndarray:
    return 2 * (c.n + c.rank - c.c) - 1


def ross(c: SubsetCounts) -> np.ndarray:
    return 2 * c.n - 3 * c.c0 - 2 * c.c_nontrivial


def unit_area(c: SubsetCounts) -> np.ndarray:
    extra = np.where(c.rank == 2, 2, np.where(c.rank == 1, 1, 0))
    return np.where(c.rank == 0, 2 * c.n - 3 * c.c0, 2 * c.n + extra - 3 * c.c0 - 2 * c.c_nontrivial)


def cylinder(c: SubsetCounts) -> np.ndarray:
    return 2 * c.n + c.rank - 3 * c.c0 - 2 * c.c_nontrivial


def cone(c: SubsetCounts) -> np.ndarray:
    return 2 * c.n - 3 * c.c0 - c.c_nontrivial


BOUNDS: Dict[str, Callable[[SubsetCounts], np.ndarray]] = {
    "colored-laman": f_z2,
    "ross": ross,
    "unit-area-laman": unit_area,
    "cylinder-laman": cylinder,
    "cone-laman": cone,
}


def is_sparse(c: SubsetCounts, bound: Callable[[SubsetCounts], np.ndarray], require_mask: Optional[int] = None) -> np.ndarray:
    """Per graph: no non-empty subset exceeds the bound.

    With `require_mask` only subsets containing all of those edges are checked.
    """
    viol = c.m > bound(c)
    viol[:, 0] = False
    if require_mask is not None:
        cols = np.array([(mask & require_mask) == require_mask for mask in range(viol.shape[1])])
        viol = viol[:, cols]
    return ~viol.any(axis=1)
