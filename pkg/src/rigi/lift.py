"""Covering graphs of colored graphs: full finite lifts and windowed Z^2 lifts."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .graph import ColoredGraph, GraphError, components
from .pebble import is_kl_sparse
from .sparsity import CONE_LAMAN, EquivalenceFailure, check_family

Box = Tuple[int, int, int, int]  # x0, x1, y0, y1, inclusive


class UnsupportedLiftError(ValueError):
    pass


@dataclass(frozen=True)
class LiftGraph:
    """Plain multigraph on (base vertex, group label) pairs; edges are index pairs."""

    vertices: Tuple[Tuple[int, Hashable], ...]
    edges: Tuple[Tuple[int, int], ...]
    window: Optional[Box] = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def index(self) -> Dict[Tuple[int, Hashable], int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def component_labels(self) -> List[int]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return [find(i) for i in range(self.n)]

    def component_count(self) -> int:
        return len(set(self.component_labels()))

    def to_json(self) -> dict:
        def label(g):
            return list(g) if isinstance(g, tuple) else g

        return {
            "edges": [[a, b] for a, b in self.edges],
            "n": self.n,
            "vertices": [[v, label(g)] for v, g in self.vertices],
            "window": None if self.window is None else list(self.window),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def lift_finite(g: ColoredGraph) -> LiftGraph:
    """Full lift of a Z/kZ (or reflection) colored graph: k copies of each vertex."""
    if g.tag.kind not in ("cyclic", "reflection"):
        raise UnsupportedLiftError(f"finite lifts need a rotation or reflection group, not {g.tag}")
    k = g.tag.order
    verts = tuple((v, r) for v in range(g.n) for r in range(k))
    edges = []
    for e in g.edges:
        for r in range(k):
            edges.append((e.u * k + r, e.v * k + (r + e.color.r) % k))
    return LiftGraph(verts, tuple(edges))


def lift_window(g: ColoredGraph, box: Box) -> LiftGraph:
    """Finite piece of the periodic lift over the lattice points of `box`.

    An edge copy is kept only when both of its endpoints lie in the box.
    """
    if g.tag.kind != "Z2":
        raise UnsupportedLiftError(f"windowed lifts need Z2 colors, not {g.tag}")
    x0, x1, y0, y1 = box
    if x0 > x1 or y0 > y1:
        raise GraphError(f"empty box {box}")
    verts = tuple((v, (x, y)) for v in range(g.n) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1))
    idx = {v: i for i, v in enumerate(verts)}
    edges = []
    for e in g.edges:
        dx, dy = e.color.t
        for x in range(x0, x1 + 1):
            for y in range(y0, y1 + 1):
                head = (e.v, (x + dx, y + dy))
                if head in idx:
                    edges.append((idx[(e.u, (x, y))], idx[head]))
    edges.sort()
    return LiftGraph(verts, tuple(edges), box)


def interior_component_count(lift: LiftGraph, inner: Box) -> int:
    """Number of window components that meet the vertices over `inner`."""
    x0, x1, y0, y1 = inner
    labels = lift.component_labels()
    seen = set()
    for i, (_, (x, y)) in enumerate(lift.vertices):
        if x0 <= x <= x1 and y0 <= y <= y1:
            seen.add(labels[i])
    return len(seen)


def cone_lift_sides(g: ColoredGraph) -> Tuple[bool, bool]:
    """(cone-Laman-tight, lift is (2,3)-sparse with 2kn - k edges)."""
    k = g.tag.order
    lhs = check_family(g, CONE_LAMAN).tight
    lift = lift_finite(g)
    rhs = lift.m == 2 * lift.n - k and is_kl_sparse(lift.n, lift.edges, 2, 3)
    return lhs, rhs


def _is_prime(k: int) -> bool:
    return k >= 2 and all(k % d for d in range(2, int(k ** 0.5) + 1))


def cone_lift_check(g: ColoredGraph) -> bool:
    if g.tag.kind != "cyclic" or g.tag.k < 3 or not _is_prime(g.tag.k):
        raise UnsupportedLiftError("the lift criterion is stated for Z/kZ with k >= 3 prime")
    lhs, rhs = cone_lift_sides(g)
    if lhs != rhs:
        raise EquivalenceFailure(f"cone-Laman={lhs} but lift criterion={rhs}", g)
    return lhs


def rho_image_order(g: ColoredGraph, vertices: Sequence[int]) -> int:
    """Size of the rho-image of one component of a Z/kZ graph."""
    from math import gcd

    from .graph import rho_image

    k = g.tag.order
    d = k
    for x in rho_image(g, vertices).rho_generators:
        d = gcd(d, x.r)
    return k // d


def expected_finite_components(g: ColoredGraph) -> int:
    """Sum over quotient components of k / |rho-image|."""
    k = g.tag.order
    return sum(k // rho_image_order(g, comp) for comp in components(g))
