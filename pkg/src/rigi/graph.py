"""Colored (gain) graphs: storage, components and the rho homomorphism."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .groups import (
    GroupElement,
    GroupError,
    GroupTag,
    SubgroupDescription,
    TagMismatchError,
    compose,
    element,
    identity,
    invert,
    translation_subgroup,
)


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    color: GroupElement

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def reversed(self) -> "Edge":
        return Edge(self.v, self.u, invert(self.color))


@dataclass(frozen=True)
class ColoredGraph:
    """Directed multigraph on vertices 0..n-1; edge ids are positions in `edges`."""

    tag: GroupTag
    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        edges = tuple(self.edges)
        if self.n < 0:
            raise GraphError("negative vertex count")
        for e in edges:
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise GraphError(f"edge {e.u}->{e.v} has an endpoint outside 0..{self.n - 1}")
            if e.color.tag != self.tag:
                raise TagMismatchError(f"edge color {e.color!r} not in {self.tag}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @classmethod
    def build(cls, tag: GroupTag, n: int, edges: Iterable[Tuple[int, int, object]]) -> "ColoredGraph":
        """Build from (u, v, value) triples; values go through `groups.element`."""
        out = []
        for u, v, c in edges:
            col = c if isinstance(c, GroupElement) else element(tag, c)
            out.append(Edge(u, v, col))
        return cls(tag, n, tuple(out))

    def underlying(self) -> List[Tuple[int, int]]:
        return [(e.u, e.v) for e in self.edges]

    def with_edges(self, edges: Iterable[Edge]) -> "ColoredGraph":
        return ColoredGraph(self.tag, self.n, tuple(edges))

    def subgraph(self, edge_ids: Iterable[int]) -> "ColoredGraph":
        return self.with_edges(self.edges[i] for i in sorted(edge_ids))

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "edges": [{"color": e.color.to_json(), "u": e.u, "v": e.v} for e in self.edges],
            "group": self.tag.to_json(),
            "n": self.n,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: dict) -> "ColoredGraph":
        try:
            tag = GroupTag.from_json(obj["group"])
            n = int(obj["n"])
            edges = [
                Edge(int(e["u"]), int(e["v"]), GroupElement.from_json(e["color"], tag))
                for e in obj["edges"]
            ]
        except KeyError as exc:
            raise GraphError(f"missing key {exc} in graph JSON") from None
        except GroupError as exc:
            raise GraphError(str(exc)) from None
        return cls(tag, n, tuple(edges))

    @classmethod
    def loads(cls, text: str) -> "ColoredGraph":
        return cls.from_json(json.loads(text))


def _incident_vertices(g: ColoredGraph, edge_ids: Iterable[int]) -> List[int]:
    vs = set()
    for i in edge_ids:
        e = g.edges[i]
        vs.add(e.u)
        vs.add(e.v)
    return sorted(vs)


def components(g: ColoredGraph, edge_ids: Optional[Iterable[int]] = None) -> List[List[int]]:
    """Connected components, ignoring edge direction.

    With `edge_ids` the components of the edge-induced subgraph are returned
    (vertices not touched by those edges are left out).
    """
    if edge_ids is None:
        ids = range(g.m)
        verts = list(range(g.n))
    else:
        ids = list(edge_ids)
        verts = _incident_vertices(g, ids)
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in ids:
        e = g.edges[i]
        a, b = find(e.u), find(e.v)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: Dict[int, List[int]] = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


@dataclass(frozen=True)
class ComponentRho:
    vertices: Tuple[int, ...]
    base: int
    rho_generators: Tuple[GroupElement, ...]
    tree_edges: Tuple[int, ...] = ()

    def subgroup(self, tag: GroupTag) -> SubgroupDescription:
        return SubgroupDescription(tag, self.rho_generators)


def rho_image(
    g: ColoredGraph,
    component: Sequence[int],
    *,
    edge_ids: Optional[Iterable[int]] = None,
    base: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> ComponentRho:
    """Generators of rho(pi_1(component, base)), one per non-tree edge.

    The spanning tree is a depth-first tree from `base` (default: smallest
    vertex) visiting edges in id order, or in a shuffled order when `rng`
    is given. For a non-tree edge j->k the generator is
    phi(j) * gamma_jk * phi(k)^-1, where phi(x) is the product of colors
    along the tree path from the base to x.
    """
    comp = sorted(set(component))
    if not comp:
        raise GraphError("empty component")
    cset = set(comp)
    ids = range(g.m) if edge_ids is None else edge_ids
    local = [i for i in ids if g.edges[i].u in cset or g.edges[i].v in cset]
    for i in local:
        e = g.edges[i]
        if e.u not in cset or e.v not in cset:
            raise GraphError(f"edge {i} leaves the given vertex set")
    if rng is not None:
        local = list(local)
        rng.shuffle(local)
        if base is None:
            base = rng.choice(comp)
    if base is None:
        base = comp[0]
    if base not in cset:
        raise GraphError(f"base vertex {base} not in component")

    adj: Dict[int, List[int]] = {v: [] for v in comp}
    for i in local:
        e = g.edges[i]
        adj[e.u].append(i)
        if not e.is_loop:
            adj[e.v].append(i)

    phi = {base: identity(g.tag)}
    tree = []
    stack = [base]
    while stack:
        x = stack.pop()
        for i in reversed(adj[x]):
            e = g.edges[i]
            if e.is_loop:
                continue
            if e.u == x and e.v not in phi:
                phi[e.v] = compose(phi[x], e.color)
                tree.append(i)
                stack.append(e.v)
            elif e.v == x and e.u not in phi:
                phi[e.u] = compose(phi[x], invert(e.color))
                tree.append(i)
                stack.append(e.u)
    if len(phi) != len(comp):
        raise GraphError("vertex set is not connected")
    tree_set = set(tree)
    gens = []
    for i in sorted(local):
        if i in tree_set:
            continue
        e = g.edges[i]
        gens.append(compose(compose(phi[e.u], e.color), invert(phi[e.v])))
    return ComponentRho(tuple(comp), base, tuple(gens), tuple(sorted(tree)))


def component_rhos(g: ColoredGraph, edge_ids: Optional[Iterable[int]] = None) -> List[ComponentRho]:
    ids = list(range(g.m)) if edge_ids is None else list(edge_ids)
    return [rho_image(g, comp, edge_ids=ids) for comp in components(g, ids if edge_ids is not None else None)]


def graph_translation_subgroup(g: ColoredGraph, edge_ids: Optional[Iterable[int]] = None) -> SubgroupDescription:
    """Lambda(G): generated by the translation subgroups of all component rho-images."""
    gens: List[GroupElement] = []
    for cr in component_rhos(g, edge_ids):
        gens.extend(translation_subgroup(cr.subgroup(g.tag)).generators)
    return SubgroupDescription(g.tag, tuple(gens))


def multiply_colors(g: ColoredGraph, q: int) -> ColoredGraph:
    """Scale every translation color by the positive integer q."""
    if g.tag.kind not in ("Z2", "Z"):
        raise GroupError(f"color multiplication needs a translation group, not {g.tag}")
    if q < 1:
        raise GraphError("q must be a positive integer")
    return g.with_edges(
        Edge(e.u, e.v, GroupElement(g.tag, (q * e.color.t[0], q * e.color.t[1]))) for e in g.edges
    )


def add_loops(g: ColoredGraph, vertex: int, colors: Sequence) -> ColoredGraph:
    if not 0 <= vertex < g.n:
        raise GraphError(f"no vertex {vertex}")
    loops = [Edge(vertex, vertex, c if isinstance(c, GroupElement) else element(g.tag, c)) for c in colors]
    return g.with_edges(g.edges + tuple(loops))


def reverse_edges(g: ColoredGraph, edge_ids: Iterable[int]) -> ColoredGraph:
    """Flip the orientation of the given edges, inverting their colors."""
    flip = set(edge_ids)
    return g.with_edges(e.reversed() if i in flip else e for i, e in enumerate(g.edges))


def relabel(g: ColoredGraph, perm: Sequence[int]) -> ColoredGraph:
    """Rename vertex v to perm[v]."""
    return g.with_edges(Edge(perm[e.u], perm[e.v], e.color) for e in g.edges)
