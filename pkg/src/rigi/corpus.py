"""Corpus generation: exhaustive (deduplicated) and seeded random colored graphs.

Exhaustive corpora are built level by level (one edge at a time). Every
level is reduced to one representative per isomorphism class, where the
symmetries are vertex relabelings, edge reversal (with color inversion) and,
optionally, the symmetries of the color box. Class keys are computed with
numpy over whole levels.

With `switching` on, each component starts from a path colored with the
identity and further edges are added inside components only. Every colored
graph is switching-equivalent to such a graph (relabel by tree potentials),
and all invariants computed in this package are switching invariant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .batch import EdgeBatch
from .graph import ColoredGraph, Edge
from .groups import GroupElement, GroupTag, invert
from .sparsity import Counts, counter_for

MAX_EXHAUSTIVE_EDGES = 22
CHUNK = 20000

# Batch predicate: receives an EdgeBatch of same-size graphs, returns a keep mask.
BatchFilter = Callable[[EdgeBatch], np.ndarray]


class CorpusBoundsError(ValueError):
    pass


def color_range(tag: GroupTag, bound: int) -> List[GroupElement]:
    """All elements with translation coordinates in [-bound, bound]."""
    r = range(-bound, bound + 1)
    if tag.kind == "Z2":
        return [GroupElement(tag, (x, y)) for x in r for y in r]
    if tag.kind == "Z":
        return [GroupElement(tag, (x, 0)) for x in r]
    if tag.kind in ("cyclic", "reflection"):
        return [GroupElement(tag, (0, 0), j) for j in range(tag.order)]
    return [GroupElement(tag, (x, y), j) for x in r for y in r for j in range(tag.order)]


def _ckey(c: GroupElement) -> Tuple[Tuple[int, int], int]:
    return (c.t, c.r)


def normalize_edge(e: Edge) -> Edge:
    """Orientation normal form: u <= v, and a loop carries the larger of its color and its inverse."""
    if e.u > e.v:
        return e.reversed()
    if e.is_loop:
        inv = invert(e.color)
        if _ckey(inv) > _ckey(e.color):
            return Edge(e.u, e.v, inv)
    return e


def _edge_key(e: Edge) -> Tuple:
    return (e.u, e.v, e.color.t, e.color.r)


def color_symmetries(tag: GroupTag, square: bool) -> List[Callable[[GroupElement], GroupElement]]:
    """Automorphisms of the color group that preserve the color box."""
    ident = [lambda c: c]
    if not square:
        return ident
    if tag.kind == "Z2":
        out = []
        for swap in (False, True):
            for sx in (1, -1):
                for sy in (1, -1):
                    def f(c, swap=swap, sx=sx, sy=sy):
                        x, y = c.t
                        if swap:
                            x, y = y, x
                        return GroupElement(c.tag, (sx * x, sy * y))
                    out.append(f)
        return out
    if tag.kind == "Z":
        return ident + [lambda c: GroupElement(c.tag, (-c.t[0], 0))]
    return ident


@dataclass
class TypeSpace:
    """Normalized edge types on n vertices and the symmetry action on them."""

    tag: GroupTag
    n: int
    bound: int
    square: bool = False
    types: List[Edge] = field(init=False)
    maps: np.ndarray = field(init=False)

    def __post_init__(self):
        colors = color_range(self.tag, self.bound)
        types, index = [], {}
        for u in range(self.n):
            for v in range(u, self.n):
                for c in colors:
                    e = normalize_edge(Edge(u, v, c))
                    if _edge_key(e) not in index:
                        index[_edge_key(e)] = len(types)
                        types.append(e)
        self.types = types
        maps, perms = [], []
        for perm in permutations(range(self.n)):
            for sym in color_symmetries(self.tag, self.square):
                row = []
                for e in types:
                    img = normalize_edge(Edge(perm[e.u], perm[e.v], sym(e.color)))
                    row.append(index[_edge_key(img)])
                maps.append(row)
                perms.append(perm)
        self.maps = np.array(maps, dtype=np.int64)
        self.perms = perms
        self.index = index
        attrs = np.array([(e.u, e.v, e.color.t[0], e.color.t[1], e.color.r) for e in types], dtype=np.int64)
        self.attrs = attrs.reshape(len(types), 5)

    @property
    def size(self) -> int:
        return len(self.types)

    def type_of(self, e: Edge) -> int:
        return self.index[_edge_key(normalize_edge(e))]

    def batch(self, rows: np.ndarray) -> EdgeBatch:
        a = self.attrs[rows]  # (N, m, 5)
        return EdgeBatch(a[..., 0], a[..., 1], a[..., 2], a[..., 3], a[..., 4], self.n, self.tag.order)

    def graph(self, row: Sequence[int]) -> ColoredGraph:
        return ColoredGraph(self.tag, self.n, tuple(self.types[i] for i in row))

    def block_maps(self, blocks: Sequence[Sequence[int]]) -> np.ndarray:
        """The symmetries whose vertex permutation maps every block onto a block."""
        sets = {frozenset(b) for b in blocks}
        keep = [i for i, perm in enumerate(self.perms)
                if all(frozenset(perm[v] for v in b) in sets for b in blocks)]
        return self.maps[keep]

    def canonical_rows(self, rows: np.ndarray, maps: Optional[np.ndarray] = None) -> np.ndarray:
        """Lexicographically smallest sorted image of each row over the symmetries (default: all)."""
        best = None
        for mp in self.maps if maps is None else maps:
            img = np.sort(mp[rows], axis=1)
            if best is None:
                best = img
            else:
                less = _lex_less(img, best)
                best[less] = img[less]
        return best


def _lex_less(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise a < b in lexicographic order."""
    if a.shape[1] == 0:
        return np.zeros(a.shape[0], dtype=bool)
    neq = a != b
    first = np.argmax(neq, axis=1)
    rows = np.arange(a.shape[0])
    return neq.any(axis=1) & (a[rows, first] < b[rows, first])


def _unique_rows(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] == 0:
        return rows
    return np.unique(rows, axis=0)


def component_seeds(space: TypeSpace, switching: bool) -> List[Tuple[List[int], List[int], np.ndarray]]:
    """(initial edge types, allowed edge types, symmetries) per component layout.

    With switching, layouts are the integer partitions of n into blocks of
    consecutive vertices; each block carries an identity-colored path and
    edges may only be added inside blocks. Components are then exactly the
    blocks, so only block-preserving relabelings are used for class keys.
    """
    if not switching:
        return [([], list(range(space.size)), space.maps)]
    ident = GroupElement(space.tag)
    out = []
    for parts in _partitions(space.n):
        blocks, start = [], 0
        for p in parts:
            blocks.append(range(start, start + p))
            start += p
        block_of = {v: i for i, b in enumerate(blocks) for v in b}
        tree = [space.type_of(Edge(b[i], b[i + 1], ident)) for b in blocks for i in range(len(b) - 1)]
        allowed = [i for i, e in enumerate(space.types) if block_of[e.u] == block_of[e.v]]
        out.append((tree, allowed, space.block_maps(blocks)))
    return out


def _partitions(n: int, largest: Optional[int] = None) -> List[List[int]]:
    largest = n if largest is None else largest
    if n == 0:
        return [[]]
    out = []
    for p in range(min(n, largest), 0, -1):
        for rest in _partitions(n - p, p):
            out.append([p] + rest)
    return out


def enumerate_levels(
    space: TypeSpace,
    max_m: int,
    *,
    switching: bool = True,
    keep: Optional[BatchFilter] = None,
) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield (m, canonical rows) for m = 0, 1, ..., max_m.

    `keep` must be hereditary: if it rejects a graph it would reject every
    graph containing it. Rejected graphs are not extended.
    """
    if max_m > MAX_EXHAUSTIVE_EDGES:
        raise CorpusBoundsError(f"max_m={max_m} exceeds {MAX_EXHAUSTIVE_EDGES}")
    for tree, allowed, maps in component_seeds(space, switching):
        if len(tree) > max_m:
            continue
        level = space.canonical_rows(np.array([sorted(tree)], dtype=np.int64).reshape(1, len(tree)), maps)
        if keep is not None and len(tree) and not keep(space.batch(level))[0]:
            continue
        allowed_arr = np.array(allowed, dtype=np.int64)
        m = len(tree)
        yield m, level
        while m < max_m and level.shape[0]:
            P, A = level.shape[0], len(allowed_arr)
            children = np.concatenate(
                [np.repeat(level, A, axis=0), np.tile(allowed_arr, P).reshape(P * A, 1)], axis=1
            )
            children = _unique_rows(
                np.concatenate([space.canonical_rows(children[i:i + CHUNK], maps) for i in range(0, len(children), CHUNK)])
            )
            if keep is not None and children.shape[0]:
                mask = np.concatenate(
                    [keep(space.batch(children[i:i + CHUNK])) for i in range(0, len(children), CHUNK)]
                )
                children = children[mask]
            level = children
            m += 1
            yield m, level


def touches_all(space: TypeSpace, rows: np.ndarray) -> np.ndarray:
    """No isolated vertices (edgeless graphs are kept)."""
    if rows.shape[1] == 0:
        return np.ones(rows.shape[0], dtype=bool)
    a = space.attrs[rows]
    hit = np.zeros((rows.shape[0], space.n), dtype=bool)
    for j in range(rows.shape[1]):
        hit[np.arange(rows.shape[0]), a[:, j, 0]] = True
        hit[np.arange(rows.shape[0]), a[:, j, 1]] = True
    return hit.all(axis=1)


def enumerate_graphs(
    tag: GroupTag,
    n: int,
    max_m: int,
    bound: int,
    *,
    min_m: int = 0,
    switching: bool = True,
    square: bool = False,
    keep: Optional[BatchFilter] = None,
    all_vertices: bool = True,
) -> Iterator[ColoredGraph]:
    """One graph per class, in order of edge count and then canonical key."""
    space = TypeSpace(tag, n, bound, square)
    for m, rows in enumerate_levels(space, max_m, switching=switching, keep=keep):
        if m < min_m:
            continue
        if all_vertices:
            rows = rows[touches_all(space, rows)]
        for row in rows:
            yield space.graph(row)


def canonical_form(g: ColoredGraph, square: bool = False) -> Tuple:
    """Class key of a single graph (relabelings, reversal, optional box symmetries)."""
    best = None
    for perm in permutations(range(g.n)):
        for sym in color_symmetries(g.tag, square):
            keys = tuple(sorted(_edge_key(normalize_edge(Edge(perm[e.u], perm[e.v], sym(e.color)))) for e in g.edges))
            if best is None or keys < best:
                best = keys
    return (g.tag.kind, g.tag.k, g.n, best)


def violates_with_last(g: ColoredGraph, bound: Callable[[Counts], int]) -> bool:
    """Whether some edge subset containing the last edge exceeds `bound`."""
    if g.m == 0:
        return False
    count = counter_for(g)
    last = g.m - 1
    for size in range(g.m):
        for rest in combinations(range(last), size):
            c = count(rest + (last,))
            if c.m > bound(c):
                return True
    return False


# -- plain multigraphs ------------------------------------------------------------


def enumerate_plain(
    n: int,
    m: int,
    keep: Optional[Callable[[List[Tuple[int, int]]], bool]] = None,
) -> Iterator[List[Tuple[int, int]]]:
    """Loopy multigraphs on n vertices with m edges, one per isomorphism class."""
    from .groups import cyclic

    # a one-element color set makes colored machinery enumerate plain graphs
    space = TypeSpace(cyclic(2), n, 0)
    plain = [i for i, e in enumerate(space.types) if e.color.r == 0]
    sub = _PlainSpace(space, plain)
    level = np.zeros((1, 0), dtype=np.int64)
    for size in range(m):
        P, A = level.shape[0], len(plain)
        children = np.concatenate([np.repeat(level, A, axis=0), np.tile(np.array(plain), P).reshape(P * A, 1)], axis=1)
        children = _unique_rows(sub.canonical_rows(children))
        if keep is not None:
            mask = np.array([keep(sub.edges(row)) for row in children], dtype=bool)
            children = children[mask] if children.shape[0] else children
        level = children
    for row in level:
        yield sub.edges(row)


class _PlainSpace:
    def __init__(self, space: TypeSpace, plain: List[int]):
        self.space = space
        self.plain = plain

    def canonical_rows(self, rows):
        return self.space.canonical_rows(rows)

    def edges(self, row) -> List[Tuple[int, int]]:
        return [(self.space.types[i].u, self.space.types[i].v) for i in row]


# -- random graphs and corpus specs -------------------------------------------------


def random_graph(
    tag: GroupTag,
    n: int,
    m: int,
    bound: int,
    rng: np.random.Generator,
) -> ColoredGraph:
    colors = color_range(tag, bound)
    edges = []
    for _ in range(m):
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        c = colors[int(rng.integers(0, len(colors)))]
        edges.append(Edge(u, v, c))
    return ColoredGraph(tag, n, tuple(edges))


@dataclass(frozen=True)
class CorpusSpec:
    tag: GroupTag
    max_n: int
    max_m: Optional[int] = None  # default 2n + 1 for each n
    color_bound: int = 1
    seed: int = 0
    count: Optional[int] = None  # None means exhaustive
    min_n: int = 1
    switching: bool = True
    square: bool = False

    def max_edges(self, n: int) -> int:
        return self.max_m if self.max_m is not None else 2 * n + 1

    @property
    def exhaustive(self) -> bool:
        return self.count is None

    def header(self) -> dict:
        return {
            "canonical_form": (
                "minimum sorted edge list over vertex relabelings"
                + (" and color-box symmetries" if self.square else "")
                + "; edges oriented u <= v; loops stored with the larger of color and inverse"
                + ("; components start from an identity-colored path (switching normal form)" if self.switching else "")
            ),
            "color_bound": self.color_bound,
            "count": self.count,
            "group": self.tag.to_json(),
            "max_m": self.max_m,
            "max_n": self.max_n,
            "min_n": self.min_n,
            "mode": "exhaustive" if self.exhaustive else "random",
            "seed": self.seed,
        }

    def generate(self, keep: Optional[BatchFilter] = None) -> Iterator[ColoredGraph]:
        if self.max_n < 1 or (self.max_m is not None and self.max_m < 0) or self.color_bound < 0:
            raise CorpusBoundsError("bounds must be positive")
        if self.exhaustive:
            for n in range(self.min_n, self.max_n + 1):
                yield from enumerate_graphs(
                    self.tag, n, self.max_edges(n), self.color_bound,
                    switching=self.switching, square=self.square, keep=keep,
                )
            return
        rng = np.random.default_rng(self.seed)
        for _ in range(self.count):
            n = int(rng.integers(self.min_n, self.max_n + 1))
            m = int(rng.integers(0, self.max_edges(n) + 1))
            yield random_graph(self.tag, n, m, self.color_bound, rng)
