"""Sparsity counts for colored graphs and the family decision procedures.

A subgraph is always an edge subset; its vertex set is the set of incident
vertices. Decisions are made by exhaustive enumeration of edge subsets,
which is exact and fine at the sizes this package targets (m <= 22 by
default).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .graph import ColoredGraph, Edge, add_loops, component_rhos, components
from .groups import (
    GroupElement,
    GroupTag,
    SubgroupDescription,
    cent_dim,
    cent_full,
    cyclic,
    lattice_rank,
    teich_full,
    teich_restricted,
    translation_subgroup,
)
from .pebble import is_kl_spanning, kl_sparse as _kl_sparse

DEFAULT_MAX_EDGES = 22
LOOPS_FOR_LATTICE = ((1, 0), (0, 1), (1, 1))


class FamilyMismatchError(ValueError):
    pass


class TooManyEdgesError(ValueError):
    pass


class EquivalenceFailure(AssertionError):
    """Two sides of a proven equivalence disagreed on a concrete graph."""

    def __init__(self, message: str, graph: ColoredGraph):
        super().__init__(message)
        self.graph = graph


@dataclass(frozen=True)
class Counts:
    """Invariants of one edge-induced subgraph."""

    n: int
    m: int
    c: int
    c0: int  # components with trivial rho-image
    c1: int  # non-trivial, translation rank <= 1
    c2: int  # translation rank 2
    rank: int  # rank of Lambda(G')
    teich: int
    cent: int  # sum over components

    @property
    def c_nontrivial(self) -> int:
        return self.c - self.c0

    def to_json(self) -> dict:
        return {
            "c": self.c, "c0": self.c0, "c1": self.c1, "c2": self.c2, "cent": self.cent,
            "m": self.m, "n": self.n, "rank": self.rank, "teich": self.teich,
        }


def _rank2(vecs: Sequence[Tuple[int, int]]) -> int:
    first = None
    for v in vecs:
        if v[0] or v[1]:
            if first is None:
                first = v
            elif first[0] * v[1] - first[1] * v[0]:
                return 2
    return 0 if first is None else 1


class _AbelianCounter:
    """Subgraph counts for abelian tags by union-find with potentials."""

    def __init__(self, g: ColoredGraph):
        self.g = g
        self.kind = g.tag.kind
        self.order = g.tag.order
        self.data = [(e.u, e.v, e.color.t[0], e.color.t[1], e.color.r) for e in g.edges]

    def __call__(self, ids: Sequence[int]) -> Counts:
        comp: Dict[int, int] = {}
        members: Dict[int, List[int]] = {}
        pot: Dict[int, Tuple[int, int, int]] = {}
        cycles: Dict[int, List[Tuple[int, int, int]]] = {}
        order = self.order
        for i in ids:
            u, v, x, y, r = self.data[i]
            for w in (u, v):
                if w not in comp:
                    comp[w] = w
                    members[w] = [w]
                    pot[w] = (0, 0, 0)
                    cycles[w] = []
            pu, pv = pot[u], pot[v]
            # value of the closed walk through this edge relative to the tree
            val = (pu[0] + x - pv[0], pu[1] + y - pv[1], (pu[2] + r - pv[2]) % order)
            cu, cv = comp[u], comp[v]
            if cu == cv:
                cycles[cu].append(val)
                continue
            if len(members[cu]) < len(members[cv]):
                # shift u's side by -val instead
                for w in members[cu]:
                    pw = pot[w]
                    pot[w] = (pw[0] - val[0], pw[1] - val[1], (pw[2] - val[2]) % order)
                    comp[w] = cv
                members[cv].extend(members.pop(cu))
                cycles[cv].extend(cycles.pop(cu))
            else:
                for w in members[cv]:
                    pw = pot[w]
                    pot[w] = (pw[0] + val[0], pw[1] + val[1], (pw[2] + val[2]) % order)
                    comp[w] = cu
                members[cu].extend(members.pop(cv))
                cycles[cu].extend(cycles.pop(cv))
        c = len(members)
        c0 = c1 = c2 = 0
        cent = 0
        all_vecs: List[Tuple[int, int]] = []
        rot_groups = self.kind in ("cyclic", "reflection")
        for root, cyc in cycles.items():
            if rot_groups:
                nontrivial = any(val[2] for val in cyc)
                if nontrivial:
                    c1 += 1
                    cent += 1
                else:
                    c0 += 1
                    cent += 3
                continue
            vecs = [(val[0], val[1]) for val in cyc]
            rk = _rank2(vecs)
            all_vecs.extend(vecs)
            if rk == 0:
                c0 += 1
                cent += 3
            else:
                cent += 2
                if rk == 1:
                    c1 += 1
                else:
                    c2 += 1
        if rot_groups:
            rank, teich = 0, 0
        else:
            rank = _rank2(all_vecs)
            teich = rank if self.kind == "Z" else max(2 * rank - 1, 0)
        return Counts(len(comp), len(ids), c, c0, c1, c2, rank, teich, cent)


class _GeneralCounter:
    """Counts via explicit rho-images; used for Gamma_k."""

    def __init__(self, g: ColoredGraph):
        self.g = g

    def __call__(self, ids: Sequence[int]) -> Counts:
        g = self.g
        ids = list(ids)
        rhos = component_rhos(g, ids)
        c0 = c1 = c2 = 0
        cent = 0
        lam_gens: List[GroupElement] = []
        for cr in rhos:
            sub = cr.subgroup(g.tag)
            cent += cent_dim(sub)
            lam = translation_subgroup(sub).generators
            lam_gens.extend(lam)
            if sub.is_trivial:
                c0 += 1
            elif lattice_rank(x.t for x in lam) == 2:
                c2 += 1
            else:
                c1 += 1
        lam_all = SubgroupDescription(g.tag, tuple(lam_gens))
        rank = lattice_rank(x.t for x in lam_gens)
        teich = teich_restricted(g.tag, lam_all)
        n = len({v for cr in rhos for v in cr.vertices})
        return Counts(n, len(ids), len(rhos), c0, c1, c2, rank, teich, cent)


def counter_for(g: ColoredGraph) -> Callable[[Sequence[int]], Counts]:
    return _AbelianCounter(g) if g.tag.is_abelian else _GeneralCounter(g)


def subgraph_counts(g: ColoredGraph, edge_ids: Iterable[int]) -> Counts:
    return counter_for(g)(list(edge_ids))


# -- sparsity functions -------------------------------------------------------


def f_general(g: ColoredGraph, edge_ids: Iterable[int]) -> int:
    """2n' + teich(Lambda(G')) - sum_i cent(Gamma'_i), from explicit rho-images."""
    ids = list(edge_ids)
    if not ids:
        return 0
    rhos = component_rhos(g, ids)
    lam = []
    cent = 0
    for cr in rhos:
        sub = cr.subgroup(g.tag)
        cent += cent_dim(sub)
        lam.extend(translation_subgroup(sub).generators)
    n = len({v for cr in rhos for v in cr.vertices})
    return 2 * n + teich_restricted(g.tag, SubgroupDescription(g.tag, tuple(lam))) - cent


def f_z2(c: Counts) -> int:
    return 2 * c.n + max(2 * c.rank - 1, 0) - 3 * c.c0 - 2 * c.c_nontrivial


def g_z2(c: Counts) -> int:
    return 2 * (c.n + c.rank - c.c) - 1


def ross_bound(c: Counts) -> int:
    return 2 * c.n - 3 * c.c0 - 2 * c.c_nontrivial


def unit_area_bound(c: Counts) -> int:
    """Unit-area-Laman count.

    One less than the colored-Laman count exactly when Lambda(G') has rank 2:
    such a subgraph fixes the lattice, so the area constraint is already
    implied by its edges.
    """
    if c.rank == 2:
        return 2 * c.n + 2 - 3 * c.c0 - 2 * c.c_nontrivial
    if c.rank == 1:
        return 2 * c.n + 1 - 3 * c.c0 - 2 * c.c_nontrivial
    return 2 * c.n - 3 * c.c0


def general_bound(c: Counts) -> int:
    return 2 * c.n + c.teich - c.cent


# -- families -----------------------------------------------------------------

FAMILY_NAMES = ("colored-laman", "cylinder-laman", "cone-laman", "ross", "unit-area-laman", "gamma-laman", "kl")


@dataclass(frozen=True)
class FamilyTag:
    name: str
    k: int = 0
    l: int = 0

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.name!r}")
        if self.name == "kl" and not (self.k >= 1 and 0 <= self.l < 2 * self.k):
            raise ValueError(f"KL family needs 0 <= l < 2k, got ({self.k}, {self.l})")

    @classmethod
    def parse(cls, text: str) -> "FamilyTag":
        if text.startswith("kl"):
            k, l = text[2:].strip("()").split(",")
            return cls("kl", int(k), int(l))
        if text.startswith("gamma-laman"):
            rest = text[len("gamma-laman"):].strip("()")
            return cls("gamma-laman", int(rest) if rest else 0)
        return cls(text)

    def __str__(self) -> str:
        if self.name == "kl":
            return f"kl({self.k},{self.l})"
        return self.name

    def accepts(self, tag: GroupTag) -> bool:
        if self.name in ("colored-laman", "ross", "unit-area-laman"):
            return tag.kind == "Z2"
        if self.name == "cylinder-laman":
            return tag.kind == "Z"
        if self.name == "cone-laman":
            return tag.kind in ("cyclic", "reflection")
        if self.name == "gamma-laman":
            return tag.kind == "gamma" and (self.k in (0, tag.k))
        return True

    def bound(self, c: Counts) -> int:
        if self.name == "ross":
            return ross_bound(c)
        if self.name == "unit-area-laman":
            return unit_area_bound(c)
        if self.name == "kl":
            return self.k * c.n - self.l
        return general_bound(c)

    def target(self, tag: GroupTag, n: int) -> int:
        """Edge count of a tight (minimally rigid) graph on n vertices."""
        if self.name == "ross":
            return 2 * n - 2
        if self.name == "unit-area-laman":
            return 2 * n
        if self.name == "kl":
            return self.k * n - self.l
        return 2 * n + teich_full(tag) - cent_full(tag)


COLORED_LAMAN = FamilyTag("colored-laman")
CYLINDER_LAMAN = FamilyTag("cylinder-laman")
CONE_LAMAN = FamilyTag("cone-laman")
ROSS = FamilyTag("ross")
UNIT_AREA_LAMAN = FamilyTag("unit-area-laman")


@dataclass
class Witness:
    edges: Tuple[int, ...]
    counts: Counts
    bound: int

    def to_json(self) -> dict:
        return {"bound": self.bound, "counts": self.counts.to_json(), "edges": list(self.edges)}


@dataclass
class SparsityReport:
    family: FamilyTag
    verdict: str  # "sparse", "tight" or "violating"
    witness: Optional[Witness] = None

    @property
    def is_sparse(self) -> bool:
        return self.verdict != "violating"

    @property
    def tight(self) -> bool:
        return self.verdict == "tight"

    def to_json(self) -> dict:
        return {
            "family": str(self.family),
            "verdict": self.verdict,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def _require(g: ColoredGraph, family: FamilyTag) -> None:
    if not family.accepts(g.tag):
        raise FamilyMismatchError(f"family {family} does not apply to {g.tag}-colored graphs")


def check_family(g: ColoredGraph, family: FamilyTag, max_edges: int = DEFAULT_MAX_EDGES) -> SparsityReport:
    """Decide membership by scanning all non-empty edge subsets, smallest first.

    The first violating subset found is a minimal witness: fewest edges,
    then lexicographically smallest edge-id tuple.
    """
    _require(g, family)
    if g.m > max_edges:
        raise TooManyEdgesError(f"{g.m} edges exceeds the exhaustive-scan cap of {max_edges}")
    count = counter_for(g)
    for size in range(1, g.m + 1):
        for ids in combinations(range(g.m), size):
            c = count(ids)
            b = family.bound(c)
            if c.m > b:
                return SparsityReport(family, "violating", Witness(ids, c, b))
    verdict = "tight" if g.m == family.target(g.tag, g.n) else "sparse"
    return SparsityReport(family, verdict)


class SubsetTable:
    """Counts for every edge subset, indexed by bitmask (small graphs only)."""

    def __init__(self, g: ColoredGraph, max_edges: int = 16):
        if g.m > max_edges:
            raise TooManyEdgesError(f"{g.m} edges is too many for a full subset table")
        self.g = g
        count = counter_for(g)
        m = g.m
        self.counts: List[Optional[Counts]] = [None] * (1 << m)
        self.counts[0] = Counts(0, 0, 0, 0, 0, 0, 0, 0, 0)
        for mask in range(1, 1 << m):
            self.counts[mask] = count([i for i in range(m) if mask >> i & 1])

    def hereditary(self, ok: Callable[[Counts], bool]) -> bytearray:
        """sparse[mask]: `ok` holds on mask and every sub-mask."""
        m = self.g.m
        out = bytearray(1 << m)
        out[0] = 1
        for mask in range(1, 1 << m):
            if not ok(self.counts[mask]):
                continue
            out[mask] = all(out[mask & ~(1 << i)] for i in range(m) if mask >> i & 1)
        return out

    def sparse_masks(self, family: FamilyTag) -> bytearray:
        return self.hereditary(lambda c: c.m <= family.bound(c))


def _masks_in_order(m: int) -> Iterable[int]:
    for size in range(1, m + 1):
        for ids in combinations(range(m), size):
            yield sum(1 << i for i in ids)


def _ids(mask: int) -> Tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def is_spanning(g: ColoredGraph, family: FamilyTag) -> bool:
    """Whether g contains a tight spanning subgraph of the family (greedy basis)."""
    _require(g, family)
    target = family.target(g.tag, g.n)
    if target < 0 or target > g.m:
        return False
    return len(greedy_basis(g, family)) == target


def is_spanning_exhaustive(g: ColoredGraph, family: FamilyTag, table: Optional[SubsetTable] = None) -> bool:
    """Same question as `is_spanning`, answered by scanning every edge subset of the target size."""
    _require(g, family)
    target = family.target(g.tag, g.n)
    if target < 0 or target > g.m:
        return False
    table = table or SubsetTable(g)
    sparse = table.sparse_masks(family)
    return any(sparse[mask] for mask in range(1 << g.m) if bin(mask).count("1") == target)


def greedy_basis(g: ColoredGraph, family: FamilyTag) -> List[int]:
    """Maximal sparse edge set built greedily in id order (a basis, for matroidal families).

    Adding e to a sparse set B keeps it sparse unless some subset of B
    together with e violates the bound, so only those subsets are checked.
    """
    _require(g, family)
    count = counter_for(g)
    basis: List[int] = []
    for e in range(g.m):
        ok = True
        for size in range(len(basis) + 1):
            for rest in combinations(basis, size):
                c = count(rest + (e,))
                if c.m > family.bound(c):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            basis.append(e)
    return basis


# -- named equivalences -------------------------------------------------------


def z2_sparsity_sides(g: ColoredGraph, table: Optional[SubsetTable] = None) -> Tuple[bool, bool]:
    """(f-sparse, g-sparse) over all non-empty edge subsets."""
    if g.tag.kind != "Z2":
        raise FamilyMismatchError("f/g sparsity is defined for Z2-colored graphs")
    table = table or SubsetTable(g)
    cs = table.counts[1:]
    return all(c.m <= f_z2(c) for c in cs), all(c.m <= g_z2(c) for c in cs)


def kl_sparse(g, k: int, l: int, **kwargs):
    """(k, l)-sparsity of the underlying multigraph of a colored graph (colors ignored)."""
    if isinstance(g, ColoredGraph):
        return _kl_sparse(g.n, g.underlying(), k, l, **kwargs)
    n, edges = g
    return _kl_sparse(n, edges, k, l, **kwargs)


def reduce_mod(g: ColoredGraph, k: int) -> ColoredGraph:
    """Reinterpret Z colors as rotations in Z/kZ."""
    if g.tag.kind != "Z":
        raise FamilyMismatchError("reduction mod k applies to Z-colored graphs")
    tag = cyclic(k)
    return ColoredGraph(tag, g.n, tuple(Edge(e.u, e.v, GroupElement(tag, (0, 0), e.color.t[0])) for e in g.edges))


def large_modulus(g: ColoredGraph) -> int:
    """A modulus above 2 * sum |colors| + 1, so no cycle value wraps to zero."""
    return 2 * sum(abs(e.color.t[0]) for e in g.edges) + 2


def cylinder_vs_cone_sides(g: ColoredGraph) -> Tuple[bool, bool]:
    lhs = check_family(g, CYLINDER_LAMAN).tight
    cone = check_family(reduce_mod(g, large_modulus(g)), CONE_LAMAN).tight
    return lhs, cone and is_kl_spanning(g.n, g.underlying(), 2, 2)


def cylinder_vs_cone(g: ColoredGraph) -> bool:
    """Cylinder-Laman, checked against (cone-Laman for large k) and (2,2)-spanning."""
    lhs, rhs = cylinder_vs_cone_sides(g)
    if lhs != rhs:
        raise EquivalenceFailure(f"cylinder-Laman={lhs} but cone/(2,2) side={rhs}", g)
    return lhs


def unit_area_characterization(g: ColoredGraph, table: Optional[SubsetTable] = None) -> bool:
    """Colored-Laman-sparse, m = 2n, and no rank-2 subgraph meets the colored-Laman count."""
    if g.tag.kind != "Z2":
        raise FamilyMismatchError("unit-area characterization needs Z2 colors")
    if g.m != 2 * g.n:
        rhs = False
    else:
        table = table or SubsetTable(g)
        cs = table.counts[1:]
        rhs = all(c.m <= f_z2(c) for c in cs) and not any(c.rank == 2 and c.m == f_z2(c) for c in cs)
    lhs = check_family(g, UNIT_AREA_LAMAN).tight
    if lhs != rhs:
        raise EquivalenceFailure(f"unit-area-Laman={lhs} but characterization={rhs}", g)
    return rhs


def with_lattice_loops(g: ColoredGraph, vertex: int) -> ColoredGraph:
    return add_loops(g, vertex, LOOPS_FOR_LATTICE)


def ross_loop_equivalence(g: ColoredGraph) -> bool:
    """Ross-tight iff colored-Laman-tight after adding loops (1,0), (0,1), (1,1) at any vertex."""
    if g.n == 0:
        raise ValueError("graph has no vertices")
    lhs = check_family(g, ROSS).tight
    for v in range(g.n):
        rhs = check_family(with_lattice_loops(g, v), COLORED_LAMAN).tight
        if lhs != rhs:
            raise EquivalenceFailure(f"Ross={lhs} but colored-Laman with loops at {v}={rhs}", g)
    return lhs


def rank2_tight_subgraph(g: ColoredGraph, table: Optional[SubsetTable] = None) -> Optional[Tuple[int, ...]]:
    """Smallest colored-Laman-sparse edge set with rank-2 rho-image and m' = f(G').

    For a colored-Laman-sparse graph the sparsity requirement is automatic.
    """
    if g.tag.kind != "Z2":
        raise FamilyMismatchError("needs Z2 colors")
    table = table or SubsetTable(g)
    sparse = table.sparse_masks(COLORED_LAMAN)
    for mask in _masks_in_order(g.m):
        c = table.counts[mask]
        if sparse[mask] and c.rank == 2 and c.m == f_z2(c):
            return _ids(mask)
    return None


def rank1_directions(g: ColoredGraph) -> List[Tuple[int, int]]:
    """Primitive directions of the rho-images of all rank-1 edge subsets."""
    from math import gcd

    count = counter_for(g)
    dirs = set()
    for size in range(1, g.m + 1):
        for ids in combinations(range(g.m), size):
            if count(ids).rank != 1:
                continue
            for x, y in _lambda_vectors(g, ids):
                if x or y:
                    d = gcd(x, y)
                    x, y = x // d, y // d
                    if x < 0 or (x == 0 and y < 0):
                        x, y = -x, -y
                    dirs.add((x, y))
                    break
    return sorted(dirs)


def _lambda_vectors(g: ColoredGraph, ids: Sequence[int]) -> List[Tuple[int, int]]:
    out = []
    for cr in component_rhos(g, ids):
        out.extend(x.t for x in translation_subgroup(cr.subgroup(g.tag)).generators)
    return out


def is_connected(g: ColoredGraph) -> bool:
    return len(components(g)) <= 1
