"""(k, l)-sparsity of plain multigraphs (loops allowed) via the pebble game.

Edges are (u, v) pairs on vertices 0..n-1. The pebble game is exact for
0 <= l < 2k; loops are accepted only when l < k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

PlainEdge = Tuple[int, int]


class SparsityRangeError(ValueError):
    pass


def _check_range(k: int, l: int) -> None:
    if not (k >= 1 and 0 <= l < 2 * k):
        raise SparsityRangeError(f"(k, l) = ({k}, {l}) outside 0 <= l < 2k")


class PebbleGame:
    def __init__(self, n: int, k: int, l: int):
        _check_range(k, l)
        self.n, self.k, self.l = n, k, l
        self.pebbles = [k] * n
        self.out: List[List[int]] = [[] for _ in range(n)]
        self.heads: Dict[int, int] = {}
        self.accepted: List[int] = []

    def _find_pebble(self, start: int, blocked: set) -> bool:
        """Move one free pebble to `start` along reversed out-edges, if reachable."""
        seen = set(blocked) | {start}
        stack = [start]
        came_from: Dict[int, Tuple[int, int]] = {}
        while stack:
            x = stack.pop()
            for eid in self.out[x]:
                y = self.heads[eid]
                if y in seen:
                    continue
                seen.add(y)
                came_from[y] = (x, eid)
                if self.pebbles[y] > 0:
                    # reverse the path y -> ... -> start
                    self.pebbles[y] -= 1
                    self.pebbles[start] += 1
                    while y != start:
                        x0, e0 = came_from[y]
                        self.out[x0].remove(e0)
                        self.out[y].append(e0)
                        self.heads[e0] = x0
                        y = x0
                    return True
                stack.append(y)
        return False

    def try_add(self, eid: int, u: int, v: int) -> bool:
        need = self.l + 1
        if u == v:
            if need > self.k:
                return False
            while self.pebbles[u] < need:
                if not self._find_pebble(u, set()):
                    return False
        else:
            while self.pebbles[u] + self.pebbles[v] < need:
                if not (self._find_pebble(u, {v}) or self._find_pebble(v, {u})):
                    return False
        tail, head = (u, v) if self.pebbles[u] > 0 else (v, u)
        self.pebbles[tail] -= 1
        self.out[tail].append(eid)
        self.heads[eid] = head
        self.accepted.append(eid)
        return True


def pebble_basis(n: int, edges: Sequence[PlainEdge], k: int, l: int) -> List[int]:
    """Greedy (k, l)-basis in edge-id order; returns accepted edge ids."""
    game = PebbleGame(n, k, l)
    for i, (u, v) in enumerate(edges):
        game.try_add(i, u, v)
    return game.accepted


def is_kl_sparse(n: int, edges: Sequence[PlainEdge], k: int, l: int) -> bool:
    return len(pebble_basis(n, edges, k, l)) == len(edges)


def kl_rank(n: int, edges: Sequence[PlainEdge], k: int, l: int) -> int:
    return len(pebble_basis(n, edges, k, l))


def is_kl_spanning(n: int, edges: Sequence[PlainEdge], k: int, l: int) -> bool:
    return kl_rank(n, edges, k, l) == k * n - l


# -- brute force over edge subsets (reference procedure, small inputs) -------


def _vertex_masks(edges: Sequence[PlainEdge]) -> List[int]:
    return [(1 << u) | (1 << v) for u, v in edges]


def _subset_stats(mask: int, vmasks: List[int]) -> Tuple[int, int]:
    vs = 0
    m = 0
    i = 0
    while mask:
        if mask & 1:
            vs |= vmasks[i]
            m += 1
        mask >>= 1
        i += 1
    return bin(vs).count("1"), m


def brute_force_circuits(n: int, edges: Sequence[PlainEdge], k: int, l: int) -> List[Tuple[int, ...]]:
    """All (k, l)-circuits (edge-minimal violating subsets), by enumeration."""
    _check_range(k, l)
    m = len(edges)
    vm = _vertex_masks(edges)
    full = 1 << m
    violates = bytearray(full)
    sparse = bytearray(full)
    sparse[0] = 1
    out = []
    for mask in range(1, full):
        nv, mv = _subset_stats(mask, vm)
        violates[mask] = mv > k * nv - l
        sub_ok = all(sparse[mask & ~(1 << i)] for i in range(m) if mask >> i & 1)
        sparse[mask] = (not violates[mask]) and sub_ok
        if violates[mask] and sub_ok:
            out.append(tuple(i for i in range(m) if mask >> i & 1))
    return sorted(out, key=lambda c: (len(c), c))


def minimal_violation(n: int, edges: Sequence[PlainEdge], k: int, l: int) -> Optional[Tuple[int, ...]]:
    """Fewest-edge violating subset, lexicographically first among those."""
    vm = _vertex_masks(edges)
    m = len(edges)
    for size in range(1, m + 1):
        for combo in combinations(range(m), size):
            vs = 0
            for i in combo:
                vs |= vm[i]
            if size > k * bin(vs).count("1") - l:
                return combo
    return None


def kl_components(n: int, edges: Sequence[PlainEdge], k: int, l: int) -> List[Tuple[int, ...]]:
    """Maximal (k, l)-blocks of a sparse graph, as sorted edge-id tuples (n <= 16)."""
    if n > 16:
        raise ValueError("component enumeration is limited to n <= 16")
    blocks = []
    for vmask in range(1, 1 << n):
        ids = tuple(i for i, (u, v) in enumerate(edges) if vmask >> u & 1 and vmask >> v & 1)
        if not ids:
            continue
        touched = 0
        for i in ids:
            touched |= (1 << edges[i][0]) | (1 << edges[i][1])
        if touched != vmask:
            continue
        if len(ids) == k * bin(vmask).count("1") - l:
            blocks.append(frozenset(ids))
    maximal = [b for b in blocks if not any(b < c for c in blocks)]
    return sorted({tuple(sorted(b)) for b in maximal})


@dataclass
class KLReport:
    k: int
    l: int
    verdict: str
    witness: Optional[Tuple[int, ...]] = None
    components: List[Tuple[int, ...]] = field(default_factory=list)
    circuits: List[Tuple[int, ...]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "circuits": [list(c) for c in self.circuits],
            "components": [list(c) for c in self.components],
            "family": f"kl({self.k},{self.l})",
            "verdict": self.verdict,
            "witness": None if self.witness is None else {"edges": list(self.witness)},
        }


def kl_sparse(
    n: int,
    edges: Sequence[PlainEdge],
    k: int,
    l: int,
    *,
    with_components: bool = False,
    with_circuits: bool = False,
) -> KLReport:
    """Decide (k, l)-sparsity; tight means sparse with m = kn - l."""
    _check_range(k, l)
    sparse = is_kl_sparse(n, edges, k, l)
    if sparse:
        verdict = "tight" if len(edges) == k * n - l else "sparse"
        rep = KLReport(k, l, verdict)
        if with_components:
            rep.components = kl_components(n, edges, k, l)
        return rep
    rep = KLReport(k, l, "violating", witness=minimal_violation(n, edges, k, l))
    if with_circuits:
        rep.circuits = brute_force_circuits(n, edges, k, l)
    return rep


# -- (2,2)-circuits of (2,1)-graphs -------------------------------------------


def fundamental_circuits(n: int, edges: Sequence[PlainEdge], k: int, l: int) -> Tuple[List[int], List[Tuple[int, ...]]]:
    """Basis (edge-id greedy) and the fundamental circuit of every non-basis edge.

    The circuit of e is e together with every basis edge f for which
    B - f + e is still independent.
    """
    basis = pebble_basis(n, edges, k, l)
    bset = set(basis)
    circuits = []
    for e in range(len(edges)):
        if e in bset:
            continue
        circ = [e]
        for f in basis:
            trial = [edges[i] for i in basis if i != f] + [edges[e]]
            if is_kl_sparse(n, trial, k, l):
                circ.append(f)
        circuits.append(tuple(sorted(circ)))
    return basis, circuits


class NotA21GraphError(ValueError):
    pass


def circuits_22_structure(n: int, edges: Sequence[PlainEdge]) -> dict:
    """(2,2)-circuit structure of a (2,1)-graph.

    Returns {"spanning_22": bool, "circuits": [...]}. With exactly one
    circuit the graph is (2,2)-spanning; otherwise the circuits are
    pairwise vertex-disjoint.
    """
    if len(edges) != 2 * n - 1 or not is_kl_sparse(n, edges, 2, 1):
        raise NotA21GraphError("input is not a (2,1)-graph")
    basis, circuits = fundamental_circuits(n, edges, 2, 2)
    return {
        "circuits": sorted(circuits, key=lambda c: (len(c), c)),
        "spanning_22": len(basis) == 2 * n - 2,
    }


def circuit_vertices(edges: Sequence[PlainEdge], circuit: Sequence[int]) -> set:
    vs = set()
    for i in circuit:
        vs.update(edges[i])
    return vs
