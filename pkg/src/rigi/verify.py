"""Corpus-wide checks of the named equivalences.

Each proposition id maps to a function returning the two sides (lhs, rhs)
of an equivalence for one graph; a graph is a failure when they differ.
Corpora are generated with a hereditary filter that keeps every graph
on which at least one side could hold, so pruned branches cannot hide a
counterexample.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from . import batch
from .corpus import CorpusSpec
from .graph import ColoredGraph
from .groups import GroupTag, Z, Z2, cyclic
from .lift import cone_lift_sides
from .oracle import generic_corank
from .sparsity import (
    COLORED_LAMAN,
    LOOPS_FOR_LATTICE,
    ROSS,
    UNIT_AREA_LAMAN,
    FamilyMismatchError,
    SubsetTable,
    check_family,
    cylinder_vs_cone_sides,
    f_z2,
    is_spanning,
    with_lattice_loops,
    z2_sparsity_sides,
)

Sides = Tuple[bool, bool]


class UnknownPropositionError(KeyError):
    pass


def _ross_sides(g: ColoredGraph) -> Sides:
    """(Ross-tight, colored-Laman-tight with lattice loops at every vertex)."""
    lhs = check_family(g, ROSS).tight
    rhs = all(check_family(with_lattice_loops(g, v), COLORED_LAMAN).tight for v in range(g.n))
    return lhs, rhs


def _unit_area_sides(g: ColoredGraph) -> Sides:
    """(unit-area-Laman-tight, colored-Laman-sparse with 2n edges and no rank-2 block meeting its count)."""
    lhs = check_family(g, UNIT_AREA_LAMAN).tight
    if g.m != 2 * g.n:
        return lhs, False
    cs = SubsetTable(g).counts[1:]
    rhs = all(c.m <= f_z2(c) for c in cs) and not any(c.rank == 2 and c.m == f_z2(c) for c in cs)
    return lhs, rhs


def _oracle_sides(g: ColoredGraph, trials: int = 3, seed: int = 0) -> Sides:
    return is_spanning(g, COLORED_LAMAN), generic_corank(g, "periodic", trials, seed).rigid


# -- hereditary corpus filters (batch route) ----------------------------------------


def keep_f_or_g(b: batch.EdgeBatch) -> np.ndarray:
    c = batch.subset_counts(b)
    return batch.is_sparse(c, batch.f_z2) | batch.is_sparse(c, batch.g_z2)


def keep_ross_or_loops(b: batch.EdgeBatch) -> np.ndarray:
    out = batch.is_sparse(batch.subset_counts(b), batch.ross)
    for v in range(b.n):
        looped = b.with_loops(np.full(b.size, v), LOOPS_FOR_LATTICE)
        out = out | batch.is_sparse(batch.subset_counts(looped), batch.f_z2)
    return out


def keep_colored_laman(b: batch.EdgeBatch) -> np.ndarray:
    return batch.is_sparse(batch.subset_counts(b), batch.f_z2)


def keep_unit_area_or_laman(b: batch.EdgeBatch) -> np.ndarray:
    c = batch.subset_counts(b)
    return batch.is_sparse(c, batch.unit_area) | batch.is_sparse(c, batch.f_z2)


def keep_cylinder_or_cone(b: batch.EdgeBatch) -> np.ndarray:
    # with Z colors and no wrap-around, a cycle is nontrivial in Z/K for large K iff it is in Z
    c = batch.subset_counts(b)
    return batch.is_sparse(c, batch.cylinder) | batch.is_sparse(c, batch.cone)


@dataclass(frozen=True)
class Proposition:
    id: str
    sides: Callable[[ColoredGraph], Sides]
    default_tag: GroupTag
    default_bound: int
    keep: Optional[Callable[[batch.EdgeBatch], np.ndarray]]
    max_m: Optional[int] = None
    description: str = ""

    def accepts(self, tag: GroupTag) -> bool:
        return tag.kind == self.default_tag.kind


PROPOSITIONS: Dict[str, Proposition] = {
    p.id: p
    for p in (
        Proposition("z2-sparsity-equiv", z2_sparsity_sides, Z2, 1, keep_f_or_g,
                    description="f-sparse iff g-sparse"),
        Proposition("ross-by-adding", _ross_sides, Z2, 1, keep_ross_or_loops,
                    description="Ross-tight iff colored-Laman-tight after adding three lattice loops"),
        Proposition("cone-lift", cone_lift_sides, cyclic(3), 1, None, max_m=5,
                    description="cone-Laman-tight iff the lift is (2,3)-sparse with 2kn - k edges"),
        Proposition("cone-v-cylinder", cylinder_vs_cone_sides, Z, 2, keep_cylinder_or_cone,
                    description="cylinder-Laman iff cone-Laman for large k and (2,2)-spanning"),
        Proposition("unit-area-circuit", _unit_area_sides, Z2, 1, keep_unit_area_or_laman,
                    description="unit-area-Laman iff colored-Laman-sparse, m = 2n, no tight rank-2 block"),
        Proposition("oracle-colored-laman", _oracle_sides, Z2, 1, None,
                    description="colored-Laman spanning iff generically rigid (periodic oracle)"),
    )
}


def proposition(pid: str) -> Proposition:
    try:
        return PROPOSITIONS[pid]
    except KeyError:
        raise UnknownPropositionError(f"unknown proposition {pid!r}; choose from {sorted(PROPOSITIONS)}") from None


@dataclass
class Failure:
    index: int
    graph: ColoredGraph
    lhs: bool
    rhs: bool

    def to_json(self) -> dict:
        return {"graph": self.graph.to_json(), "index": self.index, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class VerificationReport:
    proposition: str
    tested: int = 0
    holds: int = 0  # graphs where both sides are true
    failures: List[Failure] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "failures": [f.to_json() for f in self.failures],
            "holds": self.holds,
            "ok": self.ok,
            "proposition": self.proposition,
            "runtime": round(self.runtime, 3),
            "tested": self.tested,
        }


def verify_graphs(pid: str, graphs: Iterable[ColoredGraph], sides: Optional[Callable[[ColoredGraph], Sides]] = None) -> VerificationReport:
    prop = proposition(pid)
    sides = sides or prop.sides
    report = VerificationReport(pid)
    start = time.perf_counter()
    for i, g in enumerate(graphs):
        if not prop.accepts(g.tag):
            raise FamilyMismatchError(f"{pid} needs {prop.default_tag.kind} colors, got {g.tag}")
        lhs, rhs = sides(g)
        report.tested += 1
        report.holds += lhs and rhs
        if lhs != rhs:
            report.failures.append(Failure(i, g, lhs, rhs))
    report.runtime = time.perf_counter() - start
    return report


def default_corpus(pid: str, max_n: int = 3, **overrides) -> CorpusSpec:
    prop = proposition(pid)
    kwargs = dict(tag=prop.default_tag, max_n=max_n, color_bound=prop.default_bound, max_m=prop.max_m)
    kwargs.update(overrides)
    return CorpusSpec(**kwargs)


def verify_corpus(pid: str, spec: CorpusSpec) -> VerificationReport:
    """Generate the corpus (pruned by the proposition's filter when exhaustive) and check every graph."""
    prop = proposition(pid)
    keep = prop.keep if spec.exhaustive else None
    start = time.perf_counter()
    report = verify_graphs(pid, spec.generate(keep=keep))
    report.runtime = time.perf_counter() - start
    return report
