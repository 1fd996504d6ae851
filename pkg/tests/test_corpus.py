from itertools import combinations_with_replacement, permutations

import numpy as np
import pytest

from rigi import batch
from rigi.corpus import (
    CorpusBoundsError,
    CorpusSpec,
    TypeSpace,
    canonical_form,
    enumerate_graphs,
    enumerate_levels,
    enumerate_plain,
)
from rigi.graph import ColoredGraph, Edge, components
from rigi.groups import Z, Z2, GroupElement, cyclic


def test_single_vertex_example_count():
    # colors in [-1,1]^2 up to inversion: the zero color and four +-pairs
    classes = 5
    expected = sum(len(list(combinations_with_replacement(range(classes), m))) for m in range(3))
    graphs = list(CorpusSpec(Z2, max_n=1, max_m=2).generate())
    assert len(graphs) == expected == 21
    assert graphs[0].m == 0


def test_count_zero_and_determinism():
    assert list(CorpusSpec(Z2, max_n=2, count=0).generate()) == []
    a = [g.dumps() for g in CorpusSpec(Z2, max_n=3, count=25, seed=9).generate()]
    b = [g.dumps() for g in CorpusSpec(Z2, max_n=3, count=25, seed=9).generate()]
    assert a == b
    assert a != [g.dumps() for g in CorpusSpec(Z2, max_n=3, count=25, seed=10).generate()]


def test_bounds_guard():
    with pytest.raises(CorpusBoundsError):
        list(CorpusSpec(Z2, max_n=0).generate())
    with pytest.raises(CorpusBoundsError):
        list(enumerate_levels(TypeSpace(Z2, 1, 1), 23))


def test_header_describes_canonical_form():
    h = CorpusSpec(Z2, max_n=2, square=True).header()
    assert "relabelings" in h["canonical_form"] and "switching" in h["canonical_form"]
    assert h["mode"] == "exhaustive"


@pytest.mark.parametrize("tag,bound,n,m,square", [
    (Z2, 1, 2, 4, False), (Z2, 1, 2, 4, True), (Z, 2, 3, 4, False), (cyclic(3), 1, 3, 4, False),
])
def test_no_duplicate_classes_and_roundtrip(tag, bound, n, m, square):
    keys = set()
    for g in enumerate_graphs(tag, n, m, bound, square=square):
        key = canonical_form(g, square)
        assert key not in keys
        keys.add(key)
        assert ColoredGraph.loads(g.dumps()) == g


def _gauge_fix(g):
    """Switch so a DFS forest is identity-colored (abelian colors)."""
    pot = {}
    for comp in components(g):
        pot[comp[0]] = (0, 0)
        stack = [comp[0]]
        while stack:
            x = stack.pop()
            for e in g.edges:
                for a, b, sign in ((e.u, e.v, 1), (e.v, e.u, -1)):
                    if a == x and b not in pot:
                        t = e.color.t
                        pot[b] = (pot[a][0] + sign * t[0], pot[a][1] + sign * t[1])
                        stack.append(b)
    edges = []
    for e in g.edges:
        t = e.color.t
        x = t[0] + pot[e.u][0] - pot[e.v][0]
        y = t[1] + pot[e.u][1] - pot[e.v][1]
        edges.append(Edge(e.u, e.v, GroupElement(g.tag, (x, y))))
    return g.with_edges(edges)


@pytest.mark.parametrize("tag,bound,n,m,square", [
    (Z2, 1, 2, 4, False), (Z2, 1, 3, 4, False), (Z2, 1, 3, 4, True), (Z, 1, 3, 5, False), (Z, 2, 3, 4, True),
])
def test_switching_corpus_is_complete(tag, bound, n, m, square):
    switched = {canonical_form(g, square) for g in enumerate_graphs(tag, n, m, bound, square=square)}
    plain = list(enumerate_graphs(tag, n, m, bound, switching=False, square=square))
    hits = 0
    for g in plain:
        h = _gauge_fix(g)
        if any(max(abs(c) for c in e.color.t) > bound for e in h.edges):
            continue
        assert canonical_form(h, square) in switched, g.dumps()
        hits += 1
    assert hits > 0


@pytest.mark.parametrize("tag,bound", [(Z2, 1), (Z, 2), (cyclic(3), 1)])
def test_components_are_vertex_intervals(tag, bound):
    for square in (False, True):
        for g in enumerate_graphs(tag, 3, 5, bound, square=square):
            for comp in components(g):
                assert comp == list(range(comp[0], comp[0] + len(comp)))


def test_hereditary_pruning_is_sound():
    def keep(b):
        return batch.is_sparse(batch.subset_counts(b), batch.f_z2)

    space = TypeSpace(Z2, 2, 1)
    pruned = {tuple(r) for m, rows in enumerate_levels(space, 5, keep=keep) for r in rows}
    full = []
    for m, rows in enumerate_levels(space, 5):
        if rows.shape[0]:
            full.extend(tuple(r) for r in rows[keep(space.batch(rows))])
    assert pruned == set(full)


def _plain_key(n, edges):
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        best = key if best is None or key < best else best
    return best


@pytest.mark.parametrize("n,m", [(2, 3), (3, 4), (4, 3)])
def test_plain_enumeration_matches_brute_force(n, m):
    got = [_plain_key(n, e) for e in enumerate_plain(n, m)]
    assert len(got) == len(set(got))
    pairs = [(u, v) for u in range(n) for v in range(u, n)]
    brute = {_plain_key(n, list(c)) for c in combinations_with_replacement(pairs, m)}
    assert set(got) == brute


def test_random_mode_respects_bounds():
    for g in CorpusSpec(Z2, max_n=3, max_m=5, count=40, seed=1, color_bound=2).generate():
        assert 1 <= g.n <= 3 and g.m <= 5
        assert all(max(abs(c) for c in e.color.t) <= 2 for e in g.edges)
    assert np.all([g.tag == Z for g in CorpusSpec(Z, max_n=2, count=5).generate()])
