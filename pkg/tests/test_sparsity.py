from itertools import combinations

import pytest
from conftest import colored_graphs, loops, z2
from hypothesis import given, settings
from hypothesis import strategies as st

from rigi.graph import ColoredGraph, reverse_edges
from rigi.groups import Z, Z2, cyclic, gamma
from rigi.pebble import is_kl_sparse
from rigi.sparsity import (
    COLORED_LAMAN,
    CONE_LAMAN,
    CYLINDER_LAMAN,
    ROSS,
    UNIT_AREA_LAMAN,
    Counts,
    EquivalenceFailure,
    FamilyMismatchError,
    FamilyTag,
    SubsetTable,
    TooManyEdgesError,
    check_family,
    cylinder_vs_cone,
    cylinder_vs_cone_sides,
    f_general,
    f_z2,
    g_z2,
    greedy_basis,
    is_spanning,
    is_spanning_exhaustive,
    rank1_directions,
    rank2_tight_subgraph,
    ross_loop_equivalence,
    subgraph_counts,
    unit_area_characterization,
)


def counts(n, rank, c, c0):
    return Counts(n, 0, c, c0, 0, 0, rank, 0, 0)


# -- bound functions ----------------------------------------------------------------


def test_f_general_examples():
    assert f_general(loops((1, 0)), [0]) == 1
    assert f_general(loops((1, 0)), []) == 0
    tri = z2(3, [(0, 1, (0, 0)), (1, 2, (0, 0)), (0, 2, (0, 0))])
    assert f_general(tri, range(3)) == 3


def test_f_and_g_examples():
    assert f_z2(counts(1, 2, 1, 0)) == 3
    assert f_z2(counts(3, 0, 1, 1)) == 3 == g_z2(counts(3, 0, 1, 1))
    two = counts(2, 2, 2, 0)
    assert f_z2(two) == 3 == g_z2(two)


@settings(max_examples=300)
@given(colored_graphs(max_n=3, max_m=6, bound=2), st.data())
def test_f_general_is_f_z2(g, data):
    ids = data.draw(st.sets(st.integers(0, g.m - 1))) if g.m else set()
    if not ids:
        return
    assert f_general(g, ids) == f_z2(subgraph_counts(g, ids))


@settings(max_examples=300)
@given(st.sampled_from([cyclic(2), cyclic(3), cyclic(5)]).flatmap(lambda t: colored_graphs(tag=t, max_n=3, max_m=6)), st.data())
def test_f_general_is_cone_bound(g, data):
    ids = data.draw(st.sets(st.integers(0, g.m - 1))) if g.m else set()
    if not ids:
        return
    c = subgraph_counts(g, ids)
    assert f_general(g, ids) == 2 * c.n - 3 * c.c0 - c.c_nontrivial


@settings(max_examples=300)
@given(colored_graphs(tag=Z, max_n=3, max_m=6, bound=2), st.data())
def test_f_general_is_cylinder_bound(g, data):
    ids = data.draw(st.sets(st.integers(0, g.m - 1))) if g.m else set()
    if not ids:
        return
    c = subgraph_counts(g, ids)
    assert f_general(g, ids) == 2 * c.n + c.rank - 3 * c.c0 - 2 * c.c_nontrivial


# -- check_family ---------------------------------------------------------------------


def test_check_family_examples():
    assert check_family(loops((1, 0), (0, 1), (1, 1)), COLORED_LAMAN).verdict == "tight"
    rep = check_family(loops((1, 0), (2, 0)), COLORED_LAMAN)
    assert rep.verdict == "violating"
    assert rep.witness.edges == (0, 1) and rep.witness.bound == 1
    cone = ColoredGraph.build(cyclic(3), 1, [(0, 0, 1)])
    assert check_family(cone, CONE_LAMAN).verdict == "tight"


def test_targets():
    assert COLORED_LAMAN.target(Z2, 3) == 7
    assert CYLINDER_LAMAN.target(Z, 3) == 5
    assert CONE_LAMAN.target(cyclic(5), 3) == 5
    assert ROSS.target(Z2, 3) == 4
    assert UNIT_AREA_LAMAN.target(Z2, 3) == 6
    assert FamilyTag("gamma-laman").target(gamma(2), 3) == 9
    for k in (3, 4, 6):
        assert FamilyTag("gamma-laman").target(gamma(k), 3) == 7


def test_family_parse():
    assert FamilyTag.parse("kl(2,3)") == FamilyTag("kl", 2, 3)
    assert FamilyTag.parse("gamma-laman(4)") == FamilyTag("gamma-laman", 4)
    with pytest.raises(ValueError):
        FamilyTag.parse("kl(2,5)")
    with pytest.raises(ValueError):
        FamilyTag.parse("nonsense")


def test_family_mismatch_and_cap():
    with pytest.raises(FamilyMismatchError):
        check_family(loops((1, 0)), CONE_LAMAN)
    big = loops(*[(1, 0)] * 5)
    with pytest.raises(TooManyEdgesError):
        check_family(big, COLORED_LAMAN, max_edges=4)


@settings(max_examples=300)
@given(colored_graphs(max_n=3, max_m=6, bound=2))
def test_witness_reevaluates(g):
    rep = check_family(g, COLORED_LAMAN)
    if rep.verdict != "violating":
        return
    c = subgraph_counts(g, rep.witness.edges)
    assert c.m > f_z2(c) == rep.witness.bound
    # minimality: no smaller subset violates
    for size in range(1, len(rep.witness.edges)):
        for ids in combinations(range(g.m), size):
            c = subgraph_counts(g, ids)
            assert c.m <= f_z2(c)


FAMILIES = [COLORED_LAMAN, ROSS, UNIT_AREA_LAMAN]


@settings(max_examples=300)
@given(colored_graphs(max_n=3, max_m=6, bound=2, min_m=1), st.sampled_from(FAMILIES), st.data())
def test_monotone_under_deletion(g, family, data):
    if check_family(g, family).verdict == "violating":
        return
    drop = data.draw(st.integers(0, g.m - 1))
    h = g.subgraph(i for i in range(g.m) if i != drop)
    assert check_family(h, family).is_sparse


@settings(max_examples=300)
@given(colored_graphs(max_n=3, max_m=6, bound=2), st.sampled_from(FAMILIES), st.data())
def test_verdict_reversal_invariant(g, family, data):
    flip = data.draw(st.sets(st.integers(0, g.m - 1))) if g.m else set()
    assert check_family(reverse_edges(g, flip), family).verdict == check_family(g, family).verdict


@settings(max_examples=300)
@given(st.integers(2, 5), st.data())
def test_maxwell_laman_reduction(n, data):
    v = st.integers(0, n - 1)
    pairs = data.draw(st.lists(st.tuples(v, v).filter(lambda p: p[0] != p[1]), min_size=1, max_size=8))
    g = z2(n, [(a, b, (0, 0)) for a, b in pairs])
    if len({x for p in pairs for x in p}) != n:
        return
    assert check_family(g, COLORED_LAMAN).is_sparse == is_kl_sparse(n, pairs, 2, 3)


@settings(max_examples=200)
@given(colored_graphs(max_n=3, max_m=8, bound=1), st.sampled_from(FAMILIES))
def test_greedy_spanning_matches_exhaustive(g, family):
    assert is_spanning(g, family) == is_spanning_exhaustive(g, family)
    basis = greedy_basis(g, family)
    assert check_family(g.subgraph(basis), family).is_sparse


# -- named equivalences ---------------------------------------------------------------


def test_ross_examples():
    assert ross_loop_equivalence(ColoredGraph(Z2, 1)) is True
    assert ross_loop_equivalence(loops((1, 0))) is False
    assert ross_loop_equivalence(z2(2, [(0, 1, (0, 0)), (0, 1, (1, 0))])) is True


def test_unit_area_examples():
    assert unit_area_characterization(loops((1, 0), (0, 1))) is True
    assert unit_area_characterization(loops((1, 0), (0, 1), (1, 1))) is False
    tri = z2(3, [(0, 1, (0, 0)), (1, 2, (0, 0)), (0, 2, (0, 0))])
    assert unit_area_characterization(tri) is False


def test_rank2_examples():
    assert rank2_tight_subgraph(loops((1, 0), (0, 1), (1, 1))) == (0, 1, 2)
    assert rank2_tight_subgraph(loops((1, 0))) is None
    assert rank2_tight_subgraph(loops((1, 0), (0, 1))) is None


def test_rank1_directions():
    g = z2(2, [(0, 0, (2, 0)), (1, 1, (0, -1)), (0, 1, (0, 0))])
    assert rank1_directions(g) == [(0, 1), (1, 0)]


def test_cylinder_examples():
    two = ColoredGraph.build(Z, 1, [(0, 0, 1), (0, 0, 2)])
    assert cylinder_vs_cone_sides(two) == (False, False)
    assert cylinder_vs_cone(ColoredGraph.build(Z, 1, [(0, 0, 1)])) is True
    par = ColoredGraph.build(Z, 2, [(0, 1, 0), (0, 1, 0), (0, 1, 1)])
    lhs, rhs = cylinder_vs_cone_sides(par)
    assert lhs == rhs


def test_equivalence_failure_carries_graph():
    err = EquivalenceFailure("x", loops((1, 0)))
    assert err.graph == loops((1, 0))


@settings(max_examples=200)
@given(colored_graphs(max_n=3, max_m=6, bound=1))
def test_subset_table_matches_counter(g):
    table = SubsetTable(g)
    for mask in range(1, 1 << g.m):
        ids = [i for i in range(g.m) if mask >> i & 1]
        assert table.counts[mask] == subgraph_counts(g, ids)
