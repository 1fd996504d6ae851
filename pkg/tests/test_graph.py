import random

import pytest
from conftest import ALL_TAGS, colored_graphs, loops, z2
from hypothesis import given, settings
from hypothesis import strategies as st

from rigi.graph import (
    ColoredGraph,
    Edge,
    GraphError,
    add_loops,
    component_rhos,
    components,
    graph_translation_subgroup,
    multiply_colors,
    relabel,
    reverse_edges,
    rho_image,
)
from rigi.groups import (
    Z2,
    GroupElement,
    TagMismatchError,
    cent_dim,
    gamma,
    lattice_rank,
)


def lam_rank(g, ids=None):
    return lattice_rank(x.t for x in graph_translation_subgroup(g, ids).generators)


def test_components_examples():
    assert components(ColoredGraph(Z2, 0)) == []
    tri = z2(4, [(0, 1, (0, 0)), (1, 2, (0, 0)), (2, 0, (0, 0))])
    assert sorted(len(c) for c in components(tri)) == [1, 3]
    assert components(loops((1, 0), (0, 1), (1, 1))) == [[0]]


def test_rho_image_examples():
    assert rho_image(loops((1, 0)), [0]).rho_generators == (GroupElement(Z2, (1, 0)),)
    path = z2(3, [(0, 1, (1, 1)), (1, 2, (0, 1))])
    assert rho_image(path, [0, 1, 2]).rho_generators == ()


def test_rho_image_hand_trace():
    # the last edge id is pushed first, so edge 1 (colored (0,1)) is the tree edge:
    # phi(1) = (0,1) and the cycle through edge 0 gives (1,0) - (0,1)
    g = z2(2, [(0, 1, (1, 0)), (0, 1, (0, 1))])
    cr = rho_image(g, [0, 1])
    assert cr.tree_edges == (1,)
    assert cr.rho_generators == (GroupElement(Z2, (1, -1)),)


def test_rho_image_rejects_disconnected():
    g = z2(3, [(0, 1, (0, 0))])
    with pytest.raises(GraphError):
        rho_image(g, [0, 1, 2])


def test_graph_translation_subgroup_examples():
    g = z2(2, [(0, 0, (2, 0)), (1, 1, (0, 3))])
    assert lam_rank(g) == 2
    g3 = gamma(3)
    rot = ColoredGraph.build(g3, 1, [(0, 0, ((0, 0), 1))])
    assert graph_translation_subgroup(rot).is_trivial
    assert lam_rank(z2(3, [(0, 1, (0, 0)), (1, 2, (0, 0))])) == 0


def test_multiply_colors_examples():
    g = loops((1, 0))
    assert multiply_colors(g, 2) == loops((2, 0))
    assert multiply_colors(g, 1) == g
    g2 = multiply_colors(loops((1, 0), (0, 1)), 3)
    assert lam_rank(g2) == 2


def test_add_loops_examples():
    g = add_loops(ColoredGraph(Z2, 1), 0, [(1, 0), (0, 1), (1, 1)])
    assert (g.n, g.m) == (1, 3)
    path = z2(2, [(0, 1, (0, 0))])
    assert add_loops(path, 1, []) == path
    bigger = add_loops(path, 1, [(1, 0), (0, 1)])
    assert bigger.m == 3 and components(bigger) == components(path)
    with pytest.raises(GraphError):
        add_loops(path, 5, [(1, 0)])


def test_construction_checks():
    with pytest.raises(GraphError):
        z2(1, [(0, 1, (0, 0))])
    with pytest.raises(TagMismatchError):
        ColoredGraph(Z2, 1, (Edge(0, 0, GroupElement(gamma(2))),))


def test_json_key_order_and_roundtrip():
    g = z2(2, [(0, 1, (1, -1)), (1, 1, (0, 1))])
    text = g.dumps()
    assert text.startswith('{"edges":[{"color":{"r":0,"t":[1,-1],"tag":"Z2"},"u":0,"v":1}')
    assert ColoredGraph.loads(text) == g


def test_missing_key_is_graph_error():
    with pytest.raises(GraphError):
        ColoredGraph.from_json({"n": 1, "edges": []})


@settings(max_examples=200)
@given(st.sampled_from(ALL_TAGS).flatmap(lambda t: colored_graphs(tag=t, max_n=4, max_m=8, bound=2)))
def test_generator_count(g):
    for comp, cr in zip(components(g), component_rhos(g)):
        cset = set(comp)
        m_i = sum(1 for e in g.edges if e.u in cset)
        assert len(cr.rho_generators) == m_i - len(comp) + 1


@settings(max_examples=200)
@given(st.sampled_from(ALL_TAGS).flatmap(lambda t: colored_graphs(tag=t, max_n=4, max_m=8, bound=2)), st.integers(0, 10 ** 6))
def test_rho_invariants_independent_of_tree(g, seed):
    rnd = random.Random(seed)
    for comp in components(g):
        ref = rho_image(g, comp).subgroup(g.tag)
        for _ in range(5):
            other = rho_image(g, comp, rng=rnd).subgroup(g.tag)
            assert other.translation_rank == ref.translation_rank
            assert other.has_rotation == ref.has_rotation
            assert cent_dim(other) == cent_dim(ref)


@settings(max_examples=200)
@given(st.sampled_from(ALL_TAGS).flatmap(lambda t: colored_graphs(tag=t, max_n=4, max_m=8, bound=2)), st.data())
def test_reversal_invariance(g, data):
    flip = data.draw(st.sets(st.integers(0, max(g.m - 1, 0))) if g.m else st.just(set()))
    h = reverse_edges(g, flip)
    assert lam_rank(h) == lam_rank(g)


@settings(max_examples=150)
@given(colored_graphs(max_n=4, max_m=7, bound=2), st.data())
def test_relabel_invariance(g, data):
    perm = data.draw(st.permutations(range(g.n)))
    assert lam_rank(relabel(g, perm)) == lam_rank(g)


@settings(max_examples=150)
@given(colored_graphs(max_n=3, max_m=6, bound=2), st.integers(1, 4))
def test_multiply_colors_keeps_ranks(g, q):
    h = multiply_colors(g, q)
    assert len(components(h)) == len(components(g))
    for a, b in zip(component_rhos(g), component_rhos(h)):
        assert a.subgroup(Z2).translation_rank == b.subgroup(Z2).translation_rank


@given(colored_graphs(max_n=3, max_m=6, bound=2))
def test_json_roundtrip(g):
    assert ColoredGraph.loads(g.dumps()) == g
