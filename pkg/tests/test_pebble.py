from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigi.pebble import (
    NotA21GraphError,
    SparsityRangeError,
    brute_force_circuits,
    circuit_vertices,
    circuits_22_structure,
    is_kl_sparse,
    is_kl_spanning,
    kl_components,
    kl_rank,
    kl_sparse,
    pebble_basis,
)

K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
TRI = [(0, 1), (1, 2), (0, 2)]


def brute_sparse(n, edges, k, l):
    for size in range(1, len(edges) + 1):
        for ids in combinations(range(len(edges)), size):
            vs = {x for i in ids for x in edges[i]}
            if size > k * len(vs) - l:
                return False
    return True


def brute_rank(n, edges, k, l):
    for size in range(len(edges), -1, -1):
        for ids in combinations(range(len(edges)), size):
            if brute_sparse(n, [edges[i] for i in ids], k, l):
                return size
    return 0


@st.composite
def multigraphs(draw, max_n=5, max_m=8):
    n = draw(st.integers(1, max_n))
    v = st.integers(0, n - 1)
    m = draw(st.integers(0, max_m))
    return n, [(draw(v), draw(v)) for _ in range(m)]


KL = [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (2, 3), (3, 3)]


def test_examples():
    rep = kl_sparse(4, K4, 2, 3, with_circuits=True)
    assert rep.verdict == "violating" and rep.circuits == [tuple(range(6))]
    assert kl_sparse(3, TRI, 2, 3).verdict == "tight"
    assert kl_sparse(3, TRI, 2, 2).verdict == "sparse"


def test_range_checked():
    with pytest.raises(SparsityRangeError):
        kl_sparse(3, TRI, 2, 4)


def test_loops_and_21_examples():
    assert circuits_22_structure(1, [(0, 0)]) == {"circuits": [(0,)], "spanning_22": True}
    # two loop-circuits joined by a path of two edges
    edges = [(0, 0), (2, 2), (0, 1), (1, 2), (0, 1)]
    out = circuits_22_structure(3, edges)
    assert is_kl_sparse(3, edges, 2, 1)
    cs = out["circuits"]
    assert not out["spanning_22"] and len(cs) == 2
    assert not (circuit_vertices(edges, cs[0]) & circuit_vertices(edges, cs[1]))
    assert sorted(cs) == sorted(brute_force_circuits(3, edges, 2, 2))


def test_not_21_rejected():
    with pytest.raises(NotA21GraphError):
        circuits_22_structure(4, K4)


def test_components_of_two_triangles():
    edges = TRI + [(2, 3), (3, 4), (2, 4)]
    assert kl_components(5, edges, 2, 3) == [(0, 1, 2), (3, 4, 5)]


@settings(max_examples=300)
@given(multigraphs(), st.sampled_from(KL))
def test_pebble_matches_brute_force(g, kl):
    n, edges = g
    k, l = kl
    assert is_kl_sparse(n, edges, k, l) == brute_sparse(n, edges, k, l)
    assert kl_rank(n, edges, k, l) == brute_rank(n, edges, k, l)


@settings(max_examples=200)
@given(multigraphs(), st.sampled_from(KL))
def test_basis_is_sparse_and_spanning_consistent(g, kl):
    n, edges = g
    k, l = kl
    basis = pebble_basis(n, edges, k, l)
    assert brute_sparse(n, [edges[i] for i in basis], k, l)
    assert is_kl_spanning(n, edges, k, l) == (len(basis) == k * n - l)


@settings(max_examples=200)
@given(multigraphs(max_m=7), st.sampled_from(KL))
def test_circuits_are_minimal(g, kl):
    n, edges = g
    k, l = kl
    for c in brute_force_circuits(n, edges, k, l):
        sub = [edges[i] for i in c]
        assert not brute_sparse(n, sub, k, l)
        for i in range(len(sub)):
            assert brute_sparse(n, sub[:i] + sub[i + 1:], k, l)
