import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphbound.errors import NotMetric, NotRealizable
from graphbound.graph import Graph, apsp, boundary_matrix, complete_graph, cycle_graph, path_graph
from graphbound.lab import enumerate_block_graphs, enumerate_trees, enumerate_unicyclic_graphs
from graphbound.matrix import DissimilarityMatrix, is_metric
from graphbound.realize import (
    certificate_matches,
    is_block_boundary_matrix,
    is_block_distance_matrix,
    is_cycle_distance_matrix,
    is_tree_boundary_matrix,
    is_tree_distance_matrix,
    is_unicyclic_distance_matrix,
    parity_violation,
    realize_distance_matrix,
    require_realizable_3x3,
    strict_triangle_violation,
)
from graphbound.reconstruct import reconstruct_from_3x3

import oracles

M = DissimilarityMatrix.from_rows
E = Graph.from_edges
NON_METRIC = M([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
K3_PENDANT = E(4, [(1, 2), (1, 3), (2, 3), (1, 4)])


def iso(g1, g2):
    return nx.is_isomorphic(oracles.to_nx(g1), oracles.to_nx(g2))


def all_small():
    for n in range(1, 8):
        for h in oracles.atlas_connected(n):
            yield h, oracles.from_nx(h)


# -- examples ------------------------------------------------------------------

def test_realize_examples():
    rep = realize_distance_matrix(apsp(path_graph(3)))
    assert rep.verdict and rep.graph == path_graph(3)
    rep = realize_distance_matrix(M([[0, 2], [2, 0]]))
    assert not rep.verdict and rep.violation.reason == "not-graphical"
    assert realize_distance_matrix(M([[0, 1, 1], [1, 0, 1], [1, 1, 0]])).graph == complete_graph(3)
    with pytest.raises(NotMetric):
        realize_distance_matrix(NON_METRIC)


def test_tree_distance_examples():
    assert is_tree_distance_matrix(apsp(path_graph(4)))
    rep = is_tree_distance_matrix(apsp(complete_graph(3)))
    assert not rep and rep.violation.reason == "determinant"
    rep = is_tree_distance_matrix(apsp(cycle_graph(5)))
    assert not rep and rep.violation.reason == "not-additive"
    assert len(rep.violation.cells) == 4


def test_block_distance_examples():
    assert is_block_distance_matrix(apsp(complete_graph(3)))
    assert is_block_distance_matrix(apsp(K3_PENDANT))
    assert not is_block_distance_matrix(apsp(cycle_graph(4)))


def test_unicyclic_distance_examples():
    c4_leaf = E(5, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 5)])
    assert is_unicyclic_distance_matrix(apsp(c4_leaf))
    rep = is_unicyclic_distance_matrix(apsp(path_graph(4)))
    assert not rep and rep.violation.reason == "no-cycle"
    bowtie = E(5, [(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 5)])
    rep = is_unicyclic_distance_matrix(apsp(bowtie))
    assert not rep


def test_cycle_examples():
    assert is_cycle_distance_matrix(apsp(cycle_graph(5)))
    assert not is_cycle_distance_matrix(apsp(path_graph(3)))
    rng = random.Random(11)
    for _ in range(20):
        perm = list(range(6))
        rng.shuffle(perm)
        rep = is_cycle_distance_matrix(apsp(cycle_graph(6)).permuted(perm))
        assert rep and iso(rep.graph, cycle_graph(6))


def test_tree_boundary_examples():
    rep = is_tree_boundary_matrix(M([[0, 2, 2], [2, 0, 2], [2, 2, 0]]))
    assert rep and iso(rep.graph, E(4, [(1, 2), (1, 3), (1, 4)]))
    rep = is_tree_boundary_matrix(M([[0, 3, 3], [3, 0, 3], [3, 3, 0]]))
    assert not rep and rep.violation.reason == "odd-triangle"
    rep = is_tree_boundary_matrix(M([[0, 2, 4], [2, 0, 2], [4, 2, 0]]))
    assert not rep and rep.violation.reason == "triangle-not-strict"
    rep = is_tree_boundary_matrix(M([[0, 5], [5, 0]]))
    assert rep and rep.graph == path_graph(6)


def test_block_boundary_examples():
    rep = is_block_boundary_matrix(M([[0, 3, 3], [3, 0, 3], [3, 3, 0]]))
    assert rep and rep.graph.n == 6
    assert is_block_boundary_matrix(M([[0, 2, 2], [2, 0, 2], [2, 2, 0]]))
    rep = is_block_boundary_matrix(NON_METRIC)
    assert not rep and rep.violation.reason == "not-metric"


def test_report_line():
    assert is_tree_distance_matrix(apsp(complete_graph(3))).line().startswith("tree-dist false determinant")
    assert is_cycle_distance_matrix(apsp(cycle_graph(4))).line() == "cycle true"


# -- round trips ---------------------------------------------------------------

def test_distance_round_trips():
    for n in range(1, 11):
        for g in enumerate_trees(n):
            rep = is_tree_distance_matrix(apsp(g))
            assert rep and rep.graph == g
    for n in range(1, 9):
        for g in enumerate_block_graphs(n):
            rep = is_block_distance_matrix(apsp(g))
            assert rep and rep.graph == g
    for n in range(3, 10):
        for g in enumerate_unicyclic_graphs(n):
            rep = is_unicyclic_distance_matrix(apsp(g))
            assert rep and rep.graph == g


def test_realization_is_an_involution():
    for _, g in all_small():
        assert realize_distance_matrix(apsp(g)).graph == g


def test_deciders_reject_non_members():
    for h, g in all_small():
        d = apsp(g)
        assert bool(is_tree_distance_matrix(d)) == nx.is_tree(h)
        assert bool(is_block_distance_matrix(d)) == oracles.nx_is_block(h)
        assert bool(is_unicyclic_distance_matrix(d)) == oracles.nx_is_unicyclic(h)
        cyc = oracles.nx_is_unicyclic(h) and max(x for _, x in h.degree) == 2
        assert bool(is_cycle_distance_matrix(d)) == cyc


def test_graph_like_matrices_that_are_not_graphical():
    # metric, additive, but with a missing intermediate vertex
    m = M([[0, 1, 3], [1, 0, 2], [3, 2, 0]])
    assert is_metric(m)
    assert not realize_distance_matrix(m)
    assert not is_tree_distance_matrix(m)


def test_boundary_round_trips():
    for n in range(2, 11):
        for g in enumerate_trees(n):
            _, bm = boundary_matrix(g)
            rep = is_tree_boundary_matrix(bm)
            assert rep and certificate_matches(bm, rep.graph, rep.index_map) and iso(rep.graph, g)
    for n in range(2, 9):
        for g in enumerate_block_graphs(n):
            _, bm = boundary_matrix(g)
            rep = is_block_boundary_matrix(bm)
            assert rep
            if rep.graph is not None:
                assert certificate_matches(bm, rep.graph, rep.index_map)


def test_kappa2_matrices_are_paths():
    for d in range(1, 8):
        rep = is_tree_boundary_matrix(M([[0, d], [d, 0]]))
        assert rep.graph == path_graph(d + 1) and rep.index_map == (1, d + 1)


# -- 3x3 builder ---------------------------------------------------------------

def test_3x3_builder_examples():
    r = reconstruct_from_3x3(M([[0, 2, 2], [2, 0, 2], [2, 2, 0]]))
    assert iso(r.graph, E(4, [(1, 2), (1, 3), (1, 4)]))
    r = reconstruct_from_3x3(M([[0, 3, 3], [3, 0, 3], [3, 3, 0]]))
    assert iso(r.graph, E(6, [(1, 2), (2, 3), (1, 3), (1, 4), (2, 5), (3, 6)]))
    r = reconstruct_from_3x3(M([[0, 2, 3], [2, 0, 3], [3, 3, 0]]))
    assert r.graph.n == 5 and certificate_matches(M([[0, 2, 3], [2, 0, 3], [3, 3, 0]]), r.graph, r.index_map)


def test_3x3_builder_orders():
    for a, b, c in itertools.product(range(1, 8), repeat=3):
        m = M([[0, a, b], [a, 0, c], [b, c, 0]])
        if strict_triangle_violation(m) is not None:
            with pytest.raises(NotRealizable):
                require_realizable_3x3(m)
            continue
        r = reconstruct_from_3x3(m)
        s = a + b + c
        # legs x, y, z solve x + y = a etc. (even) or x + y + 1 = a etc. (odd)
        legs = s // 2 if s % 2 == 0 else (s - 3) // 2
        assert r.graph.n == (legs + 1 if s % 2 == 0 else legs + 3)
        assert certificate_matches(m, r.graph, r.index_map)


# -- property: permuting rows does not change verdicts -------------------------

@settings(max_examples=60, derandomize=True)
@given(st.integers(0, 10**6))
def test_verdicts_are_permutation_invariant(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    h = rng.choice(oracles.atlas_connected(n))
    g = oracles.from_nx(h)
    perm = list(range(n))
    rng.shuffle(perm)
    d = apsp(g)
    for decide in (is_tree_distance_matrix, is_block_distance_matrix, is_unicyclic_distance_matrix):
        assert bool(decide(d)) == bool(decide(d.permuted(perm)))
    _, bm = boundary_matrix(g)
    if bm.order >= 2:
        p = list(range(bm.order))
        rng.shuffle(p)
        assert bool(is_block_boundary_matrix(bm)) == bool(is_block_boundary_matrix(bm.permuted(p)))
        assert parity_violation(bm) is None or parity_violation(bm.permuted(p)) is not None
