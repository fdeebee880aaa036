import numpy as np
import pytest

from cilattice import GaussianOracle, InvalidArgumentError, UndirectedGraph, compute_lattice, compute_mb
from cilattice.core import EMPTY, VarSet
from cilattice.graphtools import (
    agrees_with_graph,
    component_split,
    decomposed_boundary,
    decomposed_maximum,
    faithful_gaussian,
    markov_chain_gaussian,
    path_graph_boundary,
    path_graph_maximum,
)

from conftest import one, random_graphs, sep

P5 = UndirectedGraph.path(5)


class TestComponentSplit:
    def test_path_middle(self):
        assert component_split(P5, 2).components == (one(1, 2), one(4, 5))

    def test_path_end(self):
        assert component_split(P5, 0).components == (one(2, 3, 4, 5),)

    def test_complete(self):
        assert component_split(UndirectedGraph.complete(4), 0).components == (one(2, 3, 4),)

    def test_partition(self):
        for g in random_graphs(50, [2, 5, 8], seed=1):
            for j in range(g.d):
                comps = component_split(g, j).components
                union = EMPTY
                for c in comps:
                    assert not (union & c)
                    union |= c
                assert union == g.ground.without(j)
                assert [c.min() for c in comps] == sorted(c.min() for c in comps)

    def test_bad_node(self):
        with pytest.raises(InvalidArgumentError):
            component_split(P5, 5)


class TestDecomposed:
    def test_boundary_examples(self):
        assert decomposed_boundary(P5, 2, one(1, 2, 4, 5)) == one(2, 4)
        assert decomposed_boundary(P5, 2, one(1, 2)) == one(2)
        assert decomposed_boundary(P5, 2, EMPTY) == EMPTY

    def test_maximum_examples(self):
        # both sides blocked: nothing beyond S itself is independent of the centre
        assert decomposed_maximum(P5, 2, one(1, 5)) == one(1, 5)
        assert decomposed_maximum(UndirectedGraph.complete(4), 0, one(2, 3, 4)) == one(2, 3, 4)

    def test_untouched_component_included(self):
        g = UndirectedGraph(5, [(0, 1), (2, 3), (3, 4)])
        assert decomposed_maximum(g, 0, EMPTY) == one(3, 4, 5)
        assert decomposed_maximum(g, 0, one(2)) == one(2, 3, 4, 5)

    def test_random_graphs_match_monolithic(self):
        rng = np.random.default_rng(7)
        for g in random_graphs(200, list(range(2, 11)), seed=8):
            o = sep(g)
            j = int(rng.integers(g.d))
            rest = list(g.ground.without(j))
            S = VarSet(x for x in rest if rng.random() < 0.5)
            lat = compute_lattice(o, j, S)
            assert decomposed_boundary(g, j, S) == lat.lower
            assert decomposed_maximum(g, j, S) == lat.upper


def test_empty_boundary_iff_unreachable():
    rng = np.random.default_rng(9)
    for g in random_graphs(100, [3, 5, 7, 9], seed=10):
        o = sep(g)
        j = int(rng.integers(g.d))
        for _ in range(5):
            S = VarSet(x for x in g.ground.without(j) if rng.random() < 0.4)
            reach = g.reachable(VarSet((j,)), EMPTY)
            assert (compute_mb(o, j, S) == EMPTY) == (not (reach & S))


class TestPathClosedForms:
    def test_boundary_examples(self):
        assert path_graph_boundary(5, 2, one(1, 5)) == one(1, 5)
        assert path_graph_boundary(5, 2, one(1, 2)) == one(2)
        assert path_graph_boundary(5, 0, one(3, 4)) == one(3)
        assert path_graph_boundary(5, 2, EMPTY) == EMPTY

    def test_maximum_examples(self):
        assert path_graph_maximum(5, 2, one(1, 5)) == one(1, 5)
        assert path_graph_maximum(5, 2, one(1, 2)) == one(1, 2)
        assert path_graph_maximum(5, 4, one(3)) == one(1, 2, 3)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_exhaustive(self, d):
        o = sep(UndirectedGraph.path(d))
        for j in range(d):
            for S in o.ground.without(j).subsets():
                lat = compute_lattice(o, j, S)
                assert path_graph_boundary(d, j, S) == lat.lower
                assert path_graph_maximum(d, j, S) == lat.upper

    def test_rejects_bad_input(self):
        with pytest.raises(InvalidArgumentError):
            path_graph_boundary(5, 2, one(3))
        with pytest.raises(InvalidArgumentError):
            path_graph_maximum(3, 0, one(5))


class TestFaithfulGaussian:
    def test_path_agrees(self):
        spec = faithful_gaussian(P5, 0)
        assert agrees_with_graph(spec, P5, 3)
        g, s = GaussianOracle(spec), sep(P5)
        for j in range(5):
            for i in range(5):
                if i != j:
                    for C in P5.ground.without(j).discard(i).subsets():
                        assert g.query([j], [i], C) == s.query([j], [i], C)

    def test_precision_pattern(self):
        spec = faithful_gaussian(P5, 4)
        p = spec.precision
        for u in range(5):
            for v in range(u + 1, 5):
                assert (abs(p[u, v]) > 1e-9) == P5.has_edge(u, v)
                if P5.has_edge(u, v):
                    assert 0.1 <= abs(p[u, v]) <= 0.3

    def test_empty_graph(self):
        spec = faithful_gaussian(UndirectedGraph.empty(4), 1)
        assert np.allclose(spec.precision, np.eye(4))

    def test_deterministic(self):
        g = UndirectedGraph.random(6, 0.5, np.random.default_rng(0))
        assert np.array_equal(faithful_gaussian(g, 12).covariance, faithful_gaussian(g, 12).covariance)

    def test_bad_weights(self):
        with pytest.raises(InvalidArgumentError):
            faithful_gaussian(P5, 0, weights=(0.0, 0.3))


def test_markov_chain_matches_path():
    spec = markov_chain_gaussian(6, 0.8)
    assert agrees_with_graph(spec, UndirectedGraph.path(6), 4)
    with pytest.raises(InvalidArgumentError):
        markov_chain_gaussian(4, 1.0)
