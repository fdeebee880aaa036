import numpy as np
import pytest

from cilattice import (
    CachingOracle,
    CITriple,
    GaussianOracle,
    InvalidArgumentError,
    UndirectedGraph,
    count_ci,
    count_possible_ci,
    elementary_ci_check,
    enumerate_ci,
    full_decomposition,
    general_ci_query,
    sparse_decomposition,
    studeny_graphoid,
    table_oracle,
)
from cilattice.core import EMPTY
from cilattice.graphtools import faithful_gaussian

from conftest import one, random_graphs, sep


class TestElementary:
    def test_path_endpoints(self, path5):
        v = elementary_ci_check(path5, 0, 4, one(3))
        assert v.independent
        assert v.witnesses[0].boundary == one(3)

    def test_example11_marginal(self, ex11):
        v = elementary_ci_check(ex11, 4, 5, EMPTY)
        assert v.independent and v.witnesses[0].boundary == EMPTY

    def test_example11_collider(self, ex11):
        assert not elementary_ci_check(ex11, 4, 5, one(7)).independent

    def test_overlap_rejected(self, path5):
        with pytest.raises(InvalidArgumentError):
            elementary_ci_check(path5, 0, 2, one(3))
        with pytest.raises(InvalidArgumentError):
            elementary_ci_check(path5, 1, 1, EMPTY)

    def test_queries_counted(self, path5):
        v = elementary_ci_check(path5, 0, 4, one(3))
        assert v.queries == path5.query_count > 0


class TestGeneral:
    def test_separated_blocks(self, path5):
        v = general_ci_query(path5, one(1), one(4, 5), one(3))
        assert v.independent
        assert [w.boundary for w in v.witnesses] == [one(3), one(3)]

    def test_adjacent_segments(self, path5):
        v = general_ci_query(path5, one(1, 2), one(4, 5), EMPTY)
        assert not v.independent
        assert len(v.witnesses) == 1

    def test_triple_form(self, path5):
        assert general_ci_query(path5, CITriple(one(1), one(5), one(3))).independent

    def test_empty_block_rejected(self):
        with pytest.raises(InvalidArgumentError):
            CITriple(one(1), EMPTY, EMPTY)

    def test_random_block_triples_match_separation(self):
        rng = np.random.default_rng(5)
        for g in random_graphs(40, [4, 5, 6, 7, 8], seed=6):
            o = sep(g)
            for _ in range(15):
                colours = rng.integers(0, 4, size=g.d)
                A, B, C = (one(*(np.flatnonzero(colours == c) + 1)) for c in (1, 2, 3))
                if not A or not B:
                    continue
                # direct reading: every vertex of A cut off from B by C
                expected = not (g.reachable(A, C) & B)
                assert general_ci_query(o, A, B, C).independent == expected


def _agreement_oracles():
    for g in random_graphs(10, [4, 5, 6], seed=31):
        yield sep(g)
    for seed, g in enumerate(random_graphs(4, [5, 6], seed=32)):
        yield CachingOracle(GaussianOracle(faithful_gaussian(g, seed)))
    yield table_oracle(studeny_graphoid())


AGREEMENT = list(_agreement_oracles())


@pytest.mark.parametrize("oracle", AGREEMENT)
def test_elementary_matches_oracle(oracle):
    for j in range(oracle.d):
        for i in range(oracle.d):
            if i == j:
                continue
            for C in oracle.ground.without(j).discard(i).subsets():
                v = elementary_ci_check(oracle, j, i, C, validate=True)
                assert v.independent == oracle.query([j], [i], C)


@pytest.mark.parametrize("oracle", AGREEMENT)
def test_enumeration_complete(oracle):
    for j in range(oracle.d):
        stream = enumerate_ci(full_decomposition(oracle, j))
        listed = [(i, C.mask) for i, C in stream]
        brute = {(i, C.mask) for i in range(oracle.d) if i != j
                 for C in oracle.ground.without(j).discard(i).subsets() if oracle.query([j], [i], C)}
        assert len(listed) == len(set(listed)) == stream.count == len(brute)
        assert set(listed) == brute
        assert stream.complete


class TestEnumeration:
    def test_middle_of_path(self, path3):
        stream = enumerate_ci(full_decomposition(path3, 1))
        assert stream.count == 0 and list(stream) == []

    def test_end_of_path(self, path3):
        stream = enumerate_ci(full_decomposition(path3, 0))
        assert stream.count == len(stream) == 1
        assert list(stream) == [(2, one(2))]

    def test_is_lazy(self):
        stream = enumerate_ci(full_decomposition(sep(UndirectedGraph.empty(12)), 0))
        it = iter(stream)
        assert next(it) is not None
        assert stream.count == 11 * 2 ** 10

    def test_order_within_lattice(self):
        out = list(enumerate_ci(full_decomposition(sep(UndirectedGraph.empty(4)), 0)))
        assert [(i, C) for i, C in out[:4]] == [(1, EMPTY), (1, one(3)), (1, one(4)), (1, one(3, 4))]

    def test_partial_flag(self):
        dec = sparse_decomposition(sep(UndirectedGraph.complete(4)), 0, 0)
        assert not enumerate_ci(dec).complete


class TestCounts:
    @pytest.mark.parametrize("d,expected", [(15, 114688), (2, 1), (4, 12)])
    def test_possible(self, d, expected):
        assert count_possible_ci(d) == expected

    def test_too_small(self):
        with pytest.raises(InvalidArgumentError):
            count_possible_ci(1)

    def test_empty_graph_saturates(self):
        for d in range(2, 9):
            assert count_ci(full_decomposition(sep(UndirectedGraph.empty(d)), 0)) == count_possible_ci(d)

    def test_complete_graph_has_none(self):
        assert count_ci(full_decomposition(sep(UndirectedGraph.complete(6)), 2)) == 0
