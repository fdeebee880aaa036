import numpy as np
import pytest

from cilattice import (
    CachingOracle,
    CovarianceSpec,
    GaussianOracle,
    NonGraphoidError,
    TooLargeError,
    UndirectedGraph,
    compute_lattice,
    compute_mb,
    example11_gaussian,
    full_decomposition,
    studeny_graphoid,
    table_oracle,
)
from cilattice.core import EMPTY, GroundSet, VarSet
from cilattice.graphtools import faithful_gaussian
from cilattice.verify import (
    boundary_table,
    brute_boundary,
    brute_decomposition,
    brute_lattice,
    check_axioms,
    predicate_oracle,
)

from conftest import one, random_graphs, random_pd, sep


class TestBrute:
    def test_boundary_examples(self, path5):
        assert brute_boundary(path5, 2, one(1, 2, 4, 5)) == one(2, 4)
        assert brute_boundary(path5, 2, EMPTY) == EMPTY

    def test_studeny(self):
        o = table_oracle(studeny_graphoid())
        S = VarSet((1, 2, 3))
        assert brute_boundary(o, 0, S) == compute_mb(o, 0, S)

    def test_lattice_examples(self, path3, ex11):
        lat, members = brute_lattice(path3, 0, one(2, 3))
        assert lat.lower == one(2) and lat.upper == one(2, 3)
        assert set(members) == {one(2), one(2, 3)}
        lat, _ = brute_lattice(ex11, 4, one(6))
        assert (lat.lower, lat.upper) == (EMPTY, one(1, 2, 3, 4, 6))

    def test_complete_graph_singletons(self):
        o = sep(UndirectedGraph.complete(4))
        for S in o.ground.without(1).subsets():
            lat, members = brute_lattice(o, 1, S)
            assert lat.lower == lat.upper == S and members == [S]

    def test_decomposition_examples(self, path3):
        assert brute_decomposition(path3, 1).k == 4
        assert brute_decomposition(path3, 0).k == 3
        dec = brute_decomposition(sep(UndirectedGraph.empty(4)), 0)
        assert [(l.lower, l.upper) for l in dec.lattices] == [(EMPTY, one(2, 3, 4))]

    def test_guards(self):
        o = sep(UndirectedGraph.empty(17))
        with pytest.raises(TooLargeError):
            boundary_table(o, 0)
        with pytest.raises(TooLargeError):
            brute_boundary(sep(UndirectedGraph.empty(22)), 0, VarSet(range(1, 22)))

    def test_non_interval_detected(self):
        # j=0 independent of {1,2} given nothing, but of neither singleton
        def fn(A, B, C):
            return {A.mask, B.mask} == {0b001, 0b110} and not C

        with pytest.raises(NonGraphoidError):
            brute_boundary(predicate_oracle(GroundSet(3), fn), 0, one(2, 3))


def _backends():
    for g in random_graphs(8, [3, 4, 5, 6], seed=41):
        yield sep(g)
    for seed, g in enumerate(random_graphs(4, [4, 5, 6], seed=42)):
        yield CachingOracle(GaussianOracle(faithful_gaussian(g, seed)))
    yield CachingOracle(GaussianOracle(example11_gaussian()))
    yield table_oracle(studeny_graphoid())


BACKENDS = list(_backends())


@pytest.mark.parametrize("oracle", BACKENDS)
def test_algorithms_match_brute_force(oracle):
    for j in range(oracle.d):
        table = boundary_table(oracle, j)
        for S, m in table.items():
            assert compute_mb(oracle, j, S) == m
            lat, _ = brute_lattice(oracle, j, S, table)
            assert compute_lattice(oracle, j, S) == lat
        assert full_decomposition(oracle, j).lattice_set() == brute_decomposition(oracle, j, table).lattice_set()


def test_decomposition_matches_brute_up_to_d10():
    graphs = random_graphs(6, [8, 9, 10], seed=43)
    for g in graphs:
        o = CachingOracle(sep(g))
        assert full_decomposition(o, 0).lattice_set() == brute_decomposition(o, 0).lattice_set()
    spec = faithful_gaussian(graphs[0], 1)
    o = CachingOracle(GaussianOracle(spec))
    assert full_decomposition(o, 0).lattice_set() == brute_decomposition(o, 0).lattice_set()


@pytest.mark.parametrize("oracle", BACKENDS[:6])
def test_lattice_members_share_lattice(oracle):
    for j in range(oracle.d):
        table = boundary_table(oracle, j)
        for S in table:
            lat, members = brute_lattice(oracle, j, S, table)
            for T in members:
                assert brute_lattice(oracle, j, T, table)[0] == lat


@pytest.mark.parametrize("oracle", BACKENDS[:6])
def test_membership_matches_query(oracle):
    rng = np.random.default_rng(0)
    for j in range(oracle.d):
        table = boundary_table(oracle, j)
        for S in table:
            lat, members = brute_lattice(oracle, j, S, table)
            B = members[int(rng.integers(len(members)))]
            for A in (oracle.ground.without(j) - B).subsets():
                if A:
                    assert oracle.query([j], A, B) == ((A | B) in lat)


class TestAxioms:
    def test_studeny(self):
        rep = check_axioms(table_oracle(studeny_graphoid()), "G7")
        assert rep.holds() and rep.exhaustive
        assert rep.status["G8"] == "skipped"
        assert all(rep.nonvacuous[a] > 0 for a in ("G2", "G3", "G4", "G5"))

    def test_random_gaussians_g8(self):
        rng = np.random.default_rng(1)
        for _ in range(3):
            o = GaussianOracle(CovarianceSpec.from_covariance(random_pd(4, rng)))
            assert check_axioms(o, 8).holds()

    def test_graph_separation_g8(self):
        assert check_axioms(sep(UndirectedGraph.path(4)), "G8").holds()

    def test_degenerate_oracle(self):
        rep = check_axioms(predicate_oracle(GroundSet(4), lambda A, B, C: False), 7)
        assert rep.holds()
        assert all(rep.instances[a] > 0 for a in ("G1", "G2", "G3", "G4", "G5", "G6", "G7"))

    def test_failure_has_counterexample(self):
        # independence of {1,2} without its singletons breaks decomposition
        def fn(A, B, C):
            return {A.mask, B.mask} == {0b001, 0b110} and not C

        rep = check_axioms(predicate_oracle(GroundSet(3), fn), 7)
        assert rep.status["G3"] == "fails"
        assert 1 <= len(rep.counterexamples["G3"]) <= 10
        assert not rep.holds()

    def test_sampling_mode(self):
        rep = check_axioms(sep(UndirectedGraph.path(7)), 7, budget=300)
        assert not rep.exhaustive and rep.holds()
        assert rep.instances["G1"] == 300

    def test_report_json(self):
        g = GroundSet(3)
        d = check_axioms(sep(UndirectedGraph.path(3)), 8).as_dict(g)
        assert set(d["axioms"]) == {f"G{k}" for k in range(1, 9)}
        assert d["axioms"]["G8"]["status"] == "holds"
