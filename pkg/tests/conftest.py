import numpy as np
import pytest

from cilattice import GaussianOracle, GraphSeparationOracle, UndirectedGraph, VarSet
from cilattice.graphtools import faithful_gaussian


def one(*labels):
    """1-indexed node numbers -> VarSet of 0-indexed nodes."""
    return VarSet(x - 1 for x in labels)


def sep(graph):
    return GraphSeparationOracle(graph)


def random_graphs(count, d_choices, seed, p=0.4):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        d = int(rng.choice(d_choices))
        out.append(UndirectedGraph.random(d, p, rng))
    return out


def random_pd(d, rng):
    a = rng.normal(size=(d, d))
    return a @ a.T + d * np.eye(d)


@pytest.fixture
def path5():
    return sep(UndirectedGraph.path(5))


@pytest.fixture
def path3():
    return sep(UndirectedGraph.path(3))


@pytest.fixture(scope="session")
def ex11():
    from cilattice import example11_gaussian
    return GaussianOracle(example11_gaussian())


@pytest.fixture(scope="session")
def faithful_path5():
    return faithful_gaussian(UndirectedGraph.path(5), seed=3)
