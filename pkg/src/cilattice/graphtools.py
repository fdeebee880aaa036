"""Undirected-graph utilities: component splits, Markov-chain closed forms and
Gaussians faithful to a graph."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import EMPTY, SetLike, VarSet, as_varset
from .exceptions import GenerationFailureError, InvalidArgumentError
from .lattice import compute_lattice, compute_mb
from .oracles import GaussianOracle, GraphSeparationOracle, UndirectedGraph
from .stats import CovarianceSpec


@dataclass(frozen=True)
class ComponentSplit:
    node: int
    components: tuple[VarSet, ...]


def component_split(graph: UndirectedGraph, j: int) -> ComponentSplit:
    """Connected components of ``graph`` once ``j`` and its edges are removed."""
    if not 0 <= j < graph.d:
        raise InvalidArgumentError(f"node {j} outside the graph")
    return ComponentSplit(j, tuple(graph.components(VarSet((j,)))))


def _restricted_oracles(graph: UndirectedGraph, j: int):
    for comp in component_split(graph, j).components:
        yield comp, GraphSeparationOracle(graph.induced(comp.add(j)))


def decomposed_boundary(graph: UndirectedGraph, j: int, S: SetLike) -> VarSet:
    """Boundary of ``j`` in ``S`` assembled component by component."""
    S = as_varset(S)
    if j in S:
        raise InvalidArgumentError("j must not be in S")
    out = EMPTY
    for comp, oracle in _restricted_oracles(graph, j):
        out = out | compute_mb(oracle, j, S & comp)
    return out


def decomposed_maximum(graph: UndirectedGraph, j: int, S: SetLike) -> VarSet:
    """Top of the lattice of ``S``, assembled from the lattices restricted to each component."""
    S = as_varset(S)
    if j in S:
        raise InvalidArgumentError("j must not be in S")
    out = EMPTY
    for comp, oracle in _restricted_oracles(graph, j):
        out = out | (compute_lattice(oracle, j, S & comp).upper & comp)
    return out


def _sides(j: int, S: VarSet) -> tuple[int | None, int | None]:
    below = [x for x in S if x < j]
    above = [x for x in S if x > j]
    return (max(below) if below else None), (min(above) if above else None)


def path_graph_boundary(d: int, j: int, S: SetLike) -> VarSet:
    """Closed-form boundary for the path ``0 - 1 - ... - (d-1)``: the nearest member of ``S`` on each side of ``j``."""
    S = as_varset(S)
    if not 0 <= j < d or j in S or S.mask >> d:
        raise InvalidArgumentError("need 0 <= j < d and S a subset of V - j")
    below, above = _sides(j, S)
    return VarSet(x for x in (below, above) if x is not None)


def path_graph_maximum(d: int, j: int, S: SetLike) -> VarSet:
    """Closed-form lattice top for the path graph.

    Everything at or beyond the nearest member of ``S`` on each side of ``j``;
    a side of ``j`` with no member of ``S`` contributes nothing.
    """
    S = as_varset(S)
    if not 0 <= j < d or j in S or S.mask >> d:
        raise InvalidArgumentError("need 0 <= j < d and S a subset of V - j")
    below, above = _sides(j, S)
    out = EMPTY
    if below is not None:
        out = out | VarSet(range(below + 1))
    if above is not None:
        out = out | VarSet(range(above, d))
    return out


def _random_precision(graph: UndirectedGraph, rng: np.random.Generator,
                      low: float, high: float) -> np.ndarray:
    d = graph.d
    k = np.zeros((d, d))
    for u, v in sorted(graph.edges):
        w = rng.uniform(low, high) * rng.choice((-1.0, 1.0))
        k[u, v] = k[v, u] = w
    k[np.diag_indices(d)] = 1.0 + np.abs(k).sum(axis=1)
    return k


def agrees_with_graph(spec: CovarianceSpec, graph: UndirectedGraph, max_cond: int) -> bool:
    """Whether the Gaussian and the separation oracle agree on elementary triples with ``|C| <= max_cond``."""
    gauss = GaussianOracle(spec)
    sep = GraphSeparationOracle(graph)
    full = graph.ground.full()
    for i, j in combinations(range(graph.d), 2):
        I, J = VarSet((i,)), VarSet((j,))
        for C in (full - I - J).subsets(max_cond):
            if gauss.query(I, J, C) != sep.query(I, J, C):
                return False
    return True


def faithful_gaussian(graph: UndirectedGraph, seed: int, weights: tuple[float, float] = (0.1, 0.3),
                      max_tries: int = 50) -> CovarianceSpec:
    """A Gaussian whose precision matrix has the sparsity pattern of ``graph``.

    Edge weights are drawn from ``+-[low, high]``; the diagonal is one plus
    the absolute row sum, so the matrix is diagonally dominant. The result is
    checked against graph separation for conditioning sets of size at most 3
    and redrawn (seed + attempt) when they disagree.
    """
    low, high = weights
    if not 0 < low <= high:
        raise InvalidArgumentError("need 0 < low <= high")
    max_cond = min(max(graph.d - 2, 0), 3)
    for attempt in range(max_tries):
        rng = np.random.default_rng(seed + attempt)
        spec = CovarianceSpec.from_precision(_random_precision(graph, rng, low, high),
                                             labels=graph.ground.labels)
        if agrees_with_graph(spec, graph, max_cond):
            return spec
    raise GenerationFailureError(f"no faithful Gaussian found after {max_tries} attempts")


def markov_chain_gaussian(d: int, phi: float) -> CovarianceSpec:
    """Stationary AR(1) chain ``X_1 - ... - X_d`` with ``Cov(X_i, X_k) = phi^|i-k|``."""
    if not 0 < abs(phi) < 1:
        raise InvalidArgumentError("need 0 < |phi| < 1")
    idx = np.arange(d)
    return CovarianceSpec.from_covariance(phi ** np.abs(idx[:, None] - idx[None, :]))
