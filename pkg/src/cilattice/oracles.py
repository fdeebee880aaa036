"""Concrete independence oracles: graph separation, Gaussian and table graphoids."""
from __future__ import annotations

import threading
from collections import deque
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import EMPTY, GroundSet, IndependenceOracle, SetLike, VarSet, as_varset, check_disjoint
from .exceptions import InsufficientSamplesError, InvalidArgumentError, UnsupportedQueryError
from .stats import (
    DEFAULT_TOL,
    CovarianceSpec,
    SampleMatrix,
    conditional_correlation,
    partial_correlation,
    residual_correlation,
    residualize,
)


class UndirectedGraph:
    """Simple undirected graph on nodes ``0 .. d-1``."""

    def __init__(self, d: int, edges: Iterable[tuple[int, int]] = (), labels: Optional[Sequence[str]] = None):
        self.ground = GroundSet(d, tuple(labels) if labels else ())
        adj = [0] * d
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidArgumentError(f"self-loop at node {u}")
            if not (0 <= u < d and 0 <= v < d):
                raise InvalidArgumentError(f"edge ({u}, {v}) outside ground set of size {d}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            normalized.add((min(u, v), max(u, v)))
        self.edges = frozenset(normalized)
        self._adj = tuple(adj)

    @property
    def d(self) -> int:
        return self.ground.size

    @classmethod
    def path(cls, d: int) -> "UndirectedGraph":
        return cls(d, [(i, i + 1) for i in range(d - 1)])

    @classmethod
    def complete(cls, d: int) -> "UndirectedGraph":
        return cls(d, combinations(range(d), 2))

    @classmethod
    def empty(cls, d: int) -> "UndirectedGraph":
        return cls(d)

    @classmethod
    def random(cls, d: int, p: float, rng: np.random.Generator) -> "UndirectedGraph":
        return cls(d, [e for e in combinations(range(d), 2) if rng.random() < p])

    @classmethod
    def from_mask(cls, d: int, mask: int) -> "UndirectedGraph":
        """Graph whose edges are the set bits of ``mask`` over ``combinations(range(d), 2)``."""
        pairs = list(combinations(range(d), 2))
        return cls(d, [e for k, e in enumerate(pairs) if mask >> k & 1])

    def neighbors(self, v: int) -> VarSet:
        return VarSet.from_mask(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def reachable(self, sources: VarSet, blocked: VarSet = EMPTY) -> VarSet:
        """Nodes reachable from ``sources`` without entering ``blocked``."""
        allowed = ~blocked.mask
        seen = sources.mask & allowed
        queue = deque(VarSet.from_mask(seen))
        while queue:
            u = queue.popleft()
            fresh = self._adj[u] & allowed & ~seen
            if fresh:
                seen |= fresh
                queue.extend(VarSet.from_mask(fresh))
        return VarSet.from_mask(seen)

    def components(self, removed: VarSet = EMPTY) -> list[VarSet]:
        """Connected components after deleting ``removed``, ordered by smallest member."""
        left = self.ground.full() - removed
        out = []
        while left:
            comp = self.reachable(VarSet((left.min(),)), removed)
            out.append(comp)
            left = left - comp
        return out

    def induced(self, nodes: VarSet) -> "UndirectedGraph":
        """Same ground set, keeping only edges with both ends in ``nodes``."""
        keep = [(u, v) for u, v in self.edges if u in nodes and v in nodes]
        return UndirectedGraph(self.d, keep, self.ground.labels)

    def __repr__(self) -> str:
        return f"UndirectedGraph(d={self.d}, edges={sorted(self.edges)})"


class GraphSeparationOracle(IndependenceOracle):
    """``A _||_ B | C`` iff every path from A to B meets C."""

    def __init__(self, graph: UndirectedGraph):
        super().__init__(graph.ground)
        self.graph = graph

    def _query(self, A, B, C):
        return self.graph.reachable(A, C).isdisjoint(B)


class GaussianOracle(IndependenceOracle):
    """Exact CI for ``N(0, Sigma)``.

    ``A _||_ B | C`` holds when every conditional correlation between a member
    of A and a member of B given C is within ``tol`` of zero; for singletons
    this is the partial correlation test.
    """

    def __init__(self, spec: CovarianceSpec, tol: float = DEFAULT_TOL):
        if tol <= 0:
            raise InvalidArgumentError("tol must be positive")
        super().__init__(spec.ground)
        self.spec = spec
        self.tol = tol

    def _query(self, A, B, C):
        if len(A) == 1 and len(B) == 1:
            return abs(partial_correlation(self.spec, A.min(), B.min(), C).value) <= self.tol
        a, b = list(A), list(B)
        corr = conditional_correlation(self.spec.covariance, a + b, list(C))
        cross = corr[: len(a), len(a):]
        return bool(np.all(np.abs(cross) <= self.tol))


class SampleGaussianOracle(IndependenceOracle):
    """Thresholded sample partial correlation test ``|rho_hat| <= tau``.

    Only elementary queries are answered; reduce block queries first
    (see :func:`cilattice.ci.general_ci_query`).
    """

    def __init__(self, data: SampleMatrix, tau: float):
        if tau <= 0:
            raise InvalidArgumentError("tau must be positive")
        super().__init__(data.ground)
        self.data = data
        self.tau = tau
        self._residuals: dict[int, np.ndarray] = {}
        self._res_lock = threading.Lock()
        self._norms = np.linalg.norm(data.centered, axis=0)

    def _residual_matrix(self, C: VarSet) -> np.ndarray:
        with self._res_lock:
            r = self._residuals.get(C.mask)
        if r is None:
            x = self.data.centered
            r = residualize(x, x[:, list(C)] if C else None)
            with self._res_lock:
                self._residuals.setdefault(C.mask, r)
        return r

    def _query(self, A, B, C):
        if len(A) > 1 or len(B) > 1:
            raise UnsupportedQueryError("the sample oracle only answers elementary queries")
        if len(C) >= self.data.n - 2:
            raise InsufficientSamplesError(f"n={self.data.n} is too small to condition on {len(C)} variables")
        i, j = A.min(), B.min()
        r = self._residual_matrix(C)
        rho = residual_correlation(r[:, i], r[:, j], self._norms[i], self._norms[j])
        return abs(rho) <= self.tau


def _canonical(A: VarSet, B: VarSet, C: VarSet) -> tuple[int, int, int]:
    a, b = sorted((A.mask, B.mask))
    return a, b, C.mask


class TableGraphoid:
    """An independence model given by an explicit list of statements.

    Symmetric counterparts and trivial statements with an empty side are
    implied and not stored.
    """

    def __init__(self, ground: GroundSet, relations: Iterable[tuple[SetLike, SetLike, SetLike]] = ()):
        self.ground = ground
        keys = set()
        for A, B, C in relations:
            A, B, C = as_varset(A), as_varset(B), as_varset(C)
            for s in (A, B, C):
                ground.check(s)
            check_disjoint(A, B, C)
            if A and B:
                keys.add(_canonical(A, B, C))
        self._keys = frozenset(keys)

    def __contains__(self, triple) -> bool:
        A, B, C = (as_varset(x) for x in triple)
        return not A or not B or _canonical(A, B, C) in self._keys

    def __len__(self) -> int:
        return len(self._keys)

    def relations(self) -> list[tuple[VarSet, VarSet, VarSet]]:
        """Stored nontrivial statements in canonical form, sorted."""
        return [(VarSet.from_mask(a), VarSet.from_mask(b), VarSet.from_mask(c))
                for a, b, c in sorted(self._keys, key=lambda k: (k[2], k[0], k[1]))]


class TableOracle(IndependenceOracle):
    def __init__(self, table: TableGraphoid):
        super().__init__(table.ground)
        self.table = table

    def _query(self, A, B, C):
        return _canonical(A, B, C) in self.table._keys


def graph_separation_oracle(graph: UndirectedGraph) -> GraphSeparationOracle:
    return GraphSeparationOracle(graph)


def exact_gaussian_oracle(spec: CovarianceSpec, tol: float = DEFAULT_TOL) -> GaussianOracle:
    return GaussianOracle(spec, tol)


def sample_gaussian_oracle(data: SampleMatrix, tau: float) -> SampleGaussianOracle:
    return SampleGaussianOracle(data, tau)


def table_oracle(table: TableGraphoid) -> TableOracle:
    return TableOracle(table)


def studeny_graphoid() -> TableGraphoid:
    """Four-element compositional graphoid with no probabilistic representation."""
    ground = GroundSet(4, ("a", "b", "c", "d"))
    a, b, c, d = (VarSet((k,)) for k in range(4))
    return TableGraphoid(ground, [
        (a, b, c | d),
        (c, d, a),
        (c, d, b),
        (a, b, EMPTY),
    ])


EXAMPLE11_PRECISION = np.array([
    [3, 1, 1, 0, 0, 0, 0],
    [1, 3, 0, 1, 0, 0, 0],
    [1, 0, 3, 1, 0, 0, 0],
    [0, 1, 1, 3, 0, 0, 0],
    [0, 0, 0, 0, 4, 3, -3],
    [0, 0, 0, 0, 3, 5, -3],
    [0, 0, 0, 0, -3, -3, 3],
], dtype=float)


def example11_gaussian() -> CovarianceSpec:
    """Seven-variable Gaussian whose independence model no undirected graph represents.

    Its precision matrix is block diagonal over ``{1..4}`` and ``{5, 6, 7}``;
    ``X5`` and ``X6`` are marginally independent although the precision entry
    linking them is nonzero.
    """
    spec = CovarianceSpec.from_precision(EXAMPLE11_PRECISION)
    assert abs(spec.covariance[4, 5]) < 1e-12
    return spec
