"""Markov boundaries, neighbourhood lattices and lattice decompositions.

All routines take an :class:`~cilattice.core.IndependenceOracle` assumed to be
a compositional graphoid. Ties are broken smallest index first.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import EMPTY, IndependenceOracle, IntervalLattice, SetLike, VarSet, as_varset
from .exceptions import DecompositionInconsistencyError, InvalidArgumentError, NonGraphoidError, TooLargeError

DEFAULT_MAX_DECOMPOSITION_SIZE = 30


def _single(i: int) -> VarSet:
    return VarSet.from_mask(1 << i)


def _check_node(oracle: IndependenceOracle, j: int, S: VarSet) -> None:
    if not 0 <= j < oracle.d:
        raise InvalidArgumentError(f"node {j} outside ground set of size {oracle.d}")
    oracle.ground.check(S)
    if j in S:
        raise InvalidArgumentError(f"node {j} must not belong to S={S!r}")


def compute_mb(oracle: IndependenceOracle, j: int, S: SetLike) -> VarSet:
    """Markov boundary of ``j`` relative to ``S`` by grow-shrink.

    The forward phase adds, in one sweep, every element of ``S`` still
    dependent on ``j`` given the current set, until nothing is added. The
    backward phase then drops each element independent of ``j`` given the
    rest.
    """
    S = as_varset(S)
    _check_node(oracle, j, S)
    J = _single(j)
    m = EMPTY
    while True:
        grow = VarSet(i for i in S - m if not oracle.query(J, _single(i), m))
        if not grow:
            break
        m = m | grow
    for i in list(m):
        rest = m.discard(i)
        if oracle.query(J, _single(i), rest):
            m = rest
    return m


def compute_lattice(oracle: IndependenceOracle, j: int, S: SetLike, validate: bool = False) -> IntervalLattice:
    """The neighbourhood lattice of ``j`` containing ``S``.

    With ``validate=True`` every element of ``S`` outside the boundary is also
    checked to be independent of ``j`` given the boundary, which costs extra
    queries.
    """
    S = as_varset(S)
    m = compute_mb(oracle, j, S)
    J = _single(j)
    top = S
    for k in oracle.ground.full() - S - J:
        if oracle.query(J, _single(k), m):
            top = top.add(k)
    if validate:
        for k in S - m:
            if not oracle.query(J, _single(k), m):
                raise NonGraphoidError(f"j={j}: {k} in S is dependent on j given boundary {m!r}")
    return IntervalLattice(m, top)


def _covered_in(lattices: Sequence[IntervalLattice], low: VarSet, high: VarSet) -> int:
    total = 0
    for lat in lattices:
        lo = lat.lower | low
        hi = lat.upper & high
        if lo <= hi:
            total += 1 << (len(hi) - len(lo))
    return total


class _IntervalCounter:
    """Counts interval points inside a subcube, vectorised over the intervals."""

    def __init__(self, lattices: Sequence[IntervalLattice], ground: VarSet):
        self.lattices = lattices
        self.fast = ground.mask < (1 << 63)
        if self.fast:
            self.lower = np.array([lat.lower.mask for lat in lattices], dtype=np.uint64)
            self.upper = np.array([lat.upper.mask for lat in lattices], dtype=np.uint64)

    def __call__(self, low: VarSet, high: VarSet) -> int:
        if not self.fast:
            return _covered_in(self.lattices, low, high)
        lo = self.lower | np.uint64(low.mask)
        hi = self.upper & np.uint64(high.mask)
        nested = (lo & ~hi) == 0
        if not nested.any():
            return 0
        widths = np.bitwise_count(hi[nested]) - np.bitwise_count(lo[nested])
        values, counts = np.unique(widths, return_counts=True)
        return sum(int(c) << int(w) for w, c in zip(values, counts))


def find_uncovered_set(lattices: Sequence[IntervalLattice], ground: SetLike) -> Optional[VarSet]:
    """A subset of ``ground`` lying in none of the (pairwise disjoint) intervals.

    Returns None when the intervals cover every subset. Descends through
    subcubes ``[low, high]``, splitting on the smallest free element and
    following the first child (element excluded first) that still has an
    uncovered point; counts are exact because the intervals are disjoint.
    """
    ground = as_varset(ground)
    lattices = list(lattices)
    covered_in = _IntervalCounter(lattices, ground)
    low, high = EMPTY, ground

    def deficit(lo, hi):
        size = 1 << (len(hi) - len(lo))
        covered = covered_in(lo, hi)
        if covered > size:
            raise DecompositionInconsistencyError(
                f"intervals cover {covered} points of a subcube of size {size}; they overlap",
                _find_overlap(lattices))
        return size - covered

    if deficit(low, high) == 0:
        return None
    while low != high:
        i = (high - low).min()
        child = (low, high.discard(i))
        if deficit(*child) == 0:
            child = (low.add(i), high)
        low, high = child
    return low


def _find_overlap(lattices: Sequence[IntervalLattice]):
    for a in range(len(lattices)):
        for b in range(a + 1, len(lattices)):
            if lattices[a].intersects(lattices[b]):
                return lattices[a], lattices[b]
    return None


def all_uncovered_up_to_size(lattices: Sequence[IntervalLattice], ground: SetLike, s: int) -> list[VarSet]:
    """Every subset of ``ground`` of size at most ``s`` covered by no interval."""
    if s < 0:
        raise InvalidArgumentError("s must be non-negative")
    ground = as_varset(ground)
    return [U for U in ground.subsets(s) if not any(U in lat for lat in lattices)]


@dataclass
class Decomposition:
    """Neighbourhood lattices of node ``node`` in discovery order.

    ``seeds[k]`` is the set the k-th lattice was computed from; ``queries``
    is the number of oracle calls the computation used.
    """

    node: int
    d: int
    lattices: list[IntervalLattice]
    complete: bool
    sparse_order: Optional[int] = None
    seeds: list[VarSet] = field(default_factory=list)
    queries: int = 0

    @property
    def k(self) -> int:
        return len(self.lattices)

    def covered_total(self) -> int:
        return sum(lat.cardinality() for lat in self.lattices)

    def locate(self, U: SetLike) -> Optional[IntervalLattice]:
        U = as_varset(U)
        for lat in self.lattices:
            if U in lat:
                return lat
        return None

    def lattice_set(self) -> set[tuple[int, int]]:
        return {(lat.lower.mask, lat.upper.mask) for lat in self.lattices}

    def covered_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(lat.cardinality() for lat in self.lattices).items()))

    def min_size_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(len(lat.lower) for lat in self.lattices).items()))

    def check_disjoint(self) -> None:
        pair = _find_overlap(self.lattices)
        if pair is not None:
            raise DecompositionInconsistencyError(f"lattices {pair[0]!r} and {pair[1]!r} overlap", pair)


def _append_checked(lattices: list[IntervalLattice], new: IntervalLattice) -> None:
    lo, hi = new.lower.mask, new.upper.mask
    for old in lattices:
        if (old.lower.mask | lo) & ~(old.upper.mask & hi) == 0:
            raise DecompositionInconsistencyError(f"lattices {old!r} and {new!r} overlap", (old, new))
    lattices.append(new)


def full_decomposition(oracle: IndependenceOracle, j: int,
                       max_size: int = DEFAULT_MAX_DECOMPOSITION_SIZE) -> Decomposition:
    """Partition of all subsets of ``V - j`` into neighbourhood lattices."""
    d = oracle.d
    if not 0 <= j < d:
        raise InvalidArgumentError(f"node {j} outside ground set of size {d}")
    if d - 1 > max_size:
        raise TooLargeError(f"d - 1 = {d - 1} exceeds the limit {max_size}")
    start = oracle.query_count
    rest = oracle.ground.without(j)
    lattices: list[IntervalLattice] = []
    seeds: list[VarSet] = []
    S: Optional[VarSet] = rest
    while S is not None:
        seeds.append(S)
        _append_checked(lattices, compute_lattice(oracle, j, S))
        S = find_uncovered_set(lattices, rest)
    return Decomposition(j, d, lattices, True, None, seeds, oracle.query_count - start)


def sparse_decomposition(oracle: IndependenceOracle, j: int, t: int,
                         report_completeness: bool = True) -> Decomposition:
    """All neighbourhood lattices of ``j`` whose minimum has at most ``t`` elements.

    Candidates are the subsets of ``V - j`` of size at most ``t``, popped in
    size-then-lexicographic order; each lattice found discards the candidates
    it covers. Any lattice containing such a candidate is reported too.
    """
    d = oracle.d
    if t < 0:
        raise InvalidArgumentError("t must be non-negative")
    if not 0 <= j < d:
        raise InvalidArgumentError(f"node {j} outside ground set of size {d}")
    start = oracle.query_count
    rest = oracle.ground.without(j)
    lattices: list[IntervalLattice] = []
    seeds: list[VarSet] = []
    for S in rest.subsets(t):
        if any(S in lat for lat in lattices):
            continue
        seeds.append(S)
        _append_checked(lattices, compute_lattice(oracle, j, S))
    complete = report_completeness and sum(lat.cardinality() for lat in lattices) == 1 << (d - 1)
    return Decomposition(j, d, lattices, complete, t, seeds, oracle.query_count - start)


@dataclass
class ComplexityReport:
    queries: int
    k: int
    d: int
    lattice_bounds: list[int]
    overall_bound: int

    def as_dict(self) -> dict:
        return {
            "queries": self.queries,
            "k": self.k,
            "d": self.d,
            "latticeBounds": self.lattice_bounds,
            "overallBound": self.overall_bound,
        }


def lattice_query_bound(d: int, s: int) -> int:
    """``|V| |S|^2`` query budget for one lattice computation."""
    return d * s * s


def query_complexity_report(decomposition: Decomposition) -> ComplexityReport:
    """Queries used by a decomposition run, with the ``|V||S|^2`` and ``d^3 k^2`` reference values."""
    d, k = decomposition.d, decomposition.k
    bounds = [lattice_query_bound(d, len(S)) for S in decomposition.seeds]
    return ComplexityReport(decomposition.queries, k, d, bounds, d ** 3 * k ** 2)
