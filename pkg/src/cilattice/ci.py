"""Answering and enumerating CI statements through Markov boundaries and lattices."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .core import EMPTY, CITriple, IndependenceOracle, IntervalLattice, SetLike, VarSet, as_varset
from .exceptions import InvalidArgumentError, NonGraphoidError
from .lattice import Decomposition, compute_lattice, compute_mb


@dataclass(frozen=True)
class Witness:
    a: int
    b: int
    boundary: VarSet


@dataclass
class CIVerdict:
    """Outcome of a CI query together with the boundaries that decided it."""

    independent: bool
    witnesses: list[Witness] = field(default_factory=list)
    queries: int = 0


def elementary_ci_check(oracle: IndependenceOracle, j: int, i: int, C: SetLike = EMPTY,
                        validate: bool = False) -> CIVerdict:
    """Decide ``j _||_ i | C`` by testing whether the boundary of ``j`` in ``C + i`` lies in ``C``.

    ``validate=True`` also computes the lattice of ``C + i`` and checks that
    the membership form gives the same answer.
    """
    C = as_varset(C)
    if i == j or i in C or j in C:
        raise InvalidArgumentError(f"j={j}, i={i} and C={C!r} must be disjoint")
    start = oracle.query_count
    Ci = C.add(i)
    m = compute_mb(oracle, j, Ci)
    independent = m <= C
    if validate:
        lat = compute_lattice(oracle, j, Ci)
        by_membership = i in (lat.upper - lat.lower) and C in IntervalLattice(lat.lower, lat.upper.discard(i))
        by_interval = C in lat
        if not (independent == by_membership == by_interval):
            raise NonGraphoidError(f"equivalent CI criteria disagree for j={j}, i={i}, C={C!r}")
    return CIVerdict(independent, [Witness(j, i, m)], oracle.query_count - start)


def general_ci_query(oracle: IndependenceOracle, A: SetLike | CITriple, B: SetLike | None = None,
                     C: SetLike = EMPTY) -> CIVerdict:
    """Decide ``A _||_ B | C`` from the boundaries of each ``a`` in ``C + b``.

    Pairs are examined in ascending ``(a, b)`` order and the search stops at
    the first boundary not contained in ``C``.
    """
    triple = A if isinstance(A, CITriple) else CITriple(as_varset(A), as_varset(B), as_varset(C))
    start = oracle.query_count
    witnesses = []
    for a in triple.A:
        for b in triple.B:
            m = compute_mb(oracle, a, triple.C.add(b))
            witnesses.append(Witness(a, b, m))
            if not m <= triple.C:
                return CIVerdict(False, witnesses, oracle.query_count - start)
    return CIVerdict(True, witnesses, oracle.query_count - start)


def lattice_ci_count(lat) -> int:
    w = lat.width
    return w << (w - 1) if w else 0


def count_ci(decomposition: Decomposition) -> int:
    """Closed-form number of elementary statements ``j _||_ i | C`` encoded by the lattices."""
    return sum(lattice_ci_count(lat) for lat in decomposition.lattices)


def count_possible_ci(d: int) -> int:
    """Number of triples ``(j, i, C)`` for a fixed node ``j``: ``(d-1) 2^(d-2)``."""
    if d < 2:
        raise InvalidArgumentError("d must be at least 2")
    return (d - 1) << (d - 2)


class CIEnumeration:
    """Lazy stream of the statements ``j _||_ i | C`` read off a decomposition.

    Order: lattices in discovery order, then ascending ``i``, then ``C`` by
    size and lexicographically. ``complete`` mirrors the decomposition; for an
    incomplete one the stream and count are partial.
    """

    def __init__(self, decomposition: Decomposition):
        self.decomposition = decomposition
        self.node = decomposition.node
        self.complete = decomposition.complete
        self.count = count_ci(decomposition)

    def __iter__(self) -> Iterator[tuple[int, VarSet]]:
        for lat in self.decomposition.lattices:
            free = lat.upper - lat.lower
            for i in free:
                for extra in free.discard(i).subsets():
                    yield i, lat.lower | extra

    def __len__(self) -> int:
        return self.count


def enumerate_ci(decomposition: Decomposition) -> CIEnumeration:
    return CIEnumeration(decomposition)
