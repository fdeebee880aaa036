"""Definitional brute-force boundaries, lattices and decompositions, and a
graphoid axiom checker. These are reference implementations for small
ground sets, independent of the grow-shrink machinery."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Optional

import numpy as np

from .core import EMPTY, CachingOracle, GroundSet, IndependenceOracle, IntervalLattice, SetLike, VarSet, as_varset
from .exceptions import InvalidArgumentError, NonGraphoidError, TooLargeError
from .lattice import Decomposition

MAX_BRUTE_BOUNDARY = 20
MAX_BRUTE_LATTICE = 16
AXIOMS = ("G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8")
COUNTEREXAMPLE_CAP = 10


def brute_boundary(oracle: IndependenceOracle, j: int, S: SetLike) -> VarSet:
    """Intersection of all ``U`` in ``S`` with ``j _||_ S - U | U``.

    Also checks that those ``U`` form exactly the interval ``[result, S]``.
    """
    S = as_varset(S)
    if j in S:
        raise InvalidArgumentError("j must not be in S")
    if len(S) > MAX_BRUTE_BOUNDARY:
        raise TooLargeError(f"|S| = {len(S)} exceeds {MAX_BRUTE_BOUNDARY}")
    J = VarSet((j,))
    blankets = [U for U in S.subsets() if U == S or oracle.query(J, S - U, U)]
    result = S
    for U in blankets:
        result = result & U
    if len(blankets) != 1 << (len(S) - len(result)):
        raise NonGraphoidError(f"relative blankets of node {j} in {S!r} do not form an interval")
    return result


def boundary_table(oracle: IndependenceOracle, j: int) -> dict[VarSet, VarSet]:
    """Brute-force boundary of ``j`` in every subset of ``V - j``."""
    if oracle.d > MAX_BRUTE_LATTICE:
        raise TooLargeError(f"d = {oracle.d} exceeds {MAX_BRUTE_LATTICE}")
    return {U: brute_boundary(oracle, j, U) for U in oracle.ground.without(j).subsets()}


def _as_interval(members: list[VarSet], j: int, m: VarSet) -> IntervalLattice:
    top = EMPTY
    for U in members:
        top = top | U
    lat = IntervalLattice(m, top) if m <= top else None
    if lat is None or len(members) != lat.cardinality() or not all(U in lat for U in members):
        raise NonGraphoidError(f"sets with boundary {m!r} for node {j} are not an interval")
    return lat


def brute_lattice(oracle: IndependenceOracle, j: int, S: SetLike,
                  table: Optional[dict[VarSet, VarSet]] = None) -> tuple[IntervalLattice, list[VarSet]]:
    """All ``U`` in ``V - j`` sharing the boundary of ``S``, returned as an interval and a member list."""
    S = as_varset(S)
    table = table if table is not None else boundary_table(oracle, j)
    m = table[S]
    members = [U for U, b in table.items() if b == m]
    return _as_interval(members, j, m), members


def brute_decomposition(oracle: IndependenceOracle, j: int,
                        table: Optional[dict[VarSet, VarSet]] = None) -> Decomposition:
    """Partition of ``2^(V - j)`` by boundary value, classes ordered by first appearance."""
    table = table if table is not None else boundary_table(oracle, j)
    classes: dict[VarSet, list[VarSet]] = {}
    for U, b in table.items():
        classes.setdefault(b, []).append(U)
    lattices = [_as_interval(members, j, m) for m, members in classes.items()]
    return Decomposition(j, oracle.d, lattices, True, seeds=[members[0] for members in classes.values()])


@dataclass
class AxiomReport:
    status: dict[str, str] = field(default_factory=dict)
    counterexamples: dict[str, list] = field(default_factory=dict)
    instances: dict[str, int] = field(default_factory=dict)
    nonvacuous: dict[str, int] = field(default_factory=dict)
    exhaustive: bool = True

    def holds(self, *axioms: str) -> bool:
        axioms = axioms or tuple(a for a in AXIOMS if self.status.get(a) != "skipped")
        return all(self.status.get(a) == "holds" for a in axioms)

    def as_dict(self, ground: Optional[GroundSet] = None) -> dict:
        def fmt(s):
            return ground.label_list(s) if ground is not None else list(s)

        return {
            "exhaustive": self.exhaustive,
            "axioms": {
                a: {
                    "status": self.status[a],
                    "instancesChecked": self.instances.get(a, 0),
                    "nonvacuous": self.nonvacuous.get(a, 0),
                    "counterexamples": [[fmt(s) for s in ce] for ce in self.counterexamples.get(a, [])],
                }
                for a in AXIOMS
            },
        }


# Each rule maps sets to (antecedents, consequent-alternatives); a statement is
# a triple (A, B, C), and a rule is satisfied when all antecedents fail to hold
# or at least one alternative holds.
def _rules(A: VarSet, B: VarSet, C: VarSet, D: VarSet):
    BD, CD, BC = B | D, C | D, B | C
    yield "G3", [(A, BD, C)], [(A, B, C)]
    yield "G3", [(A, BD, C)], [(A, D, C)]
    yield "G4", [(A, BD, C)], [(A, B, CD)]
    yield "G5", [(A, B, C), (A, D, BC)], [(A, BD, C)]
    yield "G6", [(A, B, CD), (A, C, BD)], [(A, BC, D)]
    yield "G7", [(A, B, C), (A, D, C)], [(A, BD, C)]


def _assignments(d: int, colours: int, exhaustive: bool, budget: int, rng) -> Iterator[tuple[int, ...]]:
    if exhaustive:
        yield from product(range(colours), repeat=d)
    else:
        for _ in range(budget):
            yield tuple(int(x) for x in rng.integers(0, colours, size=d))


def _split(assign: tuple[int, ...], colours: int) -> list[VarSet]:
    masks = [0] * colours
    for node, c in enumerate(assign):
        masks[c] |= 1 << node
    return [VarSet.from_mask(m) for m in masks[1:]]


def check_axioms(oracle: IndependenceOracle, up_to: int | str = 7, exhaustive: Optional[bool] = None,
                 budget: int = 20000, seed: int = 0) -> AxiomReport:
    """Instantiate the graphoid axioms G1 .. ``up_to`` and query the oracle.

    Exhaustive over all disjoint tuples (empty sets allowed, ``A`` nonempty)
    when ``d <= 5`` unless overridden; otherwise ``budget`` random
    instantiations per axiom family. G8 is checked on elementary statements.
    """
    top = int(str(up_to).lstrip("Gg"))
    if not 1 <= top <= 8:
        raise InvalidArgumentError("up_to must name one of G1..G8")
    d = oracle.d
    exhaustive = d <= 5 if exhaustive is None else exhaustive
    rng = np.random.default_rng(seed)
    q = CachingOracle(oracle)
    active = AXIOMS[:top]
    report = AxiomReport(exhaustive=exhaustive)
    for a in AXIOMS:
        report.status[a] = "holds" if a in active else "skipped"
        report.counterexamples[a] = []
        report.instances[a] = 0
        report.nonvacuous[a] = 0

    def record(axiom: str, ok: bool, witness: tuple, relevant: bool = True):
        report.instances[axiom] += 1
        if relevant:
            report.nonvacuous[axiom] += 1
        if not ok:
            report.status[axiom] = "fails"
            if len(report.counterexamples[axiom]) < COUNTEREXAMPLE_CAP:
                report.counterexamples[axiom].append(witness)

    def holds(t):
        return q.query(*t)

    if "G1" in active:
        for assign in _assignments(d, 3, exhaustive, budget, rng):
            A, C = _split(assign, 3)
            record("G1", holds((A, EMPTY, C)), (A, EMPTY, C))
    if "G2" in active:
        for assign in _assignments(d, 4, exhaustive, budget, rng):
            A, B, C = _split(assign, 4)
            if not A:
                continue
            ab = holds((A, B, C))
            record("G2", ab == holds((B, A, C)), (A, B, C), ab)
    if any(a in active for a in ("G3", "G4", "G5", "G6", "G7")):
        for assign in _assignments(d, 5, exhaustive, budget, rng):
            A, B, C, D = _split(assign, 5)
            if not A:
                continue
            for axiom, pre, post in _rules(A, B, C, D):
                if axiom not in active:
                    continue
                premise = all(holds(t) for t in pre)
                ok = not premise or any(holds(t) for t in post)
                record(axiom, ok, (A, B, C, D), premise)
    if "G8" in active:
        nodes = range(d)
        instances = ((i, j, k, C) for i in nodes for j in nodes for k in nodes if len({i, j, k}) == 3
                     for C in oracle.ground.full().discard(i).discard(j).discard(k).subsets())
        if not exhaustive:
            instances = _sample_g8(d, budget, rng)
        for i, j, k, C in instances:
            I, J, K = VarSet((i,)), VarSet((j,)), VarSet((k,))
            premise = holds((I, J, C)) and holds((I, J, C | K))
            ok = not premise or holds((I, K, C)) or holds((J, K, C))
            record("G8", ok, (I, J, K, C), premise)
    return report


def _sample_g8(d: int, budget: int, rng) -> Iterator[tuple]:
    if d < 3:
        return
    for _ in range(budget):
        i, j, k = (int(x) for x in rng.choice(d, size=3, replace=False))
        rest = [x for x in range(d) if x not in (i, j, k)]
        C = VarSet(x for x in rest if rng.random() < 0.5)
        yield i, j, k, C


def predicate_oracle(ground: GroundSet, fn: Callable[[VarSet, VarSet, VarSet], bool]) -> IndependenceOracle:
    """Wrap a plain predicate as an oracle; handy for degenerate test models."""

    class _Predicate(IndependenceOracle):
        def _query(self, A, B, C):
            return fn(A, B, C)

    return _Predicate(ground)
