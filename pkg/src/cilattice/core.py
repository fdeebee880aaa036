"""Ground sets, variable subsets, interval lattices and the oracle interface.

Nodes are 0-indexed everywhere inside the library. Labels (``"1"`` .. ``"d"``
by default) are only used at the I/O boundary.
"""
from __future__ import annotations

import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union

from .exceptions import InvalidArgumentError


class VarSet:
    """Immutable set of node indices backed by an integer bitmask.

    Python integers are arbitrary precision, so the same representation
    serves ground sets of any size.
    """

    __slots__ = ("_mask",)

    def __init__(self, members: Iterable[int] = ()):
        mask = 0
        for i in members:
            i = int(i)
            if i < 0:
                raise InvalidArgumentError(f"negative node index {i}")
            mask |= 1 << i
        self._mask = mask

    @classmethod
    def from_mask(cls, mask: int) -> "VarSet":
        if mask < 0:
            raise InvalidArgumentError("mask must be non-negative")
        obj = cls.__new__(cls)
        obj._mask = mask
        return obj

    @classmethod
    def full(cls, d: int) -> "VarSet":
        return cls.from_mask((1 << d) - 1)

    @property
    def mask(self) -> int:
        return self._mask

    def __iter__(self) -> Iterator[int]:
        mask = self._mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self) -> int:
        return self._mask.bit_count()

    def __bool__(self) -> bool:
        return self._mask != 0

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and i >= 0 and bool(self._mask >> i & 1)

    def __or__(self, other: "VarSet") -> "VarSet":
        return VarSet.from_mask(self._mask | other._mask)

    def __and__(self, other: "VarSet") -> "VarSet":
        return VarSet.from_mask(self._mask & other._mask)

    def __sub__(self, other: "VarSet") -> "VarSet":
        return VarSet.from_mask(self._mask & ~other._mask)

    def __xor__(self, other: "VarSet") -> "VarSet":
        return VarSet.from_mask(self._mask ^ other._mask)

    def __le__(self, other: "VarSet") -> bool:
        return self._mask & ~other._mask == 0

    def __ge__(self, other: "VarSet") -> bool:
        return other <= self

    def __lt__(self, other: "VarSet") -> bool:
        return self <= other and self._mask != other._mask

    def __gt__(self, other: "VarSet") -> bool:
        return other < self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VarSet):
            return self._mask == other._mask
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._mask)

    def __repr__(self) -> str:
        return f"VarSet({sorted(self)})"

    def isdisjoint(self, other: "VarSet") -> bool:
        return self._mask & other._mask == 0

    def add(self, i: int) -> "VarSet":
        return VarSet.from_mask(self._mask | (1 << i))

    def discard(self, i: int) -> "VarSet":
        return VarSet.from_mask(self._mask & ~(1 << i))

    def min(self) -> int:
        if not self._mask:
            raise ValueError("min() of empty VarSet")
        return (self._mask & -self._mask).bit_length() - 1

    def max(self) -> int:
        if not self._mask:
            raise ValueError("max() of empty VarSet")
        return self._mask.bit_length() - 1

    def sort_key(self) -> tuple:
        """Size-then-lexicographic ordering key."""
        return (len(self), tuple(self))

    def subsets(self, max_size: int | None = None) -> Iterator["VarSet"]:
        """Yield subsets in size-then-lexicographic order."""
        items = list(self)
        top = len(items) if max_size is None else min(max_size, len(items))
        for r in range(top + 1):
            for combo in combinations(items, r):
                yield VarSet(combo)


SetLike = Union[VarSet, Iterable[int]]


def as_varset(x: SetLike) -> VarSet:
    if isinstance(x, VarSet):
        return x
    if isinstance(x, (int, str)):
        raise InvalidArgumentError(f"expected a set of node indices, got {x!r}")
    return VarSet(x)


EMPTY = VarSet()


@dataclass(frozen=True)
class GroundSet:
    """The finite ground set ``V`` of ``d`` nodes, with optional labels."""

    size: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.size < 1:
            raise InvalidArgumentError("ground set must have at least one element")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(self.size)))
        else:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if len(self.labels) != self.size:
            raise InvalidArgumentError("need exactly one label per node")
        if len(set(self.labels)) != self.size:
            raise InvalidArgumentError("labels must be distinct")

    def full(self) -> VarSet:
        return VarSet.full(self.size)

    def without(self, j: int) -> VarSet:
        return self.full().discard(j)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise InvalidArgumentError(f"unknown label {label!r}") from None

    def varset(self, labels: Iterable[str]) -> VarSet:
        return VarSet(self.index(x) for x in labels)

    def label_list(self, s: VarSet) -> list[str]:
        return [self.labels[i] for i in s]

    def check(self, s: VarSet) -> None:
        if s.mask >> self.size:
            raise InvalidArgumentError(f"{s!r} is not a subset of a ground set of size {self.size}")


@dataclass(frozen=True)
class IntervalLattice:
    """The interval ``[lower, upper]`` of the subset lattice."""

    lower: VarSet
    upper: VarSet

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise InvalidArgumentError(f"lower {self.lower!r} is not contained in upper {self.upper!r}")

    @property
    def width(self) -> int:
        return len(self.upper) - len(self.lower)

    def cardinality(self) -> int:
        return 1 << self.width

    def __contains__(self, u: object) -> bool:
        return isinstance(u, VarSet) and self.lower <= u <= self.upper

    def intersects(self, other: "IntervalLattice") -> bool:
        return (self.lower | other.lower) <= (self.upper & other.upper)

    def members(self) -> Iterator[VarSet]:
        for extra in (self.upper - self.lower).subsets():
            yield self.lower | extra

    def __repr__(self) -> str:
        return f"[{sorted(self.lower)}, {sorted(self.upper)}]"


@dataclass(frozen=True)
class CITriple:
    """A statement ``A _||_ B | C`` over pairwise disjoint sets, A and B nonempty."""

    A: VarSet
    B: VarSet
    C: VarSet = EMPTY

    def __post_init__(self):
        for name in ("A", "B", "C"):
            object.__setattr__(self, name, as_varset(getattr(self, name)))
        if not self.A or not self.B:
            raise InvalidArgumentError("A and B must be nonempty")
        check_disjoint(self.A, self.B, self.C)


def check_disjoint(*sets: VarSet) -> None:
    seen = 0
    for s in sets:
        if seen & s.mask:
            raise InvalidArgumentError(f"sets overlap: {', '.join(repr(x) for x in sets)}")
        seen |= s.mask


class IndependenceOracle(ABC):
    """Answers ``A _||_ B | C`` for disjoint subsets of a ground set.

    Subclasses implement :meth:`_query` for nonempty ``A`` and ``B``; validation,
    triviality and query counting live here.
    """

    def __init__(self, ground: GroundSet):
        self._ground = ground
        self._count = 0
        self._lock = threading.Lock()

    @property
    def ground(self) -> GroundSet:
        return self._ground

    @property
    def d(self) -> int:
        return self._ground.size

    @property
    def query_count(self) -> int:
        return self._count

    def reset_count(self) -> None:
        with self._lock:
            self._count = 0

    def query(self, A: SetLike, B: SetLike, C: SetLike = EMPTY) -> bool:
        A, B, C = as_varset(A), as_varset(B), as_varset(C)
        for s in (A, B, C):
            self._ground.check(s)
        check_disjoint(A, B, C)
        with self._lock:
            self._count += 1
        if not A or not B:
            return True
        return bool(self._query(A, B, C))

    @abstractmethod
    def _query(self, A: VarSet, B: VarSet, C: VarSet) -> bool:
        ...


def elementary_query(oracle: IndependenceOracle, j: int, i: int, C: SetLike = EMPTY) -> bool:
    """Query the elementary statement ``j _||_ i | C``."""
    C = as_varset(C)
    if j == i or j in C or i in C:
        raise InvalidArgumentError(f"j={j}, i={i} and C={C!r} must be disjoint")
    return oracle.query(VarSet((j,)), VarSet((i,)), C)


class CachingOracle(IndependenceOracle):
    """Memoizing wrapper.

    ``query_count`` counts every call made on the wrapper; ``effective_count``
    counts the calls forwarded to the wrapped oracle. Keys are symmetric in
    ``A`` and ``B``.
    """

    def __init__(self, inner: IndependenceOracle):
        super().__init__(inner.ground)
        self.inner = inner
        self._cache: dict[tuple[int, int, int], bool] = {}
        self._misses = 0

    @property
    def effective_count(self) -> int:
        return self._misses

    def _query(self, A: VarSet, B: VarSet, C: VarSet) -> bool:
        a, b = sorted((A.mask, B.mask))
        key = (a, b, C.mask)
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        result = self.inner.query(A, B, C)
        with self._lock:
            if key not in self._cache:
                self._misses += 1
                self._cache[key] = result
        return result


def caching_wrapper(oracle: IndependenceOracle) -> CachingOracle:
    return CachingOracle(oracle)


def vs(*members: int) -> VarSet:
    """Shorthand constructor: ``vs(0, 2) == VarSet({0, 2})``."""
    return VarSet(members)


def from_labels(ground: GroundSet, labels: Sequence[str]) -> VarSet:
    return ground.varset(labels)
