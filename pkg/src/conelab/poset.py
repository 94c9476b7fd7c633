"""Finite posets viewed as finite T0 spaces.

A finite T0 space is the same thing as its specialization poset carrying the
Alexandrov topology, whose open sets are exactly the upward-closed subsets.
Every finite poset is a continuous dcpo in which every directed set contains
its own supremum, so the Scott and Alexandrov topologies agree, the way-below
relation is the order itself, and every subset is compact.  Finite T0 spaces
are also sober; that is a standing fact here and is never computed.

Elements are the integers ``0 .. size-1``; ``names`` holds their labels.
Sets of elements are plain ``frozenset[int]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .errors import (
    ConelabError,
    CycleError,
    NoJoinError,
    NotMonotoneError,
    NotT0Error,
    SizeError,
    UnknownNameError,
)

UpSet = frozenset
ElementSet = frozenset

DEFAULT_MAX_UPSETS = 2**20


@dataclass(frozen=True)
class FinitePoset:
    """An immutable finite partial order.

    ``up[x]`` is the principal upset of ``x``, i.e. the set of all ``y``
    with ``x <= y``.  Construct instances with :meth:`from_covers` or
    :meth:`from_leq`; the raw constructor trusts its input after checking
    the partial-order axioms.
    """

    names: tuple[str, ...]
    up: tuple[frozenset[int], ...]

    def __post_init__(self):
        n = len(self.names)
        if len(self.up) != n:
            raise ConelabError("names and order table differ in length")
        if len(set(self.names)) != n:
            raise ConelabError("element names must be distinct")
        for x, ux in enumerate(self.up):
            if x not in ux:
                raise ConelabError(f"order is not reflexive at {self.names[x]!r}")
            for y in ux:
                if not self.up[y] <= ux:
                    raise ConelabError("order is not transitive")
                if y != x and x in self.up[y]:
                    raise CycleError(
                        f"{self.names[x]!r} and {self.names[y]!r} are mutually below each other"
                    )

    # -- construction ----------------------------------------------------

    @classmethod
    def from_covers(
        cls, names: Sequence[Hashable], covers: Iterable[tuple[Hashable, Hashable]]
    ) -> FinitePoset:
        """Build the reflexive-transitive closure of a cover list.

        Raises :class:`CycleError` when the closure is not antisymmetric.
        """
        labels = tuple(str(name) for name in names)
        if len(set(labels)) != len(labels):
            raise ConelabError("element names must be distinct")
        index = {name: i for i, name in enumerate(labels)}
        succ: list[set[int]] = [set() for _ in labels]
        for pair in covers:
            lo, hi = pair
            try:
                succ[index[str(lo)]].add(index[str(hi)])
            except KeyError as exc:
                raise UnknownNameError(f"cover {pair!r} references unknown element {exc.args[0]!r}") from None
        up = []
        for x in range(len(labels)):
            seen = {x}
            stack = [x]
            while stack:
                for y in succ[stack.pop()]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            up.append(frozenset(seen))
        for x in range(len(labels)):
            for y in up[x]:
                if y != x and x in up[y]:
                    raise CycleError(
                        f"covers form a cycle through {labels[x]!r} and {labels[y]!r}"
                    )
        return cls(labels, tuple(up))

    @classmethod
    def from_leq(cls, names: Sequence[Hashable], leq) -> FinitePoset:
        """Build from a predicate ``leq(i, j)`` on indices."""
        n = len(names)
        up = tuple(frozenset(j for j in range(n) if leq(i, j)) for i in range(n))
        return cls(tuple(str(name) for name in names), up)

    # -- basic queries ---------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    @cached_property
    def everything(self) -> frozenset[int]:
        return frozenset(self.elements)

    @cached_property
    def down(self) -> tuple[frozenset[int], ...]:
        return tuple(
            frozenset(y for y in self.elements if x in self.up[y]) for x in self.elements
        )

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, name: Hashable) -> int:
        try:
            return self._index[str(name)]
        except KeyError:
            raise UnknownNameError(f"unknown element {name!r}") from None

    def leq(self, x: int, y: int) -> bool:
        return y in self.up[x]

    def way_below(self, x: int, y: int) -> bool:
        """``x << y``.  On a finite poset this is just ``x <= y``."""
        return self.leq(x, y)

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(x, y)`` with ``x < y`` and nothing between."""
        edges = []
        for x in self.elements:
            strictly_above = self.up[x] - {x}
            for y in sorted(strictly_above):
                if not any(z != y and y in self.up[z] for z in strictly_above):
                    edges.append((x, y))
        return edges

    # -- closures --------------------------------------------------------

    def up_closure(self, subset: Iterable[int]) -> frozenset[int]:
        result: set[int] = set()
        for x in subset:
            result |= self.up[x]
        return frozenset(result)

    def down_closure(self, subset: Iterable[int]) -> frozenset[int]:
        result: set[int] = set()
        for x in subset:
            result |= self.down[x]
        return frozenset(result)

    def is_upset(self, subset: Iterable[int]) -> bool:
        subset = frozenset(subset)
        return all(self.up[x] <= subset for x in subset)

    def minimal_elements(self, subset: Iterable[int]) -> frozenset[int]:
        subset = frozenset(subset)
        return frozenset(
            x for x in subset if not any(y != x and y in subset for y in self.down[x])
        )

    def maximal_elements(self, subset: Iterable[int]) -> frozenset[int]:
        subset = frozenset(subset)
        return frozenset(
            x for x in subset if not any(y != x and y in subset for y in self.up[x])
        )

    # -- open sets -------------------------------------------------------

    def enumerate_upsets(self, max_count: int = DEFAULT_MAX_UPSETS) -> list[frozenset[int]]:
        """All upward-closed subsets in canonical order.

        Canonical order is by cardinality, then lexicographically on the
        sorted member indices.  Raises :class:`SizeError` as soon as more
        than ``max_count`` sets have been produced.
        """
        cache = self.__dict__.setdefault("_upset_cache", {})
        if max_count in cache:
            return list(cache[max_count])
        # Deciding elements from the top down, x may join only once all of
        # its strict upper bounds are in, so every branch yields an upset.
        order = sorted(self.elements, key=lambda x: -len(self.down[x]))
        found: list[frozenset[int]] = []

        def grow(i: int, chosen: frozenset[int]) -> None:
            if i == len(order):
                found.append(chosen)
                if len(found) > max_count:
                    raise SizeError(f"more than {max_count} upsets")
                return
            x = order[i]
            grow(i + 1, chosen)
            if self.up[x] - {x} <= chosen:
                grow(i + 1, chosen | {x})

        grow(0, frozenset())
        found.sort(key=canonical_key)
        cache[max_count] = tuple(found)
        return found

    @property
    def opens(self) -> list[frozenset[int]]:
        return self.enumerate_upsets()

    # -- lattice structure -----------------------------------------------

    def _least(self, candidates: frozenset[int]) -> int | None:
        for c in candidates:
            if candidates <= self.up[c]:
                return c
        return None

    def _greatest(self, candidates: frozenset[int]) -> int | None:
        for c in candidates:
            if candidates <= self.down[c]:
                return c
        return None

    @cached_property
    def _join_table(self) -> tuple[tuple[int | None, ...], ...]:
        return tuple(
            tuple(self._least(self.up[x] & self.up[y]) for y in self.elements)
            for x in self.elements
        )

    @cached_property
    def _meet_table(self) -> tuple[tuple[int | None, ...], ...]:
        return tuple(
            tuple(self._greatest(self.down[x] & self.down[y]) for y in self.elements)
            for x in self.elements
        )

    def join(self, x: int, y: int) -> int:
        result = self._join_table[x][y]
        if result is None:
            raise NoJoinError(f"{self.names[x]!r} and {self.names[y]!r} have no least upper bound")
        return result

    def meet(self, x: int, y: int) -> int:
        result = self._meet_table[x][y]
        if result is None:
            raise NoJoinError(f"{self.names[x]!r} and {self.names[y]!r} have no greatest lower bound")
        return result

    @cached_property
    def bottom(self) -> int | None:
        return self._least(self.everything)

    @cached_property
    def top(self) -> int | None:
        return self._greatest(self.everything)

    def is_lattice(self) -> bool:
        """Every pair has a join and a meet, and a least element exists."""
        if self.bottom is None:
            return False
        return all(
            v is not None for row in self._join_table for v in row
        ) and all(v is not None for row in self._meet_table for v in row)

    def join_all(self, subset: Iterable[int]) -> int:
        """Join of a finite subset; the empty join is the bottom."""
        if self.bottom is None:
            raise NoJoinError("poset has no least element")
        result = self.bottom
        for x in subset:
            result = self.join(result, x)
        return result

    # -- display -----------------------------------------------------------

    def label(self, subset: Iterable[int]) -> list[str]:
        return [self.names[x] for x in sorted(subset)]

    def __repr__(self) -> str:
        return f"FinitePoset({list(self.names)!r}, covers={self.covers()!r})"


def canonical_key(subset: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    members = tuple(sorted(subset))
    return (len(members), members)


def specialization_from_opens(
    names: Sequence[Hashable], opens: Iterable[Iterable[int]]
) -> FinitePoset:
    """The specialization order of a topology given by a subbase.

    ``x <= y`` iff every open set containing ``x`` also contains ``y``.
    This depends only on the subbase (finite unions and intersections never
    separate points the subbase does not), so no closure is computed.
    Raises :class:`NotT0Error` if two distinct points are not separated.
    """
    n = len(names)
    opens = [frozenset(u) for u in opens]
    for u in opens:
        if any(not 0 <= x < n for x in u):
            raise ConelabError("open set references an element outside the carrier")
    up = []
    for x in range(n):
        containing = [u for u in opens if x in u]
        above = frozenset(range(n))
        for u in containing:
            above &= u
        up.append(above)
    for x, y in combinations(range(n), 2):
        if y in up[x] and x in up[y]:
            raise NotT0Error(f"points {names[x]!r} and {names[y]!r} are topologically indistinguishable")
    return FinitePoset(tuple(str(name) for name in names), tuple(up))


@dataclass(frozen=True)
class MonotoneMap:
    """A monotone (equivalently, continuous) map between finite posets."""

    source: FinitePoset
    target: FinitePoset
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source.size:
            raise ConelabError("map table must assign every source element")
        if any(not 0 <= v < self.target.size for v in self.table):
            raise ConelabError("map table points outside the target")
        for x in self.source.elements:
            for y in self.source.up[x]:
                if not self.target.leq(self.table[x], self.table[y]):
                    raise NotMonotoneError(
                        f"{self.source.names[x]!r} <= {self.source.names[y]!r} but images are not ordered"
                    )

    def __call__(self, x: int) -> int:
        return self.table[x]

    def preimage(self, subset: Iterable[int]) -> frozenset[int]:
        subset = frozenset(subset)
        return frozenset(x for x in self.source.elements if self.table[x] in subset)

    def then(self, other: MonotoneMap) -> MonotoneMap:
        """``other`` after ``self``."""
        if other.source != self.target:
            raise ConelabError("maps do not compose")
        return MonotoneMap(self.source, other.target, tuple(other.table[v] for v in self.table))

    @classmethod
    def identity(cls, poset: FinitePoset) -> MonotoneMap:
        return cls(poset, poset, tuple(poset.elements))

    @classmethod
    def constant(cls, source: FinitePoset, target: FinitePoset, value: int) -> MonotoneMap:
        return cls(source, target, (value,) * source.size)
