from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from ._exceptions import CarrierMismatchError

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

    from wmm.helpers._types import BoolArray

__all__ = ["Carrier", "EventSet", "Relation", "restrict"]


class Carrier:
    """The universe of dense event ids `0..size-1` that relations live on.

    Carriers compare by identity: two relations can only be combined when they
    were built over the very same carrier object, i.e. the same execution graph.
    """

    __slots__ = ("size",)

    def __init__(self: Carrier, size: int) -> None:
        if size < 0:
            msg = "Carrier: size must be non-negative"
            raise ValueError(msg)
        self.size = size

    def __len__(self: Carrier) -> int:
        return self.size

    def __repr__(self: Carrier) -> str:
        return f"Carrier(size={self.size}, id={id(self):#x})"

    def check(self: Carrier, ids: Iterable[int]) -> None:
        """Raise ValueError if any id lies outside the carrier."""
        for i in ids:
            if not 0 <= i < self.size:
                msg = f"Carrier: id {i} outside carrier of size {self.size}"
                raise ValueError(msg)


def _frozen(array: BoolArray) -> BoolArray:
    array.flags.writeable = False
    return array


def _same_carrier(a: Carrier, b: Carrier, op: str) -> None:
    if a is not b:
        msg = f"{op}: operands live on different carriers ({a!r} and {b!r})"
        raise CarrierMismatchError(msg)


class EventSet:
    """An immutable subset of a carrier, stored as a boolean mask."""

    __slots__ = ("_mask", "carrier")

    def __init__(self: EventSet, carrier: Carrier, mask: BoolArray) -> None:
        if mask.shape != (carrier.size,):
            msg = f"EventSet: mask of shape {mask.shape} does not fit carrier of size {carrier.size}"
            raise ValueError(msg)
        self.carrier = carrier
        self._mask = _frozen(mask.astype(np.bool_, copy=True))

    @classmethod
    def from_ids(cls: type[EventSet], carrier: Carrier, ids: Iterable[int]) -> EventSet:
        ids = list(ids)
        carrier.check(ids)
        mask = np.zeros(carrier.size, dtype=np.bool_)
        mask[ids] = True
        return cls(carrier, mask)

    @classmethod
    def universe(cls: type[EventSet], carrier: Carrier) -> EventSet:
        return cls(carrier, np.ones(carrier.size, dtype=np.bool_))

    @classmethod
    def nothing(cls: type[EventSet], carrier: Carrier) -> EventSet:
        return cls(carrier, np.zeros(carrier.size, dtype=np.bool_))

    @property
    def mask(self: EventSet) -> BoolArray:
        return self._mask

    def ids(self: EventSet) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self._mask))

    def identity(self: EventSet) -> Relation:
        """The relation [S] = {(e, e) | e in S}."""
        return Relation(self.carrier, np.diag(self._mask))

    def complement(self: EventSet) -> EventSet:
        return EventSet(self.carrier, ~self._mask)

    def __or__(self: EventSet, other: EventSet) -> EventSet:
        _same_carrier(self.carrier, other.carrier, "EventSet union")
        return EventSet(self.carrier, self._mask | other._mask)

    def __and__(self: EventSet, other: EventSet) -> EventSet:
        _same_carrier(self.carrier, other.carrier, "EventSet intersection")
        return EventSet(self.carrier, self._mask & other._mask)

    def __contains__(self: EventSet, event_id: object) -> bool:
        return isinstance(event_id, (int, np.integer)) and 0 <= event_id < self.carrier.size and bool(self._mask[event_id])

    def __iter__(self: EventSet) -> Iterator[int]:
        return iter(self.ids())

    def __len__(self: EventSet) -> int:
        return int(self._mask.sum())

    def __eq__(self: EventSet, other: object) -> bool:
        if not isinstance(other, EventSet):
            return NotImplemented
        return self.carrier is other.carrier and bool(np.array_equal(self._mask, other._mask))

    def __hash__(self: EventSet) -> int:
        return hash((id(self.carrier), self._mask.tobytes()))

    def __repr__(self: EventSet) -> str:
        return f"EventSet({set(self.ids())})"


class Relation:
    """A finite binary relation over a carrier, stored as a boolean adjacency matrix.

    Relations are immutable; every operation returns a new relation. The operators
    `|`, `&`, `-` and `@` are union, intersection, difference and composition.
    """

    __slots__ = ("_matrix", "carrier")

    def __init__(self: Relation, carrier: Carrier, matrix: BoolArray) -> None:
        n = carrier.size
        if matrix.shape != (n, n):
            msg = f"Relation: matrix of shape {matrix.shape} does not fit carrier of size {n}"
            raise ValueError(msg)
        self.carrier = carrier
        self._matrix = _frozen(matrix.astype(np.bool_, copy=True))

    @classmethod
    def empty(cls: type[Relation], carrier: Carrier) -> Relation:
        return cls(carrier, np.zeros((carrier.size, carrier.size), dtype=np.bool_))

    @classmethod
    def identity(cls: type[Relation], carrier: Carrier) -> Relation:
        return cls(carrier, np.eye(carrier.size, dtype=np.bool_))

    @classmethod
    def full(cls: type[Relation], carrier: Carrier) -> Relation:
        return cls(carrier, np.ones((carrier.size, carrier.size), dtype=np.bool_))

    @classmethod
    def from_pairs(
        cls: type[Relation], carrier: Carrier, pairs: Iterable[tuple[int, int]]
    ) -> Relation:
        """Build a relation from explicit (source, target) pairs.

        Args:
            carrier: The universe the pairs live in.
            pairs: Event id pairs.

        Raises:
            ValueError: If a pair mentions an id outside the carrier.

        Returns:
            Relation: The relation holding exactly those pairs.
        """
        matrix = np.zeros((carrier.size, carrier.size), dtype=np.bool_)
        for a, b in pairs:
            carrier.check((a, b))
            matrix[a, b] = True
        return cls(carrier, matrix)

    @property
    def matrix(self: Relation) -> BoolArray:
        return self._matrix

    def pairs(self: Relation) -> tuple[tuple[int, int], ...]:
        """All pairs, sorted lexicographically."""
        return tuple((int(a), int(b)) for a, b in np.argwhere(self._matrix))

    def domain(self: Relation) -> EventSet:
        return EventSet(self.carrier, self._matrix.any(axis=1))

    def codomain(self: Relation) -> EventSet:
        return EventSet(self.carrier, self._matrix.any(axis=0))

    def _check(self: Relation, other: Relation, op: str) -> None:
        _same_carrier(self.carrier, other.carrier, op)

    def compose(self: Relation, other: Relation) -> Relation:
        """(a, c) such that (a, b) in self and (b, c) in other for some b."""
        self._check(other, "compose")
        product = self._matrix.astype(np.int64) @ other._matrix.astype(np.int64)
        return Relation(self.carrier, product > 0)

    def union(self: Relation, other: Relation) -> Relation:
        self._check(other, "union")
        return Relation(self.carrier, self._matrix | other._matrix)

    def intersect(self: Relation, other: Relation) -> Relation:
        self._check(other, "intersect")
        return Relation(self.carrier, self._matrix & other._matrix)

    def difference(self: Relation, other: Relation) -> Relation:
        self._check(other, "difference")
        return Relation(self.carrier, self._matrix & ~other._matrix)

    def inverse(self: Relation) -> Relation:
        return Relation(self.carrier, self._matrix.T)

    def transitive_closure(self: Relation) -> Relation:
        """Least transitive superset, computed with Warshall's algorithm."""
        closure = self._matrix.copy()
        for k in range(self.carrier.size):
            closure |= np.outer(closure[:, k], closure[k, :])
        return Relation(self.carrier, closure)

    def reflexive_transitive_closure(self: Relation) -> Relation:
        return self.transitive_closure().union(Relation.identity(self.carrier))

    def __or__(self: Relation, other: Relation) -> Relation:
        return self.union(other)

    def __and__(self: Relation, other: Relation) -> Relation:
        return self.intersect(other)

    def __sub__(self: Relation, other: Relation) -> Relation:
        return self.difference(other)

    def __matmul__(self: Relation, other: Relation) -> Relation:
        return self.compose(other)

    def __contains__(self: Relation, pair: object) -> bool:
        if not isinstance(pair, tuple) or len(pair) != 2:  # noqa: PLR2004
            return False
        a, b = pair
        n = self.carrier.size
        return 0 <= a < n and 0 <= b < n and bool(self._matrix[a, b])

    def __iter__(self: Relation) -> Iterator[tuple[int, int]]:
        return iter(self.pairs())

    def __len__(self: Relation) -> int:
        return int(self._matrix.sum())

    def __eq__(self: Relation, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.carrier is other.carrier and bool(
            np.array_equal(self._matrix, other._matrix)
        )

    def __hash__(self: Relation) -> int:
        return hash((id(self.carrier), self._matrix.tobytes()))

    def __repr__(self: Relation) -> str:
        return f"Relation({set(self.pairs())})"


def restrict(s1: EventSet, r: Relation, s2: EventSet) -> Relation:
    """The pairs of `r` whose source lies in `s1` and whose target lies in `s2`, i.e. [s1];r;[s2].

    Args:
        s1: Allowed sources.
        r: The relation to restrict.
        s2: Allowed targets.

    Raises:
        CarrierMismatchError: If the sets and the relation live on different carriers.

    Returns:
        Relation: The restricted relation.
    """
    _same_carrier(s1.carrier, r.carrier, "restrict")
    _same_carrier(s2.carrier, r.carrier, "restrict")
    return Relation(r.carrier, r.matrix & np.outer(s1.mask, s2.mask))
