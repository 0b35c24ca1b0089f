from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import networkx as nx
import numpy as np

if TYPE_CHECKING:
    from wmm.helpers._types import BoolArray

    from .relation import EventSet, Relation

__all__ = ["AcyclicResult", "acyclic", "is_empty", "is_irreflexive"]


@dataclass(frozen=True)
class AcyclicResult:
    """Result of an acyclicity check.

    Args:
        holds: True iff the relation has no directed cycle.
        cycle: When `holds` is False, one cycle as an event-id sequence that starts
            and ends at its smallest id, e.g. (1, 2, 1).
        order: When `holds` is True, a topological order of the (non-excluded) events.
    """

    holds: bool
    cycle: tuple[int, ...] = ()
    order: tuple[int, ...] = ()

    def __bool__(self: AcyclicResult) -> bool:
        return self.holds


def _without(r: Relation, exclude: EventSet | None) -> BoolArray:
    if exclude is None:
        return r.matrix
    keep = ~exclude.mask
    return r.matrix & np.outer(keep, keep)


def _digraph(matrix: BoolArray, nodes: list[int]) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from((int(a), int(b)) for a, b in np.argwhere(matrix))
    return graph


def _rotate(cycle: list[int]) -> tuple[int, ...]:
    start = cycle.index(min(cycle))
    rotated = cycle[start:] + cycle[:start]
    return (*rotated, rotated[0])


def acyclic(r: Relation, exclude: EventSet | None = None) -> AcyclicResult:
    """Check that a relation has no directed cycle.

    Args:
        r: The relation to check.
        exclude: Events whose pairs are dropped before checking (initialisation events).

    Returns:
        AcyclicResult: Verdict plus either a cycle witness or a topological order.
    """
    matrix = _without(r, exclude)
    excluded = set() if exclude is None else set(exclude.ids())
    nodes = [i for i in range(r.carrier.size) if i not in excluded]
    graph = _digraph(matrix, nodes)
    try:
        edges = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        return AcyclicResult(
            holds=True, order=tuple(nx.lexicographical_topological_sort(graph))
        )
    return AcyclicResult(holds=False, cycle=_rotate([int(a) for a, _ in edges]))


def is_empty(r: Relation, exclude: EventSet | None = None) -> bool:
    """True iff no two (non-excluded) events are related."""
    return not bool(_without(r, exclude).any())


def is_irreflexive(r: Relation, exclude: EventSet | None = None) -> bool:
    """True iff no (non-excluded) event is related to itself."""
    return not bool(np.diag(_without(r, exclude)).any())
