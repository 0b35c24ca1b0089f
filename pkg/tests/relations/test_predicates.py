from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from wmm.relations import Carrier, EventSet, Relation, acyclic, is_empty, is_irreflexive

N_CASES = 1000


@lru_cache(maxsize=None)
def _positions(n: int) -> np.ndarray:
    """Row i holds the position of every node in the i-th permutation of range(n)."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    return np.argsort(perms, axis=1)


def _acyclic_by_permutation(r: Relation) -> bool:
    """A relation is acyclic iff some linear order of the carrier contains it."""
    edges = np.argwhere(r.matrix)
    if len(edges) == 0:
        return True
    pos = _positions(r.carrier.size)
    forward = pos[:, edges[:, 0]] < pos[:, edges[:, 1]]
    return bool(forward.all(axis=1).any())


def test_acyclic_matches_permutation_oracle(rng: np.random.Generator) -> None:
    for _ in range(N_CASES):
        n = int(rng.integers(1, 8))
        carrier = Carrier(n)
        density = float(rng.choice([0.05, 0.15, 0.3]))
        r = Relation(carrier, rng.random((n, n)) < density)
        result = acyclic(r)
        assert result.holds == _acyclic_by_permutation(r)
        if result.holds:
            position = {e: i for i, e in enumerate(result.order)}
            assert sorted(result.order) == list(range(n))
            assert all(position[a] < position[b] for a, b in r.pairs())
        else:
            cycle = result.cycle
            assert cycle[0] == cycle[-1] == min(cycle)
            assert all((a, b) in r for a, b in zip(cycle, cycle[1:]))


def test_self_loop_is_a_cycle() -> None:
    carrier = Carrier(2)
    result = acyclic(Relation.from_pairs(carrier, [(1, 1)]))
    assert not result
    assert result.cycle == (1, 1)


def test_cycle_is_rotated_to_smallest_id() -> None:
    carrier = Carrier(4)
    r = Relation.from_pairs(carrier, [(3, 1), (1, 2), (2, 3)])
    assert acyclic(r).cycle == (1, 2, 3, 1)


def test_excluded_events_are_dropped() -> None:
    carrier = Carrier(3)
    r = Relation.from_pairs(carrier, [(0, 1), (1, 0), (1, 2)])
    init = EventSet.from_ids(carrier, [0])
    assert not acyclic(r)
    result = acyclic(r, exclude=init)
    assert result
    assert result.order == (1, 2)


def test_empty_and_irreflexive() -> None:
    carrier = Carrier(3)
    init = EventSet.from_ids(carrier, [0])
    r = Relation.from_pairs(carrier, [(0, 0), (0, 2)])
    assert not is_empty(r)
    assert is_empty(r, exclude=init)
    assert not is_irreflexive(r)
    assert is_irreflexive(r, exclude=init)
    assert is_empty(Relation.empty(carrier))
    assert not is_irreflexive(Relation.identity(carrier))
