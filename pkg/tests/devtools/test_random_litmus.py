from __future__ import annotations

from typing import Union

import numpy as np
import pytest

from wmm.axiomatic import builtin_model, reachable_axiomatic
from wmm.devtools import random_litmus
from wmm.litmus import Branch, LitmusTest, Load, Store, Swap, parse_litmus, serialize_litmus
from wmm.litmus.ast import Instruction
from wmm.operational import Semantics, explore

N_CASES = 200


def _accesses(body: tuple[Instruction, ...]) -> list[Union[Store, Load, Swap]]:
    found: list[Union[Store, Load, Swap]] = []
    for instr in body:
        if isinstance(instr, Branch):
            found += _accesses(instr.then) + _accesses(instr.orelse)
        elif isinstance(instr, (Store, Load, Swap)):
            found.append(instr)
    return found


def _length(body: tuple[Instruction, ...]) -> int:
    return sum(1 + _length(i.then) + _length(i.orelse) if isinstance(i, Branch) else 1 for i in body)


def test_generated_tests_respect_bounds(rng: np.random.Generator) -> None:
    for case in range(100):
        test = random_litmus(rng, max_threads=3, max_instructions=4, max_accesses_per_location=3)
        assert 2 <= len(test.threads) <= 3, case
        assert [t.name for t in test.threads] == [f"P{i}" for i in range(len(test.threads))]
        assert dict(test.init) == {"x": 0, "y": 0}
        for thread in test.threads:
            assert 1 <= _length(thread.body) <= 4
        accesses = [a for thread in test.threads for a in _accesses(thread.body)]
        for location in ("x", "y"):
            assert sum(a.location == location for a in accesses) <= 3


def test_one_tag_kind_per_program(rng: np.random.Generator) -> None:
    for _ in range(200):
        test = random_litmus(rng)
        accesses = [a for thread in test.threads for a in _accesses(thread.body)]
        releases = any(isinstance(a, Store) and a.release for a in accesses)
        acquires = any(isinstance(a, Load) and a.acquire for a in accesses)
        assert not (releases and acquires)


def test_switches(rng: np.random.Generator) -> None:
    for _ in range(100):
        test = random_litmus(rng, swaps=False, tags=False, branches=False)
        for thread in test.threads:
            assert not any(isinstance(i, (Swap, Branch)) for i in thread.body)
            for access in _accesses(thread.body):
                assert not getattr(access, "release", False)
                assert not getattr(access, "acquire", False)


def test_generated_tests_round_trip(rng: np.random.Generator) -> None:
    for case in range(50):
        test = random_litmus(rng, name=f"R{case}")
        assert parse_litmus(serialize_litmus(test)) == test


def test_same_seed_same_tests() -> None:
    first = [random_litmus(np.random.default_rng(3)) for _ in range(3)]
    second = [random_litmus(np.random.default_rng(3)) for _ in range(3)]
    assert first == second


@pytest.fixture(scope="module")
def random_tests() -> list[LitmusTest]:
    rng = np.random.default_rng(2024)
    return [
        random_litmus(rng, max_threads=3, max_instructions=4, max_accesses_per_location=3, name=f"R{case}")
        for case in range(N_CASES)
    ]


def test_operational_final_states_grow_with_weakness(random_tests: list[LitmusTest]) -> None:
    for test in random_tests:
        sc = explore(test, Semantics.SC).final_states
        tso = explore(test, Semantics.TSO).final_states
        pipeline = explore(test, Semantics.PIPELINE).final_states
        assert sc <= tso <= pipeline, serialize_litmus(test)


def test_axiomatic_verdicts_grow_with_weakness(random_tests: list[LitmusTest]) -> None:
    models = [builtin_model(name) for name in ("SC", "TSO", "ARM")]
    for test in random_tests:
        sc, tso, arm = (reachable_axiomatic(test, model).reachable for model in models)
        assert not sc or tso, serialize_litmus(test)
        assert not tso or arm, serialize_litmus(test)
