"""Both engines must tell the same story about every test."""

from __future__ import annotations

import numpy as np
import pytest

from wmm.axiomatic import builtin_model, final_states_axiomatic, reachable_axiomatic
from wmm.devtools import random_litmus
from wmm.litmus import LitmusTest, serialize_litmus
from wmm.operational import Semantics, explore, reachable_operational

EXACT = [("SC", Semantics.SC), ("TSO", Semantics.TSO)]


@pytest.mark.parametrize(("model", "semantics"), EXACT)
def test_corpus_final_states_agree(model: str, semantics: Semantics, corpus: list[LitmusTest]) -> None:
    for test in corpus:
        axiomatic = final_states_axiomatic(test, builtin_model(model))
        operational = explore(test, semantics).final_states
        assert axiomatic == operational, test.name


@pytest.mark.parametrize("model", ["ARM", "RISCV"])
def test_corpus_pipeline_final_states_agree(model: str, corpus: list[LitmusTest]) -> None:
    for test in corpus:
        axiomatic = reachable_axiomatic(test, builtin_model(model))
        operational = reachable_operational(test, Semantics.PIPELINE)
        assert axiomatic.reachable == operational.reachable, test.name
        assert axiomatic.final_states == operational.final_states, test.name
        assert operational.reachable == test.expectation(model), test.name


@pytest.mark.parametrize(("model", "semantics"), EXACT)
def test_random_final_states_agree(model: str, semantics: Semantics) -> None:
    rng = np.random.default_rng(7)
    for case in range(60):
        test = random_litmus(rng, max_threads=3, max_instructions=3, name=f"R{case}")
        axiomatic = final_states_axiomatic(test, builtin_model(model))
        operational = explore(test, semantics).final_states
        assert axiomatic == operational, serialize_litmus(test)
