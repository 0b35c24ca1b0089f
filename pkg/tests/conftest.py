from __future__ import annotations

import numpy as np
import pytest

from wmm.axiomatic import ExecutionGraph, enumerate_candidates
from wmm.litmus import LitmusTest, bundled_corpus_path, load_corpus, parse_litmus

CORE_MODELS = ["SC", "TSO", "ARM", "RISCV"]

SB_TEXT = """
test SB
init { x = 0; y = 0; }
thread A {
    x := 1;
    r1 := y;
}
thread B {
    y := 1;
    r2 := x;
}
exists (r1 = 0 /\\ r2 = 0)
expect { SC: no; TSO: yes; ARM: yes; RISCV: yes; }
"""


@pytest.fixture(scope="session")
def corpus() -> list[LitmusTest]:
    return load_corpus(bundled_corpus_path())


@pytest.fixture(scope="session")
def corpus_by_name(corpus: list[LitmusTest]) -> dict[str, LitmusTest]:
    return {test.name: test for test in corpus}


@pytest.fixture
def sb_test() -> LitmusTest:
    return parse_litmus(SB_TEXT)


@pytest.fixture
def sb_zero_graph(sb_test: LitmusTest) -> ExecutionGraph:
    """The SB candidate in which both reads see the initial values."""
    for graph in enumerate_candidates(sb_test):
        state = graph.final_state()
        if state.value_of("r1") == 0 and state.value_of("r2") == 0:
            return graph
    msg = "SB has no r1=r2=0 candidate"
    raise AssertionError(msg)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(42)
