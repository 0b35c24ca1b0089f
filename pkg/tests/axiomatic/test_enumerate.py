from __future__ import annotations

import pytest

from wmm.axiomatic import count_candidates, enumerate_candidates
from wmm.litmus import LitmusTest, parse_litmus

LB_DATAS = """
test LB+datas
init { x = 0; y = 0; }
thread A { r1 := x; y := r1; }
thread B { r2 := y; x := r2; }
exists (r1 = 42)
"""


@pytest.mark.parametrize(
    ("name", "count"),
    [("SB", 4), ("SB+fences", 4), ("CoRR", 4), ("LB+ctrls", 2), ("SWAP2", 18)],
)
def test_candidate_counts(name: str, count: int, corpus_by_name: dict[str, LitmusTest]) -> None:
    assert count_candidates(corpus_by_name[name]) == count


def test_single_store() -> None:
    test = parse_litmus("test One\ninit { x = 0; }\nthread A { x := 1; }\nexists (x = 1)\n")
    (graph,) = enumerate_candidates(test)
    assert graph.final_state().value_of("x") == 1
    assert graph.co.pairs() == ((0, 1),)


def test_two_writes_give_both_coherence_orders(corpus_by_name: dict[str, LitmusTest]) -> None:
    graphs = list(enumerate_candidates(corpus_by_name["CoWR"]))
    finals = {g.final_state().value_of("x") for g in graphs}
    assert finals == {1, 2}


def test_lb_ctrls_keeps_only_branch_consistent_graphs(corpus_by_name: dict[str, LitmusTest]) -> None:
    graphs = list(enumerate_candidates(corpus_by_name["LB+ctrls"]))
    outcomes = sorted(
        (g.final_state().value_of("x"), g.final_state().value_of("y")) for g in graphs
    )
    assert outcomes == [(0, 0), (1, 1)]
    both = next(g for g in graphs if g.final_state().value_of("x") == 1)
    assert len(both.ctrl) == 2


def test_self_justifying_values_are_skipped() -> None:
    graphs = list(enumerate_candidates(parse_litmus(LB_DATAS)))
    assert len(graphs) == 3
    assert all(g.final_state().value_of("r1") == 0 for g in graphs)
    assert all(g.final_state().value_of("r2") == 0 for g in graphs)


def test_indices_count_from_zero(sb_test: LitmusTest) -> None:
    assert [g.index for g in enumerate_candidates(sb_test)] == [0, 1, 2, 3]


def test_dependencies(corpus_by_name: dict[str, LitmusTest]) -> None:
    graph = next(enumerate_candidates(corpus_by_name["LB+data"]))
    assert [(graph.label(a), graph.label(b)) for a, b in graph.dep.pairs()] == [("a1", "a2")]
    graph = next(enumerate_candidates(corpus_by_name["IRIW+deps"]))
    labels = {(graph.label(a), graph.label(b)) for a, b in graph.dep.pairs()}
    assert labels == {("a1", "a2"), ("b1", "b2")}


def test_swap_events(corpus_by_name: dict[str, LitmusTest]) -> None:
    graph = next(enumerate_candidates(corpus_by_name["SWAP2"]))
    rmw = [(graph.label(a), graph.label(b)) for a, b in graph.rmw.pairs()]
    assert rmw == [("a1", "a2"), ("b1", "b2")]
    assert len(graph.event_set("RMW")) == 4


def test_structure_of_every_candidate(corpus: list[LitmusTest]) -> None:
    for test in corpus:
        for graph in enumerate_candidates(test):
            rf = graph.rf.matrix
            for event in graph.events:
                if event.is_read:
                    (sources,) = rf[:, event.id].nonzero()
                    assert len(sources) == 1, test.name
                    source = graph.events[int(sources[0])]
                    assert source.is_write
                    assert source.location == event.location
                    assert source.value == event.value
            for location in test.locations:
                writes = [e.id for e in graph.events if e.is_write and e.location == location]
                init = next(e.id for e in graph.events if e.is_init and e.location == location)
                co = graph.co.matrix
                assert all(co[init, w] for w in writes if w != init), test.name
                for a in writes:
                    for b in writes:
                        if a != b:
                            assert co[a, b] != co[b, a], test.name
