from __future__ import annotations

import pytest

from wmm.axiomatic import RELATION_NAMES, ExecutionGraph, UnknownRelationError, enumerate_candidates
from wmm.litmus import LitmusTest, parse_litmus
from wmm.relations import INIT_THREAD, Event, EventKind


def _labelled(graph: ExecutionGraph, name: str) -> set[tuple[str, str]]:
    return {(graph.label(a), graph.label(b)) for a, b in graph.derive(name).pairs()}


def test_labels_and_describe(sb_zero_graph: ExecutionGraph) -> None:
    labels = [sb_zero_graph.label(e.id) for e in sb_zero_graph.events]
    assert labels == ["Ix", "Iy", "a1", "a2", "b1", "b2"]
    assert sb_zero_graph.describe(2) == "a1: W x=1"
    assert sb_zero_graph.describe(0) == "Ix: W x=0"


def test_labels_for_numbered_threads() -> None:
    test = parse_litmus("test N\ninit { x = 0; }\nthread P0 { x := 1; }\nthread P1 { r := x; }\nexists (r = 1)\n")
    graph = next(enumerate_candidates(test))
    assert [graph.label(e.id) for e in graph.events] == ["Ix", "p0.1", "p1.1"]


def test_sb_from_reads(sb_zero_graph: ExecutionGraph) -> None:
    assert _labelled(sb_zero_graph, "fr") == {("a2", "b1"), ("b2", "a1")}
    assert _labelled(sb_zero_graph, "fre") == {("a2", "b1"), ("b2", "a1")}
    assert _labelled(sb_zero_graph, "fri") == set()
    assert _labelled(sb_zero_graph, "WR") == {("a1", "a2"), ("b1", "b2")}
    assert _labelled(sb_zero_graph, "ppo_tso") == set()


def test_forwarded_reads_are_internal(corpus_by_name: dict[str, LitmusTest]) -> None:
    graphs = [
        g
        for g in enumerate_candidates(corpus_by_name["SB+forwarding"])
        if g.satisfies_postcondition()
    ]
    assert graphs
    for graph in graphs:
        assert ("a1", "a2") not in _labelled(graph, "rfe")
        assert ("b1", "b2") not in _labelled(graph, "rfe")
        assert ("a1", "a2") in _labelled(graph, "rfi")


def test_fence_relation(corpus_by_name: dict[str, LitmusTest]) -> None:
    graph = next(enumerate_candidates(corpus_by_name["MP+fences"]))
    assert _labelled(graph, "fencerel") == {("a1", "a3"), ("b1", "b3")}
    assert _labelled(graph, "RR") == {("b1", "b3")}
    assert ("a2", "a3") not in _labelled(graph, "WW")


def test_relation_laws_on_corpus(corpus: list[LitmusTest]) -> None:
    for test in corpus:
        for graph in enumerate_candidates(test):
            po = graph.derive("po")
            assert graph.derive("poloc") & po == graph.derive("poloc")
            assert graph.derive("rfe") | graph.derive("rfi") == graph.rf
            assert graph.derive("coe") | graph.derive("coi") == graph.co
            assert graph.derive("ext") & graph.derive("int") == graph.derive("id") - graph.derive("id")
            assert graph.derive("com") == graph.rf | graph.co | graph.derive("fr")
            assert graph.derive("eco") == graph.derive("com").transitive_closure()
            assert graph.derive("ca") == graph.co | graph.derive("fr")


def test_every_relation_name_derives(sb_zero_graph: ExecutionGraph) -> None:
    for name in RELATION_NAMES:
        assert sb_zero_graph.derive(name).carrier is sb_zero_graph.carrier
    assert sb_zero_graph.derive("fr") is sb_zero_graph.derive("fr")


def test_unknown_names(sb_zero_graph: ExecutionGraph) -> None:
    with pytest.raises(UnknownRelationError, match="addr"):
        sb_zero_graph.derive("addr")
    with pytest.raises(UnknownRelationError):
        sb_zero_graph.event_set("Q")


def test_final_state_needs_test() -> None:
    events = [
        Event(0, INIT_THREAD, EventKind.INIT, "x", 0),
        Event(1, "A", EventKind.WRITE, "x", 1),
    ]
    graph = ExecutionGraph.build(events, po=[], co=[(0, 1)], rf=[])
    assert not graph.satisfies_postcondition()
    with pytest.raises(ValueError, match="litmus test"):
        graph.final_state()


def test_graph_validation() -> None:
    events = (Event(1, "A", EventKind.WRITE, "x", 1),)
    with pytest.raises(ValueError, match="dense"):
        ExecutionGraph.build(events, po=[], co=[], rf=[])
