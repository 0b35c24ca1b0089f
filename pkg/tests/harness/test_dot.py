from __future__ import annotations

from wmm.axiomatic import ExecutionGraph, enumerate_candidates
from wmm.harness import emit_dot
from wmm.harness.dot import EDGE_STYLES
from wmm.litmus import LitmusTest


def _edges(text: str, relation: str) -> set[tuple[str, str]]:
    edges = set()
    for line in text.splitlines():
        if "->" in line and f'[label = "{relation}"' in line:
            source, _, rest = line.strip().partition(" -> ")
            edges.add((source.strip('"'), rest.split(" ", 1)[0].strip('"')))
    return edges


def test_sb_graph(sb_zero_graph: ExecutionGraph) -> None:
    text = emit_dot(sb_zero_graph)
    lines = text.splitlines()
    assert lines[0] == 'digraph "SB" {'
    assert lines[-1] == "}"
    assert '  "Ix" [label = "W x=0"];' in lines
    assert '  "a1" [label = "Wa x=1"];' in lines
    assert '  "b2" [label = "Rb x=0"];' in lines
    assert _edges(text, "po") == {("a1", "a2"), ("b1", "b2")}
    assert _edges(text, "rf") == {("Iy", "a2"), ("Ix", "b2")}
    assert _edges(text, "co") == {("Ix", "a1"), ("Iy", "b1")}
    assert _edges(text, "fr") == {("a2", "b1"), ("b2", "a1")}
    assert _edges(text, "fence") == set()


def test_only_immediate_program_order(corpus_by_name: dict[str, LitmusTest]) -> None:
    graph = next(enumerate_candidates(corpus_by_name["MP+fences"]))
    text = emit_dot(graph)
    assert _edges(text, "po") == {("a1", "a2"), ("a2", "a3"), ("b1", "b2"), ("b2", "b3")}
    assert _edges(text, "fence") == {("a1", "a3"), ("b1", "b3")}
    assert '"a2" [label = "Fa", shape = plaintext];' in text


def test_edge_styles_are_used(sb_zero_graph: ExecutionGraph) -> None:
    text = emit_dot(sb_zero_graph)
    assert f'[label = "rf", {EDGE_STYLES["rf"]}];' in text


def test_output_is_deterministic(sb_test: LitmusTest) -> None:
    first = [emit_dot(g) for g in enumerate_candidates(sb_test)]
    second = [emit_dot(g) for g in enumerate_candidates(sb_test)]
    assert first == second
    assert len(set(first)) == len(first)
