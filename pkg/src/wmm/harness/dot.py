from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from wmm.axiomatic import ExecutionGraph
    from wmm.relations import Relation

__all__ = ["EDGE_STYLES", "emit_dot"]

# relation -> DOT edge attributes, in drawing order
EDGE_STYLES = {
    "po": 'color = black',
    "co": 'color = blue, fontcolor = blue',
    "rf": 'color = red, fontcolor = red',
    "fr": 'color = orange, fontcolor = orange, style = dashed',
    "fence": 'color = purple, fontcolor = purple, style = bold',
    "dep": 'color = darkgreen, fontcolor = darkgreen, style = dotted',
    "ctrl": 'color = brown, fontcolor = brown, style = dotted',
}


def _quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _immediate(r: Relation) -> Relation:
    """Edges of a transitive order that no other edge implies."""
    return r - (r @ r)


def _edges(graph: ExecutionGraph) -> dict[str, Relation]:
    return {
        "po": _immediate(graph.po),
        "co": _immediate(graph.co),
        "rf": graph.rf,
        "fr": graph.derive("fr"),
        "fence": graph.derive("fencerel"),
        "dep": graph.dep,
        "ctrl": graph.ctrl,
    }


def _node_label(graph: ExecutionGraph, event_id: int) -> str:
    """Event kind, owning thread and access, e.g. `Wa x=1`; init writes have no thread."""
    event = graph.events[event_id]
    kind, _, access = event.describe().partition(" ")
    owner = "" if event.is_init else event.thread.lower()
    return f"{kind}{owner} {access}".rstrip()


def emit_dot(graph: ExecutionGraph) -> str:
    """Render an execution graph as a DOT digraph.

    Nodes are named by event label (`Ix`, `a1`, ...) and labelled with the
    event, e.g. `Wa x=1` for a store of thread A. Program order and coherence
    are drawn as immediate edges only. Output is deterministic: nodes by event id, edges by relation then by pair.

    Args:
        graph: The execution graph.

    Returns:
        str: The DOT source, ending with a newline.
    """
    name = graph.test.name if graph.test is not None else f"candidate {graph.index}"
    lines = [
        f"digraph {_quote(name)} {{",
        '  node  [ shape = box, fontname = "helvetica" ];',
        '  edge  [ fontname = "helvetica", fontsize = 10 ];',
    ]
    for event in graph.events:
        shape = ", shape = plaintext" if event.is_fence else ""
        lines.append(
            f"  {_quote(graph.label(event.id))} [label = {_quote(_node_label(graph, event.id))}{shape}];"
        )

    for relation, edges in _edges(graph).items():
        style = EDGE_STYLES[relation]
        for a, b in edges.pairs():
            lines.append(
                f"  {_quote(graph.label(a))} -> {_quote(graph.label(b))} "
                f"[label = {_quote(relation)}, {style}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
