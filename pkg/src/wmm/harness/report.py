from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .dot import emit_dot

if TYPE_CHECKING:
    from wmm.datamodels import Verdict

__all__ = ["Entry", "Report"]

_TABLE_HEADER = ("test", "model", "engine", "result", "expected", "agree")


@dataclass(frozen=True)
class Entry:
    """Verdicts for one test under one model, from one or both engines.

    Args:
        test: Name of the litmus test.
        model: Name of the model as requested.
        verdicts: The axiomatic verdict first when both engines ran.
        expected: Expected reachability, None when nothing is expected.
        agreement: With both engines, whether they agree; None otherwise.
    """

    test: str
    model: str
    verdicts: tuple[Verdict, ...]
    expected: bool | None = None
    agreement: bool | None = None

    @property
    def expectation_met(self: Entry) -> bool | None:
        if self.expected is None:
            return None
        return all(v.reachable == self.expected for v in self.verdicts)

    @property
    def ok(self: Entry) -> bool:
        return self.expectation_met is not False and self.agreement is not False

    def summary(self: Entry) -> str:
        answers = ", ".join(f"{v.engine}={v.answer}" for v in self.verdicts)
        return f"{self.test} / {self.model}: {answers}"


def _flag(value: bool | None) -> str:
    if value is None:
        return "-"
    return "yes" if value else "no"


@dataclass(frozen=True)
class Report:
    """All entries of a run, in input order."""

    entries: tuple[Entry, ...]

    @property
    def ok(self: Report) -> bool:
        return all(entry.ok for entry in self.entries)

    @property
    def exit_code(self: Report) -> int:
        """0 when every expectation and agreement holds, 1 otherwise."""
        return 0 if self.ok else 1

    @property
    def verdicts(self: Report) -> list[Verdict]:
        return [v for entry in self.entries for v in entry.verdicts]

    def rows(self: Report) -> list[tuple[str, ...]]:
        rows = []
        for entry in self.entries:
            for verdict in entry.verdicts:
                expected = "-" if entry.expected is None else _flag(entry.expected)
                rows.append(
                    (
                        entry.test,
                        entry.model,
                        verdict.engine,
                        verdict.answer,
                        expected,
                        _flag(entry.agreement),
                    )
                )
        return rows

    def render_table(self: Report) -> str:
        rows = [_TABLE_HEADER, *self.rows()]
        widths = [max(len(row[i]) for row in rows) for i in range(len(_TABLE_HEADER))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
        return "\n".join(lines) + "\n"

    def render_json(self: Report) -> str:
        return json.dumps([v.to_dict() for v in self.verdicts], indent=4, sort_keys=True) + "\n"

    def render_dot(self: Report) -> str:
        graphs = [v.witness_graph for v in self.verdicts if v.witness_graph is not None]
        return "".join(emit_dot(graph) for graph in graphs)

    def render_trace(self: Report) -> str:
        blocks = []
        for verdict in self.verdicts:
            if not verdict.witness_trace:
                continue
            header = f"# {verdict.test} / {verdict.model}"
            blocks.append("\n".join([header, *verdict.witness_trace]) + "\n")
        return "\n".join(blocks)

    def render(self: Report, output_format: str) -> str:
        """Render in one of the formats `table`, `json`, `dot` or `trace`.

        Raises:
            ValueError: If the format is unknown.
        """
        renderers = {
            "table": self.render_table,
            "json": self.render_json,
            "dot": self.render_dot,
            "trace": self.render_trace,
        }
        try:
            renderer = renderers[output_format]
        except KeyError as e:
            msg = f"unknown output format '{output_format}'"
            raise ValueError(msg) from e
        return renderer()
