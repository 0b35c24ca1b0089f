from __future__ import annotations

import json

import pytest

from wmm.axiomatic import builtin_model, reachable_axiomatic
from wmm.datamodels import Verdict
from wmm.harness import Entry, Report, emit_dot
from wmm.litmus import LitmusTest
from wmm.operational import Semantics, reachable_operational


@pytest.fixture
def sb_report(sb_test: LitmusTest) -> Report:
    axiomatic = reachable_axiomatic(sb_test, builtin_model("TSO"), model_name="TSO")
    operational = reachable_operational(sb_test, Semantics.TSO, model_name="TSO")
    rejected = reachable_axiomatic(sb_test, builtin_model("SC"), model_name="SC")
    return Report(
        (
            Entry("SB", "TSO", (axiomatic, operational), expected=True, agreement=True),
            Entry("SB", "SC", (rejected,), expected=False),
        )
    )


def _verdict(reachable: bool) -> Verdict:
    return Verdict(test="T", model="SC", engine="axiomatic", reachable=reachable, final_states=())


@pytest.mark.parametrize(
    ("entry", "ok"),
    [
        (Entry("T", "SC", (_verdict(True),)), True),
        (Entry("T", "SC", (_verdict(True),), expected=True), True),
        (Entry("T", "SC", (_verdict(True),), expected=False), False),
        (Entry("T", "SC", (_verdict(True), _verdict(True)), agreement=False), False),
    ],
)
def test_entry_ok(entry: Entry, ok: bool) -> None:
    assert entry.ok is ok
    assert Report((entry,)).exit_code == (0 if ok else 1)


def test_table(sb_report: Report) -> None:
    assert sb_report.render("table").splitlines() == [
        "test  model  engine       result  expected  agree",
        "SB    TSO    axiomatic    yes     yes       yes",
        "SB    TSO    operational  yes     yes       yes",
        "SB    SC     axiomatic    no      no        -",
    ]


def test_json(sb_report: Report) -> None:
    verdicts = json.loads(sb_report.render("json"))
    assert [v["engine"] for v in verdicts] == ["axiomatic", "operational", "axiomatic"]
    assert verdicts[0]["witness"]["state"] == {
        "memory": {"x": 1, "y": 1},
        "registers": {"A": {"r1": 0}, "B": {"r2": 0}},
    }
    assert "trace" in verdicts[1]["witness"]
    assert verdicts[2]["witness"]["axiom"] == "sc"


def test_dot_concatenates_witness_graphs(sb_report: Report) -> None:
    graphs = [v.witness_graph for v in sb_report.verdicts if v.witness_graph is not None]
    assert len(graphs) == 2
    assert sb_report.render("dot") == "".join(emit_dot(g) for g in graphs)


def test_trace_skips_axiomatic_verdicts(sb_report: Report) -> None:
    text = sb_report.render("trace")
    assert text.startswith("# SB / TSO\n")
    assert text.count("# ") == 1


def test_rendering_is_deterministic(sb_test: LitmusTest) -> None:
    def render() -> str:
        verdict = reachable_axiomatic(sb_test, builtin_model("SC"))
        return Report((Entry("SB", "SC", (verdict,)),)).render("json")

    assert render() == render()


def test_unknown_format(sb_report: Report) -> None:
    with pytest.raises(ValueError, match="xml"):
        sb_report.render("xml")
