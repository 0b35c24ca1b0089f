from __future__ import annotations

import logging

import pytest

from wmm.datamodels import OPERATIONAL
from wmm.litmus import LitmusTest, parse_litmus
from wmm.operational import Explorer, LabelKind, Semantics, explore, reachable_operational

SWAP_RACE = """
test SwapRace
init { x = 0; }
thread A { r := SWAP(x, 1); }
thread B { x := 9; }
exists (true)
"""


def _outcomes(test: LitmusTest, semantics: Semantics, *names: str) -> set[tuple[int, ...]]:
    return {tuple(s.value_of(n) for n in names) for s in explore(test, semantics).final_states}


@pytest.mark.parametrize(
    ("semantics", "count"),
    [(Semantics.SC, 3), (Semantics.TSO, 4), (Semantics.PIPELINE, 4)],
)
def test_sb_outcome_counts(semantics: Semantics, count: int, sb_test: LitmusTest) -> None:
    assert len(explore(sb_test, semantics).final_states) == count


def test_sc_never_sees_both_zero(sb_test: LitmusTest) -> None:
    assert (0, 0) not in _outcomes(sb_test, Semantics.SC, "r1", "r2")
    assert (0, 0) in _outcomes(sb_test, Semantics.TSO, "r1", "r2")


def test_fences_restore_sc(corpus_by_name: dict[str, LitmusTest]) -> None:
    assert (0, 0) not in _outcomes(corpus_by_name["SB+fences"], Semantics.TSO, "r1", "r2")


@pytest.mark.parametrize(
    ("name", "semantics", "reachable"),
    [
        ("SB", Semantics.SC, False),
        ("SB", Semantics.TSO, True),
        ("MP", Semantics.SC, False),
        ("MP", Semantics.TSO, False),
        ("LB", Semantics.TSO, False),
        ("SB+forwarding", Semantics.TSO, True),
        ("SB+forwarding", Semantics.SC, False),
        ("2+2W", Semantics.TSO, False),
        ("CoWR", Semantics.TSO, False),
    ],
)
def test_operational_matrix(
    name: str, semantics: Semantics, reachable: bool, corpus_by_name: dict[str, LitmusTest]
) -> None:
    assert reachable_operational(corpus_by_name[name], semantics).reachable is reachable


@pytest.mark.parametrize("semantics", list(Semantics))
def test_single_swap(semantics: Semantics) -> None:
    test = parse_litmus("test S\ninit { x = 2; }\nthread A { r := SWAP(x, 5); }\nexists (r = 2 /\\ x = 5)\n")
    assert _outcomes(test, semantics, "r", "x") == {(2, 5)}


@pytest.mark.parametrize("semantics", list(Semantics))
def test_swap_is_not_split_by_a_racing_store(semantics: Semantics) -> None:
    assert _outcomes(parse_litmus(SWAP_RACE), semantics, "r", "x") == {(0, 9), (9, 1)}


@pytest.mark.parametrize("semantics", list(Semantics))
def test_swap2(semantics: Semantics, corpus_by_name: dict[str, LitmusTest]) -> None:
    assert _outcomes(corpus_by_name["SWAP2"], semantics, "r1", "r2") == {(0, 1), (1, 0)}


def test_tso_drains_buffers_before_terminating() -> None:
    test = parse_litmus("test D\ninit { x = 0; }\nthread A { x := 1; x := 2; }\nexists (x = 2)\n")
    assert _outcomes(test, Semantics.TSO, "x") == {(2,)}


def test_traces_lead_to_every_final_state(sb_test: LitmusTest) -> None:
    exploration = explore(sb_test, Semantics.TSO, traces=True)
    assert set(exploration.traces) == exploration.final_states
    assert exploration.states > len(exploration.final_states)
    for trace in exploration.traces.values():
        writes = sorted(label.render() for label in trace if label.kind is LabelKind.WRITE)
        assert writes == ["A: W x=1", "B: W y=1"]


def test_no_traces_unless_asked(sb_test: LitmusTest) -> None:
    assert explore(sb_test, Semantics.SC).traces == {}


def test_reachable_verdict(sb_test: LitmusTest) -> None:
    verdict = reachable_operational(sb_test, Semantics.TSO)
    assert verdict.engine == OPERATIONAL
    assert verdict.model == "TSO"
    assert verdict.reachable
    assert verdict.witness_state is not None
    assert verdict.witness_state.render() == "r1=0 r2=0; x=1 y=1"
    reads = [line for line in verdict.witness_trace if ": R " in line]
    assert sorted(reads) == ["A: R y=0", "B: R x=0"]


def test_unreachable_verdict(sb_test: LitmusTest) -> None:
    verdict = reachable_operational(sb_test, Semantics.SC, model_name="SC")
    assert not verdict.reachable
    assert verdict.witness_state is None
    assert verdict.witness_trace == ()
    assert list(verdict.final_states) == sorted(verdict.final_states)


def test_explorer_logs(sb_test: LitmusTest, caplog: pytest.LogCaptureFixture) -> None:
    logger = logging.getLogger("wmm-test-explorer")
    with caplog.at_level(logging.INFO, logger="wmm-test-explorer"):
        Explorer(Semantics.SC, logger=logger).explore(sb_test)
    assert "SB / SC" in caplog.text
    assert "3 final states" in caplog.text
