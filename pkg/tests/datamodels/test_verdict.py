from __future__ import annotations

from typing import TYPE_CHECKING

from wmm.datamodels import AXIOMATIC, OPERATIONAL, FinalState, Rejection, Verdict

if TYPE_CHECKING:
    from wmm.litmus import LitmusTest


def test_reachable_to_dict(sb_test: LitmusTest) -> None:
    state = FinalState.capture(sb_test, {"x": 1, "y": 1}, {})
    verdict = Verdict(
        test="SB",
        model="TSO",
        engine=OPERATIONAL,
        reachable=True,
        final_states=(state,),
        witness_state=state,
        witness_trace=("A: tau", "A: R y=0"),
    )
    assert verdict.answer == "yes"
    assert verdict.to_dict() == {
        "test": "SB",
        "model": "TSO",
        "engine": "operational",
        "reachable": True,
        "witness": {
            "state": state.to_dict(),
            "trace": ["A: tau", "A: R y=0"],
        },
    }


def test_unreachable_to_dict() -> None:
    rejection = Rejection(candidate=3, axiom="sc", cycle=("a2", "b1", "b2", "a1", "a2"))
    verdict = Verdict(
        test="SB",
        model="SC",
        engine=AXIOMATIC,
        reachable=False,
        final_states=(),
        rejections=(rejection,),
    )
    assert verdict.answer == "no"
    assert verdict.to_dict()["witness"] == {"axiom": "sc", "cycle": ["a2", "b1", "b2", "a1", "a2"]}
    assert rejection.render() == "candidate 3: sc (a2 -> b1 -> b2 -> a1 -> a2)"


def test_plain_unreachable_has_no_witness() -> None:
    verdict = Verdict(test="T", model="SC", engine=OPERATIONAL, reachable=False, final_states=())
    assert "witness" not in verdict.to_dict()
