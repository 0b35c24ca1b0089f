from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from wmm.datamodels import FinalState

if TYPE_CHECKING:
    from wmm.litmus import LitmusTest


def test_capture_orders_by_test(sb_test: LitmusTest) -> None:
    state = FinalState.capture(sb_test, {"y": 1, "x": 1}, {"r2": 1, "$swap": 7})
    assert state.memory == (("x", 1), ("y", 1))
    assert state.registers == (("A", (("r1", 0),)), ("B", (("r2", 1),)))


def test_value_of(sb_test: LitmusTest) -> None:
    state = FinalState.capture(sb_test, {"x": 1, "y": 2}, {"r1": 3})
    assert state.value_of("y") == 2
    assert state.value_of("r1") == 3
    with pytest.raises(KeyError):
        state.value_of("r9")


def test_render_and_to_dict(sb_test: LitmusTest) -> None:
    state = FinalState.capture(sb_test, {"x": 1, "y": 1}, {"r1": 0, "r2": 1})
    assert state.render() == "r1=0 r2=1; x=1 y=1"
    assert state.to_dict() == {
        "memory": {"x": 1, "y": 1},
        "registers": {"A": {"r1": 0}, "B": {"r2": 1}},
    }


def test_states_are_ordered(sb_test: LitmusTest) -> None:
    low = FinalState.capture(sb_test, {"x": 1, "y": 1}, {"r1": 0, "r2": 1})
    high = FinalState.capture(sb_test, {"x": 1, "y": 1}, {"r1": 1, "r2": 0})
    assert sorted([high, low]) == [low, high]
    assert len({low, FinalState.capture(sb_test, {"x": 1, "y": 1}, {"r1": 0, "r2": 1})}) == 1
