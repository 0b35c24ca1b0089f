from __future__ import annotations

from pathlib import Path

import pytest

from wmm.litmus import CorpusError, LitmusTest, bundled_corpus_path, load_corpus, load_litmus
from wmm.litmus.ast import walk

TABLE_TESTS = ["SB", "LB", "MP", "IRIW+deps", "LB+ctrls", "SB+fences", "MP+rel/acq", "SB+forwarding"]


def test_bundled_corpus(corpus: list[LitmusTest]) -> None:
    names = {test.name for test in corpus}
    assert len(corpus) >= 10
    assert set(TABLE_TESTS) <= names


def test_corpus_shape(corpus: list[LitmusTest]) -> None:
    for test in corpus:
        assert len(test.threads) >= 2, test.name
        assert all(sum(1 for _ in walk(t.body)) <= 8 for t in test.threads), test.name
        assert {model for model, _ in test.expectations} == {"SC", "TSO", "ARM", "RISCV"}, test.name


def test_load_single_file() -> None:
    test = load_litmus(bundled_corpus_path() / "SB.litmus")
    assert test.name == "SB"


def test_corpus_is_sorted_by_file_name(tmp_path: Path) -> None:
    for name in ["b", "a"]:
        (tmp_path / f"{name}.litmus").write_text(
            f"test {name}\ninit {{ x = 0; }}\nthread A {{ x := 1; }}\nthread B {{ }}\nexists (x = 1)\n"
        )
    (tmp_path / "notes.txt").write_text("not a litmus test")
    assert [t.name for t in load_corpus(tmp_path)] == ["a", "b"]


def test_corpus_collects_every_failure(tmp_path: Path) -> None:
    (tmp_path / "good.litmus").write_text("test G\ninit { x = 0; }\nthread A { x := 1; }\nexists (x = 1)\n")
    (tmp_path / "syntax.litmus").write_text("test S\ninit { x = 0 \n")
    (tmp_path / "invalid.litmus").write_text("test V\ninit { x = 0; }\nthread A { x := 1; }\nexists (r = 1)\n")
    with pytest.raises(CorpusError) as info:
        load_corpus(tmp_path)
    assert sorted(name for name, _ in info.value.failures) == ["invalid.litmus", "syntax.litmus"]
    assert "2 file(s) failed to load" in str(info.value)


def test_missing_corpus_directory(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError):
        load_corpus(tmp_path / "missing")
