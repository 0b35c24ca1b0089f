from __future__ import annotations

import logging
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING

from wmm.helpers.utilities import LOGGER_NAME

from ._exceptions import CorpusError, LitmusSyntaxError, LitmusValidationError
from .parser import parse_litmus

if TYPE_CHECKING:
    from .ast import LitmusTest

__all__ = ["LITMUS_SUFFIX", "bundled_corpus_path", "load_corpus", "load_litmus"]

LITMUS_SUFFIX = ".litmus"


def bundled_corpus_path() -> Path:
    """Directory holding the litmus tests shipped with the package."""
    return Path(str(resources.files("wmm.litmus") / "corpus"))


def load_litmus(path: Path) -> LitmusTest:
    """Read and parse a single litmus file.

    Args:
        path: Path to a `.litmus` file.

    Returns:
        LitmusTest: The parsed test.
    """
    return parse_litmus(path.read_text(encoding="utf-8"))


def load_corpus(directory: Path) -> list[LitmusTest]:
    """Parse every `.litmus` file of a directory.

    Args:
        directory: The corpus directory.

    Raises:
        FileNotFoundError: If the directory does not exist.
        CorpusError: If any file fails to parse, listing every failing file.

    Returns:
        list[LitmusTest]: The tests, sorted by file name.
    """
    if not directory.is_dir():
        msg = f"corpus directory '{directory}' does not exist"
        raise FileNotFoundError(msg)

    logger = logging.getLogger(LOGGER_NAME)
    tests = []
    failures: list[tuple[str, Exception]] = []
    for path in sorted(directory.glob(f"*{LITMUS_SUFFIX}")):
        try:
            tests.append(load_litmus(path))
        except (LitmusSyntaxError, LitmusValidationError, UnicodeDecodeError) as e:
            failures.append((path.name, e))
        else:
            logger.debug("loaded %s", path.name)
    if failures:
        raise CorpusError(failures)
    return tests
