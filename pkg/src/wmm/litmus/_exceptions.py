from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Sequence

VALIDATION_KINDS = (
    "undeclared-var",
    "cross-thread-register",
    "loop-detected",
    "bad-dep",
    "shared-in-expression",
    "duplicate-thread",
    "duplicate-init",
)


class LitmusSyntaxError(Exception):
    """Raised when a litmus file does not follow the grammar."""

    def __init__(
        self: LitmusSyntaxError, line: int, column: int, expected: Sequence[str]
    ) -> None:
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        msg = f"syntax error at line {line}, column {column}"
        if self.expected:
            msg += f": expected one of {', '.join(self.expected)}"
        super().__init__(msg)


class LitmusValidationError(Exception):
    """Raised when a syntactically valid litmus test breaks a structural rule."""

    def __init__(self: LitmusValidationError, kind: str, detail: str) -> None:
        if kind not in VALIDATION_KINDS:
            msg = f"unknown validation error kind '{kind}'"
            raise ValueError(msg)
        self.kind = kind
        self.detail = detail
        super().__init__(f"{kind}: {detail}")


class CorpusError(Exception):
    """Raised when one or more files of a litmus corpus fail to load."""

    def __init__(self: CorpusError, failures: Sequence[tuple[str, Exception]]) -> None:
        self.failures = tuple(failures)
        lines = [f"{name}: {err}" for name, err in self.failures]
        super().__init__(f"{len(lines)} file(s) failed to load:\n" + "\n".join(lines))
