from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Sequence


class ModelSyntaxError(Exception):
    """Raised when a model file does not follow the model grammar."""

    def __init__(
        self: ModelSyntaxError, line: int, column: int, expected: Sequence[str]
    ) -> None:
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        msg = f"model syntax error at line {line}, column {column}"
        if self.expected:
            msg += f": expected one of {', '.join(self.expected)}"
        super().__init__(msg)


class UnknownIdentifierError(Exception):
    """Raised when a model expression names a relation or set that is not defined before it."""

    def __init__(self: UnknownIdentifierError, name: str, line: int) -> None:
        self.name = name
        self.line = line
        super().__init__(f"unknown identifier '{name}' at line {line}")


class UnknownRelationError(Exception):
    """Raised when a graph is asked for a relation it cannot derive."""

    def __init__(self: UnknownRelationError, name: str) -> None:
        self.name = name
        super().__init__(f"unknown relation '{name}'")


class UnknownModelError(Exception):
    """Raised when a model name is neither built in nor a readable model file."""

    def __init__(self: UnknownModelError, name: str) -> None:
        self.name = name
        super().__init__(f"unknown model '{name}'")
