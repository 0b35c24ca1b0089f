from __future__ import annotations


class ConfigurationError(Exception):
    """Raised when a run configuration is invalid."""

    def __init__(self: ConfigurationError, msg: str) -> None:
        super().__init__(msg)


class ExpectationError(Exception):
    """Raised when an expect block names a model the harness does not know."""

    def __init__(self: ExpectationError, msg: str) -> None:
        super().__init__(msg)
