from __future__ import annotations


class CarrierMismatchError(Exception):
    """Raised when two relations over different event universes are combined."""

    def __init__(self: CarrierMismatchError, msg: str) -> None:
        super().__init__(msg)
