from __future__ import annotations

import logging
import os

APP_NAME = "wmm"
LOGGER_NAME = "wmm-logger"
WORKERS_ENV = "WMM_WORKERS"

_INT64_SPAN = 1 << 64
_INT64_MIN = -(1 << 63)


def wrap_int64(value: int) -> int:
    """Wrap an arbitrary Python integer into signed 64-bit two's complement range.

    Args:
        value: The integer to wrap.

    Returns:
        int: The value reduced modulo 2**64 into [-2**63, 2**63).
    """
    return (value - _INT64_MIN) % _INT64_SPAN + _INT64_MIN


def worker_count(default: int = 1) -> int:
    """Number of worker processes allowed by the `WMM_WORKERS` environment variable.

    Args:
        default: Value used when the variable is unset.

    Raises:
        ValueError: If the variable is set to something other than a positive integer.

    Returns:
        int: The worker cap.
    """
    raw = os.environ.get(WORKERS_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        workers = int(raw)
    except ValueError as e:
        msg = f"{WORKERS_ENV} must be a positive integer, got '{raw}'"
        raise ValueError(msg) from e
    if workers < 1:
        msg = f"{WORKERS_ENV} must be a positive integer, got '{raw}'"
        raise ValueError(msg)
    return workers


def get_logger() -> logging.Logger:
    """The package logger. Silent unless the application configures a handler."""
    return logging.getLogger(LOGGER_NAME)
