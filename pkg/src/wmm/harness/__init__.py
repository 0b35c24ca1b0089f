from ._exceptions import ConfigurationError, ExpectationError
from .cli import main
from .configuration import ALL_MODELS, ENGINES, FORMATS, RunConfig
from .dot import emit_dot
from .report import Entry, Report
from .runner import ModelTarget, Runner, resolve_model, run

__all__ = [
    "ALL_MODELS",
    "ENGINES",
    "FORMATS",
    "ConfigurationError",
    "Entry",
    "ExpectationError",
    "ModelTarget",
    "Report",
    "RunConfig",
    "Runner",
    "emit_dot",
    "main",
    "resolve_model",
    "run",
]
