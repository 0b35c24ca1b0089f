from ._exceptions import (
    ModelSyntaxError,
    UnknownIdentifierError,
    UnknownModelError,
    UnknownRelationError,
)
from .checker import (
    CandidateChecker,
    ModelCheck,
    check_model,
    final_states_axiomatic,
    reachable_axiomatic,
)
from .enumerate import count_candidates, enumerate_candidates
from .graph import RELATION_NAMES, SET_NAMES, ExecutionGraph
from .model import (
    BUILTIN_MODELS,
    Axiom,
    ModelSpec,
    builtin_model,
    load_model,
    parse_model,
)

__all__ = [
    "BUILTIN_MODELS",
    "RELATION_NAMES",
    "SET_NAMES",
    "Axiom",
    "CandidateChecker",
    "ExecutionGraph",
    "ModelCheck",
    "ModelSpec",
    "ModelSyntaxError",
    "UnknownIdentifierError",
    "UnknownModelError",
    "UnknownRelationError",
    "builtin_model",
    "check_model",
    "count_candidates",
    "enumerate_candidates",
    "final_states_axiomatic",
    "load_model",
    "parse_model",
    "reachable_axiomatic",
]
