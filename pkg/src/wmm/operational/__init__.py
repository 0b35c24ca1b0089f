from .explore import Exploration, Explorer, explore, reachable_operational
from .pipeline import step_pipeline
from .semantics import (
    SWAP_REGISTER,
    Semantics,
    SemanticsConfig,
    acquire_lock,
    initial_state,
    lower_swap,
    release_lock,
    step,
    step_sc,
    step_tso,
)
from .state import (
    CoreState,
    LabelKind,
    LockAcquire,
    LockRelease,
    Operand,
    PendingInstruction,
    SystemState,
    TransitionLabel,
)

__all__ = [
    "SWAP_REGISTER",
    "CoreState",
    "Exploration",
    "Explorer",
    "LabelKind",
    "LockAcquire",
    "LockRelease",
    "Operand",
    "PendingInstruction",
    "Semantics",
    "SemanticsConfig",
    "SystemState",
    "TransitionLabel",
    "acquire_lock",
    "explore",
    "initial_state",
    "lower_swap",
    "reachable_operational",
    "release_lock",
    "step",
    "step_pipeline",
    "step_sc",
    "step_tso",
]
