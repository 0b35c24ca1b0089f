from ._exceptions import CarrierMismatchError
from .events import ACQUIRE, INIT_THREAD, RELEASE, RMW, Event, EventKind
from .predicates import AcyclicResult, acyclic, is_empty, is_irreflexive
from .relation import Carrier, EventSet, Relation, restrict

__all__ = [
    "ACQUIRE",
    "INIT_THREAD",
    "RELEASE",
    "RMW",
    "AcyclicResult",
    "Carrier",
    "CarrierMismatchError",
    "Event",
    "EventKind",
    "EventSet",
    "Relation",
    "acyclic",
    "is_empty",
    "is_irreflexive",
    "restrict",
]
