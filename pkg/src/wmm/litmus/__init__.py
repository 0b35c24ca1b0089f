from ._exceptions import CorpusError, LitmusSyntaxError, LitmusValidationError
from .ast import (
    And,
    Atom,
    BinaryOp,
    BoolConst,
    Branch,
    Fence,
    IntLit,
    LitmusTest,
    Load,
    LocalAssign,
    Not,
    Or,
    Reg,
    Store,
    Swap,
    Thread,
    UnaryOp,
)
from .corpus import LITMUS_SUFFIX, bundled_corpus_path, load_corpus, load_litmus
from .parser import parse_litmus, validate_litmus
from .serializer import serialize_litmus

__all__ = [
    "LITMUS_SUFFIX",
    "And",
    "Atom",
    "BinaryOp",
    "BoolConst",
    "Branch",
    "CorpusError",
    "Fence",
    "IntLit",
    "LitmusSyntaxError",
    "LitmusTest",
    "LitmusValidationError",
    "Load",
    "LocalAssign",
    "Not",
    "Or",
    "Reg",
    "Store",
    "Swap",
    "Thread",
    "UnaryOp",
    "bundled_corpus_path",
    "load_corpus",
    "load_litmus",
    "parse_litmus",
    "serialize_litmus",
    "validate_litmus",
]
