from .final_state import FinalState
from .verdict import AXIOMATIC, OPERATIONAL, Rejection, Verdict

__all__ = ["AXIOMATIC", "OPERATIONAL", "FinalState", "Rejection", "Verdict"]
