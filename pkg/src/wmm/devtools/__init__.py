from .random_litmus import random_litmus

__all__ = ["random_litmus"]
