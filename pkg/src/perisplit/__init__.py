"""Splitting rings, determinantal varieties and Betti tables, computed exactly over Q."""
from .errors import BudgetExceeded, InvariantViolation, PerisplitError

__version__ = "0.1.0"

__all__ = ["BudgetExceeded", "InvariantViolation", "PerisplitError", "__version__"]
