"""Exact invariants and obstruction checks for link concordance and solvability."""

from . import ccomplex, fusion, milnor, obstructions, seifert, solvability
from .errors import LinkConcError

__all__ = ["ccomplex", "fusion", "milnor", "obstructions", "seifert", "solvability", "LinkConcError"]
__version__ = "0.1.0"
