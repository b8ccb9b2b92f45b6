"""
gfemod - Local and modular methods for x^2 + y^3 = z^p

Frey-curve local classification, symplectic twist planning, ell-adic
analysis on X0(11) and local solubility on the twists of X1(13), each
reproducible from the command line.
"""

__version__ = "0.1.0"
__author__ = "gfemod developers"

from .core.acceptance import run_acceptance
from .core.frey_local import classify, frey_model, good_j, search_solutions
from .core.settings import GfeSettings, get_settings
from .core.twist_planner import derive_twist_table, twist_table

__all__ = [
    "GfeSettings",
    "get_settings",
    "classify",
    "frey_model",
    "good_j",
    "search_solutions",
    "twist_table",
    "derive_twist_table",
    "run_acceptance",
]
