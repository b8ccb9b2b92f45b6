"""
gfemod Core Components

Exact and ell-adic arithmetic, elliptic-curve models, GL2(F_p) matrices,
the local Frey-curve tables, the twist planner and the modular-curve
computations on X0(11), X0(13) and X1(13).
"""

from .elliptic_models import EllPoint, WeierstrassModel, quadratic_twist
from .errors import GfeError
from .exact_arith import PadicElement, PowerSeries
from .frey_local import classify, frey_model, search_solutions
from .galois_matrix import MatGL2, SubgroupGL2
from .registry import CurveRegistry, reference_curve
from .settings import GfeSettings, get_settings
from .tate import ReductionData, tate_algorithm
from .twist_planner import TwistPlanEntry, derive_twist_table, twist_table

__all__ = [
    "EllPoint",
    "WeierstrassModel",
    "quadratic_twist",
    "GfeError",
    "PadicElement",
    "PowerSeries",
    "classify",
    "frey_model",
    "search_solutions",
    "MatGL2",
    "SubgroupGL2",
    "CurveRegistry",
    "reference_curve",
    "GfeSettings",
    "get_settings",
    "ReductionData",
    "tate_algorithm",
    "TwistPlanEntry",
    "derive_twist_table",
    "twist_table",
]
