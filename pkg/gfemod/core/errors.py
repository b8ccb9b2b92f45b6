"""
Errors - Exception hierarchy for gfemod

Every failure raised by the library derives from GfeError so that callers
(and the CLI) can tell computation errors apart from programming errors.
Errors caused by a bad argument also derive from ValueError.
"""

import typing as tp


class GfeError(Exception):
    """Base class for all gfemod errors."""


class ConfigurationError(GfeError, ValueError):
    """Invalid settings value (environment or CLI flag)."""


class InsufficientPrecision(GfeError):
    """A comparison or valuation cannot be decided at the working precision."""


class HenselConditionFailed(GfeError, ValueError):
    """v(f(x0)) > 2 v(f'(x0)) does not hold at the starting point."""


class SingularCurve(GfeError, ValueError):
    """Weierstrass model with zero discriminant."""


class UnknownLabel(GfeError, KeyError):
    """Curve label not present in the registry."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown label"


class NotCoprimeAt(GfeError, ValueError):
    """Both a and b are divisible by the prime ell."""

    ell: int = 0


class NotCoprimeAt2(NotCoprimeAt):
    ell = 2


class NotCoprimeAt3(NotCoprimeAt):
    ell = 3


class NoSolution(GfeError):
    """An equation that was expected to be solvable has no solution."""


class BruteForceBoundExceeded(GfeError, ValueError):
    """Enumeration requested beyond the configured brute-force bound."""


class PDividesValuation(GfeError, ValueError):
    """p divides a discriminant valuation handed to the KO criterion."""


class PreconditionFailed(GfeError, ValueError):
    """Operation called outside its domain."""


class CompositeP(GfeError, ValueError):
    """The exponent p is not prime."""


class HypothesisFailed(GfeError):
    """A Gauss-valuation hypothesis of the branch solver does not hold."""

    def __init__(self, which: str, detail: str = ""):
        self.which = which
        message = f"hypothesis '{which}' failed"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class RamifiedRoots(GfeError):
    """Branch series coefficients live in a ramified extension of Q_ell."""

    def __init__(self, message: str, report: tp.Any = None):
        self.report = report
        super().__init__(message)


class NoRationalRoot(GfeError):
    """The fiber polynomial has no root over Q_ell."""


class OutsideDomain(GfeError, ValueError):
    """Point lies outside the convergence domain of the series."""
