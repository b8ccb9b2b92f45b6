"""
J-Disks - Subsets of the j-line over Q_2 and Q_3

The j-invariant shapes that appear in the local classification tables and
the family of nine 2-adic sets that contain every 2-adically good
j-invariant, together with the per-curve assignments of those sets.
"""

import enum
import logging
import typing as tp
from dataclasses import dataclass

from sympy import Rational, oo

from .errors import InsufficientPrecision, PreconditionFailed, UnknownLabel
from .exact_arith import PadicElement, as_rational, is_power_padic, valuation

logger = logging.getLogger(__name__)

J_1728 = Rational(1728)


class DiskVariant(enum.Enum):
    CENTER_MODULUS = "CenterModulus"
    QUADRATIC_FAMILY = "QuadraticFamily"
    INVERSE_POWER = "InversePower"
    POLY_CUBE = "PolyCube"


def _is_infinite(j: tp.Any) -> bool:
    return j is None or j is oo or (isinstance(j, str) and j.lower() in ("oo", "inf", "infinity"))


def _as_local(j: tp.Any) -> tp.Any:
    return j if isinstance(j, PadicElement) else as_rational(j)


def _is_zero_j(j: tp.Any) -> bool:
    if isinstance(j, PadicElement):
        return j.is_exact_zero
    return j == 0


def _integral_power(w: tp.Any, e: int, ell: int) -> bool:
    """Whether w = t^e for some t in Z_ell."""
    if isinstance(w, PadicElement):
        if w.is_exact_zero:
            return True
        if w.prec == 0:
            raise InsufficientPrecision(f"cannot decide whether {w} is an {e}-th power")
        v = w.val
    else:
        if w == 0:
            return True
        v = valuation(w, ell)
    if v < 0:
        return False
    return is_power_padic(w, e, ell)


@dataclass(frozen=True)
class JDisk:
    """
    A subset of P^1(Q_ell) described by one of four shapes:

      CenterModulus    center + ell^k Z_ell
      QuadraticFamily  {center + scale t^2 : t in Z_ell}
      InversePower     {ell^(k-e) t^(-e) : t in Z_ell}, e = exponent or the exponent p
      PolyCube         {scale t^3 : t in Z_ell}
    """

    variant: DiskVariant
    ell: int
    center: Rational = Rational(0)
    k: int = 0
    scale: Rational = Rational(1)
    exponent: tp.Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "center", as_rational(self.center))
        object.__setattr__(self, "scale", as_rational(self.scale))

    @classmethod
    def center_modulus(cls, center: tp.Any, k: int, ell: int = 2) -> "JDisk":
        return cls(DiskVariant.CENTER_MODULUS, ell, center=center, k=k)

    @classmethod
    def quadratic(cls, scale: tp.Any, ell: int = 2, base: tp.Any = J_1728) -> "JDisk":
        return cls(DiskVariant.QUADRATIC_FAMILY, ell, center=base, scale=scale)

    @classmethod
    def inverse_power(cls, k: int, exponent: tp.Optional[int] = None, ell: int = 2) -> "JDisk":
        return cls(DiskVariant.INVERSE_POWER, ell, k=k, exponent=exponent)

    @classmethod
    def poly_cube(cls, scale: tp.Any, ell: int = 2) -> "JDisk":
        return cls(DiskVariant.POLY_CUBE, ell, scale=scale)

    def contains(self, j: tp.Any, p: tp.Optional[int] = None) -> bool:
        """
        Membership of an exact rational or a PadicElement j.

        Args:
            j: j-invariant (None or oo for the point at infinity)
            p: the exponent, needed by InversePower disks without a fixed exponent

        Raises:
            InsufficientPrecision: j is not known to enough ell-adic digits
            PreconditionFailed: InversePower disk without an exponent
        """
        if _is_infinite(j):
            return False
        j = _as_local(j)
        ell = self.ell
        if self.variant is DiskVariant.CENTER_MODULUS:
            diff = j - self.center
            if isinstance(diff, PadicElement):
                if diff.is_zero_at_precision():
                    if diff.abs_prec >= self.k:
                        return True
                    raise InsufficientPrecision(f"{j} known only modulo {ell}^{diff.abs_prec}")
                return diff.val >= self.k
            return diff == 0 or valuation(diff, ell) >= self.k
        if self.variant is DiskVariant.QUADRATIC_FAMILY:
            return _integral_power((j - self.center) / self.scale, 2, ell)
        if self.variant is DiskVariant.POLY_CUBE:
            return _integral_power(j / self.scale, 3, ell)
        e = self.exponent if self.exponent is not None else p
        if e is None:
            raise PreconditionFailed(f"{self.describe()} needs the exponent p")
        if _is_zero_j(j):
            return False
        u = Rational(ell) ** (self.k - e) / j
        return _integral_power(u, e, ell)

    __contains__ = contains

    def describe(self) -> str:
        ell = self.ell
        if self.variant is DiskVariant.CENTER_MODULUS:
            return f"{self.center} + {ell}^{self.k} Z_{ell}"
        if self.variant is DiskVariant.QUADRATIC_FAMILY:
            return f"{{{self.center} + ({self.scale}) t^2 : t in Z_{ell}}}"
        if self.variant is DiskVariant.POLY_CUBE:
            return f"{{({self.scale}) t^3 : t in Z_{ell}}}"
        e = "p" if self.exponent is None else str(self.exponent)
        return f"{{{ell}^({self.k}-{e}) t^(-{e}) : t in Z_{ell}}}"

    def to_json(self) -> tp.Dict[str, tp.Any]:
        params: tp.Dict[str, tp.Any] = {"ell": self.ell}
        if self.variant is DiskVariant.CENTER_MODULUS:
            params.update(center=str(self.center), modulus=f"{self.ell}^{self.k}")
        elif self.variant is DiskVariant.QUADRATIC_FAMILY:
            params.update(base=str(self.center), scale=str(self.scale))
        elif self.variant is DiskVariant.POLY_CUBE:
            params.update(scale=str(self.scale))
        else:
            params.update(shift=self.k, exponent="p" if self.exponent is None else self.exponent)
        return {"variant": self.variant.value, "params": params}

    def __str__(self) -> str:
        return self.describe()


# The nine 2-adic sets
CAL_D: tp.Dict[str, JDisk] = {
    "15*2^6+2^11Z2": JDisk.center_modulus(15 * 2 ** 6, 11),
    "-2^6+2^11Z2": JDisk.center_modulus(-(2 ** 6), 11),
    "2^9+2^11Z2": JDisk.center_modulus(2 ** 9, 11),
    "-2^9+2^11Z2": JDisk.center_modulus(-(2 ** 9), 11),
    "2^-5t^-11": JDisk.inverse_power(6, 11),
    "12^3-3*2^10t^2": JDisk.quadratic(-3 * 2 ** 10),
    "12^3-2^10t^2": JDisk.quadratic(-(2 ** 10)),
    "12^3+2^10t^2": JDisk.quadratic(2 ** 10),
    "12^3+3*2^10t^2": JDisk.quadratic(3 * 2 ** 10),
}

# curves of the set E -> names of the sets in CAL_D a good j(P) can lie in
CURVE_DISKS: tp.Dict[str, tp.List[str]] = {
    "54a1": ["2^-5t^-11"],
    "96a1": ["15*2^6+2^11Z2", "-2^6+2^11Z2", "-2^9+2^11Z2"],
    "864a1": ["12^3-3*2^10t^2", "12^3+2^10t^2"],
    "864b1": ["12^3-2^10t^2", "12^3+3*2^10t^2", "2^9+2^11Z2"],
    "864c1": ["15*2^6+2^11Z2", "-2^6+2^11Z2", "-2^9+2^11Z2"],
}

# what is left after the Selmer-group images are taken into account
SELMER_DISKS: tp.Dict[str, tp.List[str]] = {
    "54a1": ["2^-5t^-11"],
    "96a1": ["15*2^6+2^11Z2", "-2^6+2^11Z2"],
    "864a1": [],
    "864b1": ["2^9+2^11Z2"],
    "864c1": ["-2^9+2^11Z2"],
}

# (curve, set, point P on X0(11), whether j(P) lies in the set minus {0, 12^3, oo})
REMAINING_POINTS: tp.List[tp.Tuple[str, str, str, bool]] = [
    ("54a1", "2^-5t^-11", "(16, 60)", False),
    ("96a1", "15*2^6+2^11Z2", "-can(96a2)", False),
    ("96a1", "-2^6+2^11Z2", "can(96a1)", True),
    ("864b1", "2^9+2^11Z2", "can(864b1)", True),
    ("864c1", "-2^9+2^11Z2", "can(864c1)", True),
]


def _is_branch_point(j: tp.Any) -> bool:
    if _is_infinite(j):
        return True
    if isinstance(j, PadicElement):
        return j.is_exact_zero or (j - J_1728).is_exact_zero
    j = as_rational(j)
    return j == 0 or j == J_1728


def jdisk_membership(j: tp.Any) -> tp.List[str]:
    """
    Names of the sets in CAL_D that contain j.

    The branch points 0, 12^3 and oo are excluded and return [].

    Raises:
        InsufficientPrecision: j is a PadicElement with too few digits
    """
    if _is_branch_point(j):
        return []
    members = [name for name, disk in CAL_D.items() if disk.contains(j)]
    logger.debug(f"j = {j} lies in {members}")
    return members


def curve_disks(label: str) -> tp.List[JDisk]:
    """
    The sets of CAL_D that can contain a good j(P) for P on X_E(11).

    Raises:
        UnknownLabel: label is not one of 54a1, 96a1, 864a1, 864b1, 864c1
    """
    try:
        names = CURVE_DISKS[label]
    except KeyError:
        raise UnknownLabel(f"'{label}' is not one of {', '.join(CURVE_DISKS)}") from None
    return [CAL_D[name] for name in names]


def selmer_disks(label: str) -> tp.List[JDisk]:
    if label not in SELMER_DISKS:
        raise UnknownLabel(f"'{label}' is not one of {', '.join(SELMER_DISKS)}")
    return [CAL_D[name] for name in SELMER_DISKS[label]]


def remaining_points() -> tp.List[tp.Dict[str, tp.Any]]:
    return [
        {"curve": curve, "disk": CAL_D[name].to_json(), "name": name, "point": point, "j_in_disk": inside}
        for curve, name, point, inside in REMAINING_POINTS
    ]
