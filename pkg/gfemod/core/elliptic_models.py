"""
Elliptic Models - Weierstrass models over Q and their formal groups

Long Weierstrass models with exact rational coefficients, the standard
invariant formulary, quadratic twists, isomorphism tests over Q and Q_ell,
the group law on rational or ell-adic points, the 2-division polynomial and
the formal-group expansions (w(t), x(t), y(t), logarithm, doubling) in the
uniformizer t = -x/y at the origin.
"""

import logging
import typing as tp
from dataclasses import dataclass
from functools import cached_property, lru_cache

from sympy import Poly, Rational, symbols

from .errors import SingularCurve
from .exact_arith import (
    LaurentSeries,
    PadicElement,
    PowerSeries,
    as_rational,
    exact_nth_root,
    is_power_padic,
)

logger = logging.getLogger(__name__)

X = symbols("x")


class Invariants(tp.NamedTuple):
    b2: Rational
    b4: Rational
    b6: Rational
    b8: Rational
    c4: Rational
    c6: Rational
    disc: Rational
    j: Rational


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with Delta != 0."""

    a1: Rational = Rational(0)
    a2: Rational = Rational(0)
    a3: Rational = Rational(0)
    a4: Rational = Rational(0)
    a6: Rational = Rational(0)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.disc == 0:
            raise SingularCurve(f"singular model {self.ainvs}")

    @classmethod
    def from_ainvs(cls, ainvs: tp.Sequence[tp.Any]) -> "WeierstrassModel":
        if len(ainvs) == 2:
            return cls(a4=ainvs[0], a6=ainvs[1])
        if len(ainvs) != 5:
            raise ValueError(f"expected 2 or 5 a-invariants, got {len(ainvs)}")
        return cls(*ainvs)

    @property
    def ainvs(self) -> tp.Tuple[Rational, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def b2(self) -> Rational:
        return self.a1 ** 2 + 4 * self.a2

    @cached_property
    def b4(self) -> Rational:
        return 2 * self.a4 + self.a1 * self.a3

    @cached_property
    def b6(self) -> Rational:
        return self.a3 ** 2 + 4 * self.a6

    @cached_property
    def b8(self) -> Rational:
        a1, a2, a3, a4, a6 = self.ainvs
        return a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2

    @cached_property
    def c4(self) -> Rational:
        return self.b2 ** 2 - 24 * self.b4

    @cached_property
    def c6(self) -> Rational:
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @cached_property
    def disc(self) -> Rational:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 ** 2 * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6

    @cached_property
    def j(self) -> Rational:
        return self.c4 ** 3 / self.disc

    def is_on_curve(self, P: "EllPoint") -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x ** 3 + self.a2 * x * x + self.a4 * x + self.a6
        return _is_zero(lhs - rhs)

    def __str__(self) -> str:
        return f"[{', '.join(str(a) for a in self.ainvs)}]"


def invariants(m: WeierstrassModel) -> Invariants:
    """(b2, b4, b6, b8, c4, c6, Delta, j) of a model."""
    return Invariants(m.b2, m.b4, m.b6, m.b8, m.c4, m.c6, m.disc, m.j)


def quadratic_twist(m: WeierstrassModel, d: int) -> WeierstrassModel:
    """
    Short model of the quadratic twist by d.

    The result is y^2 = x^3 - (c4 d^2/48) x - (c6 d^3/864), so that
    c4' = d^2 c4, c6' = d^3 c6 and Delta' = d^6 Delta.
    """
    d = as_rational(d)
    if d == 0:
        raise ValueError("twist parameter must be nonzero")
    return WeierstrassModel(a4=-m.c4 * d ** 2 / 48, a6=-m.c6 * d ** 3 / 864)


def short_model(m: WeierstrassModel) -> WeierstrassModel:
    return quadratic_twist(m, 1)


def _ratio_is_power(ratio: Rational, e: int, ell: tp.Optional[int]) -> bool:
    if ell is None:
        return exact_nth_root(ratio, e) is not None
    return is_power_padic(ratio, e, ell)


def _isomorphic(m1: WeierstrassModel, m2: WeierstrassModel, ell: tp.Optional[int]) -> bool:
    if m1.j != m2.j:
        return False
    c4, c6, c4p, c6p = m1.c4, m1.c6, m2.c4, m2.c6
    if c4 == 0:
        return _ratio_is_power(c6p / c6, 6, ell)
    if c6 == 0:
        return _ratio_is_power(c4p / c4, 4, ell)
    # u^4 = c4'/c4 and u^6 = c6'/c6 force u^2 = (c6'/c6)/(c4'/c4)
    u2 = (c6p / c6) / (c4p / c4)
    if u2 ** 2 != c4p / c4:
        return False
    return _ratio_is_power(u2, 2, ell)


def is_isomorphic(m1: WeierstrassModel, m2: WeierstrassModel) -> bool:
    """Isomorphism over Q (c4 and c6 scale by u^4, u^6 with u rational)."""
    return _isomorphic(m1, m2, None)


def is_locally_isomorphic(m1: WeierstrassModel, m2: WeierstrassModel, ell: int) -> bool:
    """Isomorphism over Q_ell."""
    return _isomorphic(m1, m2, ell)


# Points

Coordinate = tp.Union[Rational, PadicElement]


@dataclass(frozen=True)
class EllPoint:
    """Affine point (x, y) or the point at infinity (x = y = None)."""

    x: tp.Optional[Coordinate] = None
    y: tp.Optional[Coordinate] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @classmethod
    def of(cls, x: tp.Any, y: tp.Any) -> "EllPoint":
        if isinstance(x, PadicElement) or isinstance(y, PadicElement):
            return cls(x, y)
        return cls(as_rational(x), as_rational(y))

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = EllPoint()


def _is_zero(value: tp.Any) -> bool:
    if isinstance(value, PadicElement):
        return value.is_zero_at_precision()
    return value == 0


def point_neg(m: WeierstrassModel, P: EllPoint) -> EllPoint:
    if P.is_infinity:
        return P
    return EllPoint(P.x, -P.y - m.a1 * P.x - m.a3)


def point_add(m: WeierstrassModel, P: EllPoint, Q: EllPoint) -> EllPoint:
    """Chord-and-tangent addition; coordinates may be Rationals or PadicElements."""
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = m.ainvs
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if _is_zero(x2 - x1):
        if _is_zero(y1 + y2 + a1 * x2 + a3):
            return INFINITY
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return EllPoint(x3, y3)


def point_mul(m: WeierstrassModel, k: int, P: EllPoint) -> EllPoint:
    """k*P by double-and-add."""
    if k < 0:
        return point_mul(m, -k, point_neg(m, P))
    result = INFINITY
    addend = P
    while k:
        if k & 1:
            result = point_add(m, result, addend)
        addend = point_add(m, addend, addend)
        k >>= 1
    return result


def point_order(m: WeierstrassModel, P: EllPoint, bound: int = 16) -> tp.Optional[int]:
    """Order of a torsion point, or None if it exceeds `bound`."""
    Q = P
    for n in range(1, bound + 1):
        if Q.is_infinity:
            return n
        Q = point_add(m, Q, P)
    return None


def division_poly_2(m: WeierstrassModel) -> Poly:
    """4x^3 + b2 x^2 + 2 b4 x + b6, whose roots are the x-coordinates of E[2]."""
    return Poly(4 * X ** 3 + m.b2 * X ** 2 + 2 * m.b4 * X + m.b6, X, domain="QQ")


# Formal group


def formal_w(m: WeierstrassModel, N: int) -> PowerSeries:
    """w(z) = -1/y in z = -x/y, modulo z^N."""
    a1, a2, a3, a4, a6 = m.ainvs
    z = PowerSeries.variable(N)
    z2, z3 = z * z, z * z * z
    w = z3
    for _ in range(N):
        w = z3 + a1 * z * w + a2 * z2 * w + a3 * w * w + a4 * z * w * w + a6 * w * w * w
    return w


def _w_over_z3(m: WeierstrassModel, N: int) -> PowerSeries:
    w = formal_w(m, N + 3)
    return PowerSeries(w.coefficients[3:], N)


def formal_xy(m: WeierstrassModel, N: int) -> tp.Tuple[LaurentSeries, LaurentSeries]:
    """Laurent expansions x(t) = t/w, y(t) = -1/w with N terms of relative precision."""
    W_inv = _w_over_z3(m, N).inverse()
    return LaurentSeries(-2, W_inv), LaurentSeries(-3, -W_inv)


@lru_cache(maxsize=32)
def _formal_log_cached(ainvs: tp.Tuple[Rational, ...], N: int) -> PowerSeries:
    m = WeierstrassModel(*ainvs)
    a1, a3 = m.a1, m.a3
    W = _w_over_z3(m, N)
    z = PowerSeries.variable(N)
    numerator = 2 * W + z * W.derivative()
    denominator = W * (2 - a1 * z - a3 * z * z * z * W)
    omega = numerator / denominator
    log = omega.integral().truncate(N)
    logger.debug(f"formal log of {m} to O(t^{N}) computed")
    return log


def formal_log(m: WeierstrassModel, N: int) -> PowerSeries:
    """
    Formal-group logarithm of m modulo t^N.

    The invariant differential dx/(2y + a1 x + a3) is expanded in t through
    w(t) and integrated termwise; the coefficient of t is 1.
    """
    if N < 2:
        raise ValueError(f"formal log needs N >= 2, got {N}")
    return _formal_log_cached(m.ainvs, N)


@lru_cache(maxsize=32)
def _doubling_cached(ainvs: tp.Tuple[Rational, ...], N: int) -> PowerSeries:
    m = WeierstrassModel(*ainvs)
    a1, a2, a3, a4, _ = m.ainvs
    n = N + 8
    x, y = formal_xy(m, n)
    lam = (x * x * 3 + x * (2 * a2) + a4 - y * a1) / (y * 2 + x * a1 + a3)
    nu = y - lam * x
    x3 = lam * lam + lam * a1 - a2 - x * 2
    y3 = -(lam + a1) * x3 - nu - a3
    t2 = -(x3 / y3)
    return t2.to_power_series().truncate(N)


def doubling_series(m: WeierstrassModel, N: int) -> PowerSeries:
    """[2](t): the t-coordinate of 2P as a series in t(P), modulo t^N."""
    return _doubling_cached(m.ainvs, N)


def point_from_t(m: WeierstrassModel, t: tp.Any, terms: int) -> EllPoint:
    """Point of the formal group with parameter t: x = t/w(t), y = -1/w(t)."""
    w = formal_w(m, terms).evaluate(t)
    return EllPoint(t / w, -1 / w)


def t_parameter(P: EllPoint) -> tp.Any:
    if P.is_infinity:
        return Rational(0)
    return -P.x / P.y
