"""
X0(11) Toolkit - The j-map on X0(11), branch series and the 2-adic logarithm

Exact data for the model y^2 + y = x^3 - x^2 - 10x - 20 of X0(11) and its
degree-12 j-map, the relation F(x, j) = 0 obtained by eliminating y, a
Newton-polygon branch solver that expands the solutions of F(t^e, y) = 0
and checks on which 2-adic disk they converge, the 2-adic elliptic
logarithm on the kernel of reduction with its halving criterion, and the
bounded-height point search on the twists of X_ns(11).
"""

import logging
import typing as tp
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import comb

import numpy as np
from sympy import Poly, Rational, integer_nthroot, oo, symbols

from .elliptic_models import (
    INFINITY,
    EllPoint,
    WeierstrassModel,
    division_poly_2,
    doubling_series,
    formal_log,
    formal_xy,
    point_add,
    point_from_t,
    point_mul,
    point_order,
    t_parameter,
)
from .errors import (
    HypothesisFailed,
    InsufficientPrecision,
    NoRationalRoot,
    OutsideDomain,
    PreconditionFailed,
    RamifiedRoots,
    UnknownLabel,
)
from .exact_arith import (
    LaurentSeries,
    PadicElement,
    PadicPoly,
    PowerSeries,
    as_rational,
    ceil_rational,
    gauss_valuation,
    hensel_lift,
    newton_polygon,
    padic_from_rational,
    padic_roots,
    truncate_rational,
    valuation,
)
from .jdisk import CAL_D, REMAINING_POINTS, DiskVariant, JDisk, remaining_points
from .settings import GfeSettings, get_settings

logger = logging.getLogger(__name__)

X, Y, J = symbols("x y j")
S = symbols("s")

X011_AINVS = (0, -1, 1, -10, -20)

A_POLY = Poly(
    743 * X ** 11 + 21559874 * X ** 10 + 19162005343 * X ** 9 + 2536749758583 * X ** 8
    + 82165362766027 * X ** 7 + 576036867160006 * X ** 6 - 1895608370650736 * X ** 5
    - 14545268641576841 * X ** 4 + 420015065507429 * X ** 3 + 74593328129816300 * X ** 2
    + 108160113602504237 * X - 39176677684144739,
    X,
    domain="QQ",
)

B_FACTORS = (
    Poly(X ** 5 + 4518 * X ** 4 + 1304157 * X ** 3 + 65058492 * X ** 2 + 271927184 * X - 707351591, X, domain="QQ"),
    Poly(X ** 5 + 192189 * X ** 4 + 3626752 * X ** 3 - 3406817 * X ** 2 - 37789861 * X - 37315543, X, domain="QQ"),
)

# F(x, j) = K(x)^3 + P(x) j - (x - 16)^11 j^2
K_POLY = Poly(X ** 4 - 52820 * X ** 3 + 1333262 * X ** 2 + 4971236 * X + 9789217, X, domain="QQ")

P_POLY = Poly(
    1486 * X ** 11 + 43119747 * X ** 10 + 38323813979 * X ** 9 + 5072626276355 * X ** 8
    + 164063633585170 * X ** 7 + 1134855511654843 * X ** 6 - 4074814667347831 * X ** 5
    - 29669709666741936 * X ** 4 + 6839041777752481 * X ** 3 + 159480622275659333 * X ** 2
    + 199736619430410535 * X - 104748564078368391,
    X,
    domain="QQ",
)

CUSP_DENOMINATOR = Poly((X - 16) ** 11, X, domain="QQ")

X011_TORSION = [(5, 5), (5, -6), (16, 60), (16, -61)]


@dataclass(frozen=True)
class JMapData:
    """X0(11) with its j-map j = (a(x) + b(x) y)/(x - 16)^11 and the relation F(x, j)."""

    model: WeierstrassModel
    a_poly: Poly
    b_poly: Poly
    k_poly: Poly
    F: Poly

    @property
    def cubic(self) -> Poly:
        """f(x) with y^2 + y = f(x)."""
        a1, a2, a3, a4, a6 = self.model.ainvs
        return Poly(X ** 3 + a2 * X ** 2 + a4 * X + a6, X, domain="QQ")

    def j_coefficient(self, power: int) -> Poly:
        """Coefficient of j^power in F as a polynomial in x."""
        coeffs = {i: c for (i, k), c in self.F.terms() if k == power}
        return Poly(sum(c * X ** i for i, c in coeffs.items()) + 0 * X, X, domain="QQ")

    def j_value(self, P: EllPoint) -> tp.Optional[Rational]:
        """j(P) for a rational point; None at the two cusps."""
        if P.is_infinity:
            return None
        x, y = as_rational(P.x), as_rational(P.y)
        d = x - 16
        if d != 0:
            return (self.a_poly.eval(x) + self.b_poly.eval(x) * y) / d ** 11
        # conjugate form, regular at the x = 16 point that is not a cusp
        den = self.a_poly.eval(x) - self.b_poly.eval(x) * (1 + y)
        if den == 0:
            return None
        return -self.k_poly.eval(x) ** 3 / den

    def evaluate(self, x: tp.Any, j: tp.Any) -> Rational:
        return self.F.eval({X: as_rational(x), J: as_rational(j)})

    def fiber(self, j0: tp.Any) -> Poly:
        """F(x, j0) as a polynomial in x."""
        return Poly(self.F.as_expr().subs(J, as_rational(j0)), X, domain="QQ")


def _verify_identities(data: JMapData) -> None:
    x16 = CUSP_DENOMINATOR
    a, b, f = data.a_poly, data.b_poly, data.cubic
    # y-part and norm of (a + b y) modulo y^2 + y - f
    if data.j_coefficient(1) != 2 * a - b:
        raise AssertionError("coefficient of j in F is not 2a - b")
    if not (data.k_poly ** 3 * x16 + a * a - a * b - b * b * f).is_zero:
        raise AssertionError("norm of a + b y is not -K^3 (x - 16)^11")
    if data.j_coefficient(2) != -x16:
        raise AssertionError("coefficient of j^2 in F is not -(x - 16)^11")
    if data.j_coefficient(0) != data.k_poly ** 3:
        raise AssertionError("constant term of F is not K^3")


@lru_cache(maxsize=1)
def x011_data() -> JMapData:
    """
    The X0(11) constants, checked by exact polynomial arithmetic.

    Raises:
        AssertionError: a transcribed constant violates one of the identities
    """
    model = WeierstrassModel(*X011_AINVS)
    b_poly = B_FACTORS[0] * B_FACTORS[1]
    F_expr = K_POLY.as_expr() ** 3 + P_POLY.as_expr() * J - CUSP_DENOMINATOR.as_expr() * J ** 2
    data = JMapData(model, A_POLY, b_poly, K_POLY, Poly(F_expr, X, J, domain="QQ"))
    _verify_identities(data)
    logger.debug("X0(11) j-map identities verified")
    return data


def x011_torsion() -> tp.List[EllPoint]:
    """The five rational points of X0(11); they form a cyclic group of order 5."""
    model = x011_data().model
    points = [INFINITY] + [EllPoint.of(x, y) for x, y in X011_TORSION]
    for P in points:
        if not model.is_on_curve(P):
            raise AssertionError(f"{P} is not on X0(11)")
        if point_order(model, P, 5) not in (1, 5):
            raise AssertionError(f"{P} does not have order dividing 5")
    return points


# Expansions at the cusp O


@dataclass(frozen=True)
class CuspExpansion:
    """Laurent series of x, y and j in t = -x/y at the origin of X0(11)."""

    x: LaurentSeries
    y: LaurentSeries
    j: LaurentSeries
    j_norm: LaurentSeries

    def to_json(self) -> tp.Dict[str, tp.Any]:
        def dump(series: LaurentSeries) -> tp.Dict[str, tp.Any]:
            return {
                "valuation": series.valuation,
                "coefficients": [str(c) for c in series.body.coefficients],
            }

        return {"x": dump(self.x), "y": dump(self.y), "j": dump(self.j)}


def _poly_at(poly: Poly, z: LaurentSeries) -> LaurentSeries:
    coeffs = poly.all_coeffs()
    result = LaurentSeries(0, PowerSeries.constant(Rational(coeffs[0]), z.body.precision))
    for c in coeffs[1:]:
        result = result * z + Rational(c)
    return result


def cusp_expansion(N: int) -> CuspExpansion:
    """
    Expansions with N terms of relative precision.

    j is computed twice, as (a + b y)/(x - 16)^11 and as -K^3/(a - b - b y);
    the two agree because of the norm identity.
    """
    data = x011_data()
    x, y = formal_xy(data.model, N)
    a, b = _poly_at(data.a_poly, x), _poly_at(data.b_poly, x)
    j = (a + b * y) / _poly_at(CUSP_DENOMINATOR, x)
    k = _poly_at(data.k_poly, x)
    j_norm = -(k * k * k) / (a - b - b * y)
    return CuspExpansion(x, y, j, j_norm)


# Branch series


@dataclass(frozen=True)
class BranchReport:
    """
    Solutions y = phi(t) of F(t^e, y) = 0 with phi(0) = 0.

    `bound` is a lower bound for v(phi(tau)) on the disk v(tau) >= rho, and
    `slope` is set when v(phi(tau)) = slope + v(tau) holds there exactly.
    """

    e: int
    ell: int
    series: tp.Tuple[PowerSeries, ...]
    leading: tp.Tuple[tp.Any, ...]
    c: Rational
    rho: tp.Optional[Rational]
    bound: tp.Optional[Rational]
    slope: tp.Optional[Rational]
    hypotheses: tp.Dict[str, bool] = field(default_factory=dict)
    residual_valuation: tp.Any = oo
    conjugates_outside: int = 0
    threshold: tp.Optional[Rational] = None

    @property
    def verified(self) -> bool:
        return all(self.hypotheses.get(name, True) for name in ("lower", "unit", "upper"))

    def clears(self, threshold: tp.Any) -> bool:
        return self.bound is not None and self.bound > as_rational(threshold)

    def to_json(self) -> tp.Dict[str, tp.Any]:
        return {
            "e": self.e,
            "ell": self.ell,
            "c": str(self.c),
            "rho": None if self.rho is None else str(self.rho),
            "bound": None if self.bound is None else str(self.bound),
            "slope": None if self.slope is None else str(self.slope),
            "threshold": None if self.threshold is None else str(self.threshold),
            "hypotheses": dict(self.hypotheses),
            "residual_valuation": str(self.residual_valuation),
            "conjugates_outside": self.conjugates_outside,
            "series": [[str(c) for c in s.coefficients] for s in self.series],
        }


def _wv(coeffs: tp.Sequence[tp.Any], ell: int, rho: Rational):
    return gauss_valuation(PadicPoly(list(coeffs) or [0], ell), rho)


def _stretch(row: tp.Dict[int, Rational], e: int) -> tp.List[Rational]:
    """Coefficients of F_m(t^e) from those of F_m(t)."""
    if not row:
        return [Rational(0)]
    out = [Rational(0)] * (e * max(row) + 1)
    for i, c in row.items():
        out[e * i] = c
    return out


def _min_valuation(series: PowerSeries, ell: int):
    vals = [valuation(c, ell) for c in series.coefficients if c != 0]
    return min(vals) if vals else oo


def _check_hypotheses(
    rows: tp.Dict[int, tp.Dict[int, Rational]], e: int, ell: int, rho: Rational, c: Rational
) -> tp.Tuple[tp.Dict[str, bool], Rational]:
    w0 = _wv(_stretch(rows.get(0, {}), e), ell, rho)
    checks = {"lower": True, "unit": True, "upper": True}
    for m, row in rows.items():
        if m == 0 or m == e:
            continue
        w = _wv(_stretch(row, e), ell, rho)
        if w is oo:
            continue
        if m < e and not w > Rational(e - m, e) * w0:
            checks["lower"] = False
        if m > e and not Rational(m - e, e) * w0 + w > 0:
            checks["upper"] = False
    unit = _stretch(rows.get(e, {}), e)
    unit[0] -= 1
    w_unit = _wv(unit, ell, rho)
    checks["unit"] = w_unit is oo or w_unit > 0
    linear = _stretch(rows.get(0, {}), e)
    if len(linear) <= e:
        linear += [Rational(0)] * (e + 1 - len(linear))
    linear[e] += c
    w_lin = _wv(linear, ell, rho)
    checks["slope"] = w_lin is oo or w_lin > w0
    return checks, w0


def _solve_series(
    rows: tp.Dict[int, tp.Dict[int, Rational]], e: int, gamma: Rational, terms: int, ell: int, digits: tp.Optional[int]
) -> tp.Tuple[PowerSeries, tp.Any]:
    """Newton iteration for z with t^-e F(t^e, t z) = 0 and z(0) = gamma."""
    A: tp.Dict[int, PowerSeries] = {}
    for m, row in rows.items():
        coeffs = [Rational(0)] * terms
        for i, c in row.items():
            k = e * i + m - e
            if 0 <= k < terms:
                coeffs[k] += c
        A[m] = PowerSeries(coeffs, terms)

    def residual(z: PowerSeries) -> tp.Tuple[PowerSeries, PowerSeries]:
        H = PowerSeries.constant(0, terms)
        dH = PowerSeries.constant(0, terms)
        power = PowerSeries.constant(1, terms)
        for m in range(max(A) + 1):
            if m in A:
                H = H + A[m] * power
            if m + 1 in A:
                dH = dH + A[m + 1] * power * (m + 1)
            power = power * z
        return H, dH

    z = PowerSeries.constant(gamma, terms)
    for step in range(terms.bit_length() + 2):
        H, dH = residual(z)
        z = z - H / dH
        z = PowerSeries([gamma] + z.coefficients[1:], terms)
        if digits is not None:
            z = z.map(lambda c: truncate_rational(c, ell, digits))
        logger.debug(f"branch Newton step {step}")
    H, _ = residual(z)
    return z.shift(1), _min_valuation(H, ell)


def _rows_of(F: Poly) -> tp.Dict[int, tp.Dict[int, Rational]]:
    if len(F.gens) != 2:
        raise PreconditionFailed(f"expected a polynomial in two variables, got gens {F.gens}")
    rows: tp.Dict[int, tp.Dict[int, Rational]] = {}
    for (i, m), c in F.terms():
        rows.setdefault(m, {})[i] = Rational(c)
    return rows


def branch_series(
    F: Poly,
    e: int,
    ell: int = 2,
    rho: tp.Any = 0,
    terms: int = 12,
    precision: tp.Optional[int] = None,
    strict: bool = True,
    settings: tp.Optional[GfeSettings] = None,
) -> BranchReport:
    """
    Expand the e branches phi with F(t^e, phi(t)) = 0, phi(0) = 0.

    F is a polynomial in (x, y). After normalization the coefficient of y^e
    at x = 0 is 1 and those of y^m for m < e vanish; coefficients of y^m at
    x = 0 of valuation at least `precision` count as zero, so an approximate
    root may have been shifted to the origin. F(t, 0) = -c t + O(t^2).

    Args:
        F: polynomial in two generators (x first)
        e: ramification index
        ell: prime of the base field Q_ell
        rho: the disk v(tau) >= rho on which convergence is checked
        terms: number of series coefficients
        precision: digits for approximate coefficients (default settings.precision)
        strict: raise on a failed Gauss-valuation hypothesis

    Returns:
        BranchReport with one series per e-th root of c in Q_ell

    Raises:
        HypothesisFailed: a shape condition fails, or (strict) a disk condition fails
        RamifiedRoots: c has no e-th root in Q_ell
    """
    settings = settings or get_settings()
    precision = precision or settings.precision
    if e < 1:
        raise PreconditionFailed(f"ramification index must be positive, got {e}")
    rho = as_rational(rho)
    rows = _rows_of(F)
    for m in range(e):
        c0 = rows.get(m, {}).get(0, Rational(0))
        if c0 != 0 and valuation(c0, ell) < precision:
            raise HypothesisFailed("vanishing", f"coefficient of y^{m} at x = 0 is {c0}")
        rows.get(m, {}).pop(0, None)
    lead = rows.get(e, {}).get(0, Rational(0))
    if lead == 0:
        raise HypothesisFailed("normalized", f"coefficient of y^{e} at x = 0 vanishes")
    rows = {m: {i: c / lead for i, c in row.items() if c != 0} for m, row in rows.items()}
    rows = {m: row for m, row in rows.items() if row}
    c = -rows.get(0, {}).get(1, Rational(0))
    if c == 0:
        raise HypothesisFailed("linear", "F(t, 0) has no linear term")

    hypotheses, w0 = _check_hypotheses(rows, e, ell, rho, c)
    failed = [name for name in ("lower", "unit", "upper") if not hypotheses[name]]
    if failed and strict:
        raise HypothesisFailed(failed[0], f"at rho = {rho}")

    roots = padic_roots(Poly(S ** e - c, S, domain="QQ"), ell, precision)
    if not roots:
        report = {"e": e, "c": str(c), "leading_valuation": str(Rational(valuation(c, ell), e))}
        raise RamifiedRoots(f"{c} has no {e}-th root in Q_{ell}", report)

    series, leading, residuals = [], [], []
    for gamma, _ in roots:
        exact = not isinstance(gamma, PadicElement)
        g = gamma if exact else gamma.to_rational()
        phi, res = _solve_series(rows, e, g, terms, ell, None if exact else precision)
        series.append(phi)
        leading.append(gamma)
        residuals.append(res)
    slope = Rational(valuation(c, ell), e) if hypotheses["slope"] else None
    report = BranchReport(
        e=e,
        ell=ell,
        series=tuple(series),
        leading=tuple(leading),
        c=c,
        rho=rho,
        bound=w0 / e if not failed else None,
        slope=slope,
        hypotheses=hypotheses,
        residual_valuation=min(residuals),
        conjugates_outside=e - len(series),
    )
    logger.debug(f"branch e={e}: {len(series)} series over Q_{ell}, hypotheses {hypotheses}")
    return report


def cusp_branch(terms: int = 10) -> BranchReport:
    """
    The branch at the cusp O: t = -x/y as a series in u = 1/j.

    j has a simple pole at O, so e = 1; the series is the reversion of u(t).
    """
    expansion = cusp_expansion(terms + 2)
    U = expansion.j.inverse().to_power_series().truncate(terms)
    phi = U.reversion()
    residual = U.compose(phi) - PowerSeries.variable(terms)
    return BranchReport(
        e=1,
        ell=2,
        series=(phi,),
        leading=(phi[1],),
        c=U[1],
        rho=None,
        bound=None,
        slope=None,
        residual_valuation=_min_valuation(residual, 2),
    )


def _shifted_relation(x0: Rational, center: Rational, lam: Rational) -> Poly:
    """F(x0 + y, center + lam s) as a polynomial in (s, y)."""
    out: tp.Dict[tp.Tuple[int, int], Rational] = {}
    for (i, k), coeff in x011_data().F.terms():
        coeff = Rational(coeff)
        for a in range(i + 1):
            xa = coeff * comb(i, a) * x0 ** (i - a)
            for b in range(k + 1):
                term = xa * comb(k, b) * center ** (k - b) * lam ** b
                out[(b, a)] = out.get((b, a), Rational(0)) + term
    return Poly.from_dict({key: v for key, v in out.items() if v != 0}, S, Y, domain="QQ")


def fiber_roots(j0: tp.Any, ell: int = 2, precision: int = 64) -> tp.List[tp.Tuple[tp.Any, int]]:
    """Roots of F(x, j0) in Q_ell with their multiplicities."""
    return padic_roots(x011_data().fiber(j0), ell, precision)


def _disk_parameters(disk: JDisk) -> tp.Tuple[Rational, Rational]:
    if disk.variant is DiskVariant.CENTER_MODULUS:
        return disk.center, Rational(disk.ell) ** disk.k
    if disk.variant is DiskVariant.QUADRATIC_FAMILY:
        return disk.center, disk.scale
    raise PreconditionFailed(f"no affine parameterization for {disk.describe()}")


def square_class_threshold(x0: tp.Any) -> Rational:
    """2 + v(x0 - theta) for theta the x-coordinate of a 2-torsion point."""
    theta = newton_polygon(PadicPoly.from_sympy(division_poly_2(x011_data().model), 2)).root_valuations()[0]
    v0 = valuation(as_rational(x0), 2)
    return 2 + (theta if v0 is oo else min(Rational(v0), theta))


def disk_slope_analysis(
    disk: JDisk,
    root: int = 0,
    terms: int = 8,
    precision: int = 48,
) -> BranchReport:
    """
    Branch analysis of the j-map over a disk of the j-line.

    Takes the root-th Q_2-rational root x0 of F(x, j_center), writes
    j = center + lam s with s = t^e (e the multiplicity of x0) and solves
    F(x0 + phi, j) = 0 on the disk v(t) >= 0.

    Raises:
        NoRationalRoot: F(x, center) has no root in Q_2
        HypothesisFailed: the disk conditions fail at rho = 0
    """
    center, lam = _disk_parameters(disk)
    roots = fiber_roots(center, disk.ell, precision)
    if not roots:
        vals = newton_polygon(PadicPoly.from_sympy(x011_data().fiber(center), disk.ell)).root_valuations()
        raise NoRationalRoot(f"F(x, {center}) has no root in Q_{disk.ell}; root valuations {vals}")
    if not 0 <= root < len(roots):
        raise PreconditionFailed(f"root index {root} out of range, {len(roots)} roots")
    x0, e = roots[root]
    x0_rational = x0.to_rational() if isinstance(x0, PadicElement) else x0
    G = _shifted_relation(x0_rational, center, lam)
    report = branch_series(G, e, disk.ell, 0, terms, precision // 2)
    threshold = square_class_threshold(x0_rational)
    logger.info(f"{disk.describe()}: x0 = {x0}, e = {e}, bound {report.bound} vs {threshold}")
    return replace(report, threshold=threshold)


# Newton-polygon shadow at the ramified cusp x = 16

CUSP_X = 16
CUSP_ORDER = 11


@dataclass(frozen=True)
class CuspShadow:
    """
    Valuations of x - 16 on the points over an InversePower disk.

    Each of the `roots` points P with j(P) = ell^(k-e) t^(-e) has
    v(x(P) - 16) = offset + tau_coefficient * v(t) for every t in Z_ell.
    Those points are defined over a ramified extension; only their
    valuations are computed. `vertices` is the polygon at v(t) = 0.
    """

    disk: str
    roots: int
    offset: tp.Optional[Rational]
    tau_coefficient: tp.Optional[Rational]
    vertices: tp.Tuple[tp.Tuple[int, Rational], ...]
    checks: tp.Dict[str, bool] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> tp.Dict[str, tp.Any]:
        return {
            "disk": self.disk,
            "roots": self.roots,
            "offset": None if self.offset is None else str(self.offset),
            "tau_coefficient": None if self.tau_coefficient is None else str(self.tau_coefficient),
            "vertices": [[i, str(w)] for i, w in self.vertices],
            "checks": dict(self.checks),
            "verified": self.verified,
        }


@lru_cache(maxsize=1)
def _cusp_rows() -> tp.Dict[int, tp.Dict[int, Rational]]:
    """u^2 F(16 + y, 1/u) as {power of y: {power of u: coefficient}}."""
    rows: tp.Dict[int, tp.Dict[int, Rational]] = {}
    for (i, k), coeff in x011_data().F.terms():
        coeff = Rational(coeff)
        for a in range(i + 1):
            term = coeff * comb(i, a) * CUSP_X ** (i - a)
            row = rows.setdefault(a, {})
            row[2 - k] = row.get(2 - k, Rational(0)) + term
    return {m: {d: c for d, c in row.items() if c != 0} for m, row in rows.items()}


def _row_valuation(row: tp.Dict[int, Rational], ell: int, r: Rational):
    vals = [valuation(c, ell) + d * r for d, c in row.items()]
    return min(vals) if vals else oo


def _dominant_degree(row: tp.Dict[int, Rational], ell: int, r: Rational) -> tp.Optional[int]:
    """The u-degree of the unique smallest term, if it is also the lowest degree."""
    if not row:
        return None
    w = _row_valuation(row, ell, r)
    hits = [d for d, c in row.items() if valuation(c, ell) + d * r == w]
    if len(hits) != 1 or hits[0] != min(row):
        return None
    return hits[0]


def cusp_disk_shadow(disk: JDisk) -> CuspShadow:
    """
    Newton polygon of u^2 F(16 + y, 1/u) in y over the disk u = ell^(e-k) t^e.

    The first segment has length 11 and its slope gives v(x - 16) on the
    points over the disk. The shape is checked at v(t) = 0 and for the way
    every coefficient grows with v(t), so it holds on all of Z_ell.

    Raises:
        PreconditionFailed: disk is not an InversePower disk with a fixed exponent
    """
    if disk.variant is not DiskVariant.INVERSE_POWER or disk.exponent is None:
        raise PreconditionFailed(f"{disk.describe()} is not a disk around j = oo")
    ell, e, E = disk.ell, disk.exponent, CUSP_ORDER
    r0 = Rational(e - disk.k)
    rows = _cusp_rows()
    top = max(rows)
    ws = [_row_valuation(rows.get(m, {}), ell, r0) for m in range(top + 1)]
    polygon = newton_polygon(PadicPoly([0 if w is oo else Rational(ell) ** w for w in ws], ell))

    d0 = _dominant_degree(rows.get(0, {}), ell, r0)
    dE = _dominant_degree(rows.get(E, {}), ell, r0)
    checks = {"constant_dominant": d0 is not None, "cusp_dominant": dE is not None}
    offset = tau_coefficient = None
    if d0 is not None and dE is not None:
        w0, wE = ws[0], ws[E]
        middle = tail = True
        for m, row in rows.items():
            if not row or m in (0, E):
                continue
            if m < E:
                line = w0 + (wE - w0) * Rational(m, E)
                growth = Rational(d0 * (E - m) + dE * m, E)
                middle = middle and ws[m] >= line and min(row) >= growth
            else:
                tail = tail and ws[m] >= wE and min(row) >= dE
        checks.update(middle_above=middle, tail_above=tail)
        checks["first_segment"] = bool(polygon.segments) and polygon.segments[0][1] == E
        offset = (w0 - wE) / E
        tau_coefficient = Rational((d0 - dE) * e, E)
    shadow = CuspShadow(disk.describe(), E, offset, tau_coefficient, polygon.vertices, checks)
    logger.info(f"{disk.describe()}: v(x - {CUSP_X}) = {offset} + {tau_coefficient} v(t), checks {checks}")
    return shadow


def disk_report(name: str, precision: int = 48) -> tp.Dict[str, tp.Any]:
    """
    What can be computed over Q_2 for one of the named disks.

    InversePower disks get the cusp shadow. The others get the branch
    analysis when F(x, center) has a Q_2-rational root; otherwise the
    fiber lies in extensions of Q_2 and only its root valuations are given.

    Raises:
        UnknownLabel: name is not a disk of CAL_D
    """
    if name not in CAL_D:
        raise UnknownLabel(f"unknown disk {name!r}; known: {', '.join(CAL_D)}")
    disk = CAL_D[name]
    if disk.variant is DiskVariant.INVERSE_POWER:
        return {"name": name, "kind": "cusp_shadow", "shadow": cusp_disk_shadow(disk).to_json()}
    try:
        report = disk_slope_analysis(disk, precision=precision)
    except (NoRationalRoot, HypothesisFailed, RamifiedRoots) as exc:
        center = disk.center
        fiber = x011_data().fiber(center)
        vals = newton_polygon(PadicPoly.from_sympy(fiber, disk.ell)).root_valuations()
        return {
            "name": name,
            "kind": "fiber_only",
            "error": type(exc).__name__,
            "reason": str(exc),
            "rational_roots": len(fiber_roots(center, disk.ell, precision)),
            "fiber_root_valuations": [str(v) for v in vals],
        }
    return {"name": name, "kind": "branch", "branch": report.to_json()}


# 2-adic logarithm on the kernel of reduction

LOG_PRECISION = 24


@dataclass(frozen=True)
class KernelPoint:
    """
    A point of the kernel of reduction of X0(11) over Q_2, given by t = -x/y.

    For a point over an extension only its filtration level may be known;
    such points carry t = None and an explicit level.
    """

    t: tp.Any
    point: tp.Optional[EllPoint] = None
    level_override: tp.Optional[Rational] = None

    def __post_init__(self):
        if self.t is None and self.level_override is None:
            raise PreconditionFailed("a kernel point needs t or a level")
        level = self.level
        if level is not oo and not level > 0:
            raise PreconditionFailed(f"v_2(t) = {level} is not in the kernel of reduction")

    @property
    def level(self):
        if self.level_override is not None:
            return as_rational(self.level_override)
        if isinstance(self.t, PadicElement):
            return oo if self.t.is_zero_at_precision() else Rational(self.t.val)
        t = as_rational(self.t)
        return oo if t == 0 else Rational(valuation(t, 2))

    @classmethod
    def from_point(cls, P: EllPoint) -> "KernelPoint":
        return cls(t_parameter(P), point=P)

    @classmethod
    def from_t(cls, t: tp.Any, terms: int = 40) -> "KernelPoint":
        t = t if isinstance(t, PadicElement) else as_rational(t)
        if not isinstance(t, PadicElement) and t == 0:
            return cls(t, point=INFINITY)
        return cls(t, point=point_from_t(x011_data().model, t, terms))

    @classmethod
    def with_level(cls, level: tp.Any) -> "KernelPoint":
        return cls(None, level_override=as_rational(level))

    def rational_t(self) -> tp.Tuple[Rational, tp.Any]:
        """t as a Rational together with its absolute 2-adic precision."""
        if self.t is None:
            raise PreconditionFailed("only the level of this point is known")
        if isinstance(self.t, PadicElement):
            return self.t.to_rational(), self.t.abs_prec
        return as_rational(self.t), oo


def _log_terms(level: Rational, precision: int) -> int:
    """Terms of the log series after which every term has valuation >= precision."""
    return max(4, ceil_rational((precision + 8) / level) + 8)


def elliptic_log_2adic(P: KernelPoint, precision: int = LOG_PRECISION) -> PadicElement:
    """
    The 2-adic elliptic logarithm of a kernel point.

    On v_2(t) > 1/3 the leading term t dominates, so v_2(log P) = v_2(t).

    Raises:
        OutsideDomain: v_2(t(P)) <= 1/3
    """
    level = P.level
    if level is oo:
        return PadicElement.zero(2)
    if not level > Rational(1, 3):
        raise OutsideDomain(f"v_2(t) = {level} is not above 1/3")
    t, t_prec = P.rational_t()
    target = precision if t_prec is oo else min(precision, int(t_prec))
    log = formal_log(x011_data().model, _log_terms(level, target))
    value = log.evaluate(t)
    if value == 0:
        return PadicElement(2, target, 0, 0)
    rel = int(target - valuation(value, 2))
    if rel < 1:
        return PadicElement(2, target, 0, 0)
    return padic_from_rational(value, 2, rel)


def double_kernel_point(P: KernelPoint, precision: int = LOG_PRECISION) -> KernelPoint:
    """2P through the formal doubling series; the level goes up by exactly 1."""
    if P.level is oo:
        return P
    t, _ = P.rational_t()
    series = doubling_series(x011_data().model, _log_terms(P.level, precision))
    return KernelPoint(truncate_rational(series.evaluate(t), 2, int(precision + P.level + 1)))


def halve_kernel_point(P: KernelPoint, precision: int = LOG_PRECISION) -> KernelPoint:
    """
    The unique Q with 2Q = P in the kernel, found by Newton iteration on [2](s) = t(P).

    Raises:
        PreconditionFailed: v_2(t(P)) <= 4/3
    """
    if P.level is oo:
        return P
    if not P.level > Rational(4, 3):
        raise PreconditionFailed(f"halving needs v_2(t) > 4/3, got {P.level}")
    t, _ = P.rational_t()
    doubling = doubling_series(x011_data().model, _log_terms(P.level - 1, precision))
    f = PadicPoly([doubling[0] - t] + doubling.coefficients[1:], 2)
    s = hensel_lift(f, t / 2, precision)
    return KernelPoint(s)


def divisible_by_2_in_kernel(P: KernelPoint, construct: bool = True, precision: int = LOG_PRECISION) -> bool:
    """
    Sufficient criterion: a kernel point with v_2(t) > 4/3 is divisible by 2.

    False means the criterion does not apply, not that P is indivisible.
    With `construct`, a half point is computed and doubled back for points
    with known Q_2 coordinates; 2Q must agree with P to `precision` digits.

    Raises:
        InsufficientPrecision: 2Q differs from P below the working precision
    """
    level = P.level
    if level is oo:
        return True
    if not level > Rational(4, 3):
        return False
    if construct and P.t is not None:
        Q = halve_kernel_point(P, precision)
        t, t_prec = P.rational_t()
        back, _ = double_kernel_point(Q, precision).rational_t()
        gap = oo if back == t else valuation(back - t, 2)
        needed = precision if t_prec is oo else min(precision, int(t_prec))
        logger.debug(f"halved kernel point: v_2(t(Q)) = {Q.level}, v_2(2Q - P) >= {gap}")
        if gap is not oo and gap < needed:
            raise InsufficientPrecision(f"2Q agrees with P only to v_2 = {gap}, need {needed}")
    return True


def qconst_mu(nu: tp.Any) -> int:
    """mu = ceil(nu - 1/3) - 1, the power of 2 that divides phi(tau) beyond v_2(tau)."""
    nu = as_rational(nu)
    if not nu > Rational(1, 3):
        raise PreconditionFailed(f"nu must exceed 1/3, got {nu}")
    return ceil_rational(nu - Rational(1, 3)) - 1


def qconst_uniform(nu: tp.Any, c: tp.Any) -> bool:
    """Whether Q_tau is constant modulo 2 on all of Z_2 - {0}, not only on the units."""
    nu, c = as_rational(nu), as_rational(c)
    mu = qconst_mu(nu)
    return nu - mu + min(Rational(1), c, nu - Rational(1, 3)) > Rational(4, 3)


def qconst_representatives(nu: tp.Any, c: tp.Any) -> tp.List[int]:
    """The tau whose Q_tau must be checked against the Selmer image."""
    return [1] if qconst_uniform(nu, c) else [1, 2]


# Twists of X_ns(11)

XNS_PLUS = (4, -4, -28, 41)
XNS_COVER = (4, 7, -6, 19)
XNS_TWIST_SCALE = {-1: 1, -3: 3}

# y^2 = 4x^3 - 4x^2 - 28x + 41 with y = 2Y; isomorphic to 121b1
XNS_PLUS_MODEL = WeierstrassModel(a2=-1, a4=-7, a6=Rational(41, 4))
XNS_GENERATOR = EllPoint.of(4, Rational(11, 2))


def _binary_cubic(coeffs: tp.Sequence[int], u: np.ndarray, v: int) -> np.ndarray:
    c0, c1, c2, c3 = coeffs
    return c0 * u ** 3 + c1 * u ** 2 * v + c2 * u * v ** 2 + c3 * v ** 3


def _is_square_array(n: np.ndarray) -> np.ndarray:
    root = np.floor(np.sqrt(np.maximum(n, 0).astype(np.float64))).astype(np.int64)
    hit = np.zeros(n.shape, dtype=bool)
    for shift in (-1, 0, 1):
        r = root + shift
        hit |= r * r == n
    return hit & (n >= 0)


def _is_square_int(n: int) -> bool:
    return n >= 0 and integer_nthroot(n, 2)[1]


def _xns_rows(vs: np.ndarray, height: int, scale: int) -> tp.List[Rational]:
    u = np.arange(-height, height + 1, dtype=np.int64)
    found = []
    for v in (int(v) for v in vs):
        us = u[np.gcd(u, v) == 1]
        first = v * _binary_cubic(XNS_PLUS, us, v)
        second = scale * v * _binary_cubic(XNS_COVER, us, v)
        for uu in us[_is_square_array(first) & _is_square_array(second)]:
            uu = int(uu)
            a = v * sum(c * uu ** (3 - i) * v ** i for i, c in enumerate(XNS_PLUS))
            b = scale * v * sum(c * uu ** (3 - i) * v ** i for i, c in enumerate(XNS_COVER))
            if _is_square_int(a) and _is_square_int(b):
                found.append(Rational(uu, v))
    return found


def xns_twist_point_search(
    d: int, height: int, settings: tp.Optional[GfeSettings] = None
) -> tp.List[tp.Any]:
    """
    x-coordinates of the points of height <= H on the twist of X_ns(11) by d.

    The twist is y^2 = 4x^3 - 4x^2 - 28x + 41, t^2 = k (4x^3 + 7x^2 - 6x + 19)
    with k = 1 for d = -1 and k = 3 for d = -3. oo stands for the points over
    x = oo, which are rational exactly when k is a square.

    Returns:
        Sorted x-coordinates, oo last
    """
    settings = settings or get_settings()
    if d not in XNS_TWIST_SCALE:
        raise PreconditionFailed(f"d must be -1 or -3, got {d}")
    if not 1 <= height <= 10 ** 4:
        raise PreconditionFailed(f"height must be in [1, 10^4], got {height}")
    scale = XNS_TWIST_SCALE[d]
    chunks = np.array_split(np.arange(1, height + 1, dtype=np.int64), settings.threads)
    with ThreadPoolExecutor(max_workers=settings.threads) as pool:
        parts = list(pool.map(lambda vs: _xns_rows(vs, height, scale), chunks))
    found: tp.List[tp.Any] = sorted({x for part in parts for x in part})
    if _is_square_int(XNS_PLUS[0]) and _is_square_int(scale * XNS_COVER[0]):
        found.append(oo)
    logger.info(f"X_ns(11) twist d={d}, height {height}: {len(found)} points")
    return found


def xns_multiples(n_max: int = 4) -> tp.Dict[int, Rational]:
    """x(nP) on y^2 = 4x^3 - 4x^2 - 28x + 41 for the generator P = (4, 11), n = 1..n_max."""
    return {
        n: point_mul(XNS_PLUS_MODEL, n, XNS_GENERATOR).x for n in range(1, n_max + 1)
    }


def check_additivity(P: KernelPoint, Q: KernelPoint, precision: int = LOG_PRECISION) -> bool:
    """log(P + Q) = log P + log Q, with the sum taken by the chord-and-tangent law."""
    model = x011_data().model
    if P.point is None or Q.point is None:
        raise PreconditionFailed("additivity needs points with coordinates")
    R = KernelPoint.from_point(point_add(model, P.point, Q.point))
    lhs = elliptic_log_2adic(R, precision)
    rhs = elliptic_log_2adic(P, precision) + elliptic_log_2adic(Q, precision)
    diff = lhs - rhs
    return diff.is_zero_at_precision() or diff.val >= precision - 4


__all__ = [
    "JMapData",
    "BranchReport",
    "CuspExpansion",
    "KernelPoint",
    "REMAINING_POINTS",
    "x011_data",
    "x011_torsion",
    "cusp_expansion",
    "cusp_branch",
    "branch_series",
    "fiber_roots",
    "disk_slope_analysis",
    "square_class_threshold",
    "elliptic_log_2adic",
    "double_kernel_point",
    "halve_kernel_point",
    "divisible_by_2_in_kernel",
    "check_additivity",
    "qconst_mu",
    "qconst_uniform",
    "qconst_representatives",
    "xns_twist_point_search",
    "xns_multiples",
    "remaining_points",
]
