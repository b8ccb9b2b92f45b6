"""
X0(13) and X1(13) - j-map, Atkin-Lehner involution and local solubility

The genus-0 curve X0(13) with coordinate v and its j-map, the model of
X1(13) as a cyclic cubic cover of the v-line, the twists y^2 = f(x) that
have points everywhere locally, and a residue-disk decision procedure for
Q_ell-points on y^2 = f(x).
"""

import logging
import math
import typing as tp
from dataclasses import dataclass, field

import mpmath
import numpy as np
from sympy import Poly, Rational, discriminant, oo, reduced, symbols

from .errors import BruteForceBoundExceeded, InsufficientPrecision, OutsideDomain, PreconditionFailed
from .exact_arith import as_rational, is_square_padic, padic_roots, valuation

logger = logging.getLogger(__name__)

V, W, Z, XH = symbols("v w z x")

# j = (v^2 + 3v + 9)(v^4 + 3v^3 + 5v^2 - 4v - 4)^3 / (v - 1)
JMAP_QUADRATIC = Poly(V ** 2 + 3 * V + 9, V, domain="QQ")
JMAP_QUARTIC = Poly(V ** 4 + 3 * V ** 3 + 5 * V ** 2 - 4 * V - 4, V, domain="QQ")

_J0 = Rational(12) ** 3

# v -> j for the six points coming from the known rational orbits
X013_SPECIAL_VALUES: tp.List[tp.Tuple[tp.Any, tp.Any]] = [
    (oo, oo),
    (Rational(0), _J0 / 3),
    (Rational(-4), -_J0 * 13 ** 4 / 5),
    (Rational(1), oo),
    (Rational(-12), -_J0 * 4079 ** 3 / 3),
    (Rational(-8, 5), -_J0 * (17 * 29) ** 3 * 13 / Rational(5) ** 13),
]


def _is_infinite(v: tp.Any) -> bool:
    return v is None or v is oo or (isinstance(v, str) and v.lower() in ("oo", "inf", "infinity"))


def x013_jmap(v: tp.Any) -> tp.Any:
    """j-invariant of the point of X0(13) with coordinate v; oo at v = 1 and v = oo."""
    if _is_infinite(v):
        return oo
    v = as_rational(v)
    if v == 1:
        return oo
    return JMAP_QUADRATIC.eval(v) * JMAP_QUARTIC.eval(v) ** 3 / (v - 1)


def x013_atkin_lehner(v: tp.Any) -> tp.Any:
    """The Atkin-Lehner involution v -> (v + 12)/(v - 1)."""
    if _is_infinite(v):
        return Rational(1)
    v = as_rational(v)
    if v == 1:
        return oo
    return (v + 12) / (v - 1)


# X1(13) as a cyclic cover of the v-line

X113_CONIC = Poly((V + 2) ** 2 + 4, V, domain="QQ")
X113_CUBIC = Z ** 3 - V * Z ** 2 - (V + 3) * Z - 1


@dataclass(frozen=True)
class X113Report:
    identity_holds: bool
    remainder: str
    numeric_v: str
    numeric_residual: str
    digits: int

    def to_json(self) -> tp.Dict[str, tp.Any]:
        return dict(self.__dict__)


def _cyclic_identity_remainder():
    """(z - w)^3 (v - 3w^2) - (z - w^2)^3 (v - 3w) reduced modulo the cubic and w^2 + w + 1."""
    expr = (Z - W) ** 3 * (V - 3 * W ** 2) - (Z - W ** 2) ** 3 * (V - 3 * W)
    _, remainder = reduced(expr.expand(), [X113_CUBIC, W ** 2 + W + 1], Z, W, V, order="lex")
    return remainder


def x113_cover_residual(v: tp.Any, digits: int = 50) -> mpmath.mpf:
    """
    Largest |((z - w)/(z - w^2))^3 - (v - 3w)/(v - 3w^2)| over the three roots z
    of z^3 - v z^2 - (v + 3) z - 1, computed with `digits` decimal digits.

    Raises:
        OutsideDomain: v = 3w or v = 3w^2, where the fiber degenerates
    """
    with mpmath.workdps(digits + 10):
        omega = mpmath.exp(2j * mpmath.pi / 3)
        v = mpmath.mpmathify(v)
        eps = mpmath.mpf(10) ** (-digits)
        if abs(v - 3 * omega) < eps or abs(v - 3 * omega ** 2) < eps:
            raise OutsideDomain(f"v = {v} is a branch point of the cyclic cover")
        rhs = (v - 3 * omega) / (v - 3 * omega ** 2)
        roots = mpmath.polyroots([1, -v, -(v + 3), -1], maxsteps=200, extraprec=4 * digits)
        residual = max(abs(((z - omega) / (z - omega ** 2)) ** 3 - rhs) for z in roots)
    return residual


def x113_model_check(v: tp.Any = 0, digits: int = 50) -> X113Report:
    """Exact check of the cyclic-cover identity over Q(w) plus a numeric check at one v."""
    remainder = _cyclic_identity_remainder()
    residual = x113_cover_residual(v, digits)
    report = X113Report(
        identity_holds=remainder == 0,
        remainder=str(remainder),
        numeric_v=str(v),
        numeric_residual=mpmath.nstr(residual, 5),
        digits=digits,
    )
    logger.debug(f"X1(13) cover identity: {report.identity_holds}, residual {report.numeric_residual}")
    return report


# Local solubility of y^2 = f(x)


def _shift_scale(coeffs: tp.Sequence[int], s: int, ell: int) -> tp.List[int]:
    """Coefficients (low first) of h(s + ell*u), with even powers of ell removed."""
    n = len(coeffs)
    out = [0] * n
    # Horner in the ring Z[u]: h(s + ell u)
    for c in reversed(coeffs):
        nxt = [0] * n
        for i, a in enumerate(out):
            if a:
                nxt[i] += a * s
                if i + 1 < n:
                    nxt[i + 1] += a * ell
        nxt[0] += c
        out = nxt
    vals = [valuation(c, ell) for c in out if c]
    if vals:
        k = min(vals) // 2
        out = [c // ell ** (2 * k) for c in out]
    return out


def _constant_class(coeffs: tp.Sequence[int], ell: int) -> bool:
    """Whether h(u) lies in h(0) (1 + ell^m Z_ell) for all u, with m = 1 (odd ell) or 3."""
    need = 3 if ell == 2 else 1
    v0 = valuation(coeffs[0], ell)
    return all(c == 0 or valuation(c, ell) >= v0 + need for c in coeffs[1:])


def _disk_soluble(coeffs: tp.Sequence[int], ell: int, residues: tp.Iterable[int], depth: int, limit: int) -> bool:
    for s in residues:
        h = _shift_scale(coeffs, s, ell)
        if h[0] == 0 or is_square_padic(h[0], ell):
            return True
        if _constant_class(h, ell):
            continue
        if depth >= limit:
            raise InsufficientPrecision(f"residue disks at {ell} not resolved after {depth} levels")
        if _disk_soluble(h, ell, range(ell), depth + 1, limit):
            return True
    return False


def _integer_coeffs(f: tp.Any) -> tp.List[int]:
    if isinstance(f, Poly):
        coeffs = [as_rational(c) for c in reversed(f.all_coeffs())]
    else:
        coeffs = [as_rational(c) for c in f]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    den = 1
    for c in coeffs:
        den = den * int(c.q) // math.gcd(den, int(c.q))
    # scaling by a square keeps the curve
    return [int(c * den * den) for c in coeffs]


def _even_model(coeffs: tp.List[int]) -> tp.Tuple[tp.List[int], tp.List[int]]:
    """Affine chart and chart at infinity x' = 1/x of the even-degree model."""
    n = len(coeffs) - 1
    n += n % 2
    padded = coeffs + [0] * (n + 1 - len(coeffs))
    return padded, list(reversed(padded))


def local_solubility(f: tp.Any, ell: int) -> bool:
    """
    Whether y^2 = f(x) has a point over Q_ell, at infinity included.

    f is a Poly or a coefficient list (constant term first) of degree at
    most 6; odd degrees are read as a model of even degree with a root at
    infinity. Works through residue disks of x in Z_ell and x' = 1/x in
    ell Z_ell until f is constant modulo squares on every disk.
    """
    coeffs = _integer_coeffs(f)
    if len(coeffs) > 7:
        raise PreconditionFailed(f"degree {len(coeffs) - 1} exceeds 6")
    if all(c == 0 for c in coeffs):
        raise PreconditionFailed("f must be nonzero")
    if len(coeffs) == 1:
        return is_square_padic(coeffs[0], ell)
    poly = Poly(list(reversed(coeffs)), XH, domain="QQ")
    if padic_roots(poly, ell, 8):
        return True
    disc = discriminant(poly)
    limit = 2 * (valuation(disc, ell) if disc != 0 else 64) + 16
    affine, infinite = _even_model(coeffs)
    found = _disk_soluble(affine, ell, range(ell), 0, limit) or _disk_soluble(infinite, ell, [0], 0, limit)
    logger.debug(f"y^2 = {poly.as_expr()} over Q_{ell}: {'soluble' if found else 'insoluble'}")
    return found


def _scan_chart(chart: tp.Sequence[int], ell: int, xs: np.ndarray, digits: int) -> bool:
    """Whether chart(x) is zero or a nonzero square in Q_ell for some x in xs."""
    need = 3 if ell == 2 else 1
    modulus = ell ** digits
    dtype = np.int64 if modulus < 2 ** 31 else object
    xs = xs.astype(dtype)
    values = np.zeros(len(xs), dtype=dtype)
    for c in reversed(chart):
        values = (values * xs + c % modulus) % modulus
    v = np.zeros(len(xs), dtype=np.int64)
    for i in range(1, digits + 1):
        v += (values % ell ** i == 0).astype(np.int64)
    decided = v <= digits - need
    units = np.array([int(n) // ell ** int(k) for n, k in zip(values[decided], v[decided])], dtype=object)
    if ell == 2:
        unit_square = np.array([u % 8 == 1 for u in units], dtype=bool)
    else:
        residues = np.zeros(ell, dtype=bool)
        residues[(np.arange(1, ell) ** 2) % ell] = True
        unit_square = np.array([residues[u % ell] for u in units], dtype=bool)
    if np.any(unit_square & (v[decided] % 2 == 0)):
        return True
    # values divisible by ell^(digits - need + 1): fall back to exact evaluation
    for x in xs[~decided]:
        value = sum(c * int(x) ** i for i, c in enumerate(chart))
        if value == 0 or is_square_padic(value, ell):
            return True
    return False


def local_solubility_bruteforce(f: tp.Any, ell: int, k: tp.Optional[int] = None, limit: int = 10 ** 6) -> bool:
    """
    Scan of x over Z/ell^k and x' = 1/x over ell Z/ell^k for a square value.

    One-sided: True proves solubility, False only says no point was found
    at this modulus. k defaults to v_ell(disc f) + 3. Values are reduced
    modulo ell^(k + 4) (ell = 2) or ell^(k + 2); the few that vanish there
    are evaluated exactly.

    Raises:
        BruteForceBoundExceeded: ell^k > limit
    """
    coeffs = _integer_coeffs(f)
    if k is None:
        poly = Poly(list(reversed(coeffs)), XH, domain="QQ")
        disc = discriminant(poly) if poly.degree() > 0 else 0
        k = (valuation(disc, ell) if disc != 0 else 0) + 3
    if ell ** k > limit:
        raise BruteForceBoundExceeded(f"{ell}^{k} exceeds the scan limit {limit}")
    digits = k + (4 if ell == 2 else 2)
    affine, infinite = _even_model(coeffs)
    xs = np.arange(ell ** k, dtype=np.int64)
    found = _scan_chart(affine, ell, xs, digits) or _scan_chart(infinite, ell, xs[::ell], digits)
    logger.debug(f"scan of y^2 = f(x) modulo {ell}^{k}: {'point found' if found else 'no point'}")
    return found


# Twists of X1(13) with points everywhere locally

TWIST_PRIMES = (2, 3, 13)

# (row, d, delta, f from the constant term up); delta in Z[w], w^2 + w + 1 = 0
X113_TWISTS: tp.List[tp.Tuple[int, int, str, tp.Tuple[int, ...]]] = [
    (1, 1, "1", (1, -4, 6, -2, 1, -2, 1)),
    (2, 2, "w", (16, 72, 138, 76, 18, 24, 16)),
    (3, 2, "w+4", (208, -936, 1794, -988, 234, -312, 208)),
    (4, 2, "-3w-4", (16, -72, 226, -252, 106, -24, 16)),
    (5, 13, "3w-1", (1, 4, 6, 2, 1, 2, 1)),
    (6, 26, "w+4", (16, -72, 138, -76, 18, -24, 16)),
    (7, 26, "w", (208, 936, 1794, 988, 234, 312, 208)),
    (8, 26, "-3w-4", (16, -72, 226, -252, 106, -24, 16)),
]


@dataclass(frozen=True)
class X113TwistModel:
    row: int
    d: int
    delta: str
    coefficients: tp.Tuple[int, ...]
    soluble: tp.Dict[int, bool] = field(default_factory=dict)

    @property
    def poly(self) -> Poly:
        return Poly(list(reversed(self.coefficients)), XH, domain="QQ")

    @property
    def everywhere_locally_soluble(self) -> bool:
        return all(self.soluble.values())

    def to_json(self) -> tp.Dict[str, tp.Any]:
        return {
            "row": self.row,
            "d": self.d,
            "delta": self.delta,
            "f": str(self.poly.as_expr()),
            "soluble": {str(ell): ok for ell, ok in sorted(self.soluble.items())},
        }


def x113_twist_models(primes: tp.Sequence[int] = TWIST_PRIMES) -> tp.List[X113TwistModel]:
    """The eight models y^2 = f(x) with their local solubility at each prime."""
    models = []
    for row, d, delta, coeffs in X113_TWISTS:
        soluble = {ell: local_solubility(list(coeffs), ell) for ell in primes}
        models.append(X113TwistModel(row, d, delta, coeffs, soluble))
    return models


def _negate_x(coeffs: tp.Sequence[int]) -> tp.Tuple[int, ...]:
    return tuple(c if i % 2 == 0 else -c for i, c in enumerate(coeffs))


def x113_isomorphic_pairs() -> tp.List[tp.Tuple[int, int, str]]:
    """Rows 5-8 against rows 1-4: equal polynomials, or equal after x -> -x."""
    by_row = {row: coeffs for row, _, _, coeffs in X113_TWISTS}
    pairs = []
    for row in range(1, 5):
        first, second = by_row[row], by_row[row + 4]
        if first == second:
            pairs.append((row, row + 4, "identity"))
        elif _negate_x(first) == second:
            pairs.append((row, row + 4, "x -> -x"))
    return pairs


__all__ = [
    "X013_SPECIAL_VALUES",
    "X113_TWISTS",
    "X113Report",
    "X113TwistModel",
    "x013_jmap",
    "x013_atkin_lehner",
    "x113_model_check",
    "x113_cover_residual",
    "local_solubility",
    "local_solubility_bruteforce",
    "x113_twist_models",
    "x113_isomorphic_pairs",
]
