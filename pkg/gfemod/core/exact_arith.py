"""
Exact Arithmetic - Rationals, truncated ell-adics, polynomials and series

Scalars are sympy Rationals. Elements of Q_ell are stored as
ell^val * unit with an explicit relative precision, so every operation knows
how many ell-adic digits it can vouch for. Ramified extensions are never
built: root valuations in an algebraic closure come from Newton polygons.
"""

import enum
import logging
import math
import typing as tp
from dataclasses import dataclass
from functools import reduce

from sympy import Integer, Poly, Rational, oo, symbols, sympify
from sympy import ceiling, gcd, integer_nthroot, legendre_symbol, mod_inverse, multiplicity

from .errors import HenselConditionFailed, InsufficientPrecision, NoSolution

logger = logging.getLogger(__name__)

X_ROOT = symbols("x")

Scalar = tp.Union[int, Rational]


def as_rational(x: tp.Any) -> Rational:
    """Coerce ints, strings like '3/4' and sympy numbers to a Rational."""
    if isinstance(x, PadicElement):
        return x.to_rational()
    value = sympify(x)
    if not value.is_Rational:
        raise ValueError(f"not a rational number: {x!r}")
    return Rational(value)


def valuation(x: Scalar, ell: int):
    """Exact ell-adic valuation of a rational; oo for zero."""
    x = as_rational(x)
    if x == 0:
        return oo
    return multiplicity(ell, abs(x.p)) - multiplicity(ell, x.q)


def unit_part(x: Scalar, ell: int) -> Rational:
    x = as_rational(x)
    return x / Rational(ell) ** valuation(x, ell)


def unit_residue(x: Scalar, ell: int, digits: int) -> int:
    """Residue of the unit part of x modulo ell^digits."""
    u = unit_part(x, ell)
    modulus = ell ** digits
    return (int(u.p) * mod_inverse(int(u.q), modulus)) % modulus


def symmetric_residue(n: int, modulus: int) -> int:
    n %= modulus
    return n - modulus if n > modulus // 2 else n


def truncate_rational(x: Scalar, ell: int, digits: int) -> Rational:
    """Small rational congruent to x modulo ell^digits (absolute)."""
    x = as_rational(x)
    if x == 0:
        return Rational(0)
    v = valuation(x, ell)
    if v >= digits:
        return Rational(0)
    rel = digits - v
    u = symmetric_residue(unit_residue(x, ell, rel), ell ** rel)
    return Rational(ell) ** v * u


@dataclass(frozen=True)
class PadicElement:
    """
    An element ell^val * unit of Q_ell known to `prec` unit digits.

    prec == 0 means "zero at precision": the value is only known to be
    divisible by ell^val. An exact zero has val = oo.
    """

    ell: int
    val: tp.Any
    unit: int
    prec: int

    def __post_init__(self):
        if self.val is oo:
            object.__setattr__(self, "unit", 0)
            object.__setattr__(self, "prec", 0)
            return
        if self.prec < 0:
            raise ValueError(f"negative precision {self.prec}")
        unit = self.unit % (self.ell ** self.prec) if self.prec else 0
        if self.prec and unit % self.ell == 0:
            raise ValueError(f"unit {self.unit} is divisible by {self.ell}")
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "val", int(self.val))

    # Construction helpers

    @classmethod
    def zero(cls, ell: int) -> "PadicElement":
        return cls(ell, oo, 0, 0)

    @property
    def is_exact_zero(self) -> bool:
        return self.val is oo

    @property
    def abs_prec(self):
        """Absolute precision: the value is known modulo ell^abs_prec."""
        return oo if self.is_exact_zero else self.val + self.prec

    def is_zero(self) -> bool:
        if self.is_exact_zero:
            return True
        if self.prec == 0:
            raise InsufficientPrecision(f"cannot decide zero: known only mod {self.ell}^{self.val}")
        return False

    def is_zero_at_precision(self) -> bool:
        return self.is_exact_zero or self.prec == 0

    def valuation(self):
        if not self.is_exact_zero and self.prec == 0:
            raise InsufficientPrecision(f"valuation undecided below {self.ell}^{self.val}")
        return self.val

    def to_rational(self) -> Rational:
        if self.is_zero_at_precision():
            return Rational(0)
        u = symmetric_residue(self.unit, self.ell ** self.prec)
        return Rational(self.ell) ** self.val * u

    def reduce(self, digits: int) -> "PadicElement":
        """Drop to at most `digits` units digits."""
        if self.is_exact_zero or digits >= self.prec:
            return self
        return PadicElement(self.ell, self.val, self.unit, max(digits, 0))

    # Arithmetic

    def _lift(self, other: tp.Any, rel_prec: int) -> "PadicElement":
        if isinstance(other, PadicElement):
            if other.ell != self.ell:
                raise ValueError(f"mixing primes {self.ell} and {other.ell}")
            return other
        return padic_from_rational(as_rational(other), self.ell, max(rel_prec, 1))

    def _lift_for_add(self, other: tp.Any) -> "PadicElement":
        if isinstance(other, PadicElement):
            return self._lift(other, 0)
        other = as_rational(other)
        if other == 0:
            return PadicElement.zero(self.ell)
        target = self.abs_prec if self.abs_prec is not oo else valuation(other, self.ell) + 64
        return self._lift(other, int(target - valuation(other, self.ell)) + 1)

    def __add__(self, other: tp.Any) -> "PadicElement":
        other = self._lift_for_add(other)
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        ell = self.ell
        N = min(self.abs_prec, other.abs_prec)
        v = min(self.val, other.val)
        total = self.unit * ell ** (self.val - v) + other.unit * ell ** (other.val - v)
        digits = N - v
        total %= ell ** digits
        if total == 0:
            return PadicElement(ell, N, 0, 0)
        k = multiplicity(ell, total)
        return PadicElement(ell, v + k, total // ell ** k, digits - k)

    __radd__ = __add__

    def __neg__(self) -> "PadicElement":
        if self.is_zero_at_precision():
            return self
        return PadicElement(self.ell, self.val, -self.unit, self.prec)

    def __sub__(self, other: tp.Any) -> "PadicElement":
        return self + (-self._lift_for_add(other))

    def __rsub__(self, other: tp.Any) -> "PadicElement":
        return (-self) + other

    def __mul__(self, other: tp.Any) -> "PadicElement":
        other = self._lift(other, self.prec)
        if self.is_exact_zero or other.is_exact_zero:
            return PadicElement.zero(self.ell)
        if self.prec == 0 or other.prec == 0:
            return PadicElement(self.ell, self.val + other.val, 0, 0)
        N = min(self.prec, other.prec)
        return PadicElement(self.ell, self.val + other.val, self.unit * other.unit, N)

    __rmul__ = __mul__

    def __truediv__(self, other: tp.Any) -> "PadicElement":
        other = self._lift(other, self.prec)
        if other.is_exact_zero:
            raise ZeroDivisionError("division by an exact ell-adic zero")
        if other.prec == 0:
            raise InsufficientPrecision("division by an element that is zero at precision")
        if self.is_exact_zero:
            return self
        if self.prec == 0:
            return PadicElement(self.ell, self.val - other.val, 0, 0)
        N = min(self.prec, other.prec)
        modulus = self.ell ** N
        unit = self.unit * mod_inverse(other.unit % modulus, modulus)
        return PadicElement(self.ell, self.val - other.val, unit, N)

    def __rtruediv__(self, other: tp.Any) -> "PadicElement":
        return self._lift(other, self.prec) / self

    def __pow__(self, k: int) -> "PadicElement":
        if k < 0:
            return padic_from_rational(1, self.ell, max(self.prec, 1)) / (self ** (-k))
        if k == 0:
            return padic_from_rational(1, self.ell, max(self.prec, 1))
        if self.is_exact_zero:
            return self
        if self.prec == 0:
            return PadicElement(self.ell, self.val * k, 0, 0)
        modulus = self.ell ** self.prec
        return PadicElement(self.ell, self.val * k, pow(self.unit, k, modulus), self.prec)

    def __repr__(self) -> str:
        if self.is_exact_zero:
            return f"PadicElement(0, ell={self.ell})"
        return f"PadicElement({self.ell}^{self.val}*{self.unit} + O({self.ell}^{self.abs_prec}))"

    def to_json(self) -> tp.Dict[str, tp.Any]:
        val = "oo" if self.is_exact_zero else str(self.val)
        return {"ell": self.ell, "val": val, "unit": str(self.unit), "prec": self.prec}


def padic_from_rational(x: Scalar, ell: int, N: int) -> PadicElement:
    """
    Embed a rational number in Q_ell with N digits of relative precision.

    Args:
        x: rational number
        ell: prime
        N: number of unit digits to keep

    Returns:
        PadicElement with exact valuation; zero maps to the exact zero
    """
    if N < 1:
        raise ValueError(f"precision must be positive, got {N}")
    x = as_rational(x)
    if x == 0:
        return PadicElement.zero(ell)
    return PadicElement(ell, valuation(x, ell), unit_residue(x, ell, N), N)


def padic_to_rational(x: PadicElement) -> Rational:
    return x.to_rational()


def _is_zero_value(c: tp.Any) -> bool:
    if isinstance(c, PadicElement):
        return c.is_exact_zero
    return c == 0


def coefficient_valuation(c: tp.Any, ell: int):
    if isinstance(c, PadicElement):
        return c.valuation()
    return valuation(c, ell)


class PadicPoly:
    """Polynomial over Q_ell with Rational or PadicElement coefficients (low degree first)."""

    def __init__(self, coefficients: tp.Sequence[tp.Any], ell: int):
        coeffs = [c if isinstance(c, PadicElement) else as_rational(c) for c in coefficients]
        while len(coeffs) > 1 and _is_zero_value(coeffs[-1]):
            coeffs.pop()
        self.coefficients: tp.List[tp.Any] = coeffs or [Rational(0)]
        self.ell = ell

    @classmethod
    def from_sympy(cls, poly: Poly, ell: int) -> "PadicPoly":
        return cls([Rational(c) for c in reversed(poly.all_coeffs())], ell)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(c, PadicElement) for c in self.coefficients)

    def is_zero(self) -> bool:
        return self.degree == 0 and _is_zero_value(self.coefficients[0])

    def valuations(self) -> tp.List[tp.Any]:
        return [coefficient_valuation(c, self.ell) for c in self.coefficients]

    def evaluate(self, x: tp.Any) -> tp.Any:
        result: tp.Any = Rational(0)
        for c in reversed(self.coefficients):
            result = result * x + c
        return result

    __call__ = evaluate

    def derivative(self) -> "PadicPoly":
        if self.degree == 0:
            return PadicPoly([0], self.ell)
        return PadicPoly([c * i for i, c in enumerate(self.coefficients) if i > 0], self.ell)

    def __mul__(self, other: "PadicPoly") -> "PadicPoly":
        out: tp.List[tp.Any] = [Rational(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] = out[i + j] + a * b
        return PadicPoly(out, self.ell)

    def rational_coefficients(self) -> tp.List[Rational]:
        return [as_rational(c) for c in self.coefficients]

    def coefficient_precision(self):
        """Smallest absolute precision among approximate coefficients (oo if exact)."""
        precs = [c.abs_prec for c in self.coefficients if isinstance(c, PadicElement)]
        return min(precs) if precs else oo

    def __repr__(self) -> str:
        return f"PadicPoly({self.coefficients}, ell={self.ell})"


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of the points (i, v(a_i))."""

    vertices: tp.Tuple[tp.Tuple[int, Rational], ...]
    segments: tp.Tuple[tp.Tuple[Rational, int], ...]
    zero_roots: int = 0

    def root_valuations(self) -> tp.List[tp.Any]:
        """Multiset of root valuations; roots at zero are reported as oo."""
        out: tp.List[tp.Any] = [oo] * self.zero_roots
        for slope, length in self.segments:
            out.extend([-slope] * length)
        return out

    @property
    def slopes(self) -> tp.List[Rational]:
        return [s for s, _ in self.segments]


def _cross(o, a, b) -> Rational:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f: PadicPoly) -> NewtonPolygon:
    """
    Newton polygon of f at f.ell.

    Leading zero coefficients (roots at 0) are factored out first and
    counted in `zero_roots`.

    Raises:
        InsufficientPrecision: a coefficient is zero only at precision
    """
    if f.is_zero():
        raise ValueError("Newton polygon of the zero polynomial")
    vals = f.valuations()
    points = [(i, Rational(v)) for i, v in enumerate(vals) if v is not oo]
    zero_roots = next(i for i, v in enumerate(vals) if v is not oo)
    hull: tp.List[tp.Tuple[int, Rational]] = []
    for point in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], point) <= 0:
            hull.pop()
        hull.append(point)
    segments = tuple(
        (Rational(b[1] - a[1], b[0] - a[0]), b[0] - a[0]) for a, b in zip(hull, hull[1:])
    )
    return NewtonPolygon(vertices=tuple(hull), segments=segments, zero_roots=zero_roots)


def gauss_valuation(f: PadicPoly, rho: Scalar):
    """w_rho(f) = min_i (v(a_i) + i*rho); oo for the zero polynomial."""
    rho = as_rational(rho)
    best = oo
    for i, v in enumerate(f.valuations()):
        if v is oo:
            continue
        w = Rational(v) + i * rho
        if best is oo or w < best:
            best = w
    return best


class SquareClass(enum.Enum):
    SQUARE = "Square"
    NON_SQUARE = "NonSquare"
    ZERO = "Zero"


def legendre(u: int, p: int) -> int:
    """Legendre symbol (u/p) for an odd prime p."""
    u = int(u) % p
    if u == 0:
        return 0
    return int(legendre_symbol(u, p))


def square_class(u: int, p: int) -> SquareClass:
    symbol = legendre(u, p)
    if symbol == 0:
        return SquareClass.ZERO
    return SquareClass.SQUARE if symbol == 1 else SquareClass.NON_SQUARE


def _val_unit(u: tp.Any, ell: int, digits: int) -> tp.Tuple[tp.Any, int]:
    """(valuation, unit residue mod ell^digits) for a Rational or PadicElement."""
    if isinstance(u, PadicElement):
        if u.is_exact_zero:
            return oo, 0
        if u.prec < digits:
            raise InsufficientPrecision(f"need {digits} unit digits, have {u.prec}")
        return u.val, u.unit % ell ** digits
    u = as_rational(u)
    if u == 0:
        return oo, 0
    return valuation(u, ell), unit_residue(u, ell, digits)


def is_square_padic(u: tp.Any, ell: int) -> bool:
    """Whether u is a square in Q_ell (0 counts as a square)."""
    v, unit = _val_unit(u, ell, 3 if ell == 2 else 1)
    if v is oo:
        return True
    if v % 2:
        return False
    if ell == 2:
        return unit % 8 == 1
    return legendre(unit, ell) == 1


def is_power_padic(u: tp.Any, e: int, ell: int) -> bool:
    """Whether u is an e-th power in Q_ell."""
    if e < 1:
        raise ValueError(f"exponent must be positive, got {e}")
    a = multiplicity(ell, e)
    if ell == 2:
        v, unit = _val_unit(u, ell, a + 2)
        if v is oo:
            return True
        if v % e:
            return False
        return a == 0 or unit % 2 ** (a + 2) == 1
    v, unit = _val_unit(u, ell, a + 1)
    if v is oo:
        return True
    if v % e:
        return False
    g = int(gcd(e, ell - 1))
    if pow(unit, (ell - 1) // g, ell) != 1:
        return False
    return pow(unit, ell - 1, ell ** (a + 1)) == 1


def hensel_lift(f: PadicPoly, x0: tp.Any, N: tp.Optional[int] = None) -> PadicElement:
    """
    Lift an approximate simple root of f to a root in Q_ell.

    Args:
        f: polynomial over Q_ell
        x0: starting point (Rational or PadicElement)
        N: relative precision of the result (default 64)

    Returns:
        Root x with x == x0 up to the starting accuracy and f(x) == 0 at precision N

    Raises:
        HenselConditionFailed: unless v(f(x0)) > 2 v(f'(x0))
    """
    ell = f.ell
    N = 64 if N is None else N
    coeffs = f.rational_coefficients()
    df = PadicPoly(coeffs, ell).derivative()
    g = PadicPoly(coeffs, ell)
    x = as_rational(x0)
    fx = g(x)
    if fx == 0:
        return padic_from_rational(x, ell, N) if x != 0 else PadicElement.zero(ell)
    dfx = df(x)
    vf, vd = valuation(fx, ell), valuation(dfx, ell)
    if vd is oo or not vf > 2 * vd:
        raise HenselConditionFailed(f"v(f(x0)) = {vf}, v(f'(x0)) = {vd} at ell = {ell}")
    vx = valuation(x, ell) if x != 0 else vf - vd
    cap = f.coefficient_precision()
    target = vx + N + 2
    if cap is not oo:
        target = min(target, cap - vd)
    for step in range(4 * N.bit_length() + 16):
        fx, dfx = g(x), df(x)
        if fx == 0:
            break
        delta = fx / dfx
        x = truncate_rational(x - delta, ell, target + 1)
        logger.debug(f"hensel step {step}: v(delta) = {valuation(delta, ell)}")
        if valuation(delta, ell) >= target:
            break
    if x == 0:
        return PadicElement(ell, target, 0, 0)
    rel = max(1, min(N, int(target - valuation(x, ell))))
    return padic_from_rational(x, ell, rel)


def padic_nth_root(u: tp.Any, e: int, ell: int, N: int = 64) -> PadicElement:
    """
    An e-th root of u in Q_ell.

    Raises:
        NoSolution: u is not an e-th power in Q_ell
    """
    if not is_power_padic(u, e, ell):
        raise NoSolution(f"{u} is not a {e}-th power in Q_{ell}")
    u = as_rational(u)
    if u == 0:
        return PadicElement.zero(ell)
    v = valuation(u, ell)
    w = unit_part(u, ell)
    a = multiplicity(ell, e)
    k = 1 + 2 * a + (1 if ell == 2 and a > 0 else 0)
    modulus = ell ** k
    target = unit_residue(w, ell, k)
    start = next(
        (x for x in range(1, modulus) if x % ell and pow(x, e, modulus) == target), None
    )
    if start is None:
        raise NoSolution(f"no {e}-th root of {w} modulo {ell}^{k}")
    f = PadicPoly([-w] + [0] * (e - 1) + [1], ell)
    root = hensel_lift(f, start, N)
    return root * padic_from_rational(Rational(ell) ** (v // e), ell, N)


def exact_nth_root(x: Scalar, e: int) -> tp.Optional[Rational]:
    """Rational e-th root of x if it exists (sign handled for odd e)."""
    x = as_rational(x)
    if x == 0:
        return Rational(0)
    if x < 0 and e % 2 == 0:
        return None
    sign = -1 if x < 0 else 1
    num, num_exact = integer_nthroot(abs(int(x.p)), e)
    den, den_exact = integer_nthroot(int(x.q), e)
    if num_exact and den_exact:
        return Rational(sign * num, den)
    return None


def _taylor_shift(coeffs: tp.List[int], r: int, ell: int) -> tp.List[int]:
    """Coefficients (low first) of h(r + ell*u) divided by their content."""
    h = Poly(list(reversed(coeffs)), X_ROOT)
    shifted = [int(c) for c in reversed(h.compose(Poly(r + ell * X_ROOT, X_ROOT)).all_coeffs())]
    content = reduce(math.gcd, shifted, 0)
    return [c // content for c in shifted] if content else shifted


def _zp_roots(coeffs: tp.List[int], ell: int, N: int, depth: int = 0) -> tp.List[Rational]:
    """Approximate roots in Z_ell of a squarefree integer polynomial."""
    if depth > 4 * N + 64:
        raise InsufficientPrecision(f"root isolation at {ell} did not separate after {depth} steps")
    f = PadicPoly(coeffs, ell)
    df = f.derivative()
    roots: tp.List[Rational] = []
    for r in range(ell):
        if int(f(r)) % ell:
            continue
        if int(df(r)) % ell:
            root = hensel_lift(f, r, N)
            roots.append(root.to_rational())
            continue
        roots.extend(r + ell * s for s in _zp_roots(_taylor_shift(coeffs, r, ell), ell, N, depth + 1))
    return roots


def _integer_coefficients(poly: Poly) -> tp.List[int]:
    coeffs = [Rational(c) for c in reversed(poly.all_coeffs())]
    den = reduce(lambda acc, c: acc * int(c.q) // math.gcd(acc, int(c.q)), coeffs, 1)
    ints = [int(c * den) for c in coeffs]
    content = reduce(math.gcd, ints, 0)
    return [c // content for c in ints]


def padic_roots(poly: Poly, ell: int, N: int = 64) -> tp.List[tp.Tuple[tp.Any, int]]:
    """
    Roots of a univariate rational polynomial in Q_ell, with multiplicities.

    Rational roots are returned exactly; the others as PadicElements with N
    digits of relative precision, found by residue-class refinement and
    Hensel lifting on each irreducible factor.
    """
    if poly.is_zero:
        raise ValueError("roots of the zero polynomial")
    found: tp.List[tp.Tuple[tp.Any, int]] = []
    _, factors = poly.factor_list()
    for g, mult in factors:
        if g.degree() < 1:
            continue
        if g.degree() == 1:
            c1, c0 = g.all_coeffs()
            found.append((Rational(-c0) / Rational(c1), mult))
            continue
        coeffs = _integer_coefficients(g)
        for root in _zp_roots(coeffs, ell, N):
            found.append((padic_from_rational(root, ell, N), mult))
        # roots of negative valuation are inverses of roots of the reversed polynomial in ell Z_ell
        for root in _zp_roots(list(reversed(coeffs)), ell, N):
            if root != 0 and valuation(root, ell) > 0:
                found.append((padic_from_rational(1 / root, ell, N), mult))
    logger.debug(f"{len(found)} roots over Q_{ell} of a degree {poly.degree()} polynomial")
    return found


class PowerSeries:
    """
    Truncated power series sum c_i t^i known modulo t^precision.

    Coefficients are exact sympy Rationals (or anything with ring operations).
    """

    def __init__(self, coefficients: tp.Sequence[tp.Any], precision: tp.Optional[int] = None):
        coeffs = [Rational(c) if isinstance(c, (int, Integer)) else c for c in coefficients]
        self.precision = len(coeffs) if precision is None else precision
        coeffs = list(coeffs[: self.precision])
        coeffs += [Rational(0)] * (self.precision - len(coeffs))
        self.coefficients: tp.List[tp.Any] = coeffs

    @classmethod
    def variable(cls, precision: int) -> "PowerSeries":
        return cls([0, 1], precision)

    @classmethod
    def constant(cls, c: tp.Any, precision: int) -> "PowerSeries":
        return cls([c], precision)

    def __getitem__(self, i: int) -> tp.Any:
        return self.coefficients[i] if i < self.precision else Rational(0)

    def __len__(self) -> int:
        return self.precision

    def __iter__(self):
        return iter(self.coefficients)

    def __repr__(self) -> str:
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coefficients) if c != 0]
        return f"PowerSeries({' + '.join(terms) or '0'} + O(t^{self.precision}))"

    def __eq__(self, other: tp.Any) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.precision, other.precision)
        return all(self[i] == other[i] for i in range(n))

    def valuation(self):
        return next((i for i, c in enumerate(self.coefficients) if c != 0), oo)

    def truncate(self, n: int) -> "PowerSeries":
        return PowerSeries(self.coefficients[:n], min(n, self.precision))

    def map(self, fn: tp.Callable[[tp.Any], tp.Any]) -> "PowerSeries":
        return PowerSeries([fn(c) for c in self.coefficients], self.precision)

    def __add__(self, other: tp.Any) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            other = PowerSeries.constant(other, self.precision)
        n = min(self.precision, other.precision)
        return PowerSeries([self[i] + other[i] for i in range(n)], n)

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return self.map(lambda c: -c)

    def __sub__(self, other: tp.Any) -> "PowerSeries":
        return self + (-other)

    def __rsub__(self, other: tp.Any) -> "PowerSeries":
        return (-self) + other

    def __mul__(self, other: tp.Any) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return self.map(lambda c: c * other)
        n = min(self.precision, other.precision)
        out: tp.List[tp.Any] = [Rational(0)] * n
        for i, a in enumerate(self.coefficients[:n]):
            if a == 0:
                continue
            for j in range(n - i):
                b = other[j]
                if b != 0:
                    out[i + j] = out[i + j] + a * b
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PowerSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = PowerSeries.constant(1, self.precision)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by t^k (k >= 0) keeping the precision bookkeeping."""
        return PowerSeries([Rational(0)] * k + self.coefficients, self.precision + k)

    def inverse(self) -> "PowerSeries":
        c0 = self[0]
        if c0 == 0:
            raise ZeroDivisionError("power series with zero constant term is not invertible")
        n = self.precision
        inv0 = 1 / c0
        out: tp.List[tp.Any] = [inv0]
        for k in range(1, n):
            acc = sum((self[i] * out[k - i] for i in range(1, k + 1)), Rational(0))
            out.append(-acc * inv0)
        return PowerSeries(out, n)

    def __truediv__(self, other: tp.Any) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return self * other.inverse()
        return self.map(lambda c: c / other)

    def derivative(self) -> "PowerSeries":
        return PowerSeries([i * c for i, c in enumerate(self.coefficients) if i > 0], self.precision - 1)

    def integral(self) -> "PowerSeries":
        return PowerSeries(
            [Rational(0)] + [c / (i + 1) for i, c in enumerate(self.coefficients)], self.precision + 1
        )

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner) for inner with zero constant term."""
        if inner[0] != 0:
            raise ValueError("inner series must have zero constant term")
        n = min(self.precision, inner.precision)
        result = PowerSeries.constant(self[n - 1], n)
        for k in range(n - 2, -1, -1):
            result = result * inner + self[k]
        return result

    def reversion(self) -> "PowerSeries":
        """Compositional inverse of a series t*(unit)."""
        if self[0] != 0 or self[1] == 0:
            raise ValueError("reversion needs c0 = 0 and c1 != 0")
        n = self.precision
        g = PowerSeries([0, 1 / self[1]], n)
        # Newton iteration on self(g) = t
        t = PowerSeries.variable(n)
        deriv = self.derivative()
        for _ in range(n.bit_length() + 2):
            g = g - (self.compose(g) - t) / deriv.compose(g)
        return g

    def evaluate(self, x: tp.Any, terms: tp.Optional[int] = None) -> tp.Any:
        n = self.precision if terms is None else min(terms, self.precision)
        result: tp.Any = Rational(0)
        for c in reversed(self.coefficients[:n]):
            result = result * x + c
        return result


class LaurentSeries:
    """t^valuation * body with body a PowerSeries (relative precision)."""

    def __init__(self, valuation: int, body: PowerSeries):
        shift = body.valuation()
        if shift is oo:
            shift = 0
        self.valuation = valuation + shift
        self.body = PowerSeries(body.coefficients[shift:], body.precision - shift)

    @property
    def abs_precision(self) -> int:
        return self.valuation + self.body.precision

    @classmethod
    def from_power_series(cls, series: PowerSeries) -> "LaurentSeries":
        return cls(0, series)

    def coefficient(self, k: int) -> tp.Any:
        return self.body[k - self.valuation] if k >= self.valuation else Rational(0)

    def __add__(self, other: tp.Any) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries(0, PowerSeries.constant(other, max(self.abs_precision, 1)))
        v = min(self.valuation, other.valuation)
        top = min(self.abs_precision, other.abs_precision)
        coeffs = [self.coefficient(k) + other.coefficient(k) for k in range(v, top)]
        return LaurentSeries(v, PowerSeries(coeffs, top - v))

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.valuation, -self.body)

    def __sub__(self, other: tp.Any) -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: tp.Any) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return LaurentSeries(self.valuation, self.body * other)
        n = min(self.body.precision, other.body.precision)
        return LaurentSeries(self.valuation + other.valuation, self.body.truncate(n) * other.body.truncate(n))

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        return LaurentSeries(-self.valuation, self.body.inverse())

    def __truediv__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self * other.inverse()

    def to_power_series(self) -> PowerSeries:
        if self.valuation < 0:
            raise ValueError(f"series has a pole of order {-self.valuation}")
        return self.body.shift(self.valuation)

    def __repr__(self) -> str:
        return f"LaurentSeries(t^{self.valuation} * {self.body})"


def gauss_valuation_series(series: PowerSeries, ell: int, rho: Scalar):
    """Gauss valuation of a truncated series viewed as a polynomial."""
    return gauss_valuation(PadicPoly(series.coefficients, ell), rho)


def ceil_rational(x: Scalar) -> int:
    return int(ceiling(as_rational(x)))


__all__ = [
    "PadicElement",
    "PadicPoly",
    "NewtonPolygon",
    "PowerSeries",
    "LaurentSeries",
    "SquareClass",
    "as_rational",
    "valuation",
    "unit_part",
    "unit_residue",
    "truncate_rational",
    "padic_from_rational",
    "padic_to_rational",
    "newton_polygon",
    "gauss_valuation",
    "gauss_valuation_series",
    "square_class",
    "legendre",
    "is_square_padic",
    "is_power_padic",
    "hensel_lift",
    "padic_nth_root",
    "exact_nth_root",
    "padic_roots",
    "ceil_rational",
]
