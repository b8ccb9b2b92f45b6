"""
Tate's Algorithm - Local reduction data of an elliptic curve at a prime

Follows the classical step structure (In, II, III, IV, I0*, Im*, IV*, III*,
II*, then rescale when the model is not minimal) on an integral model, with
translations chosen as the least nonnegative residues. Returns the Kodaira
symbol, conductor exponent, minimal discriminant valuation and Tamagawa
number.
"""

import enum
import logging
import typing as tp
from dataclasses import dataclass

from sympy import factorint, isprime
from sympy import mod_inverse

from .elliptic_models import WeierstrassModel
from .errors import PreconditionFailed

logger = logging.getLogger(__name__)

_HUGE = 10 ** 9


class ReductionClass(enum.Enum):
    GOOD = "Good"
    MULT_SPLIT = "MultSplit"
    MULT_NONSPLIT = "MultNonSplit"
    ADDITIVE = "Additive"


@dataclass(frozen=True)
class ReductionData:
    """Output of Tate's algorithm at a single prime."""

    ell: int
    kodaira_type: str
    conductor_exponent: int
    v_min_disc: int
    reduction_class: ReductionClass
    tamagawa: int

    @property
    def is_good(self) -> bool:
        return self.reduction_class is ReductionClass.GOOD


def integral_ainvs(m: WeierstrassModel) -> tp.List[int]:
    """Integral a-invariants obtained by the scaling a_i -> u^i a_i."""
    ainvs = list(m.ainvs)
    weights = (1, 2, 3, 4, 6)
    denominators = 1
    for a in ainvs:
        denominators *= int(a.q)
    u = 1
    for q in factorint(denominators):
        k = 0
        for a, i in zip(ainvs, weights):
            if a == 0:
                continue
            vq = 0
            den = int(a.q)
            while den % q == 0:
                den //= q
                vq += 1
            k = max(k, -(-vq // i))
        u *= q ** k
    return [int(a * u ** i) for a, i in zip(ainvs, weights)]


def _val(n: int, p: int) -> int:
    if n == 0:
        return _HUGE
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _has_root(a: int, b: int, c: int, p: int) -> bool:
    return any((a * x * x + b * x + c) % p == 0 for x in range(p))


def _cubic_roots(b: int, c: int, d: int, p: int) -> int:
    return sum(1 for x in range(p) if (x ** 3 + b * x * x + c * x + d) % p == 0)


class _Model:
    """Mutable integral model with the rst coordinate changes."""

    def __init__(self, ainvs: tp.Sequence[int]):
        self.a1, self.a2, self.a3, self.a4, self.a6 = (int(a) for a in ainvs)

    def transform(self, r: int, s: int, t: int) -> None:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        self.a1 = a1 + 2 * s
        self.a2 = a2 - s * a1 + 3 * r - s * s
        self.a3 = a3 + r * a1 + 2 * t
        self.a4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
        self.a6 = a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1

    @property
    def b(self) -> tp.Tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def c4(self) -> int:
        b2, b4, _, _ = self.b
        return b2 * b2 - 24 * b4

    @property
    def c6(self) -> int:
        b2, b4, b6, _ = self.b
        return -b2 ** 3 + 36 * b2 * b4 - 216 * b6

    @property
    def disc(self) -> int:
        b2, b4, b6, b8 = self.b
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def tate_algorithm(m: WeierstrassModel, ell: int) -> ReductionData:
    """
    Run Tate's algorithm on m at the prime ell.

    Args:
        m: any model over Q (it is first made integral)
        ell: prime

    Returns:
        ReductionData with Kodaira symbol, conductor exponent f, minimal
        discriminant valuation and Tamagawa number
    """
    p = int(ell)
    if not isprime(p):
        raise PreconditionFailed(f"{p} is not prime")
    C = _Model(integral_ainvs(m))

    def inv(x: int) -> int:
        return mod_inverse(x % p, p)

    while True:
        b2, b4, b6, b8 = C.b
        c4, c6 = C.c4, C.c6
        vD = _val(C.disc, p)
        if vD == 0:
            return ReductionData(p, "I0", 0, 0, ReductionClass.GOOD, 1)

        # move the singular point to (0, 0)
        if p == 2:
            if b2 % 2 == 0:
                r = C.a4 % 2
                t = (((r + C.a2) * r + C.a4) * r + C.a6) % 2
            else:
                a1inv = inv(C.a1)
                r = (a1inv * C.a3) % 2
                t = (a1inv * (C.a4 + r * r)) % 2
        elif p == 3:
            r = (-b6) % 3 if b2 % 3 == 0 else (-inv(b2) * b4) % 3
            t = (C.a1 * r + C.a3) % 3
        else:
            if c4 % p == 0:
                r = (-inv(12) * b2) % p
            else:
                r = (-inv(12 * c4) * (c6 + b2 * c4)) % p
            t = (-inv(2) * (C.a1 * r + C.a3)) % p
        C.transform(r, 0, t)
        b2, b4, b6, b8 = C.b
        logger.debug(f"tate p={p}: vD={vD}, model {[C.a1, C.a2, C.a3, C.a4, C.a6]}")

        if c4 % p != 0:
            if _has_root(1, C.a1, -C.a2, p):
                return ReductionData(p, f"I{vD}", 1, vD, ReductionClass.MULT_SPLIT, vD)
            cp = 2 if vD % 2 == 0 else 1
            return ReductionData(p, f"I{vD}", 1, vD, ReductionClass.MULT_NONSPLIT, cp)
        if _val(C.a6, p) < 2:
            return ReductionData(p, "II", vD, vD, ReductionClass.ADDITIVE, 1)
        if _val(b8, p) < 3:
            return ReductionData(p, "III", vD - 1, vD, ReductionClass.ADDITIVE, 2)
        if _val(b6, p) < 3:
            cp = 3 if _has_root(1, C.a3 // p, -(C.a6 // (p * p)), p) else 1
            return ReductionData(p, "IV", vD - 2, vD, ReductionClass.ADDITIVE, cp)

        # now p | a1, a2; p^2 | a3, a4; p^3 | a6
        if p == 2:
            s = C.a2 % 2
            t = 2 * ((C.a6 // 4) % 2)
        elif p == 3:
            s, t = C.a1, C.a3
        else:
            s = (-C.a1 * inv(2)) % p
            t = (-C.a3 * inv(2)) % p
        C.transform(0, s, t)

        b = C.a2 // p
        c = C.a4 // (p * p)
        d = C.a6 // p ** 3
        w = 27 * d * d - b * b * c * c + 4 * b ** 3 * d - 18 * b * c * d + 4 * c ** 3
        x = 3 * c - b * b
        if w % p:
            cp = 1 + _cubic_roots(b, c, d, p)
            return ReductionData(p, "I0*", vD - 4, vD, ReductionClass.ADDITIVE, cp)

        if x % p:
            # double root: move it to 0 and peel off extra components
            if p == 2:
                r = c % 2
            elif p == 3:
                r = (c * inv(b)) % 3
            else:
                r = ((b * c - 9 * d) * inv(2 * x)) % p
            C.transform(p * r, 0, 0)
            ix, iy = 3, 3
            mx = my = p * p
            while True:
                a2t = C.a2 // p
                a3t = C.a3 // my
                a4t = C.a4 // (p * mx)
                a6t = C.a6 // (mx * my)
                if (a3t * a3t + 4 * a6t) % p:
                    cp = 4 if _has_root(1, a3t, -a6t, p) else 2
                    break
                if p == 2:
                    t = my * (a6t % 2)
                else:
                    t = my * ((-a3t * inv(2)) % p)
                C.transform(0, 0, t)
                my *= p
                iy += 1
                a2t = C.a2 // p
                a3t = C.a3 // my
                a4t = C.a4 // (p * mx)
                a6t = C.a6 // (mx * my)
                if (a4t * a4t - 4 * a6t * a2t) % p:
                    cp = 4 if _has_root(a2t, a4t, a6t, p) else 2
                    break
                if p == 2:
                    r = mx * ((a6t * inv(a2t)) % 2)
                else:
                    r = mx * ((-a4t * inv(2 * a2t)) % p)
                C.transform(r, 0, 0)
                mx *= p
                ix += 1
            n = ix + iy - 5
            return ReductionData(p, f"I{n}*", vD - n - 4, vD, ReductionClass.ADDITIVE, cp)

        # triple root
        if p == 2:
            r = b % 2
        elif p == 3:
            r = (-d) % 3
        else:
            r = (-b * inv(3)) % p
        C.transform(p * r, 0, 0)
        a3t = C.a3 // (p * p)
        a6t = C.a6 // p ** 4
        if (a3t * a3t + 4 * a6t) % p:
            cp = 3 if _has_root(1, a3t, -a6t, p) else 1
            return ReductionData(p, "IV*", vD - 6, vD, ReductionClass.ADDITIVE, cp)
        if p == 2:
            t = -p * p * (a6t % 2)
        else:
            t = p * p * ((-a3t * inv(2)) % p)
        C.transform(0, 0, t)
        if _val(C.a4, p) < 4:
            return ReductionData(p, "III*", vD - 7, vD, ReductionClass.ADDITIVE, 2)
        if _val(C.a6, p) < 6:
            return ReductionData(p, "II*", vD - 8, vD, ReductionClass.ADDITIVE, 1)

        logger.debug(f"tate p={p}: model not minimal, rescaling")
        C = _Model([C.a1 // p, C.a2 // p ** 2, C.a3 // p ** 3, C.a4 // p ** 4, C.a6 // p ** 6])


def conductor(m: WeierstrassModel) -> int:
    """Global conductor: product of ell^f over the primes of bad reduction."""
    N = 1
    for ell in factorint(abs(_Model(integral_ainvs(m)).disc)):
        N *= ell ** tate_algorithm(m, ell).conductor_exponent
    return N
