"""
Twist Planner - Which twists X_E(p), X_E^-(p) survive the local arguments

Static table by p mod 24, and a rule engine that re-derives it from the
isogeny signs, the multiplicative (Tate curve) criterion at 2 and 3, the
inertial-field decision rules, the signed isomorphism tables over Q_2 and
Q_3 and the CM eliminations.
"""

import enum
import logging
import typing as tp
from dataclasses import dataclass, field

from sympy import isprime

from .errors import CompositeP, PreconditionFailed
from .exact_arith import legendre
from .frey_local import FREY_FINE_TYPES, LOCAL_TABLES
from .galois_matrix import (
    SymplecticType,
    isogeny_symplectic_sign,
    ko_symplectic,
    local_criterion_rule,
)
from .registry import INERTIAL_CLASSES, SEVEN_CURVES

logger = logging.getLogger(__name__)


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    @classmethod
    def of(cls, kind: SymplecticType) -> "Sign":
        if kind is SymplecticType.SYMPLECTIC:
            return cls.PLUS
        if kind is SymplecticType.ANTI_SYMPLECTIC:
            return cls.MINUS
        raise ValueError(f"no single sign for {kind.value}")


class Rule(enum.Enum):
    ISOGENY_TWIST = "IsogenyTwist"
    KO2 = "KO2"
    KO3 = "KO3"
    MAIN_CRIT2 = "MainCrit2"
    MAIN_CRIT3 = "MainCrit3"
    CM_REDUCTION = "CMReduction"
    FINE2 = "Fine2"
    FINE3 = "Fine3"


BOTH = frozenset({Sign.PLUS, Sign.MINUS})


@dataclass(frozen=True)
class TwistPlanEntry:
    """One curve of the plan; equality ignores provenance."""

    label: str
    signs: tp.FrozenSet[Sign]
    provenance: tp.Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.signs:
            raise ValueError(f"{self.label}: a plan entry needs at least one sign")

    @property
    def sign_string(self) -> str:
        return " ".join(s.value for s in (Sign.PLUS, Sign.MINUS) if s in self.signs)

    def to_json(self) -> tp.Dict[str, tp.Any]:
        return {
            "label": self.label,
            "signs": [s.value for s in (Sign.PLUS, Sign.MINUS) if s in self.signs],
            "provenance": list(self.provenance),
        }


# p mod 24 -> label -> signs
_P, _M, _PM = "+", "-", "+-"
TWIST_TABLE: tp.Dict[int, tp.Dict[str, str]] = {
    1: {"54a1": _P, "96a1": _P, "864a1": _P, "864b1": _P, "864c1": _P},
    5: {"27a1": _P, "54a1": _M, "96a1": _P, "864a1": _PM, "864b1": _PM, "864c1": _PM},
    7: {"54a1": _M, "96a1": _P, "288a1": _P, "864a1": _P, "864b1": _P, "864c1": _P},
    11: {"27a1": _P, "54a1": _P, "96a1": _P, "288a1": _PM, "864a1": _P, "864b1": _P, "864c1": _P},
    13: {"96a1": _M, "864a1": _P, "864b1": _P, "864c1": _P},
    17: {"27a1": _P, "54a1": _P, "864a1": _P, "864b1": _P, "864c1": _P},
    19: {"54a1": _P, "96a1": _M, "288a1": _PM, "864a1": _PM, "864b1": _PM, "864c1": _PM},
    23: {"27a1": _P, "288a1": _P, "864a1": _P, "864b1": _P, "864c1": _P},
}


def _signs(text: str) -> tp.FrozenSet[Sign]:
    return frozenset(Sign(ch) for ch in text)


def _check_p(p: int, minimum: int = 11) -> None:
    if not isprime(p):
        raise CompositeP(f"p = {p} is not prime")
    if p < minimum:
        raise PreconditionFailed(f"the twist plan needs p >= {minimum}, got {p}")


def twist_table(p: int) -> tp.List[TwistPlanEntry]:
    """
    The surviving twists for a prime p >= 11, read from the static table.

    Raises:
        CompositeP: p is not prime
    """
    _check_p(p)
    row = TWIST_TABLE[p % 24]
    return [TwistPlanEntry(label, _signs(row[label])) for label in SEVEN_CURVES if label in row]


# Signed isomorphism tables over Q_2 and Q_3

FINE_PAIRS: tp.Dict[int, tp.List[tp.Tuple[str, str, str]]] = {
    2: [("96a1", "864c1", "+"), ("288a1", "864a1", "-"), ("288a1", "864b1", "+"), ("864a1", "864b1", "-")],
    3: [("27a1", "864c1", "+"), ("27a1", "864b1", "-"), ("864b1", "864c1", "-"), ("54a1", "864a1", "-")],
}

_FINE_MIN_P = {2: 3, 3: 5}


@dataclass(frozen=True)
class SignedIsoTable:
    """Symplectic (+) or anti-symplectic (-) isomorphism types of p-torsion over Q_side."""

    side: int
    p: int
    entries: tp.Tuple[tp.Tuple[str, str, str], ...]

    def _potentials(self, first: str) -> tp.Dict[str, str]:
        """Sign of every curve reachable from `first`, along a spanning tree."""
        edges: tp.Dict[str, tp.List[tp.Tuple[str, str]]] = {}
        for a, b, s in self.entries:
            edges.setdefault(a, []).append((b, s))
            edges.setdefault(b, []).append((a, s))
        seen = {first: "+"}
        stack = [first]
        while stack:
            node = stack.pop()
            for nxt, s in edges.get(node, []):
                if nxt not in seen:
                    seen[nxt] = "+" if seen[node] == s else "-"
                    stack.append(nxt)
        return seen

    def sign(self, first: str, second: str) -> tp.Optional[str]:
        """Sign between two curves, composing table entries along a path."""
        return self._potentials(first).get(second)

    def is_consistent(self) -> bool:
        """Every cycle of listed pairs has sign product +."""
        potentials: tp.Dict[str, str] = {}
        for a, _, _ in self.entries:
            if a not in potentials:
                potentials.update(self._potentials(a))
        return all(
            ("+" if potentials[a] == potentials[b] else "-") == s for a, b, s in self.entries
        )

    def to_json(self) -> tp.Dict[str, tp.Any]:
        return {"side": self.side, "p": self.p, "entries": [list(e) for e in self.entries]}


def fine_table(side: int, p: int) -> SignedIsoTable:
    """
    Isomorphism types over Q_2 (side 2) or Q_3 (side 3).

    When (side/p) = 1 every listed isomorphism is symplectic.
    """
    if side not in FINE_PAIRS:
        raise PreconditionFailed(f"side must be 2 or 3, got {side}")
    if not isprime(p) or p < _FINE_MIN_P[side]:
        raise PreconditionFailed(f"side {side} needs a prime p >= {_FINE_MIN_P[side]}, got {p}")
    symbol = legendre(side, p)
    entries = tuple(
        (a, b, Sign.of(local_criterion_rule(symbol, s)).value) for a, b, s in FINE_PAIRS[side]
    )
    return SignedIsoTable(side, p, entries)


def frey_fine_signs(side: int, row: int, d: int, p: int) -> tp.Dict[str, str]:
    """
    Up to quadratic twist, the sign of the isomorphism between the Frey curve
    of a given table row and twist d and each comparison curve.

    Raises:
        PreconditionFailed: the row or d has no entry on that side
    """
    fine_table(side, p)
    symbol = legendre(side, p)
    for s, rows, ds, signs in FREY_FINE_TYPES:
        if s == side and row in rows and d in ds:
            return {label: Sign.of(local_criterion_rule(symbol, sign)).value for label, sign in signs.items()}
    raise PreconditionFailed(f"no isomorphism data for row {row}, d = {d} at {side}")


def _realized_signs(side: int, label: str, p: int) -> tp.Set[str]:
    signs = set()
    for entry in LOCAL_TABLES[side]:
        for d in entry.d_set:
            try:
                signs.add(frey_fine_signs(side, entry.row, d, p).get(label, ""))
            except PreconditionFailed:
                continue
    signs.discard("")
    return signs


# Rule engine

# curves with a single multiplicative prime: (label, ell, v(Delta) of the curve,
# v(Delta) of the Frey curve mod p)
_KO_CURVES = {"54a1": (2, 3, -6, Rule.KO2), "96a1": (3, 2, -3, Rule.KO3)}

# minus twist relabellings through an isogeny of the given degree
_RELABEL = {"54a1": ("54a2", 3), "96a1": ("96a2", 2), "288a1": ("288a2", 2)}


def _cm_applies(label: str, p: int) -> bool:
    return label in ("27a1", "288a1") and (p >= 17 or p == 13)


def _cm_eliminated(label: str, p: int) -> bool:
    """CM curves whose image would lie in a split Cartan normalizer."""
    if not _cm_applies(label, p):
        return False
    return p % 3 == 1 if label == "27a1" else p % 4 == 1


def _local_signs(label: str, p: int) -> tp.Tuple[tp.Set[Sign], tp.List[str]]:
    """Signs that survive the local rules, before CM elimination."""
    signs = set(BOTH)
    provenance: tp.List[str] = []
    if label == "27a1" and legendre(3, p) == -1:
        # the 3-isogeny to 27a3, the -3 twist, is anti-symplectic
        if isogeny_symplectic_sign(3, p) is SymplecticType.ANTI_SYMPLECTIC:
            signs.discard(Sign.MINUS)
            provenance.append(Rule.ISOGENY_TWIST.value)
    if label in _KO_CURVES:
        _, v_curve, v_frey, rule = _KO_CURVES[label]
        signs &= {Sign.of(ko_symplectic(v_frey, v_curve, p))}
        provenance.append(rule.value)
    for ell, rule in ((2, Rule.MAIN_CRIT2), (3, Rule.MAIN_CRIT3)):
        # the conductor 2^5 set at 2, the conductor 3^3 set at 3
        in_class = any(label in members for members in INERTIAL_CLASSES[ell].values())
        if in_class and legendre(ell, p) == 1 and Sign.MINUS in signs:
            signs.discard(Sign.MINUS)
            provenance.append(rule.value)
    for side, rule in ((2, Rule.FINE2), (3, Rule.FINE3)):
        if Sign.MINUS in signs and legendre(side, p) == -1 and "-" in _realized_signs(side, label, p):
            provenance.append(rule.value)
    return signs, provenance


def derive_twist_table(p: int) -> tp.List[TwistPlanEntry]:
    """
    Recompute the surviving twists from the rules.

    Raises:
        CompositeP: p is not prime
    """
    _check_p(p)
    plan = []
    for label in SEVEN_CURVES:
        signs, provenance = _local_signs(label, p)
        if _cm_eliminated(label, p):
            logger.debug(f"p={p}: {label} eliminated by its CM")
            continue
        if not signs:
            logger.debug(f"p={p}: no sign of {label} survives {provenance}")
            continue
        if _cm_applies(label, p):
            # image in a non-split Cartan normalizer
            provenance.append(Rule.CM_REDUCTION.value)
        plan.append(TwistPlanEntry(label, frozenset(signs), tuple(provenance)))
    return plan


def _relabel(label: str, sign: Sign, p: int) -> str:
    if sign is Sign.PLUS:
        return label
    if label in _RELABEL:
        target, degree = _RELABEL[label]
        if isogeny_symplectic_sign(degree, p) is SymplecticType.ANTI_SYMPLECTIC:
            return target
    return f"{label}^-"


def nominus_table(p: int) -> tp.List[str]:
    """
    The twists before CM elimination, with minus twists renamed through an
    anti-symplectic isogeny where one exists (54a2, 96a2, 288a2).
    """
    _check_p(p)
    names: tp.List[str] = []
    for label in SEVEN_CURVES:
        signs, _ = _local_signs(label, p)
        for sign in (Sign.PLUS, Sign.MINUS):
            if sign in signs:
                names.append(_relabel(label, sign, p))
    for label in ("27a1", "288a1", "864b1"):
        if label not in names:
            raise AssertionError(f"{label} carries a rational point but is missing for p = {p}")
    return names


def plan_signature(plan: tp.Iterable[TwistPlanEntry]) -> tp.Dict[str, str]:
    return {entry.label: entry.sign_string for entry in plan}
