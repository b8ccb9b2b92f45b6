"""
Curve Registry - Static reference curves used by the modular method

Cremona-labelled models, isogeny edges, CM discriminants and inertial-class
tags for the curves that appear in the local classification and the twist
plan. The registry round-trips through a JSON document so tests can diff it.
"""

import json
import logging
import re
import typing as tp

from pydantic import BaseModel, Field

from .elliptic_models import WeierstrassModel
from .errors import UnknownLabel

logger = logging.getLogger(__name__)


# label -> [a1, a2, a3, a4, a6]
CURVE_AINVS: tp.Dict[str, tp.List[int]] = {
    "27a1": [0, 0, 1, 0, -7],
    "27a2": [0, 0, 1, -270, -1708],
    "27a3": [0, 0, 1, 0, 0],
    "27a4": [0, 0, 1, -30, 63],
    "54a1": [1, -1, 0, 12, 8],
    "54a2": [1, -1, 0, -123, -667],
    "54a3": [1, -1, 0, -3, 3],
    "96a1": [0, 1, 0, -2, 0],
    "96a2": [0, 1, 0, -17, -33],
    "96a3": [0, 1, 0, 8, 8],
    "96a4": [0, 1, 0, -32, 60],
    "288a1": [0, 0, 0, 3, 0],
    "288a2": [0, 0, 0, -12, 0],
    "864a1": [0, 0, 0, -3, 6],
    "864b1": [0, 0, 0, -24, 48],
    "864c1": [0, 0, 0, 24, -16],
    "121a1": [1, 1, 1, -30, -76],
    "121b1": [0, -1, 1, -7, 10],
    "121c1": [1, 1, 0, -2, -7],
    "121d1": [0, -1, 1, -40, -221],
}

ISOGENY_EDGES: tp.List[tp.Tuple[str, str, int]] = [
    ("27a2", "27a1", 3),
    ("27a1", "27a3", 3),
    ("27a3", "27a4", 3),
    ("54a2", "54a1", 3),
    ("54a1", "54a3", 3),
    ("96a2", "96a1", 2),
    ("96a3", "96a1", 2),
    ("96a1", "96a4", 2),
    ("288a1", "288a2", 2),
]

CM_DISCRIMINANTS: tp.Dict[str, int] = {
    "27a1": -3,
    "27a2": -27,
    "27a3": -3,
    "27a4": -27,
    "288a1": -4,
    "288a2": -4,
    "121b1": -11,
}

# prime -> tag -> curves sharing the inertial field
INERTIAL_CLASSES: tp.Dict[int, tp.Dict[str, tp.List[str]]] = {
    2: {
        "L2_96": ["96a1", "864c1"],
        "L2_288": ["288a1", "864a1", "864b1"],
    },
    3: {
        "L3_27": ["27a1", "864b1", "864c1"],
        "L3_54": ["54a1", "864a1"],
    },
}

# the curves left after the irreducibility and local arguments
SEVEN_CURVES = ["27a1", "54a1", "96a1", "288a1", "864a1", "864b1", "864c1"]


class CurveRecord(BaseModel):
    """A registry entry."""

    label: str
    ainvs: tp.List[int]
    isogeny_edges: tp.List[tp.Tuple[str, int]] = Field(default_factory=list)
    cm: tp.Optional[int] = None
    inertial_tags: tp.Dict[int, str] = Field(default_factory=dict)

    @property
    def model(self) -> WeierstrassModel:
        return WeierstrassModel.from_ainvs(self.ainvs)

    @property
    def label_conductor(self) -> int:
        match = re.match(r"(\d+)", self.label)
        if match is None:
            raise ValueError(f"malformed label {self.label!r}")
        return int(match.group(1))


class RegistryDocument(BaseModel):
    curves: tp.List[CurveRecord]


def _build_record(label: str) -> CurveRecord:
    edges = [(b, deg) for a, b, deg in ISOGENY_EDGES if a == label]
    edges += [(a, deg) for a, b, deg in ISOGENY_EDGES if b == label]
    tags = {
        ell: tag
        for ell, classes in INERTIAL_CLASSES.items()
        for tag, members in classes.items()
        if label in members
    }
    return CurveRecord(
        label=label,
        ainvs=CURVE_AINVS[label],
        isogeny_edges=sorted(edges),
        cm=CM_DISCRIMINANTS.get(label),
        inertial_tags=tags,
    )


class CurveRegistry:
    """Read-only collection of CurveRecords keyed by label."""

    def __init__(self, records: tp.Optional[tp.Iterable[CurveRecord]] = None):
        if records is None:
            records = (_build_record(label) for label in CURVE_AINVS)
        self._records: tp.Dict[str, CurveRecord] = {r.label: r for r in records}

    def __contains__(self, label: str) -> bool:
        return label in self._records

    def __iter__(self) -> tp.Iterator[CurveRecord]:
        return iter(self._records.values())

    def __len__(self) -> int:
        return len(self._records)

    @property
    def labels(self) -> tp.List[str]:
        return list(self._records)

    def get(self, label: str) -> CurveRecord:
        try:
            return self._records[label]
        except KeyError:
            raise UnknownLabel(f"unknown curve label '{label}'") from None

    def to_json(self) -> str:
        document = RegistryDocument(curves=list(self._records.values()))
        return json.dumps(document.model_dump(mode="json"), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CurveRegistry":
        document = RegistryDocument.model_validate(json.loads(text))
        return cls(document.curves)


_DEFAULT_REGISTRY: tp.Optional[CurveRegistry] = None


def default_registry() -> CurveRegistry:
    global _DEFAULT_REGISTRY
    if _DEFAULT_REGISTRY is None:
        _DEFAULT_REGISTRY = CurveRegistry()
    return _DEFAULT_REGISTRY


def reference_curve(label: str) -> CurveRecord:
    """
    Look up a reference curve.

    Raises:
        UnknownLabel: label is not in the registry
    """
    return default_registry().get(label)


def curve_model(label: str) -> WeierstrassModel:
    return reference_curve(label).model
