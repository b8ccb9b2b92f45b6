#!/usr/bin/env python3
"""
Test twist planner - static table, rule engine, signed isomorphism tables
"""

import pytest
from sympy import primerange

from gfemod.core.errors import CompositeP, PreconditionFailed
from gfemod.core.twist_planner import (
    TWIST_TABLE,
    Sign,
    SignedIsoTable,
    TwistPlanEntry,
    derive_twist_table,
    fine_table,
    frey_fine_signs,
    nominus_table,
    plan_signature,
    twist_table,
)

P11 = {
    "27a1": "+",
    "54a1": "+",
    "96a1": "+",
    "288a1": "+ -",
    "864a1": "+",
    "864b1": "+",
    "864c1": "+",
}


def test_static_table_covers_units_mod_24():
    assert sorted(TWIST_TABLE) == [1, 5, 7, 11, 13, 17, 19, 23]


def test_plan_at_eleven():
    assert plan_signature(twist_table(11)) == P11
    assert plan_signature(twist_table(59)) == P11


def test_plan_entry_equality_ignores_provenance():
    a = TwistPlanEntry("27a1", frozenset({Sign.PLUS}), ("IsogenyTwist",))
    b = TwistPlanEntry("27a1", frozenset({Sign.PLUS}))
    assert a == b
    assert a.to_json()["signs"] == ["+"]
    with pytest.raises(ValueError):
        TwistPlanEntry("27a1", frozenset())


def test_bad_primes():
    with pytest.raises(CompositeP):
        twist_table(15)
    with pytest.raises(PreconditionFailed):
        twist_table(7)
    with pytest.raises(CompositeP):
        derive_twist_table(49)


@pytest.mark.parametrize("p", list(primerange(11, 200)))
def test_rule_engine_reproduces_static_table(p):
    assert derive_twist_table(p) == twist_table(p)


def test_derived_entries_carry_provenance():
    plan = {entry.label: entry for entry in derive_twist_table(11)}
    assert "KO2" in plan["54a1"].provenance
    assert "KO3" in plan["96a1"].provenance


def test_cm_rule_recorded_on_surviving_cm_curves():
    plan = {entry.label: entry for entry in derive_twist_table(23)}
    assert "CMReduction" in plan["27a1"].provenance
    assert "CMReduction" in plan["288a1"].provenance
    small = {entry.label: entry for entry in derive_twist_table(11)}
    assert "CMReduction" not in small["27a1"].provenance
    assert "CMReduction" not in small["288a1"].provenance


def test_cm_curves_dropped():
    # 27a1 for p = 1 mod 3, 288a1 for p = 1 mod 4
    labels = {entry.label for entry in derive_twist_table(37)}
    assert "27a1" not in labels
    assert "288a1" not in labels


def test_nominus_relabels_through_isogenies():
    names = nominus_table(11)
    assert names == ["27a1", "54a1", "96a1", "288a1", "288a2", "864a1", "864b1", "864c1"]


def test_fine_tables_are_consistent():
    for side, p in ((2, 5), (2, 7), (3, 5), (3, 11)):
        assert fine_table(side, p).is_consistent()


def test_fine_table_all_plus_when_symbol_is_one():
    table = fine_table(2, 7)
    assert {s for _, _, s in table.entries} == {"+"}
    assert fine_table(2, 5).sign("864a1", "864b1") == "-"


def test_inconsistent_cycle_detected():
    table = SignedIsoTable(2, 5, (("a", "b", "+"), ("b", "c", "+"), ("a", "c", "-")))
    assert not table.is_consistent()
    assert table.sign("a", "a") == "+"
    assert table.sign("a", "z") is None


def test_fine_table_preconditions():
    with pytest.raises(PreconditionFailed):
        fine_table(5, 11)
    with pytest.raises(PreconditionFailed):
        fine_table(3, 3)


def test_frey_fine_signs():
    assert frey_fine_signs(3, 4, 3, 5) == {"54a1": "+", "864a1": "-"}
    assert frey_fine_signs(3, 4, 3, 13) == {"54a1": "+", "864a1": "+"}
    with pytest.raises(PreconditionFailed):
        frey_fine_signs(2, 1, 1, 5)
