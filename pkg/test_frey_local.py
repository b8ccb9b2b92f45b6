#!/usr/bin/env python3
"""
Test Frey curve local data - classification tables, curve matrix, solutions, oracle agreement
"""

import random

import pytest
from sympy import Rational

from gfemod.core.errors import NotCoprimeAt2, NotCoprimeAt3, PreconditionFailed, SingularCurve
from gfemod.core.frey_local import (
    LOCAL_TABLES,
    TABLE_2ADIC,
    TABLE_3ADIC,
    SolutionTag,
    SolutionTriple,
    check_sample,
    classify,
    classify_2adic,
    classify_3adic,
    corollary_checks,
    frey_j,
    frey_model,
    frey_realization,
    frey_triples_fine,
    global_realizations,
    good_j,
    infeasibility_witness,
    match_curve,
    oracle_sweep,
    sample_row,
    search_solutions,
    verify_known_solutions,
)
from gfemod.core.settings import GfeSettings


def test_frey_model_invariants():
    E = frey_model(3, -2)
    assert (E.c4, E.disc) == (288, -1728)
    assert frey_j(3, -2) == -13824
    assert frey_j(Rational(1, 2), 1) == Rational(1728 * 4, 5)


def test_frey_model_singular():
    with pytest.raises(SingularCurve):
        frey_model(1, -1)


def test_table_sizes():
    assert len(TABLE_2ADIC) == 15
    assert len(TABLE_3ADIC) == 12
    assert [e for e in TABLE_2ADIC if not e.feasible] == [TABLE_2ADIC[-1]]


@pytest.mark.parametrize("ell", [2, 3])
def test_every_entry_is_found_by_its_residues(ell):
    classifier = classify_2adic if ell == 2 else classify_3adic
    for entry in LOCAL_TABLES[ell]:
        for a in entry.a_residues:
            for b in entry.b_residues:
                assert classifier(a, b).entry is entry


def test_classify_catalan_pair():
    result = classify(3, -2)
    assert (result.i2, result.i3, result.curve) == (6, 3, "864b1")
    payload = result.to_json()
    assert payload["curve"] == "864b1"
    assert payload["v2N"] == 5
    assert payload["dSet"]["2"] == [2, -2, 6, -6]


def test_unlisted_class_has_arithmetic_witness():
    row = classify_2adic(1, 1)
    assert not row.feasible
    assert row.index is None
    assert row.witness.arithmetic
    assert (row.witness.min_valuation, row.witness.max_valuation) == (1, 1)
    assert classify(1, 1).to_json()["i2"] == "Infeasible"


def test_tabulated_infeasible_row():
    row = classify_2adic(1, 4)
    assert row.entry.row == 7
    assert not row.feasible
    assert "tabulated" in row.witness.reason


def test_witness_on_feasible_class_is_not_arithmetic():
    witness = infeasibility_witness(2, 1, 4, 7, 8)
    assert not witness.arithmetic


def test_coprimality_errors():
    with pytest.raises(NotCoprimeAt2):
        classify_2adic(2, 4)
    with pytest.raises(NotCoprimeAt3):
        classify_3adic(3, 6)


def test_curve_matrix():
    assert match_curve(1, 4) == "54a1"
    assert match_curve(1, 7) == "54a1"
    assert match_curve(4, 3) == "27a1"
    assert match_curve(3, 1) == "96a1"
    assert match_curve(1, 1) is None
    assert match_curve(7, 1) is None
    with pytest.raises(PreconditionFailed):
        match_curve(0, 1)


def test_corollary_checks():
    assert corollary_checks(3, -2, 1, 11) == []
    assert corollary_checks(1, 4, 6, 11) == ["B4Mod8", "SixDividesC"]
    with pytest.raises(PreconditionFailed):
        corollary_checks(3, -2, 1, 7)


def test_good_j():
    assert good_j(-13824, 11) == SolutionTriple(3, -2, 1, 11)
    assert good_j(0, 7) == SolutionTriple(1, 0, 1, 7)
    assert good_j(1728, 7) == SolutionTriple(0, 1, 1, 7)
    assert good_j(5, 7) is None


def test_solution_tags():
    assert SolutionTriple(3, -2, 1, 11).tag is SolutionTag.CATALAN
    assert SolutionTriple(1, 0, 1, 7).tag is SolutionTag.TRIVIAL
    assert SolutionTriple(71, -17, 2, 7).tag is SolutionTag.NON_TRIVIAL


def test_known_solutions_hold():
    report = verify_known_solutions()
    assert len(report.identities) == 8
    assert report.all_hold
    assert report.to_json()["all_hold"] is True


def test_search_small_exponent(settings):
    found = {(s.a, s.b, s.c) for s in search_solutions(7, 100, settings)}
    assert {(71, -17, 2), (-71, -17, 2), (3, -2, 1), (-3, -2, 1), (0, 1, 1)} <= found
    assert all(a * a + b ** 3 == c ** 7 for a, b, c in found)


def test_search_is_split_invariant(settings):
    single = search_solutions(11, 200, settings)
    split = search_solutions(11, 200, settings.override(threads=3))
    assert single == split
    assert (3, -2, 1) in {(s.a, s.b, s.c) for s in single}


def test_search_rejects_composite_exponent(settings):
    with pytest.raises(PreconditionFailed):
        search_solutions(9, 10, settings)


def test_sampled_rows_match_their_entry(rng):
    for entry in TABLE_3ADIC:
        a, b = sample_row(entry, rng)
        assert entry.matches(a, b)
        assert check_sample(entry, a, b, 11) == []


@pytest.mark.parametrize("ell", [2, 3])
def test_oracle_sweep_agrees(ell):
    settings = GfeSettings()
    report = oracle_sweep(ell, 2, rng=random.Random(settings.seed), settings=settings)
    assert len(report) == len(LOCAL_TABLES[ell])
    assert all(row.ok for row in report), [row.to_json() for row in report if not row.ok]


def test_global_realizations():
    assert all(entry["isomorphic"] for entry in global_realizations())


def test_local_realization():
    realization = frey_realization("27a1", 2)
    assert realization is not None
    assert realization.twist == 1 / (12 * realization.d)
    # 96a1: 1728 Delta = 2^12 3^5
    at_two = frey_realization("96a1", 2)
    assert (at_two.a, at_two.b) == (-10, -7)
    assert frey_realization("96a1", 3) is None


def test_fine_types_by_side():
    assert len(frey_triples_fine(3)) == 4
    assert len(frey_triples_fine()) == 10
