#!/usr/bin/env python3
"""
Test X0(13) and X1(13) - j-map, cyclic cover, local solubility of the twists
"""

import mpmath
import pytest
from sympy import Rational, oo

from gfemod.core.errors import BruteForceBoundExceeded, OutsideDomain, PreconditionFailed
from gfemod.core.x013 import (
    X013_SPECIAL_VALUES,
    local_solubility,
    local_solubility_bruteforce,
    x013_atkin_lehner,
    x013_jmap,
    x113_cover_residual,
    x113_isomorphic_pairs,
    x113_model_check,
    x113_twist_models,
)


@pytest.mark.parametrize("v,j", X013_SPECIAL_VALUES)
def test_jmap_special_values(v, j):
    assert x013_jmap(v) == j


def test_jmap_poles():
    assert x013_jmap(1) is oo
    assert x013_jmap("oo") is oo
    assert x013_jmap(0) == 576


def test_atkin_lehner_orbits():
    assert x013_atkin_lehner(0) == -12
    assert x013_atkin_lehner(-4) == Rational(-8, 5)
    assert x013_atkin_lehner(oo) == 1
    assert x013_atkin_lehner(1) is oo
    assert x013_atkin_lehner(x013_atkin_lehner(7)) == 7


def test_cyclic_cover_identity():
    report = x113_model_check(0)
    assert report.identity_holds
    assert report.remainder == "0"
    assert mpmath.mpf(report.numeric_residual) < mpmath.mpf(10) ** -40


def test_cover_residual_at_an_integer_point():
    assert x113_cover_residual(2, 30) < mpmath.mpf(10) ** -25


def test_cover_branch_point():
    with mpmath.workdps(80):
        v = 3 * mpmath.exp(2j * mpmath.pi / 3)
    with pytest.raises(OutsideDomain):
        x113_cover_residual(v)


def test_local_solubility_of_a_conic():
    # y^2 = -(1 + x^2)
    assert not local_solubility([-1, 0, -1], 2)
    assert local_solubility([-1, 0, -1], 3)


def test_odd_degree_is_always_soluble():
    for ell in (2, 3, 5):
        assert local_solubility([2, 0, 0, 1], ell)


def test_constant_models():
    assert local_solubility([2], 7)
    assert not local_solubility([3], 7)


def test_local_solubility_preconditions():
    with pytest.raises(PreconditionFailed):
        local_solubility([1] * 8, 2)
    with pytest.raises(PreconditionFailed):
        local_solubility([0, 0], 2)


def test_bruteforce_is_one_sided():
    assert not local_solubility_bruteforce([-1, 0, -1], 2)
    assert local_solubility_bruteforce([-1, 0, -1], 3)
    with pytest.raises(BruteForceBoundExceeded):
        local_solubility_bruteforce([-1, 0, -1], 2, k=30)


def test_twists_are_everywhere_locally_soluble():
    models = x113_twist_models()
    assert [m.row for m in models] == list(range(1, 9))
    assert all(m.everywhere_locally_soluble for m in models)
    assert models[0].to_json()["soluble"] == {"13": True, "2": True, "3": True}


def test_bruteforce_never_contradicts_the_decision():
    for model in x113_twist_models():
        for ell in (2, 3):
            try:
                found = local_solubility_bruteforce(list(model.coefficients), ell)
            except BruteForceBoundExceeded:
                continue
            if found:
                assert model.soluble[ell]


def test_isomorphic_pairs():
    assert x113_isomorphic_pairs() == [
        (1, 5, "x -> -x"),
        (2, 6, "x -> -x"),
        (3, 7, "x -> -x"),
        (4, 8, "identity"),
    ]
