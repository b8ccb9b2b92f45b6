#!/usr/bin/env python3
"""
Test elliptic models - invariants, twists, points, formal groups, Tate's algorithm, registry
"""

import pytest
from sympy import Poly, Rational, symbols

from gfemod.core.elliptic_models import (
    INFINITY,
    EllPoint,
    WeierstrassModel,
    division_poly_2,
    formal_log,
    is_isomorphic,
    is_locally_isomorphic,
    point_add,
    point_from_t,
    point_mul,
    point_order,
    quadratic_twist,
    short_model,
    t_parameter,
)
from gfemod.core.errors import SingularCurve, UnknownLabel
from gfemod.core.frey_local import frey_model, global_realizations
from gfemod.core.registry import CurveRegistry, curve_model, default_registry, reference_curve
from gfemod.core.tate import ReductionClass, conductor, tate_algorithm

x = symbols("x")

X011 = WeierstrassModel(0, -1, 1, -10, -20)


def test_x011_invariants():
    assert X011.j == Rational(-122023936, 161051)
    assert X011.disc == -161051


def test_frey_curve_invariants():
    m = frey_model(3, -2)
    assert m.c4 == 288
    assert m.c6 == 5184
    assert m.disc == -1728


def test_singular_model_rejected():
    with pytest.raises(SingularCurve):
        WeierstrassModel(a4=0, a6=0)
    with pytest.raises(SingularCurve):
        frey_model(1, -1)


def test_twists_scale_invariants():
    t = quadratic_twist(X011, -3)
    assert t.c4 == 9 * X011.c4
    assert t.c6 == -27 * X011.c6
    assert t.j == X011.j
    assert is_isomorphic(short_model(X011), X011)
    assert not is_isomorphic(t, X011)


def test_local_isomorphism_follows_square_classes():
    assert is_locally_isomorphic(quadratic_twist(X011, 17), X011, 2)
    assert not is_locally_isomorphic(quadratic_twist(X011, 5), X011, 2)
    assert is_locally_isomorphic(quadratic_twist(X011, 7), X011, 3)


def test_global_twist_realizations():
    rows = global_realizations()
    assert {r["label"] for r in rows} == {"27a1", "288a1", "288a2", "864b1"}
    assert all(r["isomorphic"] for r in rows)


def test_rational_torsion_of_x011():
    P = EllPoint.of(5, 5)
    assert X011.is_on_curve(P)
    assert point_order(X011, P) == 5
    assert point_mul(X011, 5, P).is_infinity
    assert point_add(X011, P, point_mul(X011, 4, P)).is_infinity
    assert {point_mul(X011, k, P).x for k in range(1, 5)} == {5, 16}


def test_division_polynomial_of_x011():
    assert division_poly_2(X011) == Poly(4 * x ** 3 - 4 * x ** 2 - 40 * x - 79, x, domain="QQ")


def test_formal_log_of_x011():
    log = formal_log(X011, 9)
    expected = [1, 0, Rational(-1, 3), Rational(1, 2), Rational(-19, 5), -1, Rational(5, 7), Rational(-27, 2)]
    assert [log[i] for i in range(1, 9)] == expected


def test_point_from_t_inverts_t_parameter():
    P = point_from_t(X011, Rational(1, 8), 30)
    assert t_parameter(P) == Rational(1, 8)
    assert t_parameter(INFINITY) == 0


def test_tate_algorithm_x011():
    data = tate_algorithm(X011, 11)
    assert data.kodaira_type == "I5"
    assert data.conductor_exponent == 1
    assert data.reduction_class is ReductionClass.MULT_SPLIT
    assert data.tamagawa == 5
    assert tate_algorithm(X011, 5).is_good


@pytest.mark.parametrize("label", ["27a1", "54a1", "96a1", "288a1", "864a1", "864b1", "864c1"])
def test_conductors_match_labels(label):
    record = reference_curve(label)
    assert conductor(record.model) == record.label_conductor


def test_registry_lookup_and_json():
    assert reference_curve("121b1").cm == -11
    assert reference_curve("288a2").cm == -4
    assert reference_curve("96a1").inertial_tags == {2: "L2_96"}
    with pytest.raises(UnknownLabel):
        reference_curve("11a9")
    with pytest.raises(KeyError):
        curve_model("11a9")
    restored = CurveRegistry.from_json(default_registry().to_json())
    assert restored.labels == default_registry().labels
    assert len(restored) == len(default_registry())
