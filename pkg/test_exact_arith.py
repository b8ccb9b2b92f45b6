#!/usr/bin/env python3
"""
Test exact arithmetic - valuations, Q_ell elements, Newton polygons, roots, series
"""

import pytest
from sympy import Poly, Rational, oo, symbols

from gfemod.core.errors import HenselConditionFailed, InsufficientPrecision, NoSolution
from gfemod.core.exact_arith import (
    PadicElement,
    PadicPoly,
    PowerSeries,
    gauss_valuation,
    hensel_lift,
    is_power_padic,
    is_square_padic,
    legendre,
    newton_polygon,
    padic_from_rational,
    padic_nth_root,
    padic_roots,
    truncate_rational,
    valuation,
)

x = symbols("x")


def test_valuations():
    assert valuation(48, 2) == 4
    assert valuation(Rational(1, 12), 3) == -1
    assert valuation(Rational(-7, 4), 7) == 1
    assert valuation(0, 5) is oo


def test_truncate_rational_picks_symmetric_representative():
    # 1/3 = 11 mod 16, and 11 - 16 = -5
    assert truncate_rational(Rational(1, 3), 2, 4) == -5
    assert truncate_rational(Rational(24), 2, 3) == 0


def test_padic_element_round_trip_on_integers():
    a = padic_from_rational(-7, 3, 10)
    assert a.val == 0
    assert a.to_rational() == -7
    b = padic_from_rational(18, 3, 5)
    assert b.val == 2
    assert b.to_rational() == 18


def test_zero_at_precision_is_undecided():
    z = PadicElement(2, 5, 0, 0)
    assert z.is_zero_at_precision()
    with pytest.raises(InsufficientPrecision):
        z.is_zero()
    assert PadicElement.zero(2).is_zero()


def test_square_classes():
    assert is_square_padic(17, 2)
    assert is_square_padic(4 * 17, 2)
    assert not is_square_padic(5, 2)
    assert not is_square_padic(2, 2)
    assert is_square_padic(7, 3)
    assert not is_square_padic(2, 3)
    assert is_square_padic(0, 5)


def test_powers_and_legendre():
    assert is_power_padic(8, 3, 2)
    assert not is_power_padic(3, 3, 7)
    assert is_power_padic(6, 3, 7)
    assert legendre(2, 7) == 1
    assert legendre(3, 7) == -1
    assert legendre(14, 7) == 0


def test_hensel_lift_square_root_of_2_in_Q7():
    f = PadicPoly([-2, 0, 1], 7)
    root = hensel_lift(f, 3, 20).to_rational()
    assert valuation(root * root - 2, 7) >= 20
    assert root % 7 == 3


def test_hensel_condition_failure():
    with pytest.raises(HenselConditionFailed):
        hensel_lift(PadicPoly([-2, 0, 1], 2), 0)


def test_nth_root_of_non_power_raises():
    assert valuation(padic_nth_root(17, 2, 2, 20).to_rational() ** 2 - 17, 2) >= 16
    with pytest.raises(NoSolution):
        padic_nth_root(5, 2, 2)


def test_newton_polygon_and_gauss_valuation():
    polygon = newton_polygon(PadicPoly([2, 0, 1], 2))
    assert polygon.root_valuations() == [Rational(1, 2), Rational(1, 2)]
    f = PadicPoly([4, 2, 1], 2)
    assert gauss_valuation(f, 1) == 2
    assert gauss_valuation(f, 0) == 0


def test_padic_roots_rational_and_irrational():
    exact = padic_roots(Poly((x - 3) * (2 * x + 1), x, domain="QQ"), 5)
    assert sorted(r for r, _ in exact) == [Rational(-1, 2), 3]

    roots = padic_roots(Poly(x ** 2 - 17, x, domain="QQ"), 2, 24)
    assert len(roots) == 2
    for r, mult in roots:
        assert mult == 1
        assert isinstance(r, PadicElement)
        assert valuation(r.to_rational() ** 2 - 17, 2) >= 16

    assert padic_roots(Poly(x ** 2 - 2, x, domain="QQ"), 3) == []


def test_padic_roots_negative_valuation():
    # 4 x^2 - 17 has its roots at valuation -1 in Q_2
    roots = padic_roots(Poly(4 * x ** 2 - 17, x, domain="QQ"), 2, 24)
    assert len(roots) == 2
    assert all(r.val == -1 for r, _ in roots)


def test_power_series_reversion_and_inverse():
    s = PowerSeries([0, 1, 1], 6)
    r = s.reversion()
    assert [r[i] for i in range(6)] == [0, 1, -1, 2, -5, 14]
    assert s.compose(r) == PowerSeries.variable(6)
    geometric = PowerSeries([1, -1], 5).inverse()
    assert [geometric[i] for i in range(5)] == [1, 1, 1, 1, 1]
