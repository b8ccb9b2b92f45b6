#!/usr/bin/env python3
"""
Test X0(11) toolkit - j-map relation, branch series, 2-adic logarithm, X_ns(11) twists
"""

import pytest
from sympy import Poly, Rational, oo

from gfemod.core.acceptance import XNS_EXPECTED
from gfemod.core import x011_padic
from gfemod.core.errors import (
    HypothesisFailed,
    InsufficientPrecision,
    NoRationalRoot,
    OutsideDomain,
    PreconditionFailed,
    RamifiedRoots,
    UnknownLabel,
)
from gfemod.core.jdisk import CAL_D
from gfemod.core.x011_padic import (
    X,
    Y,
    KernelPoint,
    branch_series,
    cusp_branch,
    cusp_disk_shadow,
    cusp_expansion,
    disk_report,
    disk_slope_analysis,
    divisible_by_2_in_kernel,
    double_kernel_point,
    elliptic_log_2adic,
    fiber_roots,
    halve_kernel_point,
    qconst_mu,
    qconst_representatives,
    qconst_uniform,
    remaining_points,
    square_class_threshold,
    x011_data,
    x011_torsion,
    xns_multiples,
    xns_twist_point_search,
)


def test_rational_points_and_their_j_values():
    data = x011_data()
    points = x011_torsion()
    assert len(points) == 5
    values = [data.j_value(P) for P in points]
    assert sum(v is None for v in values) == 2
    assert {v for v in values if v is not None} == {-32768, -121, -24729001}


def test_relation_vanishes_at_rational_points():
    data = x011_data()
    for P in x011_torsion():
        j = data.j_value(P)
        if j is not None:
            assert data.evaluate(P.x, j) == 0
            assert any(root == P.x for root, _ in fiber_roots(j))


def test_j_has_a_simple_pole_at_the_origin():
    expansion = cusp_expansion(8)
    assert expansion.j.valuation == -1
    assert expansion.x.valuation == -2
    assert expansion.to_json()["j"]["valuation"] == -1


def test_cusp_branch_is_exact_to_its_precision():
    report = cusp_branch(8)
    assert report.e == 1
    assert report.residual_valuation is oo or report.residual_valuation >= 50


def test_synthetic_branch():
    # y (1 + x) = 7 x
    report = branch_series(Poly(Y - 7 * X + X * Y, X, Y, domain="QQ"), 1, ell=2, rho=1)
    phi = report.series[0]
    assert report.c == 7
    assert [phi[i] for i in range(4)] == [0, 7, -7, 7]
    assert report.bound == 1
    assert report.slope == 0
    assert report.verified
    assert report.residual_valuation is oo


def test_branch_needs_vanishing_lower_rows():
    with pytest.raises(HypothesisFailed) as info:
        branch_series(Poly(Y - X + 1, X, Y, domain="QQ"), 1)
    assert info.value.which == "vanishing"


def test_branch_needs_normalized_leading_row():
    with pytest.raises(HypothesisFailed) as info:
        branch_series(Poly(X * Y - X, X, Y, domain="QQ"), 1)
    assert info.value.which == "normalized"


def test_branch_with_ramified_leading_coefficient():
    # sqrt(3) is not in Q_2
    with pytest.raises(RamifiedRoots) as info:
        branch_series(Poly(Y ** 2 - 3 * X, X, Y, domain="QQ"), 2, precision=32)
    assert info.value.report["e"] == 2


def test_kernel_point_levels():
    P = KernelPoint(4)
    assert P.level == 2
    assert KernelPoint(0).level is oo
    assert KernelPoint.with_level(Rational(3, 2)).level == Rational(3, 2)
    with pytest.raises(PreconditionFailed):
        KernelPoint(None)
    with pytest.raises(PreconditionFailed):
        KernelPoint(Rational(1, 2))


def test_log_keeps_the_level():
    log = elliptic_log_2adic(KernelPoint(4))
    assert log.val == 2
    assert elliptic_log_2adic(KernelPoint(0)).is_zero_at_precision()


def test_log_outside_its_domain():
    with pytest.raises(OutsideDomain):
        elliptic_log_2adic(KernelPoint.with_level(Rational(1, 3)))


def test_doubling_and_halving():
    assert double_kernel_point(KernelPoint(4)).level == 3
    half = halve_kernel_point(KernelPoint(8))
    assert half.level == 2
    with pytest.raises(PreconditionFailed):
        halve_kernel_point(KernelPoint(2))


def test_divisibility_criterion():
    assert divisible_by_2_in_kernel(KernelPoint(8))
    assert divisible_by_2_in_kernel(KernelPoint.with_level(Rational(3, 2)))
    assert not divisible_by_2_in_kernel(KernelPoint.with_level(1))


def test_divisibility_rejects_a_half_that_does_not_double_back(monkeypatch):
    monkeypatch.setattr(x011_padic, "double_kernel_point", lambda Q, precision=24: Q)
    with pytest.raises(InsufficientPrecision):
        divisible_by_2_in_kernel(KernelPoint(2 ** 8))
    assert divisible_by_2_in_kernel(KernelPoint(2 ** 8), construct=False)


def test_square_class_threshold():
    # v_2(theta) = -2/3 for the 2-torsion x-coordinates
    assert square_class_threshold(0) == Rational(4, 3)
    assert square_class_threshold(16) == Rational(4, 3)
    assert square_class_threshold(Rational(1, 2)) == 1


def test_cusp_disk_shadow():
    shadow = cusp_disk_shadow(CAL_D["2^-5t^-11"])
    assert shadow.verified
    assert shadow.roots == 11
    assert shadow.offset == Rational(5, 11)
    assert shadow.tau_coefficient == 1
    assert shadow.vertices == ((0, 5), (11, 0), (12, 10))
    assert shadow.to_json()["offset"] == "5/11"
    with pytest.raises(PreconditionFailed):
        cusp_disk_shadow(CAL_D["2^9+2^11Z2"])


def test_disk_slope_analysis_needs_a_rational_fiber_point():
    with pytest.raises(NoRationalRoot):
        disk_slope_analysis(CAL_D["2^9+2^11Z2"])
    with pytest.raises(PreconditionFailed):
        disk_slope_analysis(CAL_D["2^-5t^-11"])


def test_disk_reports():
    cusp = disk_report("2^-5t^-11")
    assert cusp["kind"] == "cusp_shadow"
    assert cusp["shadow"]["verified"] is True
    center = disk_report("2^9+2^11Z2")
    assert center["kind"] == "fiber_only"
    assert center["error"] == "NoRationalRoot"
    assert center["rational_roots"] == 0
    assert len(center["fiber_root_valuations"]) == 12
    with pytest.raises(UnknownLabel):
        disk_report("2^7+2^11Z2")


def test_qconst():
    assert qconst_mu(2) == 1
    assert qconst_mu(3) == 2
    assert qconst_mu(Rational(5, 11)) == 0
    with pytest.raises(PreconditionFailed):
        qconst_mu(Rational(1, 3))
    assert qconst_uniform(2, 1)
    assert qconst_representatives(2, 1) == [1]
    assert not qconst_uniform(Rational(1, 2), 0)
    assert qconst_representatives(Rational(1, 2), 0) == [1, 2]


def test_xns_multiples():
    assert xns_multiples() == {1: 4, 2: 2, 3: Rational(5, 4), 4: -2}


def test_xns_search(settings):
    union = set(xns_twist_point_search(-1, 200, settings)) | set(xns_twist_point_search(-3, 200, settings))
    assert union == XNS_EXPECTED
    assert xns_twist_point_search(-1, 20, settings)[-1] is oo


def test_xns_search_preconditions(settings):
    with pytest.raises(PreconditionFailed):
        xns_twist_point_search(5, 10, settings)
    with pytest.raises(PreconditionFailed):
        xns_twist_point_search(-1, 0, settings)


def test_remaining_points():
    rows = remaining_points()
    assert len(rows) == 5
    assert [row["j_in_disk"] for row in rows] == [False, False, True, True, True]
