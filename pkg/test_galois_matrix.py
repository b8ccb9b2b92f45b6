#!/usr/bin/env python3
"""
Test GL2(F_p) tools - finite groups, normalizers, symplectic criteria, Tate modules
"""

import pytest

from gfemod.core.errors import BruteForceBoundExceeded, PDividesValuation, PreconditionFailed
from gfemod.core.exact_arith import legendre
from gfemod.core.galois_matrix import (
    MatGL2,
    SymplecticType,
    corrupt,
    det_pattern,
    embed_Dic12,
    embed_H8,
    is_subgroup,
    isogeny_symplectic_sign,
    ko_symplectic,
    local_criterion_rule,
    normalizer_and_centralizer,
    symplectic_type_of_isomorphisms,
    symplectic_type_of_matrix,
    tate_equivariance_check,
    tate_module_matrix,
)
from gfemod.core.settings import GfeSettings


def test_matrix_arithmetic():
    M = MatGL2.of([[1, 2], [3, 4]], 7)
    assert M.det == 5
    assert M * M.inverse() == MatGL2.identity(7)
    assert MatGL2.scalar(3, 7).is_scalar()
    assert MatGL2(0, -1, 1, 0, 7).order() == 4


def test_singular_matrix_rejected():
    with pytest.raises(ValueError):
        MatGL2(1, 2, 2, 4, 5)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_quaternion_embedding(p):
    H = embed_H8(p)
    assert H.order == 8
    assert is_subgroup(H.elements)
    assert H.order_census() == {1: 1, 2: 1, 4: 6}
    assert all(g.det == 1 for g in H.elements)
    assert not H.is_abelian()


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_dicyclic_embedding(p):
    H = embed_Dic12(p)
    assert H.order == 12
    assert H.order_census() == {1: 1, 2: 1, 3: 2, 4: 6, 6: 2}


def test_embedding_needs_odd_prime():
    with pytest.raises(PreconditionFailed):
        embed_H8(2)
    with pytest.raises(PreconditionFailed):
        embed_Dic12(9)


def test_normalizer_quotients(settings):
    assert normalizer_and_centralizer(embed_H8(7), settings).quotient_order == 24
    assert normalizer_and_centralizer(embed_Dic12(7), settings).quotient_order == 12


def test_centralizer_is_scalars(settings):
    data = normalizer_and_centralizer(embed_H8(5), settings)
    assert len(data.centralizer) == 4
    assert all(g.is_scalar() for g in data.centralizer)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_det_pattern_follows_residue_symbols(p, settings):
    h8 = det_pattern(embed_H8(p), settings)
    assert h8.kind == ("AllSquare" if legendre(2, p) == 1 else "IndexTwoSquare")
    dic = det_pattern(embed_Dic12(p), settings)
    assert dic.kind == ("AllSquare" if legendre(3, p) == 1 else "IndexTwoSquare")


def test_det_pattern_at_seven(settings):
    assert det_pattern(embed_H8(7), settings).kind == "AllSquare"
    dic = det_pattern(embed_Dic12(7), settings)
    assert dic.kind == "IndexTwoSquare"
    assert dic.index == 2
    assert dic.square_quotient_order == 6


def test_normalizer_enumeration_bound():
    tight = GfeSettings(brute_force_bound=5)
    with pytest.raises(BruteForceBoundExceeded):
        normalizer_and_centralizer(embed_H8(7), tight)


def test_symplectic_type_from_determinant():
    assert symplectic_type_of_matrix(MatGL2(2, 0, 0, 1, 7)) == SymplecticType.SYMPLECTIC
    assert symplectic_type_of_matrix(MatGL2(3, 0, 0, 1, 7)) == SymplecticType.ANTI_SYMPLECTIC


def test_mixed_isomorphism_family():
    mixed = [MatGL2(1, 0, 0, 1, 7), MatGL2(3, 0, 0, 1, 7)]
    assert symplectic_type_of_isomorphisms(mixed) == SymplecticType.UNDETERMINED
    quaternion = embed_H8(7)
    assert symplectic_type_of_isomorphisms(mixed, quaternion) == SymplecticType.UNDETERMINED


def test_multiplicative_criterion():
    assert ko_symplectic(1, 4, 5) == SymplecticType.SYMPLECTIC
    assert ko_symplectic(1, 2, 5) == SymplecticType.ANTI_SYMPLECTIC
    with pytest.raises(PDividesValuation):
        ko_symplectic(5, 1, 5)


def test_isogeny_sign():
    assert isogeny_symplectic_sign(2, 7) == SymplecticType.SYMPLECTIC
    assert isogeny_symplectic_sign(3, 7) == SymplecticType.ANTI_SYMPLECTIC
    with pytest.raises(PreconditionFailed):
        isogeny_symplectic_sign(14, 7)


def test_local_criterion_rule():
    assert local_criterion_rule(1, "-") == SymplecticType.SYMPLECTIC
    assert local_criterion_rule(-1, "+") == SymplecticType.SYMPLECTIC
    assert local_criterion_rule(-1, "-") == SymplecticType.ANTI_SYMPLECTIC
    with pytest.raises(ValueError):
        local_criterion_rule(-1, "?")


def test_tate_module_map():
    params = tate_module_matrix(2, 5, 1, 2)
    assert params.n == 2
    assert params.e2 == params.n * params.e1 + params.p * params.m
    assert params.module_map == MatGL2(2, 0, 0, 1, 5)
    assert tate_equivariance_check(params)


def test_tate_negative_control():
    params = tate_module_matrix(3, 7, 2, 5)
    assert tate_equivariance_check(params)
    assert not tate_equivariance_check(corrupt(params))


@pytest.mark.parametrize("ell,p,e1,e2", [(5, 5, 1, 2), (11, 5, 1, 2), (2, 5, 5, 1)])
def test_tate_preconditions(ell, p, e1, e2):
    with pytest.raises(PreconditionFailed):
        tate_module_matrix(ell, p, e1, e2)
