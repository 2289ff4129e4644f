"""Chevalley basis: integrality, invariants, dimensions, cross-checks."""

from fractions import Fraction

import pytest

from splitcasimir.algebras import (
    check_adjoint_casimir_is_identity,
    check_antisymmetry,
    check_jacobi,
    check_killing,
    check_representation,
    _congruence_diagonalize,
    _transform_metric_diag,
)
from splitcasimir.chevalley import (
    build_chevalley_adjoint,
    chevalley_constants,
    _p_down,
)
from splitcasimir.classical import build_classical
from splitcasimir.rootdata import root_system


@pytest.mark.parametrize("series,rank,dim", [
    ("A", 1, 3), ("A", 2, 8), ("A", 5, 35), ("B", 3, 21), ("C", 4, 36),
    ("D", 4, 28), ("G", 2, 14), ("F", 4, 52), ("E", 6, 78),
])
def test_chevalley_invariants(series, rank, dim):
    alg, rep = build_chevalley_adjoint(series, rank)
    assert alg.dim == dim
    assert check_antisymmetry(alg)
    assert check_jacobi(alg)
    assert check_killing(alg)
    assert check_adjoint_casimir_is_identity(alg)
    assert check_representation(rep)


def test_e8_dimension_248():
    alg, _ = build_chevalley_adjoint("E", 8)
    assert alg.dim == 248


def test_e7_dimension_133():
    alg, _ = build_chevalley_adjoint("E", 7)
    assert alg.dim == 133


def test_structure_constants_are_integers():
    for series, rank in [("G", 2), ("F", 4), ("B", 3)]:
        alg, _ = build_chevalley_adjoint(series, rank)
        assert alg.struct.scale == 1  # all C^d_ab integer


def test_n_constants_magnitude_is_p_plus_one():
    cc = chevalley_constants("G", 2)
    rs = cc.rs
    for a in rs.positive_roots:
        for b in rs.positive_roots:
            s = tuple(x + y for x, y in zip(a, b))
            if rs.is_root(s) and (a, b) in cc._n_pos:
                assert abs(cc.n_pos(a, b)) == _p_down(rs, a, b) + 1


def test_adjoint_dimension_matches_classical_construction():
    # A_n: both routes give N^2 - 1 generators satisfying the same algebra
    for rank in (1, 2, 3):
        chev, _ = build_chevalley_adjoint("A", rank)
        nat, _ = build_classical("A", rank)
        assert chev.dim == nat.dim


def test_g2_two_constructions_agree_on_invariants():
    """The octonion-derivation g2 (compact form) and the Chevalley g2
    (split form) are the same complex algebra: equal dimension and rank,
    equal Killing determinant sign, and identical adjoint characteristic
    identities.  (Their real signatures differ, as they must.)"""
    from splitcasimir.exceptional import build_g2_defining
    from splitcasimir.casimir import adjoint_split_casimir
    from splitcasimir.identities import minimal_polynomial

    chev, _ = build_chevalley_adjoint("G", 2)
    octo, _ = build_g2_defining()
    assert chev.dim == octo.dim == 14
    assert chev.rank == octo.rank == 2

    def det_sign(alg):
        s = _congruence_diagonalize(alg.killing)
        diag = _transform_metric_diag(alg.killing, s)
        sign = 1
        for x in diag:
            assert x != 0
            if x < 0:
                sign = -sign
        return sign

    assert det_sign(chev) == det_sign(octo)

    roots_chev = sorted(minimal_polynomial(
        adjoint_split_casimir(chev).operator, 6)["roots"])
    roots_octo = sorted(minimal_polynomial(
        adjoint_split_casimir(octo).operator, 6)["roots"])
    assert roots_chev == roots_octo == sorted(
        [Fraction(0), Fraction(-1, 2), Fraction(-1), Fraction(1, 4),
         Fraction(-5, 12)])


def test_killing_in_chevalley_basis_is_block_sparse():
    alg, _ = build_chevalley_adjoint("F", 4)
    rs = root_system("F", 4)
    r = rs.rank
    for a, b, _ in alg.killing.entries():
        in_cartan = a < r and b < r
        paired = (a >= r and b >= r and abs(a - b) == 1
                  and (min(a, b) - r) % 2 == 0)
        assert in_cartan or paired
