"""Root systems, weights and the normalized inner product."""

from fractions import Fraction

import pytest

from splitcasimir.rootdata import root_system


@pytest.mark.parametrize("series,rank,n_pos,h_dual", [
    ("A", 1, 1, 2), ("A", 2, 3, 3), ("A", 4, 10, 5),
    ("B", 2, 4, 3), ("B", 3, 9, 5),
    ("C", 3, 9, 4), ("D", 4, 12, 6), ("D", 5, 20, 8),
    ("G", 2, 6, 4), ("F", 4, 24, 9),
    ("E", 6, 36, 12), ("E", 7, 63, 18), ("E", 8, 120, 30),
])
def test_positive_root_counts_and_dual_coxeter(series, rank, n_pos, h_dual):
    rs = root_system(series, rank)
    assert len(rs.positive_roots) == n_pos
    assert rs.dual_coxeter == h_dual


def test_highest_root_is_long_and_normalized():
    for series, rank in [("A", 3), ("B", 3), ("C", 3), ("G", 2), ("F", 4),
                         ("E", 6)]:
        rs = root_system(series, rank)
        theta = rs.highest_root
        # standard normalization: long roots squared length 2
        assert rs.root_length_sq(theta) == 2
        # paper normalization: (theta, theta) = 1/t
        lam = rs.root_to_weight(theta)
        assert rs.weight_bilinear(lam, lam) == Fraction(1, rs.dual_coxeter)


def test_adjoint_casimir_value_is_one():
    # c2 of the highest weight = adjoint equals 1 in the 1/t normalization
    for series, rank in [("A", 2), ("B", 2), ("C", 3), ("D", 4), ("G", 2),
                         ("F", 4), ("E", 6), ("E", 7), ("E", 8)]:
        rs = root_system(series, rank)
        labels = rs.root_to_weight(rs.highest_root)
        assert rs.casimir_c2(labels) == 1


def test_sl_defining_casimir_value():
    # c2(omega_1) = (N^2-1)/(2N^2) for sl(N)
    for n in (2, 3, 4, 5):
        rs = root_system("A", n - 1)
        omega1 = tuple(int(i == 0) for i in range(n - 1))
        assert rs.casimir_c2(omega1) == Fraction(n * n - 1, 2 * n * n)


def test_coroot_coefficients_are_integers():
    rs = root_system("G", 2)
    for root in rs.positive_roots:
        co = rs.coroot_coeffs(root)
        assert all(isinstance(c, int) for c in co)


def test_weyl_orbit_sizes():
    rs = root_system("A", 2)
    assert len(rs.weyl_orbit((1, 0))) == 3
    assert len(rs.weyl_orbit((1, 1))) == 6
    rs7 = root_system("E", 7)
    sizes = sorted(len(rs7.weyl_orbit(tuple(int(i == k) for i in range(7))))
                   for k in range(7))
    assert 56 in sizes  # the minuscule fundamental orbit


def test_root_strings_give_all_roots():
    rs = root_system("B", 2)
    # B2 positive roots: e2, e1-e2, e1, e1+e2
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2)}
