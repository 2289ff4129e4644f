"""Characteristic identities and their independent rediscovery."""

from fractions import Fraction

import pytest

from splitcasimir.casimir import split_casimir
from splitcasimir.catalog import adjoint_context, defining
from splitcasimir.identities import (
    CharIdentity,
    adjoint_identity,
    defining_identity,
    exceptional_alpha_beta,
    minimal_polynomial,
    mu_prime,
    symmetric_part_identity,
    universal_mu,
    verify_adjoint_identity,
    verify_antisymmetric_identity,
    verify_classical_generic_identity,
    verify_defining_identity,
    verify_identity,
    verify_universal_sym_identity,
)
from splitcasimir.kernel import SparseOp
from splitcasimir.rootdata import root_system
from splitcasimir.vogel import vogel_point


def test_char_identity_rejects_repeated_roots():
    with pytest.raises(ValueError):
        CharIdentity([1, 1, 2])


def test_defining_root_tables():
    assert defining_identity("sl(4)").roots == [Fraction(-5, 32),
                                                Fraction(3, 32)]
    assert set(defining_identity("so(7)").roots) == {
        Fraction(1, 10), Fraction(-1, 10), Fraction(-3, 5)}
    assert set(defining_identity("g2").roots) == {
        0, Fraction(1, 3), -1, -2}
    assert set(defining_identity("f4").roots) == {
        0, -1, -2, Fraction(-1, 2), Fraction(1, 6)}
    assert set(defining_identity("e6").roots) == {
        Fraction(-13, 9), Fraction(-1, 9), Fraction(2, 9)}
    assert set(defining_identity("e7").roots) == {
        Fraction(1, 8), Fraction(-7, 8), Fraction(-19, 8), Fraction(-1, 24)}


def test_adjoint_root_tables():
    assert set(adjoint_identity("sl(5)").roots) == {
        0, Fraction(-1, 2), -1, Fraction(1, 5), Fraction(-1, 5)}
    assert set(adjoint_identity("sl(3)").roots) == {
        0, Fraction(-1, 2), -1, Fraction(1, 3)}
    m = 7
    assert set(adjoint_identity("so(7)").roots) == {
        0, Fraction(-1, 2), -1, Fraction(1, m - 2), Fraction(-2, m - 2),
        Fraction(-(m - 4), 2 * (m - 2))}
    # so(8): -1/3 doubled then merged -> fifth order
    so8 = adjoint_identity("so(8)")
    assert set(so8.roots) == {0, Fraction(-1, 2), -1, Fraction(1, 6),
                              Fraction(-1, 3)}
    assert so8.merged == {Fraction(-1, 3): 2}
    # so(6): -1/2 collides
    so6 = adjoint_identity("so(6)")
    assert set(so6.roots) == {0, Fraction(-1, 2), -1, Fraction(1, 4),
                              Fraction(-1, 4)}
    assert so6.merged == {Fraction(-1, 2): 2}
    for name, extra in [("g2", (Fraction(1, 4), Fraction(-5, 12))),
                        ("f4", (Fraction(1, 9), Fraction(-5, 18))),
                        ("e6", (Fraction(1, 12), Fraction(-1, 4))),
                        ("e7", (Fraction(1, 18), Fraction(-2, 9))),
                        ("e8", (Fraction(1, 30), Fraction(-1, 5)))]:
        assert set(adjoint_identity(name).roots) == \
            {0, Fraction(-1, 2), -1} | set(extra)


def test_exceptional_table4_values_from_mu_prime():
    # alpha/2t, beta/2t derived from mu' reproduce the fixed table
    table = {8: (Fraction(-1, 3), Fraction(1, 2)),
             28: (Fraction(-1, 6), Fraction(1, 3)),
             14: (Fraction(-1, 4), Fraction(5, 12)),
             52: (Fraction(-1, 9), Fraction(5, 18)),
             78: (Fraction(-1, 12), Fraction(1, 4)),
             133: (Fraction(-1, 18), Fraction(2, 9)),
             248: (Fraction(-1, 30), Fraction(1, 5))}
    for dim, want in table.items():
        assert exceptional_alpha_beta(dim) == want
    assert mu_prime(14) == 4
    assert mu_prime(15) is None


@pytest.mark.parametrize("name", ["sl(2)", "sl(3)", "sl(5)", "so(5)",
                                  "so(6)", "sp(4)", "sp(6)", "g2", "f4"])
def test_defining_identities_pass(name):
    assert verify_defining_identity(name).passed


@pytest.mark.parametrize("name", ["sl(3)", "sl(4)", "so(7)", "sp(4)", "g2"])
def test_adjoint_identities_pass(name):
    assert verify_adjoint_identity(name).passed
    assert verify_antisymmetric_identity(name).passed


def test_identity_failure_is_reported_not_raised():
    op = SparseOp.identity(4)
    rep = verify_identity(op, CharIdentity([0, 2]), target="bogus")
    assert rep.status == "FAIL"
    assert rep.witness is not None


def test_minimal_polynomial_identity_operator():
    mp = minimal_polynomial(SparseOp.identity(5), 3)
    assert mp["roots"] == [Fraction(1)]
    assert mp["coeffs"] == [Fraction(-1), Fraction(1)]  # x - 1
    assert mp["confirmed"]


def test_minimal_polynomial_random_diagonal():
    import numpy as np
    rng = np.random.default_rng(31)
    vals = [int(rng.integers(-4, 5)) for _ in range(8)]
    op = SparseOp.from_triplets(8, 8, [(i, i, v) for i, v in enumerate(vals)])
    mp = minimal_polynomial(op, 8, seed=5)
    assert sorted(mp["roots"]) == sorted(set(Fraction(v) for v in vals))
    assert mp["confirmed"]


def test_minimal_polynomial_degree_bound_exceeded():
    op = SparseOp.from_triplets(4, 4, [(i, i, i) for i in range(4)]
                                + [(0, 0, 7)])
    mp = minimal_polynomial(op, 2, seed=1)
    assert mp["confirmed"] is False
    assert "degree bound" in mp.get("detail", "")


def test_minimal_polynomial_matches_paper_g2():
    _, rep = defining("g2")
    sc = split_casimir(rep, rep)
    mp = minimal_polynomial(sc.operator, 6)
    assert sorted(mp["roots"]) == sorted(defining_identity("g2").roots)
    assert mp["confirmed"]


def test_discovered_roots_match_paper_for_small_adjoints():
    for name in ["sl(4)", "so(7)", "sp(4)", "g2"]:
        ctx = adjoint_context(name)
        mp = minimal_polynomial(ctx.sc.operator, 8, unit=ctx.sc.unit, seed=2)
        assert sorted(set(mp["roots"])) == sorted(adjoint_identity(name).roots)


def test_adjoint_roots_are_casimir_eigenvalue_predictions():
    # every root r satisfies r = c2(lambda)/2 - 1 for a lambda in ad x ad;
    # check the three universal components: trivial, adjoint, 2*theta
    from splitcasimir.casimir import casimir_eigenvalue
    for series, rank, name in [("A", 3, "sl(4)"), ("G", 2, "g2"),
                               ("F", 4, "f4"), ("E", 8, "e8")]:
        rs = root_system(series, rank)
        ad = rs.root_to_weight(rs.highest_root)
        zero = tuple(0 for _ in range(rank))
        two_theta = tuple(2 * x for x in ad)
        roots = set(adjoint_identity(name).roots)
        for lam in (zero, ad, two_theta):
            assert casimir_eigenvalue(rs, lam, ad, ad) in roots


def test_antisym_restriction_divides_x_x_half():
    # on the antisymmetric subspace the minimal polynomial divides x(x+1/2)
    for name in ["sl(3)", "so(5)", "g2"]:
        ctx = adjoint_context(name)
        _, cm = ctx.sc.parts()
        mp = minimal_polynomial(cm, 4, unit=ctx.sc.unit, seed=3)
        assert set(mp["roots"]) <= {Fraction(0), Fraction(-1, 2)}


def test_universal_symmetric_identity_values():
    assert universal_mu(14) == Fraction(5, 96)
    assert universal_mu(248) == Fraction(1, 300)
    for name in ["sl(3)", "g2"]:
        rep = verify_universal_sym_identity(name)
        assert rep.passed
    assert verify_universal_sym_identity("sl(4)").status == "NOT_APPLICABLE"


def test_classical_generic_identity():
    for name in ["sl(4)", "sl(5)", "so(7)", "sp(4)", "sp(6)"]:
        rep = verify_classical_generic_identity(name)
        assert rep.passed, (name, rep.detail)


def test_table3_values_match_vogel_points():
    # sl(5): alpha/2t = -1/5, beta/2t = 1/5, gamma/2t = 1/2
    pt = vogel_point("sl(5)")
    t = pt.t
    assert (pt.alpha / (2 * t), pt.beta / (2 * t), pt.gamma / (2 * t)) == \
        (Fraction(-1, 5), Fraction(1, 5), Fraction(1, 2))
    # so(7) = B3: roots of the sextic match the Table 3 entries
    pt = vogel_point("so(7)")
    t = pt.t
    roots = set(adjoint_identity("so(7)").roots)
    assert -pt.alpha / (2 * t) in roots
    assert -pt.beta / (2 * t) in roots
    assert -pt.gamma / (2 * t) in roots


def test_symmetric_part_identity_roots():
    ident = symmetric_part_identity("e8")
    assert set(ident.roots) == {0, -1, Fraction(1, 30), Fraction(-1, 5)}
    with pytest.raises(ValueError):
        symmetric_part_identity("sl(4)")
