"""R-matrices: YBE, unitarity, form equivalence, classical YBE."""

from fractions import Fraction

import numpy as np
import pytest

from splitcasimir.kernel import SparseOp, Vec, apply_two_site
from splitcasimir.yangbaxter import (
    DEFAULT_SAMPLES,
    PoleError,
    UnsupportedCaseError,
    build_rmatrix,
    interpolate_function_of_op,
    verify_classical_ybe,
    verify_form_equivalence,
    verify_unitarity,
    verify_ybe,
)

SMALL_CASES = ["sl(2)", "sl(3)", "so(5)", "sp(4)", "g2"]


def test_interpolation_reproduces_function():
    op = SparseOp.from_triplets(4, 4, [(i, i, v) for i, v in
                                       enumerate([1, 1, 3, -2])])
    got = interpolate_function_of_op(op, [1, 3, -2],
                                     lambda x: (x + 5) / (x - 7))
    want = SparseOp.from_triplets(
        4, 4, [(i, i, Fraction(v + 5, v - 7)) for i, v in
               enumerate([1, 1, 3, -2])])
    assert got == want


def test_identity_rmatrix_satisfies_ybe():
    # trivial case: R(u) = I solves YBE on any tensor cube
    d = 3
    ident = SparseOp.identity(d * d)
    rng = np.random.default_rng(0)
    v = Vec.random_exact(d ** 3, rng)
    lhs = apply_two_site(ident, v, (0, 1), 3, d)
    assert lhs == v


@pytest.mark.parametrize("case", SMALL_CASES)
def test_ybe_exact(case):
    fam = build_rmatrix(case, "spectral")
    for u, v in DEFAULT_SAMPLES[:2]:
        rep = verify_ybe(fam, u, v, trials=2)
        assert rep.passed and rep.method == "exact"


@pytest.mark.parametrize("case", SMALL_CASES)
def test_unitarity_exact(case):
    fam = build_rmatrix(case, "spectral")
    rep = verify_unitarity(fam, Fraction(2, 5))
    assert rep.passed
    fam_c = build_rmatrix(case, "casimir_rational")
    rep = verify_unitarity(fam_c, Fraction(3, 8))
    assert rep.passed


def test_unitarity_at_zero_is_trivial():
    fam = build_rmatrix("sl(3)", "spectral")
    rep = verify_unitarity(fam, Fraction(0))
    assert rep.passed


@pytest.mark.parametrize("case", SMALL_CASES)
def test_form_equivalence_small(case):
    rep = verify_form_equivalence(case,
                                  samples=[Fraction(1, 2), Fraction(2, 5)])
    assert rep.passed, rep.detail


def test_g2_spectral_coefficients():
    # R(u) scales each projector image by the listed rational function
    from splitcasimir.projectors import defining_family
    fam = build_rmatrix("g2", "spectral")
    u = Fraction(2, 5)
    r = fam.evaluate(u)
    proj = {m.expected_dim: m.operator
            for m in defining_family("g2").members}
    coeffs = {1: (u + 1) * (u + 6) / ((u - 1) * (u - 6)),
              7: (u + 4) / (u - 4),
              14: (u + 1) / (u - 1),
              27: Fraction(1)}
    for dim, c in coeffs.items():
        assert r @ proj[dim] == proj[dim].scaled(c)


def test_rmatrix_commutes_with_family_at_other_parameter():
    fam = build_rmatrix("sl(3)", "spectral")
    from splitcasimir.casimir import swap_operator
    p = swap_operator(3)
    r1 = fam.evaluate(Fraction(1, 2))
    r2 = p @ fam.evaluate(Fraction(1, 3)) @ p
    assert (r1 @ r2 - r2 @ r1).is_zero()


def test_pole_rejection():
    fam = build_rmatrix("sl(3)", "spectral")
    with pytest.raises(PoleError):
        fam.evaluate(Fraction(1))
    with pytest.raises(PoleError):
        verify_ybe(fam, Fraction(1, 2), Fraction(1, 2))


def test_e8_refused_with_explanation():
    with pytest.raises(UnsupportedCaseError):
        build_rmatrix("e8", "spectral")


def test_classical_ybe_cases():
    for name in ["sl(2)", "so(5)", "g2"]:
        assert verify_classical_ybe(name, trials=2).passed


def test_f4_form_equivalence_both_betas():
    rep = verify_form_equivalence("f4", samples=[Fraction(1, 2)])
    assert rep.passed, rep.detail


def test_f4_ybe_exact():
    fam = build_rmatrix("f4", "spectral")
    rep = verify_ybe(fam, Fraction(1, 2), Fraction(1, 3), trials=1)
    assert rep.passed and rep.method == "exact"


def test_e6_ybe_exact_and_form():
    fam = build_rmatrix("e6", "spectral")
    rep = verify_ybe(fam, Fraction(2, 5), Fraction(3, 7), trials=1)
    assert rep.passed and rep.method == "exact"
    assert verify_form_equivalence("e6", samples=[Fraction(1, 2)]).passed


def test_e7_ybe_approx_and_form_exact():
    fam = build_rmatrix("e7", "spectral")
    rep = verify_ybe(fam, Fraction(1, 2), Fraction(1, 3), trials=2)
    assert rep.passed and rep.method == "approx"
    assert verify_form_equivalence("e7", samples=[Fraction(1, 2)]).passed


def test_classical_ybe_f4_exact():
    # exact zero on the 26^3-dimensional cube via kron-structured application
    assert verify_classical_ybe("f4", trials=1).passed


def test_rmatrix_commutes_with_diagonal_action():
    # evaluate(u) commutes with T_a x 1 + 1 x T_a at sampled u
    from splitcasimir.catalog import defining
    from splitcasimir.kernel import kron
    alg, rep = defining("sl(3)")
    fam = build_rmatrix("sl(3)", "casimir_rational")
    r = fam.evaluate(Fraction(2, 5))
    ident = SparseOp.identity(3)
    for t in rep.generators:
        delta = kron(t, ident) + kron(ident, t)
        assert (delta @ r - r @ delta).is_zero()
