"""Split Casimir assembly, invariant operators, parts, traces, eigenvalue
predictions and the tensor-space adjoint realizations."""

from fractions import Fraction

import numpy as np
import pytest

from splitcasimir.casimir import (
    adjoint_split_casimir,
    antisymmetrizer_4,
    casimir_eigenvalue,
    e4_operator,
    invariant_set,
    k_two_site,
    perm_two_site,
    q_minus,
    sl_adjoint_tensor,
    sosp_adjoint_tensor,
    split_casimir,
    split_parts,
    swap_operator,
    trace_suite,
    two_site,
)
from splitcasimir.catalog import adjoint_context, defining
from splitcasimir.classical import build_classical
from splitcasimir.kernel import SparseOp, Vec, apply_two_site, kron
from splitcasimir.rootdata import root_system


def test_sl_defining_closed_form():
    for n in (2, 3, 4):
        _, rep = build_classical("A", n - 1)
        sc = split_casimir(rep, rep)
        want = (swap_operator(n)
                - SparseOp.identity(n * n).scaled(Fraction(1, n))
                ).scaled(Fraction(1, 2 * n))
        assert sc.operator == want


def test_sosp_defining_closed_form():
    for fam, n, eps in [("so(5)", 5, 1), ("so(7)", 7, 1), ("sp(4)", 4, -1),
                        ("sp(6)", 6, -1)]:
        _, rep = defining(fam)
        sc = split_casimir(rep, rep)
        inv = invariant_set(rep)
        want = (inv["P"] - inv["K"].scaled(eps)).scaled(
            Fraction(1, 2 * (n - 2 * eps)))
        assert sc.operator == want


def test_g2_defining_closed_form_and_parts():
    _, rep = defining("g2")
    sc = split_casimir(rep, rep)
    inv = invariant_set(rep)
    i_op, p_op, k_op, f_op = inv["I"], inv["P"], inv["K"], inv["F"]
    assert sc.operator == (i_op + p_op - k_op.scaled(2) - f_op).scaled(
        Fraction(1, 6))
    cp, cm = split_parts(sc)
    assert cp == (i_op + p_op).scaled(Fraction(1, 6)) - k_op.scaled(
        Fraction(1, 3))
    # F = 6 P^[7] = -6 AC
    assert f_op == cm.scaled(-6)
    assert cp + cm == sc.operator
    assert (cp @ cm).is_zero() and (cm @ cp).is_zero()


def test_f4_defining_closed_form():
    _, rep = defining("f4")
    sc = split_casimir(rep, rep)
    inv = invariant_set(rep)
    i_op, p_op, k_op = inv["I"], inv["P"], inv["K"]
    d_op, f_op = inv["D"], inv["F"]
    want = (i_op + p_op - k_op).scaled(Fraction(1, 12)) \
        - d_op.scaled(Fraction(1, 16)) - f_op.scaled(Fraction(1, 2))
    assert sc.operator == want
    cp, cm = split_parts(sc)
    assert cp == (i_op + p_op - k_op
                  - d_op.scaled(Fraction(3, 4))).scaled(Fraction(1, 12))
    assert cm == f_op.scaled(Fraction(-1, 2))


def test_adjoint_k_relations():
    # Prop: C K = K C = -K; C- K = 0; K^2 = dim(g) K; C+ K = -K
    for name in ["sl(3)", "so(5)", "g2"]:
        ctx = adjoint_context(name)
        c = ctx.sc.operator
        k = ctx.big_k
        cp, cm = ctx.sc.parts()
        assert c @ k == k.scaled(-1)
        assert k @ c == k.scaled(-1)
        assert (cm @ k).is_zero() and (k @ cm).is_zero()
        assert cp @ k == k.scaled(-1)
        assert k @ k == k.scaled(ctx.dim_g)


def test_cminus_clebsch_form():
    # (C-)^{a1a2}_{b1b2} = -(1/2) C^{a1a2}_d C^d_{b1b2} in the struct basis,
    # where C^{a1 a2}_d = C^{a1}_{d b2} kappa^{b2 a2}
    for name in ["sl(3)", "g2"]:
        alg, _ = defining(name)
        sc = adjoint_split_casimir(alg)
        dim = alg.dim
        ki = alg.killing_inv.to_dense_fractions()
        t = alg.struct
        by_row = {}
        for k in range(t.nnz):
            a, b = divmod(int(t.row[k]), dim)
            by_row.setdefault((a, b), []).append(
                (int(t.col[k]), int(t.data[k]) * t.scale))
        # raised: (a1, a2) -> {d: C^{a1 a2}_d}
        upper = {}
        for (d, b2), lst in by_row.items():
            for a1, v in lst:
                for a2 in range(dim):
                    w = ki[b2][a2]
                    if w:
                        slot = upper.setdefault((a1, a2), {})
                        slot[d] = slot.get(d, Fraction(0)) + v * w
        # lowered: d -> [((b1, b2), C^d_{b1 b2})]
        lower = {}
        for (b1, b2), lst in by_row.items():
            for d, v in lst:
                lower.setdefault(d, []).append(((b1, b2), v))
        trips = []
        for (a1, a2), ds in upper.items():
            for d, v in ds.items():
                if v == 0:
                    continue
                for (b1, b2), w in lower.get(d, []):
                    trips.append((a1 * dim + a2, b1 * dim + b2,
                                  Fraction(-1, 2) * v * w))
        want = SparseOp.from_triplets(dim * dim, dim * dim, trips)
        _, cm = sc.parts()
        assert cm == want


def test_trace_suite_struct_and_tensor():
    for name in ["sl(3)", "g2", "f4"]:
        ctx = adjoint_context(name)
        suite = trace_suite(ctx.sc, big_k=ctx.big_k)
        assert suite["all_pass"], suite
    for builder in (lambda: sl_adjoint_tensor(4),
                    lambda: sosp_adjoint_tensor(5, 1),
                    lambda: sosp_adjoint_tensor(4, -1)):
        ta = builder()
        suite = trace_suite(ta.casimir, big_k=ta.ops["K"])
        assert suite["all_pass"], suite


def test_tensor_and_struct_adjoint_same_identity():
    # the V^(x4) realization and the structure-constant realization have the
    # same minimal polynomial
    from splitcasimir.identities import minimal_polynomial
    ta = sl_adjoint_tensor(3)
    alg, _ = build_classical("A", 2)
    sc_struct = adjoint_split_casimir(alg)
    r1 = minimal_polynomial(ta.casimir.operator, 6, unit=ta.casimir.unit)
    r2 = minimal_polynomial(sc_struct.operator, 6)
    assert sorted(r1["roots"]) == sorted(r2["roots"])


def test_ad_invariance_of_casimir_and_invariants():
    # (T_a x 1 + 1 x T_a) commutes with Chat and every invariant operator
    for name in ["g2", "so(5)"]:
        _, rep = defining(name)
        sc = split_casimir(rep, rep)
        inv = invariant_set(rep)
        d = rep.dim_module
        ident = SparseOp.identity(d)
        for a in (0, len(rep.generators) // 2):
            t = rep.generators[a]
            delta = kron(t, ident) + kron(ident, t)
            for op in [sc.operator] + list(inv.values()):
                assert (delta @ op - op @ delta).is_zero()


def test_comultiplication_identity():
    # Delta(C2) = C2 x 1 + 1 x C2 + 2 Chat
    for name in ["sl(2)", "g2"]:
        alg, rep = defining(name)
        sc = split_casimir(rep, rep, convention="killing")
        d = rep.dim_module
        ident = SparseOp.identity(d)
        ki = alg.killing_inv
        c2 = SparseOp.zero(d, d)
        delta_c2 = SparseOp.zero(d * d, d * d)
        for a, b, v in ki.entries():
            c2 = c2 + (rep.generators[a] @ rep.generators[b]).scaled(v)
            da = kron(rep.generators[a], ident) + kron(ident, rep.generators[a])
            db = kron(rep.generators[b], ident) + kron(ident, rep.generators[b])
            delta_c2 = delta_c2 + (da @ db).scaled(v)
        want = kron(c2, ident) + kron(ident, c2) + sc.operator.scaled(2)
        assert delta_c2 == want


def test_kono_drinfeld_relation():
    # [C12, C13 + C23] = 0 on V^(x3), exactly
    for name in ["sl(2)", "sl(3)", "g2"]:
        _, rep = defining(name)
        sc = split_casimir(rep, rep)
        d = rep.dim_module
        rng = np.random.default_rng(3)
        for _ in range(4):
            v = Vec.random_exact(d ** 3, rng)
            c13_23 = (apply_two_site(sc.operator, v, (0, 2), 3, d)
                      + apply_two_site(sc.operator, v, (1, 2), 3, d))
            lhs = apply_two_site(sc.operator, c13_23, (0, 1), 3, d)
            c12 = apply_two_site(sc.operator, v, (0, 1), 3, d)
            rhs = (apply_two_site(sc.operator, c12, (0, 2), 3, d)
                   + apply_two_site(sc.operator, c12, (1, 2), 3, d))
            assert (lhs - rhs).is_zero()


def test_casimir_eigenvalue_predictions():
    # adjoint x adjoint at lambda = adjoint: -1/2; trivial: -1
    for series, rank in [("A", 2), ("G", 2), ("F", 4)]:
        rs = root_system(series, rank)
        ad = rs.root_to_weight(rs.highest_root)
        zero = tuple(0 for _ in range(rank))
        assert casimir_eigenvalue(rs, ad, ad, ad) == Fraction(-1, 2)
        assert casimir_eigenvalue(rs, zero, ad, ad) == Fraction(-1)
        # 2*theta component: eigenvalue 1/t
        two_theta = tuple(2 * x for x in ad)
        assert casimir_eigenvalue(rs, two_theta, ad, ad) == \
            Fraction(1, rs.dual_coxeter)


def test_sl_defining_symmetric_eigenvalue():
    # sl(N): symmetric part of defining x defining has chat = (N-1)/(2N^2)
    for n in (2, 3, 5):
        rs = root_system("A", n - 1)
        omega1 = tuple(int(i == 0) for i in range(n - 1))
        two_omega1 = tuple(2 * int(i == 0) for i in range(n - 1))
        got = casimir_eigenvalue(rs, two_omega1, omega1, omega1)
        assert got == Fraction(n - 1, 2 * n * n)


def test_q_minus_relations():
    n = 4
    q = q_minus(n)
    ta = sl_adjoint_tensor(n)
    unit = ta.casimir.unit
    swap = ta.ops["P"]
    cp, cm = ta.casimir.parts()
    p_plus = (unit + swap).scaled(Fraction(1, 2))
    p_minus = (unit - swap).scaled(Fraction(1, 2))
    # Q(Q+1)(Q-1) = 0 on the subspace
    assert ((q @ q @ q) - q @ unit).is_zero() or \
        (q @ q @ q) == (q @ unit)
    # Q^2 = 2 C- + P-
    assert q @ q == cm.scaled(2) + p_minus
    # P+ Q = 0 = Q P+
    assert (p_plus @ q).is_zero() and (q @ p_plus).is_zero()
    # Q C- = C- Q = 0
    assert (q @ cm).is_zero() and (cm @ q).is_zero()


def test_e4_relations():
    a4 = antisymmetrizer_4(8)
    e4 = e4_operator()
    assert a4 @ a4 == a4
    assert a4 @ e4 == e4
    assert e4 @ a4 == e4
    assert e4 @ e4 == a4
    assert e4.trace() == 0
    half = Fraction(1, 2)
    for sign in (1, -1):
        p = (a4 + e4.scaled(sign)).scaled(half)
        assert p @ p == p


def test_two_site_embedding_matches_kron():
    d = 3
    rng = np.random.default_rng(9)
    op2 = SparseOp.from_triplets(
        d * d, d * d,
        [(int(rng.integers(0, 9)), int(rng.integers(0, 9)),
          int(rng.integers(-3, 4))) for _ in range(10)])
    ident = SparseOp.identity(d)
    # sites (0,1) of 3: op2 x I
    emb = two_site(op2, 0, 1, 3, d)
    assert emb == kron(op2, ident)
    # apply_two_site agrees with the embedded operator
    v = Vec.random_exact(d ** 3, rng)
    got = apply_two_site(op2, v, (0, 2), 3, d)
    want = two_site(op2, 0, 2, 3, d).matvec(v)
    assert got == want


def test_exceptional_defining_convention_is_d2_normalized():
    _, rep = defining("g2")
    sc_auto = split_casimir(rep, rep)
    sc_killing = split_casimir(rep, rep, convention="killing")
    assert sc_auto.convention == "d2_normalized"
    assert sc_auto.operator == sc_killing.operator.scaled(
        Fraction(1) / rep.d2())


def test_zero_check_sl2_adjoint_cminus_identity():
    # randomized_zero_check on C-(C- + 1/2) for the sl(2) adjoint: ZERO
    # across 20 trials
    from splitcasimir.kernel import randomized_zero_check, apply_poly_factors
    alg, _ = defining("sl(2)")
    sc = adjoint_split_casimir(alg)
    _, cm = sc.parts()

    def expr(v):
        return apply_poly_factors(cm, [0, Fraction(-1, 2)], v)

    res = randomized_zero_check(expr, cm.rows, trials=20, seed=4)
    assert res.is_zero
    assert res.trials == 20


def test_kono_drinfeld_e6_exact_and_e7_randomized():
    # exact at module dimension 27 (the spec's full-precision boundary),
    # randomized-exact above it
    rng = np.random.default_rng(11)
    for name, trials in [("e6", 2), ("e7", 2)]:
        _, rep = defining(name)
        sc = split_casimir(rep, rep)
        d = rep.dim_module
        for _ in range(trials):
            v = Vec.random_exact(d ** 3, rng)
            c13_23 = (apply_two_site(sc.operator, v, (0, 2), 3, d)
                      + apply_two_site(sc.operator, v, (1, 2), 3, d))
            lhs = apply_two_site(sc.operator, c13_23, (0, 1), 3, d)
            c12 = apply_two_site(sc.operator, v, (0, 1), 3, d)
            rhs = (apply_two_site(sc.operator, c12, (0, 2), 3, d)
                   + apply_two_site(sc.operator, c12, (1, 2), 3, d))
            assert (lhs - rhs).is_zero()


def test_swap_conjugation_fixes_casimir():
    # P Chat P = Chat when rep1 = rep2
    for name in ["sl(3)", "g2"]:
        _, rep = defining(name)
        sc = split_casimir(rep, rep)
        assert sc.swap @ sc.operator @ sc.swap == sc.operator


def test_split_casimir_mixed_representation_pair():
    # defining (x) adjoint: ad-invariance and the comultiplication identity
    # hold for any built pair
    alg, rep = defining("sl(2)")
    adj = alg.adjoint_rep()
    sc = split_casimir(rep, adj)
    assert sc.swap is None
    d1, d2m = rep.dim_module, adj.dim_module
    i1, i2 = SparseOp.identity(d1), SparseOp.identity(d2m)
    ki = alg.killing_inv
    for a in range(alg.dim):
        delta = kron(rep.generators[a], i2) + kron(i1, adj.generators[a])
        assert (delta @ sc.operator - sc.operator @ delta).is_zero()
    # Delta(C2) = C2 x 1 + 1 x C2 + 2 Chat
    c2_def = SparseOp.zero(d1, d1)
    c2_adj = SparseOp.zero(d2m, d2m)
    delta_c2 = SparseOp.zero(d1 * d2m, d1 * d2m)
    for a, b, v in ki.entries():
        c2_def = c2_def + (rep.generators[a] @ rep.generators[b]).scaled(v)
        c2_adj = c2_adj + (adj.generators[a] @ adj.generators[b]).scaled(v)
        da = kron(rep.generators[a], i2) + kron(i1, adj.generators[a])
        db = kron(rep.generators[b], i2) + kron(i1, adj.generators[b])
        delta_c2 = delta_c2 + (da @ db).scaled(v)
    want = kron(c2_def, i2) + kron(i1, c2_adj) + sc.operator.scaled(2)
    assert delta_c2 == want
