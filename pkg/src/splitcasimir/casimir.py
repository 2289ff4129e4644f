"""Split Casimir operators on tensor squares, their symmetric and
antisymmetric parts, the per-algebra invariant operator sets, and the trace
suite.

Two realizations coexist.  Generic representations give Chat = kappa^{ab}
T_a (x) T_b on V (x) V (for defining representations of the exceptional
algebras the operator is divided by d2, matching the convention in which
their characteristic identities are stated).  For sl/so/sp adjoints the
operator is realized on V_N^(x4) with the subspace projector playing the
unit, which keeps the Kronecker structure of P_13, K_23 etc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebras import LieAlgebra, Representation
from .classical import _metric_c, sl_pair_metric_inv
from .kernel import (
    EXACT,
    SparseOp,
    Vec,
    kron,
    trace_word,
)
from .rootdata import RootSystem


class CasimirError(Exception):
    pass


@dataclass
class SplitCasimir:
    """Split Casimir operator with the structural operators of its ambient
    space: ``unit`` is the identity of the (sub)space the operator lives on,
    ``swap`` the adjoint-space permutation used to split it."""

    operator: SparseOp
    rep_pair: Tuple[Representation, Representation]
    convention: str  # killing | d2_normalized
    unit: SparseOp
    swap: Optional[SparseOp] = None
    ambient: str = "tensor_square"  # tensor_square | tensor_fourth
    site_dim: int = 0
    _parts: Optional[Tuple[SparseOp, SparseOp]] = field(default=None, repr=False)

    @property
    def algebra(self) -> LieAlgebra:
        return self.rep_pair[0].algebra

    def parts(self) -> Tuple[SparseOp, SparseOp]:
        """(C_plus, C_minus) = (1/2)(1 +- P) Chat."""
        if self._parts is None:
            if self.swap is None:
                raise CasimirError("no permutation operator: rep1 != rep2")
            pc = self.swap @ self.operator
            half = Fraction(1, 2)
            self._parts = ((self.operator + pc).scaled(half),
                           (self.operator - pc).scaled(half))
        return self._parts


def weighted_kron_sum(pairs, chunk_nnz: int = 4_000_000) -> SparseOp:
    """sum_k c_k * kron(A_k, B_k) assembled chunkwise with one common scale.

    ``pairs`` yields (coefficient, A, B); all exact.
    """
    pairs = list(pairs)
    if not pairs:
        raise CasimirError("empty Kronecker sum")
    den = 1
    for c, a, b in pairs:
        full = Fraction(c) * a.scale * b.scale
        den = math.lcm(den, full.denominator)
    rows_dim = pairs[0][1].rows * pairs[0][2].rows
    cols_dim = pairs[0][1].cols * pairs[0][2].cols
    acc = SparseOp.zero(rows_dim, cols_dim)
    buf_r, buf_c, buf_d, buffered = [], [], [], 0
    for c, a, b in pairs:
        mult = Fraction(c) * a.scale * b.scale * den
        assert mult.denominator == 1
        mult = int(mult)
        if mult == 0:
            continue
        r = (a.row[:, None] * b.rows + b.row[None, :]).ravel()
        cc = (a.col[:, None] * b.cols + b.col[None, :]).ravel()
        da, db = a.data, b.data
        if da.dtype != object and db.dtype != object and \
                max(a.max_abs, 1) * max(b.max_abs, 1) * abs(mult) < 2 ** 62:
            d = (da[:, None] * db[None, :]).ravel() * mult
        else:
            da = da.astype(object)
            d = (da[:, None] * db[None, :]).ravel() * mult
        buf_r.append(r)
        buf_c.append(cc)
        buf_d.append(d)
        buffered += len(d)
        if buffered >= chunk_nnz:
            acc = acc + _flush(rows_dim, cols_dim, buf_r, buf_c, buf_d, den)
            buf_r, buf_c, buf_d, buffered = [], [], [], 0
    if buffered:
        acc = acc + _flush(rows_dim, cols_dim, buf_r, buf_c, buf_d, den)
    return acc


def _flush(rows, cols, buf_r, buf_c, buf_d, den) -> SparseOp:
    if any(d.dtype == object for d in buf_d):
        from .kernel import _to_object
        buf_d = [d if d.dtype == object else _to_object(d) for d in buf_d]
        data = np.concatenate(buf_d)
    else:
        data = np.concatenate(buf_d)
    return SparseOp(rows, cols, np.concatenate(buf_r), np.concatenate(buf_c),
                    data, Fraction(1, den))


def swap_operator(d: int, field: str = EXACT) -> SparseOp:
    return SparseOp.from_triplets(
        d * d, d * d, [(i * d + j, j * d + i, 1)
                       for i in range(d) for j in range(d)], field)


_EXCEPTIONAL_SERIES = ("G", "F", "E")


def split_casimir(rep1: Representation, rep2: Representation,
                  convention: str = "auto") -> SplitCasimir:
    """Chat = kappa^{ab} T1_a (x) T2_b.

    convention "auto": defining/other representations of exceptional
    algebras are divided by d2 (the normalization their characteristic
    identities are stated in); everything else keeps the Killing-metric
    operator, whose adjoint value is c2 = 1.
    """
    if rep1.algebra is not rep2.algebra:
        if rep1.algebra.name != rep2.algebra.name:
            raise CasimirError("representations of different algebras")
    alg = rep1.algebra
    if convention == "auto":
        if (alg.series in _EXCEPTIONAL_SERIES and rep1.kind != "adjoint"
                and rep2.kind != "adjoint"):
            convention = "d2_normalized"
        else:
            convention = "killing"
    ki = alg.killing_inv
    pairs = []
    for a, b, v in ki.entries():
        pairs.append((v, rep1.generators[a], rep2.generators[b]))
    op = weighted_kron_sum(pairs)
    if convention == "d2_normalized":
        op = op.scaled(Fraction(1) / rep1.d2())
    d1, d2m = rep1.dim_module, rep2.dim_module
    unit = SparseOp.identity(d1 * d2m)
    swap = swap_operator(d1) if d1 == d2m else None
    return SplitCasimir(op, (rep1, rep2), convention, unit, swap,
                        site_dim=d1)


def split_parts(c: SplitCasimir) -> Tuple[SparseOp, SparseOp]:
    return c.parts()


def adjoint_split_casimir(alg: LieAlgebra) -> SplitCasimir:
    """Adjoint Chat assembled directly from structure constants."""
    rep = alg.adjoint_rep()
    return split_casimir(rep, rep, convention="killing")


# ---------------------------------------------------------------------------
# multi-site toolbox on V^(x n)
# ---------------------------------------------------------------------------

def two_site(op2: SparseOp, a: int, b: int, n_sites: int, d: int) -> SparseOp:
    """Embed a two-site operator so it acts on factors (a, b) of V^(x n)."""
    strides = [d ** (n_sites - 1 - k) for k in range(n_sites)]
    rest = [k for k in range(n_sites) if k not in (a, b)]
    rest_indices = [[]]
    for _ in rest:
        rest_indices = [ri + [x] for ri in rest_indices for x in range(d)]
    trips_r, trips_c, trips_d = [], [], []
    for r2, c2, v in zip(op2.row, op2.col, op2.data):
        i1, i2 = divmod(int(r2), d)
        j1, j2 = divmod(int(c2), d)
        base_r = i1 * strides[a] + i2 * strides[b]
        base_c = j1 * strides[a] + j2 * strides[b]
        for ri in rest_indices:
            extra = sum(x * strides[k] for x, k in zip(ri, rest))
            trips_r.append(base_r + extra)
            trips_c.append(base_c + extra)
            trips_d.append(v)
    data = np.array(trips_d, dtype=op2.data.dtype)
    return SparseOp(d ** n_sites, d ** n_sites,
                    np.array(trips_r, dtype=np.int64),
                    np.array(trips_c, dtype=np.int64), data, op2.scale,
                    op2.field)


def perm_two_site(a: int, b: int, n_sites: int, d: int) -> SparseOp:
    return two_site(swap_operator(d), a, b, n_sites, d)


def k_two_site(a: int, b: int, n_sites: int, d: int,
               metric: Optional[SparseOp] = None) -> SparseOp:
    """K_ab with components cbar^{i_a i_b} c_{j_a j_b} (delta metric default)."""
    if metric is None:
        k2 = SparseOp.from_triplets(
            d * d, d * d, [(i * d + i, j * d + j, 1)
                           for i in range(d) for j in range(d)])
    else:
        from .algebras import symmetric_block_inverse
        minv = symmetric_block_inverse(metric)
        up = [(r * d + c, v) for r, c, v in minv.entries()]
        lo = [(r * d + c, v) for r, c, v in metric.entries()]
        k2 = SparseOp.from_triplets(
            d * d, d * d, [(i, j, vu * vl) for i, vu in up for j, vl in lo])
    return two_site(k2, a, b, n_sites, d)


# ---------------------------------------------------------------------------
# sl(N) and so/sp adjoint realizations on V^(x4)
# ---------------------------------------------------------------------------

@dataclass
class TensorAdjoint:
    """Adjoint-representation operators realized inside V_N^(x4)."""

    casimir: SplitCasimir
    ops: Dict[str, SparseOp]  # unit, swap, K, plus building blocks
    n: int
    eps: Optional[int] = None  # so/sp only


def sl_adjoint_tensor(n: int) -> TensorAdjoint:
    """sl(N) adjoint on the traceless subspace Ibar (V_N (x) V_N)."""
    if n < 2:
        raise CasimirError("sl(N) needs N >= 2")
    d = n
    p13 = perm_two_site(0, 2, 4, d)
    p24 = perm_two_site(1, 3, 4, d)
    k12 = k_two_site(0, 1, 4, d)
    k13 = k_two_site(0, 2, 4, d)
    k14 = k_two_site(0, 3, 4, d)
    k23 = k_two_site(1, 2, 4, d)
    k24 = k_two_site(1, 3, 4, d)
    k34 = k_two_site(2, 3, 4, d)
    ident = SparseOp.identity(d ** 4)
    ibar12 = ident - k12.scaled(Fraction(1, n))
    ibar34 = ident - k34.scaled(Fraction(1, n))
    unit = ibar12 @ ibar34
    raw = (p13 + p24 - k14 - k23).scaled(Fraction(1, 2 * n))
    cas = unit @ raw @ unit
    big_p = unit @ (p13 @ p24) @ unit
    # K = g^{i1 i2, i3 i4} g_{j1 j2, j3 j4} over the pair metrics
    big_k = (k23 @ k14
             - (p24 @ k12 @ k34).scaled(Fraction(1, n))
             - (p13 @ k23 @ k14).scaled(Fraction(1, n))
             + (k12 @ k34).scaled(Fraction(1, n * n)))
    from .classical import build_classical
    _, rep = build_classical("A", n - 1)
    adj = rep.algebra.adjoint_rep()
    sc = SplitCasimir(cas, (adj, adj), "killing", unit, big_p,
                      ambient="tensor_fourth", site_dim=d)
    ops = {"I": unit, "P": big_p, "K": big_k, "P13": p13, "P24": p24,
           "K12": k12, "K13": k13, "K14": k14, "K23": k23, "K24": k24,
           "K34": k34}
    return TensorAdjoint(sc, ops, n)


def sosp_adjoint_tensor(n: int, eps: int) -> TensorAdjoint:
    """so(N) (eps=+1) / sp(N) (eps=-1) adjoint inside V_N^(x4)."""
    d = n
    metric = _metric_c(n, eps)
    p12 = perm_two_site(0, 1, 4, d)
    p34 = perm_two_site(2, 3, 4, d)
    p13 = perm_two_site(0, 2, 4, d)
    p24 = perm_two_site(1, 3, 4, d)
    k13 = k_two_site(0, 2, 4, d, metric=metric)
    k24 = k_two_site(1, 3, 4, d, metric=metric)
    ident = SparseOp.identity(d ** 4)
    half = Fraction(1, 2)
    proj12 = (ident - p12.scaled(eps)).scaled(half)
    proj34 = (ident - p34.scaled(eps)).scaled(half)
    unit = proj12 @ proj34
    cas = (unit @ (p13 - k13.scaled(eps)) @ unit).scaled(
        Fraction(2, n - 2 * eps))
    big_p = unit @ (p13 @ p24) @ unit
    big_k = unit @ (k13 @ k24) @ unit
    from .classical import build_so_sp
    _, rep = build_so_sp(n, eps)
    adj = rep.algebra.adjoint_rep()
    sc = SplitCasimir(cas, (adj, adj), "killing", unit, big_p,
                      ambient="tensor_fourth", site_dim=d)
    ops = {"I": unit, "P": big_p, "K": big_k, "P13": p13, "P24": p24,
           "K13": k13, "K24": k24}
    return TensorAdjoint(sc, ops, n, eps)


def q_minus(n: int) -> SparseOp:
    """The extra sl(N) invariant on the adjoint tensor square,
    (1/2)(P_13 - P_24)(1 - (K_12 + K_14 + K_23 + K_34)/N), sandwiched into
    the traceless subspace."""
    if n < 4:
        raise CasimirError("Q_minus needs N >= 4 (X_2 splits only there)")
    ta = sl_adjoint_tensor(n)
    o = ta.ops
    ident = SparseOp.identity(n ** 4)
    inner = ident - (o["K12"] + o["K14"] + o["K23"] + o["K34"]).scaled(
        Fraction(1, n))
    raw = ((o["P13"] - o["P24"]) @ inner).scaled(Fraction(1, 2))
    return o["I"] @ raw @ o["I"]


def antisymmetrizer_4(d: int) -> SparseOp:
    """Rank-4 antisymmetrizer A_4 on V_d^(x4)."""
    import itertools
    trips = []
    strides = [d ** 3, d ** 2, d, 1]
    for perm in itertools.permutations(range(4)):
        sign = _perm_sign(perm)
        for idx in itertools.product(range(d), repeat=4):
            row = sum(idx[perm[k]] * strides[k] for k in range(4))
            col = sum(idx[k] * strides[k] for k in range(4))
            trips.append((row, col, Fraction(sign, 24)))
    return SparseOp.from_triplets(d ** 4, d ** 4, trips)


def _perm_sign(perm) -> int:
    sign = 1
    seen = set()
    for start in range(len(perm)):
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def e4_operator() -> SparseOp:
    """so(8) self-duality operator: (E_4)^{i1..i4}_{j1..j4} =
    (1/4!) eps^{i1..i4 j1..j4} on V_8^(x4)."""
    import itertools
    trips = []
    strides = [8 ** 3, 8 ** 2, 8, 1]
    for perm in itertools.permutations(range(8)):
        sign = _perm_sign(perm)
        row = sum(perm[k] * strides[k] for k in range(4))
        col = sum(perm[4 + k] * strides[k] for k in range(4))
        trips.append((row, col, Fraction(sign, 24)))
    return SparseOp.from_triplets(8 ** 4, 8 ** 4, trips)


# ---------------------------------------------------------------------------
# per-representation invariant operator sets
# ---------------------------------------------------------------------------

def invariant_set(rep: Representation) -> Dict[str, SparseOp]:
    """Named invariant operators on V (x) V for one representation.

    Always I and P; K whenever the module (or the algebra, for adjoints)
    carries an invariant symmetric metric; F/D for g2 and f4; P1 (the
    singlet projector from the symplectic form) for e7.
    """
    alg = rep.algebra
    d = rep.dim_module
    out = {"I": SparseOp.identity(d * d), "P": swap_operator(d)}
    if rep.kind == "adjoint":
        out["K"] = _outer_vec(alg.killing_inv, alg.killing)
        return out
    if rep.module_metric is not None:
        from .algebras import symmetric_block_inverse
        out["K"] = _outer_vec(symmetric_block_inverse(rep.module_metric),
                              rep.module_metric)
    if alg.name == "g2":
        from .exceptional import octonion_f
        f = octonion_f()
        trips = []
        for (i, j, k), v in f.items():
            for (l, m), w in (((l2, m2), f.get((k, l2, m2)))
                              for l2 in range(1, 8) for m2 in range(1, 8)):
                if w:
                    trips.append(((i - 1) * 7 + (j - 1),
                                  (l - 1) * 7 + (m - 1), v * w))
        out["F"] = SparseOp.from_triplets(49, 49, trips)
    if alg.name == "f4":
        out["D"] = _f4_d_operator()
        out["F"] = _t_squared_operator(rep)
    if alg.name == "e7":
        from .exceptional import invariant_antisymmetric_form
        j = invariant_antisymmetric_form(rep)
        from .algebras import _invert_dense
        j_dense = j.to_dense_fractions()
        j_inv = SparseOp.from_dense(_invert_dense([list(r) for r in j_dense]))
        out["J"] = j
        out["P1"] = _outer_vec(j_inv, j).scaled(Fraction(-1, 56))
    return out


def _outer_vec(m_up: SparseOp, m_down: SparseOp) -> SparseOp:
    d = m_up.rows
    up = [(int(r) * d + int(c), int(v) * m_up.scale)
          for r, c, v in zip(m_up.row, m_up.col, m_up.data)]
    lo = [(int(r) * d + int(c), int(v) * m_down.scale)
          for r, c, v in zip(m_down.row, m_down.col, m_down.data)]
    return SparseOp.from_triplets(
        d * d, d * d, [(i, j, vu * vl) for i, vu in up for j, vl in lo])


def _f4_d_operator() -> SparseOp:
    """(D)^{i1i2}_{j1j2} = dhat^{i1i2m} dhat_{j1j2m} in the rational basis:
    sum_m (8/(g_i1 g_i2 g_m)) d_{i1i2m} d_{j1j2m}."""
    from .exceptional import j3_structure
    gram, dten = j3_structure()
    by_m: Dict[int, List[Tuple[int, int, Fraction]]] = {}
    for (i, j, k), v in dten.items():
        by_m.setdefault(k, []).append((i, j, v))
    trips: Dict[Tuple[int, int], Fraction] = {}
    for m, entries in by_m.items():
        for i1, i2, v1 in entries:
            lead = 8 * v1 / (gram[i1] * gram[i2] * gram[m])
            for j1, j2, v2 in entries:
                key = (i1 * 26 + i2, j1 * 26 + j2)
                trips[key] = trips.get(key, Fraction(0)) + lead * v2
    return SparseOp.from_triplets(
        676, 676, [(r, c, v) for (r, c), v in trips.items() if v])


def _t_squared_operator(rep: Representation) -> SparseOp:
    """(F)^{i1i2}_{j1j2} = T_a^{i1i2} T_{a j1j2} in invariant form:
    -(1/d2) kappa^{ab} (T_a gbar)^{i1i2} (g T_b)_{j1j2}."""
    from .algebras import symmetric_block_inverse
    alg = rep.algebra
    g = rep.module_metric
    ginv = symmetric_block_inverse(g)
    d = rep.dim_module
    raised = [t @ ginv for t in rep.generators]
    lowered = [g @ t for t in rep.generators]
    pairs = []
    for a, b, v in alg.killing_inv.entries():
        pairs.append((-v / rep.d2(), raised[a], lowered[b]))
    acc: Dict[Tuple[int, int], Fraction] = {}
    for coef, up, lo in pairs:
        ups = [(int(r) * d + int(c), int(x) * up.scale)
               for r, c, x in zip(up.row, up.col, up.data)]
        los = [(int(r) * d + int(c), int(x) * lo.scale)
               for r, c, x in zip(lo.row, lo.col, lo.data)]
        for i, vu in ups:
            w = coef * vu
            for j, vl in los:
                acc[(i, j)] = acc.get((i, j), Fraction(0)) + w * vl
    return SparseOp.from_triplets(
        d * d, d * d, [(r, c, v) for (r, c), v in acc.items() if v])


# ---------------------------------------------------------------------------
# eigenvalue prediction and the trace suite
# ---------------------------------------------------------------------------

def casimir_eigenvalue(rs: RootSystem, lam: Sequence[int],
                       lam1: Sequence[int], lam2: Sequence[int]) -> Fraction:
    """Predicted Chat eigenvalue on the lambda component of
    T_{lambda1} (x) T_{lambda2}: (c2(lam) - c2(lam1) - c2(lam2)) / 2."""
    return (rs.casimir_c2(tuple(lam)) - rs.casimir_c2(tuple(lam1))
            - rs.casimir_c2(tuple(lam2))) / 2


def trace_suite(sc: SplitCasimir, big_k: Optional[SparseOp] = None) -> Dict:
    """All adjoint trace identities, computed and compared exactly."""
    dim_g = sc.algebra.dim
    c = sc.operator
    cp, cm = sc.parts()
    unit, swap = sc.unit, sc.swap
    observed = {
        "Tr(C)": trace_word([c]),
        "Tr(C^2)": trace_word([c, c]),
        "Tr(C+)": trace_word([cp]),
        "Tr(C-)": trace_word([cm]),
        "Tr(C+^2)": trace_word([cp, cp]),
        "Tr(C-^2)": trace_word([cm, cm]),
        "Tr(P)": trace_word([swap]),
        "Tr(I)": trace_word([unit]),
    }
    if big_k is not None:
        observed["Tr(K)"] = trace_word([big_k])
    expected = {
        "Tr(C)": Fraction(0),
        "Tr(C^2)": Fraction(dim_g),
        "Tr(C+)": Fraction(dim_g, 2),
        "Tr(C-)": Fraction(-dim_g, 2),
        "Tr(C+^2)": Fraction(3 * dim_g, 4),
        "Tr(C-^2)": Fraction(dim_g, 4),
        "Tr(P)": Fraction(dim_g),
        "Tr(I)": Fraction(dim_g * dim_g),
    }
    if big_k is not None:
        expected["Tr(K)"] = Fraction(dim_g)
    status = {k: observed[k] == expected[k] for k in observed}
    return {"observed": observed, "expected": expected, "status": status,
            "all_pass": all(status.values())}
