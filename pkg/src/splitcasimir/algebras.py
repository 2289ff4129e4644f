"""Lie algebra and representation containers plus the generic exact machinery
shared by every construction: structure constants from generator matrices,
Killing metrics and their block inverses, invariant checks, normalization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .kernel import (
    EXACT,
    SparseOp,
    Vec,
    _pair_trace,
    randomized_zero_check,
)
from .rootdata import RootSystem

JACOBI_EXHAUSTIVE_DIM = 150


class ConstructionError(Exception):
    pass


@dataclass
class LieAlgebra:
    """Structure constants C^d_{ab} as a (dim^2 x dim) sparse tensor:
    row a*dim+b, column d."""

    name: str
    series: str
    rank: int
    dim: int
    struct: SparseOp
    killing: SparseOp
    killing_inv: SparseOp
    convention: str = "natural"
    root_data: Optional[RootSystem] = None
    labels: Optional[List[str]] = None
    _ad: Optional[List[SparseOp]] = field(default=None, repr=False)

    def ad_matrices(self) -> List[SparseOp]:
        """ad(X_a)^d_b = C^d_{ab} as dim x dim operators."""
        if self._ad is None:
            t = self.struct
            mats = []
            a_of = t.row // self.dim
            b_of = t.row % self.dim
            for a in range(self.dim):
                mask = a_of == a
                mats.append(SparseOp(self.dim, self.dim, t.col[mask],
                                     b_of[mask], t.data[mask], t.scale))
            self._ad = mats
        return self._ad

    def bracket_in_basis(self, a: int, b: int) -> List[Tuple[int, Fraction]]:
        t = self.struct
        key = a * self.dim + b
        lo = np.searchsorted(t.row, key)
        hi = np.searchsorted(t.row, key + 1)
        return [(int(t.col[k]), int(t.data[k]) * t.scale)
                for k in range(lo, hi)]

    def adjoint_rep(self) -> "Representation":
        return Representation(self, self.dim, self.ad_matrices(), "adjoint")


@dataclass
class Representation:
    algebra: LieAlgebra
    dim_module: int
    generators: List[SparseOp]
    kind: str  # defining | adjoint | other
    module_metric: Optional[SparseOp] = None  # invariant bilinear form on V
    _d2: Optional[Fraction] = field(default=None, repr=False)

    def d2(self) -> Fraction:
        """Tr(T_a T_b) = d2 * killing_ab; computed and verified entrywise."""
        if self._d2 is None:
            self._d2 = _trace_form_ratio(self.generators, self.algebra.killing)
        return self._d2


# ---------------------------------------------------------------------------
# generic construction helpers
# ---------------------------------------------------------------------------

def structure_constants_from_brackets(dim: int, coeff_fn) -> SparseOp:
    """Assemble C^d_{ab} from a function (a, b) -> [(d, value), ...]."""
    trips = []
    for a in range(dim):
        for b in range(dim):
            for d, v in coeff_fn(a, b):
                if v != 0:
                    trips.append((a * dim + b, d, v))
    return SparseOp.from_triplets(dim * dim, dim, trips)


def trace_form(generators: Sequence[SparseOp]) -> SparseOp:
    """B_ab = Tr(T_a T_b)."""
    dim = len(generators)
    trips = []
    for a in range(dim):
        for b in range(a, dim):
            t = _pair_trace(generators[a], generators[b])
            if t != 0:
                trips.append((a, b, t))
                if b != a:
                    trips.append((b, a, t))
    return SparseOp.from_triplets(dim, dim, trips)


def killing_from_struct(struct: SparseOp, dim: int) -> SparseOp:
    ads = []
    a_of = struct.row // dim
    b_of = struct.row % dim
    for a in range(dim):
        mask = a_of == a
        ads.append(SparseOp(dim, dim, struct.col[mask], b_of[mask],
                            struct.data[mask], struct.scale))
    return trace_form(ads)


def symmetric_block_inverse(m: SparseOp) -> SparseOp:
    """Exact inverse of a symmetric matrix, blockwise over the connected
    components of its sparsity graph (Killing metrics are block-sparse)."""
    n = m.rows
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r, c in zip(m.row, m.col):
        ra, rb = find(int(r)), find(int(c))
        if ra != rb:
            parent[ra] = rb
    groups: Dict[int, List[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    dense = m.to_dense_fractions()
    trips = []
    for members in groups.values():
        k = len(members)
        block = [[dense[i][j] for j in members] for i in members]
        inv = _invert_dense(block)
        if inv is None:
            raise ConstructionError("metric block is singular")
        for x in range(k):
            for y in range(k):
                if inv[x][y] != 0:
                    trips.append((members[x], members[y], inv[x][y]))
    return SparseOp.from_triplets(n, n, trips)


def _invert_dense(block):
    k = len(block)
    aug = [list(row) + [Fraction(i == j) for j in range(k)]
           for i, row in enumerate(block)]
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        s = Fraction(1) / aug[col][col]
        aug[col] = [x * s for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


def _trace_form_ratio(generators: Sequence[SparseOp], killing: SparseOp) -> Fraction:
    tf = trace_form(generators)
    if tf.nnz == 0 or killing.nnz == 0:
        raise ConstructionError("degenerate trace form")
    r0, c0 = int(killing.row[0]), int(killing.col[0])
    k0 = int(killing.data[0]) * killing.scale
    t0 = next((v for r, c, v in tf.entries() if (r, c) == (r0, c0)), Fraction(0))
    d2 = t0 / k0
    if tf != killing.scaled(d2):
        raise ConstructionError("Tr(T_a T_b) is not proportional to the "
                                "Killing metric")
    return d2


def algebra_from_struct(name: str, series: str, rank: int, dim: int,
                        struct: SparseOp, convention: str = "natural",
                        root_data: Optional[RootSystem] = None,
                        labels: Optional[List[str]] = None) -> LieAlgebra:
    killing = killing_from_struct(struct, dim)
    return LieAlgebra(name, series, rank, dim, struct, killing,
                      symmetric_block_inverse(killing), convention,
                      root_data, labels)


def expand_in_echelon_basis(vec_coords: Dict[int, Fraction],
                            pivots: Sequence[int],
                            basis_rows: Sequence[Dict[int, Fraction]]
                            ) -> Tuple[List[Fraction], bool]:
    """Expand a vector over a reduced-echelon basis by reading its pivot
    coordinates; returns (coefficients, exact) with exact=False when the
    residual is nonzero (vector outside the span)."""
    coeffs = [vec_coords.get(p, Fraction(0)) for p in pivots]
    residual = dict(vec_coords)
    for c, row in zip(coeffs, basis_rows):
        if c:
            for k, v in row.items():
                residual[k] = residual.get(k, Fraction(0)) - c * v
    ok = all(v == 0 for v in residual.values())
    return coeffs, ok


def sparse_nullspace(rows: List[Dict[int, Fraction]], n_unknowns: int,
                     stall: int = 64) -> Tuple[List[Dict[int, Fraction]], List[int]]:
    """Exact nullspace of a sparse linear system as (basis, free_columns).

    The basis is reduced-echelon over the free columns: vector k has
    coordinate 1 at free_columns[k] and 0 at every other free column, so
    expanding a vector in this basis is reading its free coordinates.
    Rows are dicts unknown-index -> coefficient.

    Over-determined systems are handled in two phases: once ``stall``
    consecutive rows reduce to zero, the remaining rows are only checked for
    orthogonality against the current nullspace (over Q a row is implied by
    the processed ones iff it annihilates their nullspace) and survivors are
    fed back into the elimination.
    """
    echelon: Dict[int, Dict[int, Fraction]] = {}  # pivot col -> row

    def reduce_row(row: Dict[int, Fraction]) -> Dict[int, Fraction]:
        row = dict(row)
        while row:
            piv = min(row)
            base = echelon.get(piv)
            if base is None:
                inv = Fraction(1) / row[piv]
                return {k: v * inv for k, v in row.items()}
            f = row[piv]
            for k, v in base.items():
                nv = row.get(k, Fraction(0)) - f * v
                if nv == 0:
                    row.pop(k, None)
                else:
                    row[k] = nv
        return row

    def current_basis():
        pivset = set(echelon)
        free_cols = [j for j in range(n_unknowns) if j not in pivset]
        vecs = []
        for j in free_cols:
            vec = {j: Fraction(1)}
            # resolve pivot coordinates from the largest pivot down
            resolved: Dict[int, Fraction] = {}
            for piv in sorted(echelon, reverse=True):
                row = echelon[piv]
                val = -row.get(j, Fraction(0))
                val -= sum(row.get(k, Fraction(0)) * v
                           for k, v in resolved.items() if k in row)
                if val:
                    resolved[piv] = val
            vec.update({k: v for k, v in resolved.items() if v})
            vecs.append(vec)
        return vecs, free_cols

    remaining = [r for r in rows if r]
    while remaining:
        streak = 0
        cut = len(remaining)
        for i, row in enumerate(remaining):
            rr = reduce_row(row)
            if rr:
                echelon[min(rr)] = rr
                streak = 0
            else:
                streak += 1
                if streak >= stall:
                    cut = i + 1
                    break
        remaining = remaining[cut:]
        if remaining:
            basis, _ = current_basis()
            remaining = [
                r for r in remaining
                if any(_dict_dot(r, b) != 0 for b in basis)
            ]
    # back substitution to fully reduced form
    for piv in sorted(echelon, reverse=True):
        row = echelon[piv]
        for piv2, row2 in echelon.items():
            if piv2 != piv and piv in row2:
                f = row2[piv]
                for k, v in row.items():
                    nv = row2.get(k, Fraction(0)) - f * v
                    if nv == 0:
                        row2.pop(k, None)
                    else:
                        row2[k] = nv
    pivots = set(echelon)
    free = [j for j in range(n_unknowns) if j not in pivots]
    basis = []
    for j in free:
        vec = {j: Fraction(1)}
        for piv, row in echelon.items():
            if j in row:
                vec[piv] = -row[j]
        basis.append(vec)
    return basis, free


def _dict_dot(a: Dict[int, Fraction], b: Dict[int, Fraction]) -> Fraction:
    if len(b) < len(a):
        a, b = b, a
    return sum(v * b[k] for k, v in a.items() if k in b)


# ---------------------------------------------------------------------------
# invariant verification
# ---------------------------------------------------------------------------

def check_antisymmetry(alg: LieAlgebra) -> bool:
    t = alg.struct
    a_of = t.row // alg.dim
    b_of = t.row % alg.dim
    swapped = SparseOp(t.rows, t.cols, b_of * alg.dim + a_of, t.col,
                       t.data, t.scale)
    return (t + swapped).is_zero()


def check_jacobi(alg: LieAlgebra, rng: Optional[np.random.Generator] = None,
                 trials: int = 8) -> bool:
    """Jacobi identity as ad([a,b]) = [ad a, ad b].

    Exhaustive over basis pairs up to JACOBI_EXHAUSTIVE_DIM, randomized-exact
    over random algebra elements beyond (a vanishing bilinear identity is
    checked on random integer combinations).
    """
    ads = alg.ad_matrices()
    if alg.dim <= JACOBI_EXHAUSTIVE_DIM:
        for a in range(alg.dim):
            for b in range(a + 1, alg.dim):
                comm = ads[a] @ ads[b] - ads[b] @ ads[a]
                for d, v in alg.bracket_in_basis(a, b):
                    comm = comm - ads[d].scaled(v)
                if not comm.is_zero():
                    return False
        return True
    rng = rng or np.random.default_rng(0)
    for _ in range(trials):
        xa = rng.integers(-3, 4, size=alg.dim)
        xb = rng.integers(-3, 4, size=alg.dim)
        ad_x = _combine(ads, xa)
        ad_y = _combine(ads, xb)
        # [x, y] in the basis via the structure tensor
        coeffs = _bracket_coeffs_dense(alg, xa, xb)
        ad_xy = _combine(ads, None, fractions=coeffs)
        comm = ad_x @ ad_y - ad_y @ ad_x - ad_xy
        v = Vec.random_exact(alg.dim, rng)
        if not comm.matvec(v).is_zero():
            return False
    return True


def _combine(ops: Sequence[SparseOp], ints, fractions=None) -> SparseOp:
    acc = SparseOp.zero(ops[0].rows, ops[0].cols)
    if fractions is None:
        fractions = [Fraction(int(x)) for x in ints]
    for op, c in zip(ops, fractions):
        if c != 0:
            acc = acc + op.scaled(c)
    return acc


def _bracket_coeffs_dense(alg: LieAlgebra, xa, xb) -> List[Fraction]:
    out = [Fraction(0)] * alg.dim
    t = alg.struct
    a_of = t.row // alg.dim
    b_of = t.row % alg.dim
    for k in range(t.nnz):
        ca = int(xa[a_of[k]])
        cb = int(xb[b_of[k]])
        if ca and cb:
            out[int(t.col[k])] += ca * cb * int(t.data[k]) * t.scale
    return out


def check_killing(alg: LieAlgebra) -> bool:
    recomputed = killing_from_struct(alg.struct, alg.dim)
    if recomputed != alg.killing:
        return False
    prod = alg.killing @ alg.killing_inv
    return prod == SparseOp.identity(alg.dim)


def check_adjoint_casimir_is_identity(alg: LieAlgebra) -> bool:
    """kappa^{ab} ad_a ad_b = 1, equivalent to c2(adjoint) = 1."""
    ads = alg.ad_matrices()
    ki = alg.killing_inv
    acc = SparseOp.zero(alg.dim, alg.dim)
    for r, c, v in ki.entries():
        acc = acc + (ads[r] @ ads[c]).scaled(v)
    return acc == SparseOp.identity(alg.dim)


def check_representation(rep: Representation,
                         rng: Optional[np.random.Generator] = None,
                         trials: int = 8) -> bool:
    """[T_a, T_b] = C^d_{ab} T_d, exhaustive for small algebras."""
    alg = rep.algebra
    gens = rep.generators
    if alg.dim <= JACOBI_EXHAUSTIVE_DIM:
        for a in range(alg.dim):
            for b in range(a + 1, alg.dim):
                comm = gens[a] @ gens[b] - gens[b] @ gens[a]
                for d, v in alg.bracket_in_basis(a, b):
                    comm = comm - gens[d].scaled(v)
                if not comm.is_zero():
                    return False
        return True
    rng = rng or np.random.default_rng(0)
    for _ in range(trials):
        a = int(rng.integers(0, alg.dim))
        b = int(rng.integers(0, alg.dim))
        comm = gens[a] @ gens[b] - gens[b] @ gens[a]
        for d, v in alg.bracket_in_basis(a, b):
            comm = comm - gens[d].scaled(v)
        if not comm.is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

def _is_rational_square(f: Fraction) -> Optional[Fraction]:
    if f <= 0:
        return None
    import math
    rn = math.isqrt(f.numerator)
    rd = math.isqrt(f.denominator)
    if rn * rn == f.numerator and rd * rd == f.denominator:
        return Fraction(rn, rd)
    return None


def normalize(alg: LieAlgebra, rep: Representation, convention: str
              ) -> Tuple[LieAlgebra, Representation]:
    """Change basis so the Killing metric is diagonal rational, then rescale
    toward the requested convention where that needs no irrational scalars.

    killing_unit / minus_delta target kappa_aa = +-1; trace_unit targets
    Tr(T_a T_b) = -delta_ab.  Entries whose rescaling would be irrational are
    left diagonal rational; the inverse metric is threaded through all
    contractions anyway, so every downstream operator is unaffected.
    """
    if convention not in ("killing_unit", "minus_delta", "trace_unit"):
        raise ValueError(f"unknown convention {convention!r}")
    s = _congruence_diagonalize(alg.killing)
    diag = _transform_metric_diag(alg.killing, s)
    scale_targets = []
    d2 = rep.d2() if convention == "trace_unit" else Fraction(1)
    for kaa in diag:
        target = kaa if convention != "trace_unit" else kaa * d2
        r = _is_rational_square(abs(target))
        scale_targets.append(Fraction(1) / r if r is not None else Fraction(1))
    s_rows = []
    for i, (row, c) in enumerate(zip(s, scale_targets)):
        s_rows.append({k: v * c for k, v in row.items()})
    alg2 = _transform_algebra(alg, s_rows, convention)
    gens2 = []
    for i in range(alg.dim):
        acc = SparseOp.zero(rep.dim_module, rep.dim_module)
        for b, v in s_rows[i].items():
            acc = acc + rep.generators[b].scaled(v)
        gens2.append(acc)
    rep2 = Representation(alg2, rep.dim_module, gens2, rep.kind,
                          rep.module_metric)
    return alg2, rep2


def _congruence_diagonalize(killing: SparseOp) -> List[Dict[int, Fraction]]:
    """Rows S_i with S kappa S^T diagonal (symmetric Gram-Schmidt over Q,
    hyperbolic pairs handled by a preliminary x_i + x_j move)."""
    n = killing.rows
    dense = killing.to_dense_fractions()
    basis = [{i: Fraction(1)} for i in range(n)]

    def form(u: Dict[int, Fraction], v: Dict[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for a, ua in u.items():
            rowa = dense[a]
            for b, vb in v.items():
                x = rowa[b]
                if x:
                    total += ua * vb * x
        return total

    out: List[Dict[int, Fraction]] = []
    remaining = basis
    while remaining:
        # pick a vector of nonzero norm, fixing a hyperbolic pair if needed
        head = None
        for i, cand in enumerate(remaining):
            if form(cand, cand) != 0:
                head = remaining.pop(i)
                break
        if head is None:
            first = remaining[0]
            mate = next(v for v in remaining[1:] if form(first, v) != 0)
            merged = dict(first)
            for k, x in mate.items():
                merged[k] = merged.get(k, Fraction(0)) + x
            head = merged
            remaining.pop(0)
        norm = form(head, head)
        out.append(head)
        new_rem = []
        for v in remaining:
            c = form(head, v) / norm
            if c:
                nv = dict(v)
                for k, x in head.items():
                    nv[k] = nv.get(k, Fraction(0)) - c * x
                    if nv[k] == 0:
                        del nv[k]
                new_rem.append(nv)
            else:
                new_rem.append(v)
        remaining = new_rem
    return out


def _transform_metric_diag(killing: SparseOp, s_rows) -> List[Fraction]:
    dense = killing.to_dense_fractions()
    out = []
    for row in s_rows:
        total = Fraction(0)
        for a, ua in row.items():
            for b, ub in row.items():
                x = dense[a][b]
                if x:
                    total += ua * ub * x
        out.append(total)
    return out


def _transform_algebra(alg: LieAlgebra, s_rows, convention: str) -> LieAlgebra:
    n = alg.dim
    s_trips = [(i, k, v) for i, row in enumerate(s_rows)
               for k, v in row.items()]
    s_op = SparseOp.from_triplets(n, n, s_trips)
    s_dense = s_op.to_dense_fractions()
    s_inv = _invert_dense([list(r) for r in s_dense])
    # C'^d_{ab} = S_a^p S_b^q C^r_{pq} (S^-1)_r^d
    trips = []
    t = alg.struct
    by_pq: Dict[Tuple[int, int], List[Tuple[int, Fraction]]] = {}
    for k in range(t.nnz):
        p, q = divmod(int(t.row[k]), n)
        by_pq.setdefault((p, q), []).append(
            (int(t.col[k]), int(t.data[k]) * t.scale))
    for a in range(n):
        for b in range(n):
            acc: Dict[int, Fraction] = {}
            for p, sap in s_rows[a].items():
                for q, sbq in s_rows[b].items():
                    for r, c in by_pq.get((p, q), ()):
                        f = sap * sbq * c
                        for d in range(n):
                            w = s_inv[r][d]
                            if w:
                                acc[d] = acc.get(d, Fraction(0)) + f * w
            for d, v in acc.items():
                if v != 0:
                    trips.append((a * n + b, d, v))
    struct2 = SparseOp.from_triplets(n * n, n, trips)
    killing2 = killing_from_struct(struct2, n)
    return LieAlgebra(alg.name, alg.series, alg.rank, n, struct2, killing2,
                      symmetric_block_inverse(killing2), convention,
                      alg.root_data, alg.labels)
