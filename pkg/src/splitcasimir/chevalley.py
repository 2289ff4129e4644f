"""Chevalley basis for any simple type: integer structure constants with a
deterministic extraspecial-pair sign convention, and the adjoint
representation read off from them.

Basis layout: h_1..h_r (simple coroots), then e/f interleaved per positive
root in (height, lex) order.  N_{alpha,beta} signs are fixed by setting the
extraspecial pair of every non-simple positive root to +(p+1) and deriving
the rest from the Jacobi identity; mixed-sign constants follow from the
standard cyclic relation N_{x,y}/(z,z) = N_{y,z}/(x,x) for x+y+z = 0.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .algebras import (
    ConstructionError,
    LieAlgebra,
    Representation,
    algebra_from_struct,
    structure_constants_from_brackets,
)
from .rootdata import Coeffs, RootSystem, root_system, _neg


def _p_down(rs: RootSystem, alpha: Coeffs, beta: Coeffs) -> int:
    """Largest p >= 0 with beta - p*alpha a root."""
    p = 0
    cur = tuple(b - a for a, b in zip(alpha, beta))
    while rs.is_root(cur):
        p += 1
        cur = tuple(c - a for a, c in zip(alpha, cur))
    return p


class ChevalleyConstants:
    """N_{alpha,beta} for all root pairs of one root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self._n_pos: Dict[Tuple[Coeffs, Coeffs], int] = {}
        self._build_positive()

    def _build_positive(self) -> None:
        rs = self.rs
        order = rs.pos_index
        for gamma in rs.positive_roots:
            if sum(gamma) == 1:
                continue
            pairs = []
            for alpha in rs.positive_roots:
                if order[alpha] * 2 > 2 * order[gamma]:
                    break
                beta = tuple(g - a for a, g in zip(alpha, gamma))
                if rs.is_root(beta) and all(b >= 0 for b in beta) \
                        and order[alpha] <= order[beta]:
                    pairs.append((alpha, beta))
            pairs.sort(key=lambda p: order[p[0]])
            if not pairs:
                raise ConstructionError("positive root with no special pair")
            ex_a, ex_b = pairs[0]
            self._set(ex_a, ex_b, _p_down(rs, ex_a, ex_b) + 1)
            for delta, eps in pairs[1:]:
                val = self._special_pair_value(ex_a, ex_b, delta, eps, gamma)
                expected = _p_down(rs, delta, eps) + 1
                if abs(val) != expected:
                    raise ConstructionError(
                        f"sign propagation broke |N|=p+1 at {delta},{eps}")
                self._set(delta, eps, val)

    def _special_pair_value(self, a, b, delta, eps, gamma) -> int:
        # Jacobi on (-delta, -eps, alpha) with omega = beta; all referenced
        # constants have strictly smaller pair sums
        rs = self.rs
        sq = rs.root_length_sq
        total = Fraction(0)
        tau = tuple(e - x for x, e in zip(a, eps))
        if rs.is_root(tau):
            total += (Fraction(self.n_pos(tau, a)) * self.n_pos(tau, delta)
                      * sq(tau) / sq(eps))
        sig = tuple(d - x for x, d in zip(a, delta))
        if rs.is_root(sig):
            total -= (Fraction(self.n_pos(sig, a)) * self.n_pos(sig, eps)
                      * sq(sig) / sq(delta))
        val = total * sq(gamma) / (sq(b) * self.n_pos(a, b))
        if val.denominator != 1 or val == 0:
            raise ConstructionError("non-integer structure constant")
        return int(val)

    def _set(self, a: Coeffs, b: Coeffs, val: int) -> None:
        self._n_pos[(a, b)] = val
        if a != b:
            self._n_pos[(b, a)] = -val

    def n_pos(self, a: Coeffs, b: Coeffs) -> int:
        return self._n_pos[(a, b)]

    def n_mixed(self, a: Coeffs, b: Coeffs) -> Fraction:
        """N_{alpha, -beta} for distinct positive roots with alpha-beta a root."""
        rs = self.rs
        sq = rs.root_length_sq
        diff = tuple(x - y for x, y in zip(a, b))
        if all(x >= 0 for x in diff):  # alpha - beta positive
            sig = diff
            return -Fraction(self.n_pos(b, sig)) * sq(sig) / sq(a)
        sig = _neg(diff)
        return Fraction(self.n_pos(sig, a)) * sq(sig) / sq(b)


@lru_cache(maxsize=None)
def chevalley_constants(series: str, rank: int) -> ChevalleyConstants:
    return ChevalleyConstants(root_system(series, rank))


def basis_labels(rs: RootSystem) -> List[str]:
    labels = [f"h{i + 1}" for i in range(rs.rank)]
    for root in rs.positive_roots:
        tag = "".join(str(c) for c in root)
        labels.append(f"e[{tag}]")
        labels.append(f"f[{tag}]")
    return labels


def chevalley_bracket_fn(series: str, rank: int):
    """Returns (dim, coeff_fn) with coeff_fn(a, b) -> [(d, value), ...]."""
    cc = chevalley_constants(series, rank)
    rs = cc.rs
    r = rs.rank
    pos = rs.positive_roots
    dim = r + 2 * len(pos)

    def e_idx(k):
        return r + 2 * k

    def f_idx(k):
        return r + 2 * k + 1

    def root_vector_index(root: Coeffs):
        if all(x >= 0 for x in root):
            return e_idx(rs.pos_index[root])
        return f_idx(rs.pos_index[_neg(root)])

    def bracket(aidx: int, bidx: int):
        if aidx == bidx:
            return []
        if aidx > bidx:
            return [(d, -v) for d, v in bracket(bidx, aidx)]
        if bidx < r:  # [h_i, h_j]
            return []
        kb, eb = divmod(bidx - r, 2)
        if aidx < r:  # [h_i, e_or_f]
            pair = rs.pairing(pos[kb], aidx)
            if pair == 0:
                return []
            return [(bidx, pair if eb == 0 else -pair)]
        ka, ea = divmod(aidx - r, 2)
        ra = pos[ka] if ea == 0 else _neg(pos[ka])
        rb = pos[kb] if eb == 0 else _neg(pos[kb])
        if ka == kb and ea != eb:  # [e_alpha, f_alpha] = h_alpha
            co = rs.coroot_coeffs(pos[ka])
            out = [(i, c) for i, c in enumerate(co) if c]
            return out if ea == 0 else [(i, -c) for i, c in out]
        s = tuple(x + y for x, y in zip(ra, rb))
        if not rs.is_root(s):
            return []
        if ea == 0 and eb == 0:
            val = cc.n_pos(pos[ka], pos[kb])
        elif ea == 1 and eb == 1:
            val = -cc.n_pos(pos[ka], pos[kb])
        elif ea == 0:
            val = cc.n_mixed(pos[ka], pos[kb])
        else:
            # [f_a, e_b] = -[e_b, f_a]
            val = -cc.n_mixed(pos[kb], pos[ka])
        return [(root_vector_index(s), val)]

    return dim, bracket


_SERIES_NAME = {"A": "sl", "B": "so", "C": "sp", "D": "so"}


def algebra_name(series: str, rank: int) -> str:
    if series in ("E", "F", "G"):
        return f"{series.lower()}{rank}"
    n = {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[series]
    return f"{_SERIES_NAME[series]}({n})"


@lru_cache(maxsize=None)
def build_chevalley_adjoint(series: str, rank: int
                            ) -> Tuple[LieAlgebra, Representation]:
    """Simple Lie algebra in the Chevalley basis plus its adjoint rep."""
    rs = root_system(series, rank)
    dim, bracket = chevalley_bracket_fn(series, rank)
    struct = structure_constants_from_brackets(dim, bracket)
    alg = algebra_from_struct(algebra_name(series, rank), series, rank, dim,
                              struct, convention="chevalley", root_data=rs,
                              labels=basis_labels(rs))
    return alg, alg.adjoint_rep()
