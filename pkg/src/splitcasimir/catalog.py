"""Algebra catalog: name parsing and cached access to every construction.

Accepted names: sl(N) N>=2, so(N) N>=3, sp(N) even N>=2, g2, f4, e6, e7, e8
(also series-rank forms like A3, B2, E8).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

from .algebras import LieAlgebra, Representation
from .casimir import (
    SplitCasimir,
    TensorAdjoint,
    adjoint_split_casimir,
    invariant_set,
    sl_adjoint_tensor,
    sosp_adjoint_tensor,
    split_casimir,
)
from .chevalley import build_chevalley_adjoint
from .classical import build_classical, build_so_sp
from .kernel import SparseOp


class UnknownAlgebraError(Exception):
    pass


@dataclass(frozen=True)
class AlgebraName:
    family: str  # sl | so | sp | g2 | f4 | e6 | e7 | e8
    n: int = 0   # matrix size for classical families

    def __str__(self) -> str:
        return self.family if not self.n else f"{self.family}({self.n})"

    @property
    def is_exceptional(self) -> bool:
        return self.family in ("g2", "f4", "e6", "e7", "e8")

    @property
    def series_rank(self) -> Tuple[str, int]:
        if self.family == "sl":
            return "A", self.n - 1
        if self.family == "sp":
            return "C", self.n // 2
        if self.family == "so":
            return ("B", (self.n - 1) // 2) if self.n % 2 else ("D", self.n // 2)
        return self.family[0].upper(), int(self.family[1])


_NAME_RE = re.compile(r"^(sl|so|sp)\s*\(?\s*(\d+)\s*\)?$")
_SERIES_RE = re.compile(r"^([A-Ga-g])\s*_?\s*(\d+)$")
_CLASSICAL_N = {"A": lambda r: r + 1, "B": lambda r: 2 * r + 1,
                "C": lambda r: 2 * r, "D": lambda r: 2 * r}
_CLASSICAL_FAMILY = {"A": "sl", "B": "so", "C": "sp", "D": "so"}


def parse_name(text: str) -> AlgebraName:
    s = text.strip().lower()
    if s in ("g2", "f4", "e6", "e7", "e8"):
        return AlgebraName(s)
    m = _NAME_RE.match(s)
    if m:
        fam, n = m.group(1), int(m.group(2))
        if fam == "sl" and n < 2:
            raise UnknownAlgebraError("sl needs N >= 2")
        if fam == "so" and n < 3:
            raise UnknownAlgebraError("so needs N >= 3")
        if fam == "sp" and (n < 2 or n % 2):
            raise UnknownAlgebraError("sp needs even N >= 2")
        return AlgebraName(fam, n)
    m = _SERIES_RE.match(text.strip())
    if m:
        series = m.group(1).upper()
        rank = int(m.group(2))
        if series in _CLASSICAL_N:
            return AlgebraName(_CLASSICAL_FAMILY[series],
                               _CLASSICAL_N[series](rank))
        return parse_name(f"{series.lower()}{rank}")
    raise UnknownAlgebraError(f"cannot parse algebra name {text!r}")


@lru_cache(maxsize=None)
def defining(name: str) -> Tuple[LieAlgebra, Representation]:
    """The minimal fundamental (defining) representation."""
    an = parse_name(name)
    if an.family == "sl":
        return build_classical("A", an.n - 1)
    if an.family in ("so", "sp"):
        return build_so_sp(an.n, +1 if an.family == "so" else -1)
    if an.family == "g2":
        from .exceptional import build_g2_defining
        return build_g2_defining()
    if an.family == "f4":
        from .exceptional import build_f4_defining
        return build_f4_defining()
    if an.family == "e6":
        from .exceptional import build_e6_defining
        return build_e6_defining()
    if an.family == "e7":
        from .exceptional import build_e7_defining
        return build_e7_defining()
    # e8: the minimal fundamental representation is the adjoint
    alg, rep = build_chevalley_adjoint("E", 8)
    return alg, rep


@lru_cache(maxsize=None)
def chevalley(name: str) -> Tuple[LieAlgebra, Representation]:
    an = parse_name(name)
    return build_chevalley_adjoint(*an.series_rank)


@dataclass
class AdjointContext:
    """Everything needed to verify adjoint-representation statements."""

    name: str
    algebra: LieAlgebra
    sc: SplitCasimir
    big_k: SparseOp
    ops: Dict[str, SparseOp]
    realization: str  # struct | tensor4
    eps: Optional[int] = None

    @property
    def dim_g(self) -> int:
        return self.algebra.dim

    @property
    def space_dim(self) -> int:
        return self.sc.operator.rows


@lru_cache(maxsize=None)
def adjoint_context(name: str) -> AdjointContext:
    """sl/so/sp use the V^(x4) realization (paper formulas verbatim);
    exceptional algebras are assembled from Chevalley structure constants."""
    an = parse_name(name)
    if an.family == "sl":
        ta = sl_adjoint_tensor(an.n)
        return AdjointContext(str(an), ta.casimir.algebra, ta.casimir,
                              ta.ops["K"], ta.ops, "tensor4")
    if an.family in ("so", "sp"):
        eps = +1 if an.family == "so" else -1
        ta = sosp_adjoint_tensor(an.n, eps)
        return AdjointContext(str(an), ta.casimir.algebra, ta.casimir,
                              ta.ops["K"], ta.ops, "tensor4", eps=eps)
    alg, rep = chevalley(str(an))
    sc = adjoint_split_casimir(alg)
    inv = invariant_set(rep)
    ops = {"I": sc.unit, "P": sc.swap, "K": inv["K"]}
    return AdjointContext(str(an), alg, sc, inv["K"], ops, "struct")
