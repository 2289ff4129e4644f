"""Characteristic identities: the paper's root tables, exact/randomized
verification, independent minimal-polynomial discovery, and the universal
identities for the symmetric Casimir part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .catalog import AdjointContext, AlgebraName, adjoint_context, parse_name
from .kernel import (
    EXACT,
    SparseOp,
    Vec,
    apply_poly_factors,
)

EXACT_FULL_MAX_DIM = 78 * 78  # full-basis verification up to the e6 adjoint
RANDOM_TRIALS = 32


@dataclass
class CharIdentity:
    """Minimal-polynomial statement: distinct roots, with merged
    multiplicities recorded when a degeneration collapses factors."""

    roots: List[Fraction]
    restriction: Optional[str] = None  # e.g. "symmetric", "antisymmetric"
    source: str = "paper"
    merged: Dict[Fraction, int] = field(default_factory=dict)

    def __post_init__(self):
        self.roots = [Fraction(r) for r in self.roots]
        if len(set(self.roots)) != len(self.roots):
            raise ValueError("CharIdentity roots must be pairwise distinct")


@dataclass
class VerificationReport:
    target: str
    status: str  # PASS | FAIL | NOT_APPLICABLE
    method: str
    trials: int = 0
    witness: Optional[list] = None
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_dict(self) -> dict:
        out = {"target": self.target, "status": self.status,
               "method": self.method, "trials": self.trials}
        if self.witness is not None:
            out["witness"] = [str(x) for x in self.witness]
        if self.detail:
            out["detail"] = self.detail
        return out


# ---------------------------------------------------------------------------
# the paper's identity tables
# ---------------------------------------------------------------------------

def defining_identity(name: str) -> CharIdentity:
    an = parse_name(name)
    if an.family == "sl":
        n = an.n
        return CharIdentity([Fraction(-(1 + n), 2 * n * n),
                             Fraction(n - 1, 2 * n * n)])
    if an.family in ("so", "sp"):
        n = an.n
        eps = 1 if an.family == "so" else -1
        d2 = Fraction(1, n - 2 * eps)
        return CharIdentity([d2 / 2, -d2 / 2, -d2 * (n - eps) / 2])
    table = {
        "g2": [0, Fraction(1, 3), -1, -2],
        "f4": [0, -1, -2, Fraction(-1, 2), Fraction(1, 6)],
        "e6": [Fraction(-13, 9), Fraction(-1, 9), Fraction(2, 9)],
        "e7": [Fraction(1, 8), Fraction(-7, 8), Fraction(-19, 8),
               Fraction(-1, 24)],
    }
    if an.family in table:
        return CharIdentity(table[an.family])
    if an.family == "e8":
        return adjoint_identity("e8")
    raise ValueError(f"no defining identity for {name}")


def antisymmetric_identity() -> CharIdentity:
    """C-(C- + 1/2) = 0 for every simple Lie algebra."""
    return CharIdentity([0, Fraction(-1, 2)], restriction="antisymmetric")


_EXCEPTIONAL_ADJ = {
    # alpha/2t, beta/2t from the universal table; roots are the negatives
    "g2": (Fraction(-1, 4), Fraction(5, 12)),
    "f4": (Fraction(-1, 9), Fraction(5, 18)),
    "e6": (Fraction(-1, 12), Fraction(1, 4)),
    "e7": (Fraction(-1, 18), Fraction(2, 9)),
    "e8": (Fraction(-1, 30), Fraction(1, 5)),
}


def adjoint_identity(name: str) -> CharIdentity:
    an = parse_name(name)
    base = [Fraction(0), Fraction(-1, 2), Fraction(-1)]
    if an.family == "sl":
        n = an.n
        if n == 3:
            return CharIdentity(base + [Fraction(1, 3)],
                                merged={Fraction(-1, 2): 2})
        if n == 2:
            return CharIdentity([Fraction(-1, 2), Fraction(-1),
                                 Fraction(1, 2)])
        return CharIdentity(base + [Fraction(1, n), Fraction(-1, n)])
    if an.family in ("so", "sp"):
        m = an.n if an.family == "so" else -an.n
        extra = [Fraction(1, m - 2), Fraction(-2, m - 2),
                 Fraction(-(m - 4), 2 * (m - 2))]
        roots, merged = [], {}
        for r in base + extra:
            if r in roots:
                merged[r] = merged.get(r, 1) + 1
            else:
                roots.append(r)
        return CharIdentity(roots, merged=merged)
    a2t, b2t = _EXCEPTIONAL_ADJ[an.family]
    return CharIdentity(base + [-a2t, -b2t])


def symmetric_part_identity(name: str) -> CharIdentity:
    """Roots of the quartic satisfied by C+ (universal form)."""
    an = parse_name(name)
    if an.family in _EXCEPTIONAL_ADJ or str(an) in ("sl(3)", "so(8)"):
        if str(an) == "sl(3)":
            a2t, b2t = Fraction(-1, 3), Fraction(1, 2)
        elif str(an) == "so(8)":
            a2t, b2t = Fraction(-1, 6), Fraction(1, 3)
        else:
            a2t, b2t = _EXCEPTIONAL_ADJ[an.family]
        return CharIdentity([Fraction(0), Fraction(-1), -a2t, -b2t],
                            restriction="symmetric")
    raise ValueError(f"{name} is not on the exceptional line")


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _subspace_random(unit: Optional[SparseOp], dim: int,
                     rng: np.random.Generator) -> Vec:
    v = Vec.random_exact(dim, rng)
    return unit.matvec(v) if unit is not None else v


def verify_identity(op: SparseOp, ident: CharIdentity, method: str = "auto",
                    unit: Optional[SparseOp] = None, target: str = "",
                    trials: int = RANDOM_TRIALS, seed: int = 0
                    ) -> VerificationReport:
    """Check prod_i (op - r_i * unit) v = 0 on basis vectors (exact_full)
    or random subspace vectors (randomized_exact)."""
    dim = op.rows
    if method == "auto":
        method = "exact_full" if dim <= EXACT_FULL_MAX_DIM else "randomized_exact"
    roots = ident.roots
    rng = np.random.default_rng(seed)
    if method == "exact_full":
        for j in range(dim):
            e = Vec.zeros(dim)
            e.data[j] = 1
            v = unit.matvec(e) if unit is not None else e
            if v.is_zero():
                continue
            if not apply_poly_factors(op, roots, v, unit=unit).is_zero():
                return VerificationReport(target, "FAIL", method, j + 1,
                                          witness=[j])
        return VerificationReport(target, "PASS", method, dim)
    for t in range(trials):
        v = _subspace_random(unit, dim, rng)
        if not apply_poly_factors(op, roots, v, unit=unit).is_zero():
            return VerificationReport(target, "FAIL", method, t + 1,
                                      witness=v.fractions())
    return VerificationReport(target, "PASS", method, trials)


def verify_defining_identity(name: str, method: str = "auto",
                             seed: int = 0) -> VerificationReport:
    from .catalog import defining
    from .casimir import split_casimir
    alg, rep = defining(name)
    if parse_name(name).family == "e8":
        ctx = adjoint_context("e8")
        return verify_identity(ctx.sc.operator, adjoint_identity("e8"),
                               method, unit=ctx.sc.unit,
                               target="e8 defining(=adjoint) identity",
                               seed=seed)
    sc = split_casimir(rep, rep)
    return verify_identity(sc.operator, defining_identity(name), method,
                           target=f"{name} defining identity", seed=seed)


def verify_adjoint_identity(name: str, method: str = "auto",
                            seed: int = 0) -> VerificationReport:
    ctx = adjoint_context(name)
    return verify_identity(ctx.sc.operator, adjoint_identity(name), method,
                           unit=ctx.sc.unit,
                           target=f"{name} adjoint identity", seed=seed)


def verify_antisymmetric_identity(name: str, method: str = "auto",
                                  seed: int = 0) -> VerificationReport:
    ctx = adjoint_context(name)
    _, cm = ctx.sc.parts()
    return verify_identity(cm, antisymmetric_identity(), method,
                           unit=ctx.sc.unit,
                           target=f"{name} C- universal identity", seed=seed)


# ---------------------------------------------------------------------------
# minimal polynomial discovery (independent cross-check)
# ---------------------------------------------------------------------------

def minimal_polynomial(op: SparseOp, degree_bound: int,
                       unit: Optional[SparseOp] = None, starts: int = 3,
                       seed: int = 0, confirm: bool = True) -> dict:
    """Least monic polynomial annihilating op (restricted to the image of
    ``unit``), by exact Krylov linear dependence from several random starts,
    then a confirmation check at the discovered degree.

    Returns {"coeffs": [c_0..c_k] (monic, c_k = 1), "roots": [...] or None,
    "confirmed": bool}.
    """
    rng = np.random.default_rng(seed)
    dim = op.rows
    poly: Optional[List[Fraction]] = None
    for _ in range(starts):
        v = _subspace_random(unit, dim, rng)
        if v.is_zero():
            continue
        p = _krylov_min_poly(op, v, degree_bound, unit)
        if p is None:
            return {"coeffs": None, "roots": None, "confirmed": False,
                    "detail": f"degree bound {degree_bound} exceeded"}
        poly = p if poly is None else _poly_lcm(poly, p)
        if len(poly) - 1 > degree_bound:
            return {"coeffs": poly, "roots": None, "confirmed": False,
                    "detail": f"degree bound {degree_bound} exceeded"}
    roots = _rational_roots(poly)
    confirmed = True
    if confirm:
        if roots is not None and len(roots) == len(poly) - 1:
            rep = verify_identity(op, CharIdentity(sorted(set(roots))),
                                  unit=unit, target="minpoly confirm")
            confirmed = rep.passed and len(set(roots)) == len(roots)
        else:
            confirmed = False
    return {"coeffs": poly, "roots": roots, "confirmed": confirmed}


def _krylov_min_poly(op: SparseOp, v: Vec, degree_bound: int,
                     unit: Optional[SparseOp]) -> Optional[List[Fraction]]:
    # reduced Krylov vectors with bookkeeping of their monomial expansions
    pivots: List[Tuple[int, Vec, List[Fraction]]] = []
    cur = v
    power = 0
    while power <= degree_bound:
        expr = [Fraction(0)] * (power + 1)
        expr[power] = Fraction(1)
        red, expr = _reduce_against(cur, expr, pivots)
        if red.is_zero():
            lead = expr[-1]
            return [c / lead for c in expr]
        piv = _first_nonzero(red)
        pivots.append((piv, red, expr))
        cur = op.matvec(cur)
        power += 1
    return None


def _reduce_against(vec: Vec, expr: List[Fraction], pivots) -> Tuple[Vec, List[Fraction]]:
    expr = list(expr)
    for piv, pvec, pexpr in pivots:
        num = _coord(vec, piv)
        if num == 0:
            continue
        den = _coord(pvec, piv)
        c = num / den
        vec = vec - pvec.scaled(c)
        for k, val in enumerate(pexpr):
            if val:
                if k >= len(expr):
                    expr.extend([Fraction(0)] * (k + 1 - len(expr)))
                expr[k] -= c * val
    return vec, expr


def _coord(v: Vec, i: int) -> Fraction:
    return int(v.data[i]) * v.scale


def _first_nonzero(v: Vec) -> int:
    if v.data.dtype == object:
        for i, x in enumerate(v.data):
            if int(x) != 0:
                return i
        raise ValueError("zero vector")
    nz = np.flatnonzero(v.data)
    return int(nz[0])


def _poly_lcm(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    g = _poly_gcd(a, b)
    q, r = _poly_divmod(a, g)
    assert all(x == 0 for x in r)
    return _poly_mul(q, b)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = list(a)
    out = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        out[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a.pop()
    return out, a


def _poly_gcd(a, b):
    a, b = list(a), list(b)
    while any(x != 0 for x in b):
        _, r = _poly_divmod(a, b)
        while r and r[-1] == 0:
            r.pop()
        a, b = b, r if r else [Fraction(0)]
        if not any(x != 0 for x in b):
            break
    lead = a[-1]
    return [x / lead for x in a]


def _rational_roots(poly: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """All roots with multiplicity if the polynomial splits over Q."""
    work = [Fraction(x) for x in poly]
    den = math.lcm(*(c.denominator for c in work))
    ints = [int(c * den) for c in work]
    roots: List[Fraction] = []
    while len(ints) > 1:
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        ints = [c // g for c in ints]
        if ints[0] == 0:
            roots.append(Fraction(0))
            ints = ints[1:]
            continue
        cands = set()
        for p in _divisors(abs(ints[0])):
            for q in _divisors(abs(ints[-1])):
                cands.add(Fraction(p, q))
                cands.add(Fraction(-p, q))
        found = None
        for r in sorted(cands):
            if sum(c * r ** k for k, c in enumerate(ints)) == 0:
                found = r
                break
        if found is None:
            return None
        # synthetic division by (x - r): coefficients ascending
        out = [Fraction(c) for c in ints[1:]]
        for k in range(len(out) - 2, -1, -1):
            out[k] += found * out[k + 1]
        roots.append(found)
        den2 = math.lcm(*(c.denominator for c in out)) if out else 1
        ints = [int(c * den2) for c in out]
    return roots


def _divisors(n: int) -> List[int]:
    out = []
    for d in range(1, int(math.isqrt(n)) + 1):
        if n % d == 0:
            out.append(d)
            out.append(n // d)
    return sorted(set(out))


# ---------------------------------------------------------------------------
# universal identities
# ---------------------------------------------------------------------------

def universal_mu(dim_g: int) -> Fraction:
    return Fraction(5, 6 * (2 + dim_g))


def mu_prime(dim_g: int) -> Optional[Fraction]:
    """sqrt((dim+242)/(dim+2)) when rational, else None."""
    val = Fraction(dim_g + 242, dim_g + 2)
    num, den = val.numerator, val.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def exceptional_alpha_beta(dim_g: int) -> Tuple[Fraction, Fraction]:
    """(alpha/2t, beta/2t) = ((1 -+ mu')/12) on the exceptional line."""
    mp = mu_prime(dim_g)
    if mp is None:
        raise ValueError(f"mu' irrational at dim {dim_g}")
    return (1 - mp) / 12, (1 + mp) / 12


def verify_universal_sym_identity(name: str, method: str = "auto",
                                  trials: int = RANDOM_TRIALS,
                                  seed: int = 0) -> VerificationReport:
    """C+^2 = -(1/6) C+ + mu (I + P + K) with mu = 5/(6(2+dim g)), then the
    quartic with roots {0, -1, -alpha/2t, -beta/2t}; exceptional-line only."""
    an = parse_name(name)
    if str(an) not in ("sl(3)", "so(8)") and not an.is_exceptional:
        return VerificationReport(f"{name} universal symmetric identity",
                                  "NOT_APPLICABLE", "none")
    ctx = adjoint_context(name)
    cp, _ = ctx.sc.parts()
    mu = universal_mu(ctx.dim_g)
    rhs = cp.scaled(Fraction(-1, 6)) \
        + (ctx.ops["I"] + ctx.ops["P"] + ctx.big_k).scaled(mu)
    dim = cp.rows
    if method == "auto":
        method = "exact_full" if dim <= EXACT_FULL_MAX_DIM else "randomized_exact"
    if method == "exact_full":
        ok = (cp @ cp) == rhs
        rep = VerificationReport(f"{name} C+^2 universal identity",
                                 "PASS" if ok else "FAIL", method)
    else:
        rng = np.random.default_rng(seed)
        rep = None
        for t in range(trials):
            v = _subspace_random(ctx.sc.unit, dim, rng)
            if not (cp.matvec(cp.matvec(v)) - rhs.matvec(v)).is_zero():
                rep = VerificationReport(f"{name} C+^2 universal identity",
                                         "FAIL", method, t + 1,
                                         witness=v.fractions())
                break
        rep = rep or VerificationReport(f"{name} C+^2 universal identity",
                                        "PASS", method, trials)
    if not rep.passed:
        return rep
    quartic = symmetric_part_identity(name)
    rep2 = verify_identity(cp, quartic, method, unit=ctx.sc.unit,
                           target=f"{name} C+ quartic", seed=seed,
                           trials=trials)
    if not rep2.passed:
        return rep2
    return VerificationReport(f"{name} universal symmetric identity",
                              "PASS", method, detail=f"mu = {mu}")


def verify_classical_generic_identity(name: str, method: str = "auto",
                                      trials: int = RANDOM_TRIALS,
                                      seed: int = 0) -> VerificationReport:
    """C+^3 + (1/2) C+^2 = mu1 C+ + mu2 (I + P - 2K) with mu1, mu2 from the
    Vogel parameters, plus the dimension relation dim g = (2mu2-mu1+1/2)/(2mu2).
    """
    from .vogel import vogel_point
    pt = vogel_point(name)
    mu1 = -(pt.alpha * pt.beta + pt.alpha * pt.gamma + pt.beta * pt.gamma) \
        / (4 * pt.t ** 2)
    mu2 = -(pt.alpha * pt.beta * pt.gamma) / (16 * pt.t ** 3)
    ctx = adjoint_context(name)
    dim_formula = (2 * mu2 - mu1 + Fraction(1, 2)) / (2 * mu2)
    if dim_formula != ctx.dim_g:
        return VerificationReport(f"{name} generic classical identity",
                                  "FAIL", "formula",
                                  detail=f"dim formula gave {dim_formula}")
    cp, _ = ctx.sc.parts()
    rhs = cp.scaled(mu1) + (ctx.ops["I"] + ctx.ops["P"]
                            - ctx.big_k.scaled(2)).scaled(mu2)
    dim = cp.rows
    if method == "auto":
        method = "exact_full" if dim <= EXACT_FULL_MAX_DIM else "randomized_exact"
    if method == "exact_full":
        lhs = (cp @ cp @ cp) + (cp @ cp).scaled(Fraction(1, 2))
        ok = lhs == rhs
        return VerificationReport(f"{name} generic classical identity",
                                  "PASS" if ok else "FAIL", method)
    rng = np.random.default_rng(seed)
    for t in range(trials):
        v = _subspace_random(ctx.sc.unit, dim, rng)
        c1 = cp.matvec(v)
        c2 = cp.matvec(c1)
        c3 = cp.matvec(c2)
        if not (c3 + c2.scaled(Fraction(1, 2)) - rhs.matvec(v)).is_zero():
            return VerificationReport(f"{name} generic classical identity",
                                      "FAIL", method, t + 1,
                                      witness=v.fractions())
    return VerificationReport(f"{name} generic classical identity", "PASS",
                              method, trials)
