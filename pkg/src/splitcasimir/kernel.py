"""Scalar field abstraction and the sparse linear-operator kernel.

Scalars come in two flavours: exact (``fractions.Fraction``; arithmetic is
closed and lossless) and approximate (``float`` compared through an explicit
:class:`Tolerance` carried by the caller, never an implicit global).

A :class:`SparseOp` stores sorted, deduplicated coordinate triplets whose
values are an integer array times one common rational ``scale``.  All hot
arithmetic therefore runs on ``int64``/``float64`` numpy arrays (see
``_kernels``); when an operation could overflow 64-bit integers the data is
lifted to arbitrary-precision Python ints in an object array and the same
algorithms run in pure numpy.  Exact results never depend on which path ran.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from . import _kernels

EXACT = "exact"
APPROX = "approx"

# products and row-sums are kept strictly below this before falling back to
# arbitrary precision
_INT64_SAFE = 2 ** 62

ScalarLike = Union[int, Fraction, float]


class KernelError(Exception):
    pass


class DimensionMismatchError(KernelError):
    pass


class DimensionLimitError(KernelError):
    pass


@dataclass(frozen=True)
class Tolerance:
    """Explicit comparison tolerance for approximate scalars."""

    rel: float = 1e-9
    abs: float = 1e-12

    def is_zero(self, value: float, reference: float = 1.0) -> bool:
        return abs(value) <= max(self.abs, self.rel * abs(reference))


DEFAULT_TOL = Tolerance()


def fraction_gcd(a: Fraction, b: Fraction) -> Fraction:
    """gcd on Q: largest rational dividing both with integer quotients."""
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    return Fraction(math.gcd(a.numerator, b.numerator),
                    math.lcm(a.denominator, b.denominator))


def _to_object(arr: np.ndarray) -> np.ndarray:
    out = np.empty(len(arr), dtype=object)
    out[:] = [int(x) for x in arr]
    return out


def _max_abs(data: np.ndarray) -> int:
    if len(data) == 0:
        return 0
    if data.dtype == object:
        return max(abs(int(x)) for x in data)
    return int(np.abs(data).max())


def _gcd_reduce(data: np.ndarray) -> int:
    if len(data) == 0:
        return 1
    if data.dtype == object:
        g = 0
        for x in data:
            g = math.gcd(g, int(x))
            if g == 1:
                return 1
        return g or 1
    g = int(np.gcd.reduce(np.abs(data)))
    return g or 1


def _shrink_if_safe(data: np.ndarray) -> np.ndarray:
    """Drop an object array back to int64 once values fit again."""
    if data.dtype == object and (len(data) == 0 or _max_abs(data) < _INT64_SAFE):
        return data.astype(np.int64)
    return data


class Vec:
    """Dense vector over the exact or approximate field: int data * scale."""

    __slots__ = ("data", "scale", "field")

    def __init__(self, data: np.ndarray, scale=Fraction(1), field: str = EXACT,
                 _canonical: bool = False):
        self.data = data
        self.field = field
        if field == APPROX:
            if scale != 1.0:
                self.data = data * float(scale)
            self.scale = 1.0
        else:
            self.scale = scale
            if not _canonical:
                self._canonicalize()

    def _canonicalize(self) -> None:
        data = _shrink_if_safe(self.data)
        g = _gcd_reduce(data)
        if g > 1:
            data = data // g
            self.scale = self.scale * g
        if len(data) and self.scale < 0:
            data = -data
            self.scale = -self.scale
        if _max_abs(data) == 0:
            self.scale = Fraction(1)
        self.data = data

    @staticmethod
    def from_fractions(values: Sequence[ScalarLike]) -> "Vec":
        fracs = [Fraction(v) for v in values]
        den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        ints = [int(f * den) for f in fracs]
        arr = np.array(ints, dtype=object)
        return Vec(_shrink_if_safe(arr), Fraction(1, den))

    @staticmethod
    def zeros(n: int, field: str = EXACT) -> "Vec":
        if field == APPROX:
            return Vec(np.zeros(n), 1.0, APPROX)
        return Vec(np.zeros(n, dtype=np.int64), Fraction(1), EXACT)

    @staticmethod
    def random_exact(n: int, rng: np.random.Generator) -> "Vec":
        # numerators uniform in [-9, 9], denominator 1: keeps exact growth
        # bounded while still detecting any fixed nonzero polynomial
        return Vec(rng.integers(-9, 10, size=n).astype(np.int64))

    def __len__(self) -> int:
        return len(self.data)

    def fractions(self) -> list:
        if self.field == APPROX:
            return [float(x) for x in self.data]
        s = self.scale
        return [int(x) * s for x in self.data]

    def to_approx(self) -> "Vec":
        if self.field == APPROX:
            return self
        return Vec(self.data.astype(np.float64) * float(self.scale), 1.0, APPROX)

    def max_abs_value(self) -> float:
        if self.field == APPROX:
            return float(np.abs(self.data).max()) if len(self.data) else 0.0
        return float(Fraction(_max_abs(self.data)) * abs(self.scale))

    def is_zero(self, tol: Optional[Tolerance] = None) -> bool:
        if self.field == APPROX:
            tol = tol or DEFAULT_TOL
            return all(tol.is_zero(float(x)) for x in self.data)
        return _max_abs(self.data) == 0

    def scaled(self, c: ScalarLike) -> "Vec":
        if self.field == APPROX:
            return Vec(self.data * float(c), 1.0, APPROX)
        c = Fraction(c)
        if c == 0:
            return Vec.zeros(len(self.data))
        return Vec(self.data, self.scale * c, EXACT, _canonical=True)

    def _aligned(self, other: "Vec"):
        s = fraction_gcd(self.scale, other.scale)
        ma = int(self.scale / s)
        mb = int(other.scale / s)
        a, b = self.data, other.data
        if a.dtype != object and _max_abs(a) * abs(ma) >= _INT64_SAFE:
            a = _to_object(a)
        if b.dtype != object and _max_abs(b) * abs(mb) >= _INT64_SAFE:
            b = _to_object(b)
        if (a.dtype == object) != (b.dtype == object):
            a = a if a.dtype == object else _to_object(a)
            b = b if b.dtype == object else _to_object(b)
        return a, ma, b, mb, s

    def __add__(self, other: "Vec") -> "Vec":
        if len(self) != len(other):
            raise DimensionMismatchError("vector length mismatch")
        if self.field == APPROX or other.field == APPROX:
            return Vec(self.to_approx().data + other.to_approx().data, 1.0, APPROX)
        a, ma, b, mb, s = self._aligned(other)
        if a.dtype != object:
            bound = _max_abs(a) * abs(ma) + _max_abs(b) * abs(mb)
            if bound >= _INT64_SAFE:
                a, b = _to_object(a), _to_object(b)
        return Vec(a * ma + b * mb, s)

    def __sub__(self, other: "Vec") -> "Vec":
        return self + other.scaled(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vec):
            return NotImplemented
        if self.field != other.field or len(self) != len(other):
            return False
        if self.field == APPROX:
            return bool(np.array_equal(self.data, other.data))
        return self.scale == other.scale and bool(np.array_equal(self.data, other.data))

    __hash__ = None


class SparseOp:
    """Sparse matrix over the exact or approximate field.

    Invariants: triplets sorted by (row, col), no stored zeros, integer data
    with gcd 1 and positive ``scale`` (exact field).  ``kron_factors``, when
    set, records the factors whose Kronecker product equals this operator.
    """

    __slots__ = ("rows", "cols", "row", "col", "data", "scale", "field",
                 "kron_factors", "_indptr", "_max_abs", "_row_nnz_max")

    def __init__(self, rows: int, cols: int, row: np.ndarray, col: np.ndarray,
                 data: np.ndarray, scale=Fraction(1), field: str = EXACT,
                 kron_factors=None, _canonical: bool = False):
        self.rows = rows
        self.cols = cols
        self.row = row
        self.col = col
        self.data = data
        self.scale = scale
        self.field = field
        self.kron_factors = kron_factors
        self._indptr = None
        self._max_abs = None
        self._row_nnz_max = None
        if not _canonical:
            self._normalize()

    # -- construction -----------------------------------------------------

    def _normalize(self) -> None:
        row = np.asarray(self.row, dtype=np.int64)
        col = np.asarray(self.col, dtype=np.int64)
        data = self.data
        if len(data) and not (np.all(np.diff(row * self.cols + col) > 0)):
            order = np.lexsort((col, row))
            row, col, data = row[order], col[order], data[order]
            key = row * self.cols + col
            boundary = np.empty(len(key), dtype=bool)
            boundary[0] = True
            np.not_equal(key[1:], key[:-1], out=boundary[1:])
            if not boundary.all():
                idx = np.flatnonzero(boundary)
                if data.dtype == object:
                    data = np.add.reduceat(data, idx)
                else:
                    segment = np.diff(np.append(idx, len(key)))
                    if int(segment.max()) * max(1, _max_abs(data)) >= _INT64_SAFE:
                        data = np.add.reduceat(_to_object(data), idx)
                    else:
                        data = np.add.reduceat(data, idx)
                row, col = row[idx], col[idx]
        if self.field == APPROX:
            data = np.asarray(data, dtype=np.float64)
            if self.scale != 1.0:
                data = data * float(self.scale)
                self.scale = 1.0
            keep = data != 0.0
        else:
            data = _shrink_if_safe(np.asarray(data))
            if data.dtype != object:
                data = data.astype(np.int64)
            if data.dtype == object:
                keep = np.array([int(x) != 0 for x in data], dtype=bool)
            else:
                keep = data != 0
        if not keep.all():
            row, col, data = row[keep], col[keep], data[keep]
        if self.field == EXACT:
            g = _gcd_reduce(data)
            if g > 1:
                data = data // g
                self.scale = self.scale * g
            if self.scale < 0:
                data = -data
                self.scale = -self.scale
            if len(data) == 0:
                self.scale = Fraction(1)
        self.row, self.col, self.data = row, col, data

    @staticmethod
    def from_triplets(rows: int, cols: int,
                      triplets: Iterable[tuple], field: str = EXACT) -> "SparseOp":
        rr, cc, vv = [], [], []
        for r, c, v in triplets:
            rr.append(r)
            cc.append(c)
            vv.append(v)
        if field == APPROX:
            return SparseOp(rows, cols, np.array(rr, dtype=np.int64),
                            np.array(cc, dtype=np.int64),
                            np.array(vv, dtype=np.float64), 1.0, APPROX)
        fracs = [Fraction(v) for v in vv]
        den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        arr = np.empty(len(fracs), dtype=object)
        arr[:] = [int(f * den) for f in fracs]
        return SparseOp(rows, cols, np.array(rr, dtype=np.int64),
                        np.array(cc, dtype=np.int64), arr, Fraction(1, den))

    @staticmethod
    def from_dense(matrix, field: str = EXACT) -> "SparseOp":
        matrix = np.asarray(matrix, dtype=object)
        rows, cols = matrix.shape
        trip = [(i, j, matrix[i, j]) for i in range(rows) for j in range(cols)
                if matrix[i, j] != 0]
        return SparseOp.from_triplets(rows, cols, trip, field)

    @staticmethod
    def identity(n: int, field: str = EXACT, scale=Fraction(1)) -> "SparseOp":
        idx = np.arange(n, dtype=np.int64)
        if field == APPROX:
            return SparseOp(n, n, idx, idx, np.full(n, float(scale)), 1.0, APPROX)
        return SparseOp(n, n, idx, idx, np.ones(n, dtype=np.int64), Fraction(scale),
                        field, _canonical=(scale == 1))

    @staticmethod
    def zero(rows: int, cols: int, field: str = EXACT) -> "SparseOp":
        e = np.zeros(0, dtype=np.int64)
        d = np.zeros(0) if field == APPROX else e
        return SparseOp(rows, cols, e, e, d,
                        1.0 if field == APPROX else Fraction(1), field,
                        _canonical=True)

    # -- cached structure --------------------------------------------------

    @property
    def nnz(self) -> int:
        return len(self.data)

    @property
    def indptr(self) -> np.ndarray:
        if self._indptr is None:
            self._indptr = np.searchsorted(self.row, np.arange(self.rows + 1))
        return self._indptr

    @property
    def max_abs(self) -> int:
        if self._max_abs is None:
            self._max_abs = _max_abs(self.data)
        return self._max_abs

    @property
    def row_nnz_max(self) -> int:
        if self._row_nnz_max is None:
            self._row_nnz_max = int(np.diff(self.indptr).max()) if self.rows else 0
        return self._row_nnz_max

    def entries(self) -> Iterator[tuple]:
        s = self.scale
        for r, c, d in zip(self.row, self.col, self.data):
            if self.field == APPROX:
                yield int(r), int(c), float(d)
            else:
                yield int(r), int(c), int(d) * s

    def to_dense_fractions(self) -> np.ndarray:
        out = np.full((self.rows, self.cols), Fraction(0), dtype=object)
        for r, c, v in self.entries():
            out[r, c] = v
        return out

    def to_approx(self) -> "SparseOp":
        if self.field == APPROX:
            return self
        return SparseOp(self.rows, self.cols, self.row, self.col,
                        self.data.astype(np.float64) * float(self.scale),
                        1.0, APPROX, _canonical=True)

    def transpose(self) -> "SparseOp":
        return SparseOp(self.cols, self.rows, self.col.copy(), self.row.copy(),
                        self.data.copy(), self.scale, self.field)

    def is_zero(self, tol: Optional[Tolerance] = None) -> bool:
        if self.field == APPROX and self.nnz:
            tol = tol or DEFAULT_TOL
            return all(tol.is_zero(float(x)) for x in self.data)
        return self.nnz == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseOp):
            return NotImplemented
        return (self.field == other.field and self.rows == other.rows
                and self.cols == other.cols and self.scale == other.scale
                and np.array_equal(self.row, other.row)
                and np.array_equal(self.col, other.col)
                and bool(np.array_equal(self.data, other.data)))

    __hash__ = None

    def __repr__(self) -> str:
        return (f"SparseOp({self.rows}x{self.cols}, nnz={self.nnz}, "
                f"field={self.field})")

    # -- arithmetic ---------------------------------------------------------

    def scaled(self, c: ScalarLike) -> "SparseOp":
        if self.field == APPROX:
            return SparseOp(self.rows, self.cols, self.row, self.col,
                            self.data * float(c), 1.0, APPROX, _canonical=True)
        c = Fraction(c)
        if c == 0:
            return SparseOp.zero(self.rows, self.cols)
        op = SparseOp(self.rows, self.cols, self.row, self.col, self.data,
                      self.scale * c, EXACT, _canonical=True)
        if op.scale < 0:
            return SparseOp(self.rows, self.cols, self.row, self.col,
                            -self.data, -op.scale, EXACT, _canonical=True)
        return op

    def __neg__(self) -> "SparseOp":
        return self.scaled(-1)

    def __rmul__(self, c: ScalarLike) -> "SparseOp":
        return self.scaled(c)

    def __add__(self, other: "SparseOp") -> "SparseOp":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError(
                f"add {self.rows}x{self.cols} vs {other.rows}x{other.cols}")
        if self.field == APPROX or other.field == APPROX:
            a, b = self.to_approx(), other.to_approx()
            return SparseOp(a.rows, a.cols, np.concatenate([a.row, b.row]),
                            np.concatenate([a.col, b.col]),
                            np.concatenate([a.data, b.data]), 1.0, APPROX)
        s = fraction_gcd(self.scale, other.scale)
        ma, mb = int(self.scale / s), int(other.scale / s)
        da, db = self.data, other.data
        if da.dtype != object and self.max_abs * ma >= _INT64_SAFE:
            da = _to_object(da)
        if db.dtype != object and other.max_abs * mb >= _INT64_SAFE:
            db = _to_object(db)
        da = da * ma if ma != 1 else da
        db = db * mb if mb != 1 else db
        if (da.dtype == object) != (db.dtype == object):
            da = da if da.dtype == object else _to_object(da)
            db = db if db.dtype == object else _to_object(db)
        return SparseOp(self.rows, self.cols,
                        np.concatenate([self.row, other.row]),
                        np.concatenate([self.col, other.col]),
                        np.concatenate([da, db]), s)

    def __sub__(self, other: "SparseOp") -> "SparseOp":
        return self + other.scaled(-1)

    def matvec(self, v: Vec) -> Vec:
        if len(v) != self.cols:
            raise DimensionMismatchError("matvec length mismatch")
        if self.field == APPROX or v.field == APPROX:
            a = self.to_approx()
            out = _kernels.csr_matvec(a.indptr, a.row, a.col, a.data,
                                      v.to_approx().data, a.rows)
            return Vec(out, 1.0, APPROX)
        data, vdata = self.data, v.data
        bound = self.row_nnz_max * max(self.max_abs, 1) * max(_max_abs(vdata), 1)
        if bound >= _INT64_SAFE and data.dtype != object:
            data = _to_object(data)
        if data.dtype == object and vdata.dtype != object:
            vdata = _to_object(vdata)
        if vdata.dtype == object and data.dtype != object:
            data = _to_object(data)
        out = _kernels.csr_matvec(self.indptr, self.row, self.col, data,
                                  vdata, self.rows)
        return Vec(out, self.scale * v.scale)

    def apply_dense(self, b: np.ndarray) -> np.ndarray:
        """Raw CSR x dense-matrix product on the integer/float cores."""
        data = self.data
        if self.field == EXACT and data.dtype != object and b.dtype != object:
            bound = self.row_nnz_max * max(self.max_abs, 1) * max(1, int(np.abs(b).max()) if b.size else 1)
            if bound >= _INT64_SAFE:
                data = _to_object(data)
                b = np.vectorize(int, otypes=[object])(b) if b.dtype != object else b
        if (data.dtype == object) != (b.dtype == object):
            if data.dtype != object:
                data = _to_object(data)
            else:
                b = np.vectorize(int, otypes=[object])(b)
        return _kernels.csr_matmat_dense(self.indptr, self.row, self.col, data,
                                         b, self.rows)

    def __matmul__(self, other: "SparseOp") -> "SparseOp":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"matmul {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        if self.field == APPROX or other.field == APPROX:
            a, b = self.to_approx(), other.to_approx()
            r, c, d = _kernels.spmm(a.indptr, a.row, a.col, a.data,
                                    b.indptr, b.row, b.col, b.data,
                                    a.rows, b.cols)
            return SparseOp(a.rows, b.cols, r, c, d, 1.0, APPROX)
        da, db = self.data, other.data
        bound = (min(self.row_nnz_max, other.nnz or 1)
                 * max(self.max_abs, 1) * max(other.max_abs, 1))
        if bound >= _INT64_SAFE:
            da = _to_object(da) if da.dtype != object else da
            db = _to_object(db) if db.dtype != object else db
        if (da.dtype == object) != (db.dtype == object):
            da = da if da.dtype == object else _to_object(da)
            db = db if db.dtype == object else _to_object(db)
        r, c, d = _kernels.spmm(self.indptr, self.row, self.col, da,
                                other.indptr, other.row, other.col, db,
                                self.rows, other.cols)
        return SparseOp(self.rows, other.cols, r, c, d,
                        self.scale * other.scale)

    def trace(self) -> ScalarLike:
        mask = self.row == self.col
        if self.field == APPROX:
            return float(self.data[mask].sum())
        total = sum(int(x) for x in self.data[mask])
        return total * self.scale

    def check_kron_factors(self) -> bool:
        """Expand kron_factors (small instances) and compare entrywise."""
        if not self.kron_factors:
            return True
        acc = self.kron_factors[0]
        for f in self.kron_factors[1:]:
            acc = kron(acc, f)
        acc.kron_factors = None
        return acc == self


# ---------------------------------------------------------------------------
# kernel operations
# ---------------------------------------------------------------------------

def kron(a: SparseOp, b: SparseOp) -> SparseOp:
    """Kronecker product; entry ((i1,i2),(j1,j2)) = a(i1,j1) * b(i2,j2)."""
    if a.rows * b.rows >= 2 ** 62 or a.cols * b.cols >= 2 ** 62:
        raise DimensionLimitError("kron index arithmetic would overflow")
    if a.field == APPROX or b.field == APPROX:
        a, b = a.to_approx(), b.to_approx()
    row = (a.row[:, None] * b.rows + b.row[None, :]).ravel()
    col = (a.col[:, None] * b.cols + b.col[None, :]).ravel()
    da, db = a.data, b.data
    if a.field == EXACT:
        if max(a.max_abs, 1) * max(b.max_abs, 1) >= _INT64_SAFE:
            da = _to_object(da) if da.dtype != object else da
            db = _to_object(db) if db.dtype != object else db
        if (da.dtype == object) != (db.dtype == object):
            da = da if da.dtype == object else _to_object(da)
            db = db if db.dtype == object else _to_object(db)
    data = (da[:, None] * db[None, :]).ravel()
    scale = a.scale * b.scale if a.field == EXACT else 1.0
    out = SparseOp(a.rows * b.rows, a.cols * b.cols, row, col, data, scale,
                   a.field)
    out.kron_factors = [a, b]
    return out


def apply_poly_factors(op: SparseOp, roots: Sequence[ScalarLike], v: Vec,
                       unit: Optional[SparseOp] = None) -> Vec:
    """Apply prod_i (op - r_i * unit) to v, left to right, factor by factor.

    ``unit`` defaults to the identity; passing a subspace projector makes the
    factors act as shifts on that subspace (callers feed subspace vectors).
    """
    if op.rows != op.cols:
        raise DimensionMismatchError("apply_poly_factors needs a square op")
    if len(v) != op.cols:
        raise DimensionMismatchError("vector length mismatch")
    out = v
    for r in roots:
        shifted = out if unit is None else unit.matvec(out)
        out = op.matvec(out) - shifted.scaled(r)
    return out


def _pair_trace(a: SparseOp, b: SparseOp) -> ScalarLike:
    # Tr(A B) = sum_{ij} A_ij B_ji via a sorted key join
    if a.cols != b.rows or a.rows != b.cols:
        raise DimensionMismatchError("trace_word pair shape mismatch")
    if a.nnz == 0 or b.nnz == 0:
        return 0.0 if a.field == APPROX else Fraction(0)
    key_a = a.row * a.cols + a.col
    key_b = b.col * a.cols + b.row
    order = np.argsort(key_b, kind="stable")
    key_b_sorted = key_b[order]
    pos = np.searchsorted(key_b_sorted, key_a)
    pos_c = np.minimum(pos, len(key_b_sorted) - 1)
    hit = key_b_sorted[pos_c] == key_a
    if not hit.any():
        return 0.0 if a.field == APPROX else Fraction(0)
    da = a.data[hit]
    db = b.data[order][pos_c[hit]]
    if a.field == APPROX or b.field == APPROX:
        return float(np.dot(np.asarray(da, dtype=np.float64),
                            np.asarray(db, dtype=np.float64)))
    total = sum(int(x) * int(y) for x, y in zip(da, db))
    return total * a.scale * b.scale


def trace_word(ops: Sequence[SparseOp], product_nnz_limit: int = 40_000_000
               ) -> ScalarLike:
    """Exact trace of a product of sparse operators.

    Never materializes a dense product: single factors read the diagonal,
    pairs use a sorted triplet join, longer words chain sparse products and
    fall back to column-block application if the fill estimate is too large.
    """
    if not ops:
        raise ValueError("trace_word needs at least one operator")
    for x, y in zip(ops, ops[1:]):
        if x.cols != y.rows:
            raise DimensionMismatchError("trace_word factors not composable")
    if ops[0].rows != ops[-1].cols:
        raise DimensionMismatchError("trace_word product is not square")
    if len(ops) == 1:
        return ops[0].trace()
    if len(ops) == 2:
        return _pair_trace(ops[0], ops[1])
    estimate = ops[0].nnz
    for nxt in ops[1:-1]:
        estimate = min(estimate * max(nxt.row_nnz_max, 1),
                       ops[0].rows * nxt.cols)
    if estimate <= product_nnz_limit:
        acc = ops[0]
        for nxt in ops[1:-1]:
            acc = acc @ nxt
        return _pair_trace(acc, ops[-1])
    return _trace_word_columns(ops)


def _trace_word_columns(ops: Sequence[SparseOp], block: int = 64) -> ScalarLike:
    n = ops[0].rows
    exact = all(o.field == EXACT for o in ops)
    total = Fraction(0) if exact else 0.0
    scale = Fraction(1) if exact else 1.0
    for o in ops:
        scale = scale * o.scale
    for start in range(0, n, block):
        width = min(block, n - start)
        cur = np.zeros((n, width), dtype=np.int64 if exact else np.float64)
        for j in range(width):
            cur[start + j, j] = 1
        for o in reversed(ops):
            cur = o.apply_dense(cur)
        diag = [cur[start + j, j] for j in range(width)]
        total += (sum(int(x) for x in diag) if exact
                  else float(np.sum(diag)))
    return total * scale


@dataclass
class ZeroCheckResult:
    verdict: str  # "ZERO" | "NONZERO"
    trials: int
    witness: Optional[Vec] = None

    @property
    def is_zero(self) -> bool:
        return self.verdict == "ZERO"


def randomized_zero_check(apply_fn: Callable[[Vec], Vec], dim: int,
                          trials: int = 20, field: str = EXACT,
                          rng: Optional[np.random.Generator] = None,
                          seed: int = 0,
                          tol: Optional[Tolerance] = None) -> ZeroCheckResult:
    """Apply an operator expression to random vectors; ZERO iff every image
    vanishes (exactly for the exact field, below ``tol`` otherwise).

    Records the witness vector on the first failure.
    """
    if rng is None:
        rng = np.random.default_rng(seed)
    for t in range(trials):
        v = Vec.random_exact(dim, rng)
        if field == APPROX:
            v = v.to_approx()
        image = apply_fn(v)
        if not image.is_zero(tol):
            return ZeroCheckResult("NONZERO", t + 1, witness=v)
    return ZeroCheckResult("ZERO", trials)


def apply_two_site(op: SparseOp, v: Vec, sites: Tuple[int, int],
                   n_sites: int, d: int) -> Vec:
    """Apply a two-site operator (d^2 x d^2) to a vector on V^(x n_sites)
    without materializing the embedded operator: reshape, act, reshape back.
    """
    a, b = sites
    if op.rows != d * d or op.cols != d * d:
        raise DimensionMismatchError("two-site operator has wrong shape")
    if len(v) != d ** n_sites:
        raise DimensionMismatchError("vector length mismatch")
    if op.field == APPROX or v.field == APPROX:
        op, v = op.to_approx(), v.to_approx()
    cube = v.data.reshape((d,) * n_sites)
    axes = [a, b] + [k for k in range(n_sites) if k not in (a, b)]
    moved = np.ascontiguousarray(np.transpose(cube, axes))
    flat = moved.reshape(d * d, d ** (n_sites - 2))
    out = op.apply_dense(flat)
    out_cube = out.reshape((d,) * n_sites)
    inverse = np.argsort(axes)
    restored = np.ascontiguousarray(np.transpose(out_cube, inverse)).ravel()
    if op.field == APPROX:
        return Vec(restored, 1.0, APPROX)
    return Vec(restored, op.scale * v.scale)


def poly_of_op(op: SparseOp, coeffs: Sequence[ScalarLike],
               unit: Optional[SparseOp] = None) -> SparseOp:
    """Materialize sum_k coeffs[k] * op^k (op^0 = unit or identity), Horner style."""
    unit = unit if unit is not None else SparseOp.identity(op.rows, op.field)
    acc = unit.scaled(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc @ op
        if c != 0:
            acc = acc + unit.scaled(c)
    return acc


def product_of_shifts(op: SparseOp, roots: Sequence[ScalarLike],
                      unit: Optional[SparseOp] = None) -> SparseOp:
    """Materialize prod_i (op - r_i * unit) as a sparse operator."""
    unit = unit if unit is not None else SparseOp.identity(op.rows, op.field)
    acc = None
    for r in roots:
        factor = op - unit.scaled(r) if r != 0 else op
        acc = factor if acc is None else acc @ factor
    return acc if acc is not None else unit
