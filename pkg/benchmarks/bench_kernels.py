"""Benchmark the jitted kernels against the pure-numpy fallback path.

The numba path is selected by default; run with SPLITCASIMIR_NUMBA=0 to
force the fallback.  This script times both in one process by calling the
implementation functions directly, so the comparison is honest regardless
of the environment flag.

Usage: python benchmarks/bench_kernels.py [--size 40000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from splitcasimir import _kernels
from splitcasimir.kernel import SparseOp


def random_sparse(rng, n, row_nnz, max_val=50):
    rows = np.repeat(np.arange(n), row_nnz)
    cols = rng.integers(0, n, size=n * row_nnz)
    data = rng.integers(-max_val, max_val + 1, size=n * row_nnz)
    return SparseOp(n, n, rows.astype(np.int64), cols.astype(np.int64),
                    data.astype(np.int64))


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--size", type=int, default=40_000)
    parser.add_argument("--row-nnz", type=int, default=24)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    a = random_sparse(rng, args.size, args.row_nnz)
    v = rng.integers(-9, 10, size=args.size).astype(np.int64)
    b_dense = rng.integers(-9, 10, size=(args.size, 8)).astype(np.int64)

    print(f"numba available and enabled: {_kernels.NUMBA_ENABLED}")
    print(f"matrix: {args.size} x {args.size}, nnz = {a.nnz}")

    results = {}
    if _kernels.NUMBA_ENABLED:
        # warm up JIT before timing
        _kernels.csr_matvec(a.indptr, a.row, a.col, a.data, v, a.rows)
        _kernels.csr_matmat_dense(a.indptr, a.row, a.col, a.data,
                                  b_dense, a.rows)
        t, out_fast = timeit(lambda: _kernels.csr_matvec(
            a.indptr, a.row, a.col, a.data, v, a.rows), args.repeats)
        results["matvec/jit"] = t
    t, out_ref = timeit(lambda: _kernels._csr_matvec_numpy(
        a.row, a.col, a.data, v, a.rows), args.repeats)
    results["matvec/numpy"] = t
    if _kernels.NUMBA_ENABLED:
        assert np.array_equal(out_fast, out_ref), "kernel paths disagree"

    if _kernels.NUMBA_ENABLED:
        t, out_fast = timeit(lambda: _kernels.csr_matmat_dense(
            a.indptr, a.row, a.col, a.data, b_dense, a.rows), args.repeats)
        results["matmat/jit"] = t
    t, out_ref = timeit(lambda: _kernels._csr_matmat_numpy(
        a.row, a.col, a.data, b_dense, a.rows), args.repeats)
    results["matmat/numpy"] = t
    if _kernels.NUMBA_ENABLED:
        assert np.array_equal(out_fast, out_ref), "kernel paths disagree"

    small = random_sparse(rng, args.size // 10, args.row_nnz)
    if _kernels.NUMBA_ENABLED:
        t, _ = timeit(lambda: _kernels.spmm(
            small.indptr, small.row, small.col, small.data,
            small.indptr, small.row, small.col, small.data,
            small.rows, small.cols), args.repeats)
        results["spmm/jit"] = t
    t, _ = timeit(lambda: _kernels._spmm_expand_numpy(
        small.row, small.col, small.data, small.indptr, small.col,
        small.data), args.repeats)
    results["spmm-expand/numpy"] = t

    width = max(len(k) for k in results)
    print()
    for key, t in results.items():
        print(f"{key:<{width}}  {t * 1e3:9.3f} ms")
    for op in ("matvec", "matmat"):
        jit, ref = results.get(f"{op}/jit"), results.get(f"{op}/numpy")
        if jit:
            print(f"{op}: numba speedup x{ref / jit:.1f}")


if __name__ == "__main__":
    main()
