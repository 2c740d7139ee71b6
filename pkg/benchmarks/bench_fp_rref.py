"""Timing of the dense mod-p row reduction: jit kernel vs numpy fallback.

Both lanes must produce the identical canonical reduced form; the jit lane
is skipped (with a note) when numba is unavailable or disabled through
FROBPI_NO_NUMBA.
"""

import time

import numpy as np

from frobpi._kernels import HAVE_NUMBA, rref_mod


def bench(shape, p, repeats=5, seed=0):
    rng = np.random.default_rng(seed)
    mat = rng.integers(0, p, size=shape, dtype=np.int64)
    # warm-up also triggers jit compilation
    r1 = rref_mod(mat, p)
    r2 = rref_mod(mat, p, force_fallback=True)
    assert r1[0] == r2[0] and r1[1] == r2[1] and np.array_equal(r1[2], r2[2])

    def lap(force):
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            rref_mod(mat, p, force_fallback=force)
            best = min(best, time.perf_counter() - t0)
        return best

    return lap(False), lap(True)


def main():
    print(f"numba available: {HAVE_NUMBA}")
    print(f"{'shape':>12} {'p':>6} {'jit':>10} {'numpy':>10} {'speedup':>8}")
    for shape in [(60, 80), (200, 250), (500, 600), (900, 1000)]:
        for p in (2, 5, 2147483629):
            tj, tn = bench(shape, p)
            ratio = tn / tj if tj > 0 else float("inf")
            print(
                f"{shape[0]}x{shape[1]:>7} {p:>10} {tj * 1e3:>8.2f}ms {tn * 1e3:>8.2f}ms {ratio:>7.1f}x"
            )


if __name__ == "__main__":
    main()
