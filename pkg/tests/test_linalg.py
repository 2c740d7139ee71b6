"""Sparse exact row reduction, kernels, subspaces, series inversion."""

import random
from fractions import Fraction

import pytest

from frobpi.fields import FP, QQ
from frobpi.linalg import (
    AmbientMismatchError,
    SparseMat,
    Subspace,
    kernel,
    left_kernel,
    rref,
    rref_rows,
    series_inverse,
    subspace_ops,
    vec_add,
    vec_apply,
    vec_scale,
    vec_sub,
)
from frobpi._kernels import HAVE_NUMBA, rref_mod

import numpy as np


def _random_rows(rng, field, nrows, ncols, density=0.4, span=5):
    rows = []
    for _ in range(nrows):
        r = {}
        for j in range(ncols):
            if rng.random() < density:
                v = field.convert(rng.randint(-span, span))
                if not field.is_zero(v):
                    r[j] = v
        rows.append(r)
    return rows


def test_vec_helpers():
    f = QQ
    a = {0: Fraction(1), 2: Fraction(-2)}
    b = {0: Fraction(-1), 1: Fraction(3)}
    assert vec_add(f, a, b) == {1: Fraction(3), 2: Fraction(-2)}
    assert vec_sub(f, a, a) == {}
    assert vec_scale(f, a, Fraction(2)) == {0: Fraction(2), 2: Fraction(-4)}
    rows = [{1: Fraction(1)}, {0: Fraction(2)}, {}]
    assert vec_apply(f, {0: Fraction(1), 1: Fraction(1)}, rows) == {
        0: Fraction(2),
        1: Fraction(1),
    }


def test_rref_canonical_given_row_order_shuffle():
    # the reduced form is a basis invariant: shuffling input rows cannot move it
    rng = random.Random(7)
    rows = _random_rows(rng, QQ, 12, 9)
    piv1, red1 = rref_rows(QQ, rows, 9)
    shuffled = rows[:]
    rng.shuffle(shuffled)
    piv2, red2 = rref_rows(QQ, shuffled, 9)
    assert piv1 == piv2
    assert red1 == red2


def test_fraction_free_lane_matches_generic():
    # wide rational matrices dispatch to the integer fraction-free path
    rng = random.Random(3)
    ncols = 230
    rows = []
    for _ in range(40):
        r = {}
        for j in rng.sample(range(ncols), 12):
            r[j] = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
        rows.append({k: v for k, v in r.items() if v})
    piv_wide, red_wide = rref_rows(QQ, rows, ncols)
    # same system, squeezed through the generic lane by keeping ncols small:
    # reindex occupied columns densely
    used = sorted({j for r in rows for j in r})
    remap = {j: i for i, j in enumerate(used)}
    rows_small = [{remap[j]: v for j, v in r.items()} for r in rows]
    piv_small, red_small = rref_rows(QQ, rows_small, len(used))
    assert [remap[p] for p in piv_wide] == piv_small
    back = [{used[j]: v for j, v in r.items()} for r in red_small]
    assert back == red_wide


@pytest.mark.parametrize("p", [2, 5, 2147483629])
def test_modp_lanes_agree(p):
    rng = np.random.default_rng(11)
    mat = rng.integers(0, p, size=(30, 40), dtype=np.int64)
    rank_a, piv_a, red_a = rref_mod(mat, p)
    rank_b, piv_b, red_b = rref_mod(mat, p, force_fallback=True)
    assert rank_a == rank_b and piv_a == piv_b
    assert np.array_equal(red_a, red_b)


def test_fp_dense_dispatch_matches_generic():
    f = FP(5)
    rng = random.Random(5)
    rows = _random_rows(rng, f, 25, 18, span=4)
    piv_d, red_d = rref_rows(f, rows, 18)
    # generic path, forced by working over a redundant embedding: run the
    # pure-python generic reducer directly
    from frobpi.linalg import _rref_generic

    piv_g, red_g = _rref_generic(f, rows)
    assert piv_d == piv_g and red_d == red_g


def test_kernel_annihilates():
    rng = random.Random(19)
    for f in (QQ, FP(7)):
        rows = _random_rows(rng, f, 10, 14)
        m = SparseMat(f, tuple(rows), 14)
        k = kernel(m)
        rank, _ = rref(m)
        assert k.dim + rank == 14
        for kv in k.rows:
            img = {}
            for i, r in enumerate(rows):
                acc = f.zero
                for j, c in r.items():
                    if j in kv:
                        acc = f.add(acc, f.mul(c, kv[j]))
                if not f.is_zero(acc):
                    img[i] = acc
            assert img == {}


def test_left_kernel_annihilates():
    f = QQ
    rows = [{0: Fraction(1), 1: Fraction(2)}, {0: Fraction(2), 1: Fraction(4)}, {2: Fraction(1)}]
    lk = left_kernel(f, rows, 3)
    assert lk.dim == 1
    (v,) = lk.rows
    comb = {}
    for i, c in v.items():
        comb = vec_add(f, comb, rows[i], c)
    assert comb == {}


def test_subspace_ops_and_mismatch():
    f = QQ
    a = Subspace.from_vectors(f, 3, [{0: Fraction(1)}])
    b = Subspace.from_vectors(f, 3, [{1: Fraction(1)}])
    s = subspace_ops(a, b, "sum")
    assert s.dim == 2
    assert subspace_ops(s, a, "contains")
    assert not subspace_ops(a, s, "contains")
    assert subspace_ops(a, Subspace.from_vectors(f, 3, [{0: Fraction(2)}]), "equal")
    c = Subspace.from_vectors(f, 4, [{0: Fraction(1)}])
    with pytest.raises(AmbientMismatchError):
        subspace_ops(a, c, "sum")


def test_series_inverse_is_inverse():
    # (I - tC + t^2 I) * W(t) = I through the truncation order
    c = [[0, 1, 1], [1, 0, 0], [1, 0, 0]]
    D = 9
    w = series_inverse(c, D)
    n = 3
    ident = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    cm = [[Fraction(v) for v in row] for row in c]

    def matmul(a, b):
        return [
            [sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)
        ]

    for d in range(D + 1):
        acc = [list(row) for row in w.coeff(d)]
        if d >= 1:
            cw = matmul(cm, [list(r) for r in w.coeff(d - 1)])
            acc = [[acc[i][j] - cw[i][j] for j in range(n)] for i in range(n)]
        if d >= 2:
            prev = w.coeff(d - 2)
            acc = [[acc[i][j] + prev[i][j] for j in range(n)] for i in range(n)]
        assert acc == (ident if d == 0 else [[Fraction(0)] * n for _ in range(n)])
