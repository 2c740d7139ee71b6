"""Graded construction: dimensions, products, words, caching.

The degree-2 oracle here is deliberately self-contained: it rebuilds the
degree-2 relation span from the structure constants with its own Gram
inversion and its own dense row reduction, then compares ranks with the
engine.  Nothing from frobpi.linalg is used in the oracle path.
"""

import random
from fractions import Fraction

import pytest

from frobpi import CATALOG_NAMES, build, catalog
from frobpi.cache import CacheValidationError, build_cached, cache_key
from frobpi.engine import DegreeRangeError, GradedAlgebra, WordSyntaxError
from frobpi.fields import field_from_descriptor


# ---------------------------------------------------------------------------
# independent degree-2 oracle


def _inv4(mat):
    """Gauss-Jordan inverse of a 4x4 Fraction matrix, local to this test."""
    n = 4
    a = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                c = a[r][col]
                a[r] = [v - c * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _rank(rows):
    """Row rank of dense Fraction rows, local to this test."""
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                c = rows[i][col]
                rows[i] = [v - c * w for v, w in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _degree2_oracle(name):
    """(tensor dim, relation rank, R-side rank, S-side rank) at degree 2.

    Degree-2 tensor coordinates: 16 words b_q e f b_m plus 4 words f b_k e.
    The ideal is spanned by the single R-R relation and all S-bimodule
    translates of the S-S relation.
    """
    pair = catalog(name)
    alg = pair.algebra
    lam = pair.lam
    n = 4

    def mul(i, j):
        # structure constants as dense Fraction columns
        out = [Fraction(0)] * n
        for k, v in alg.table[i][j].items():
            out[k] = v
        return out

    gram = [[sum((mul(i, j)[k] * lam[k] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
    ginv = _inv4(gram)
    fdual = [[ginv[m][q] for m in range(n)] for q in range(n)]  # f_q = sum_m ginv[m][q] b_m

    # R-R relation in the 4 coords f b_k e
    r1 = [Fraction(0)] * n
    for q in range(n):
        for m in range(n):
            cm = fdual[q][m]
            if cm == 0:
                continue
            prod = mul(m, q)
            for k in range(n):
                r1[k] += cm * prod[k]

    # S-S relation in the 16 coords b_q e f b_m
    rho = [[fdual[q][m] for m in range(n)] for q in range(n)]

    def translate(i, j):
        out = [[Fraction(0)] * n for _ in range(n)]
        for q in range(n):
            left = mul(i, q)
            for m in range(n):
                c = rho[q][m]
                if c == 0:
                    continue
                right = mul(m, j)
                for k in range(n):
                    if left[k] == 0:
                        continue
                    for w in range(n):
                        out[k][w] += left[k] * c * right[w]
        return [v for row in out for v in row]

    s_rows = [translate(i, j) for i in range(n) for j in range(n)]
    rank_s = _rank(s_rows)
    rank_r = _rank([r1])
    return 20, rank_r + rank_s, rank_r, rank_s


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_degree2_oracle_matches_engine(name, q_engines):
    tensor_dim, ideal_rank, rank_r, rank_s = _degree2_oracle(name)
    assert tensor_dim == 20
    assert ideal_rank == 5
    g = q_engines[name]
    assert g.dim(2) == tensor_dim - ideal_rank == 15
    dr, ds = g.split_dims(2)
    assert dr == 4 - rank_r == 3
    assert ds == 16 - rank_s == 12


# ---------------------------------------------------------------------------
# dimension laws and split data


def test_dimension_law_over_q(q_engines):
    for name, g in q_engines.items():
        for d in range(13):
            expect = 5 * (d + 1) if d % 2 == 0 else 4 * (d + 1)
            assert g.dim(d) == expect, (name, d)


def test_base_change_commutes(q_engines, fp_engines):
    for (name, p), gfp in fp_engines.items():
        gq = q_engines[name]
        for d in range(13):
            assert gq.dim(d) == gfp.dim(d), (name, p, d)


def test_split_sum_is_identity(q_engines):
    g = q_engines["bikwad"]
    one_r = g.element_from_word("a")
    one = g.unit_element()
    one_s = one - one_r
    for d in range(7):
        for i in range(g.dim(d)):
            x = g.basis_element(d, i)
            assert g.multiply(one_r, x) + g.multiply(one_s, x) == x


def test_split_dims_formula(q_engines):
    for name, g in q_engines.items():
        for d in range(13):
            want = (d + 1, 4 * (d + 1)) if d % 2 == 0 else (2 * (d + 1), 2 * (d + 1))
            assert g.split_dims(d) == want, (name, d)


def test_resolution_identities(q_engines):
    for g in q_engines.values():
        assert g.resolution_identity_check(16)


# ---------------------------------------------------------------------------
# products


def test_unit_is_neutral(q_engines):
    g = q_engines["t4"]
    one = g.unit_element()
    rng = random.Random(23)
    for d in range(9):
        vec = {i: Fraction(rng.randint(-3, 3)) for i in rng.sample(range(g.dim(d)), min(3, g.dim(d)))}
        x = g.zero(d) + type(g.zero(d))(g, d, vec)
        assert g.multiply(one, x) == x
        assert g.multiply(x, one) == x


def test_associativity_random_triples(q_engines):
    g = q_engines["two-dual-numbers"]
    rng = random.Random(41)
    checked = 0
    while checked < 200:
        d1, d2, d3 = (rng.randint(0, 4) for _ in range(3))
        if d1 + d2 + d3 > 10:
            continue

        def rand_el(d):
            vec = {}
            for i in range(g.dim(d)):
                if rng.random() < 0.3:
                    vec[i] = Fraction(rng.randint(-2, 2))
            return g.zero(d) + type(g.zero(d))(g, d, vec)

        x, y, z = rand_el(d1), rand_el(d2), rand_el(d3)
        assert g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z))
        checked += 1


def test_degree_cap_raises(q_engines):
    g = q_engines["bikwad"]
    x = g.basis_element(16, 0)
    y = g.basis_element(1, 0)
    with pytest.raises(DegreeRangeError):
        g.multiply(x, y)


# ---------------------------------------------------------------------------
# words


def test_word_examples(bikwad_q):
    g = bikwad_q
    assert g.element_from_word("fe").is_zero()
    assert g.element_from_word("es").is_zero()
    a = g.element_from_word("a")
    assert g.multiply(a, a) == a
    assert not g.element_from_word("sef").is_zero()


def test_word_round_trip(bikwad_q):
    g = bikwad_q
    for d in range(5):
        for s in g.basis_words(d):
            el = g.element_from_word(s)
            assert not el.is_zero()
            assert g.format_element(el) == s


def test_bad_words(bikwad_q):
    with pytest.raises(WordSyntaxError):
        bikwad_q.element_from_word("xyz")
    with pytest.raises(WordSyntaxError):
        bikwad_q.element_from_expr("sef + xy")
    with pytest.raises(WordSyntaxError):
        bikwad_q.element_from_expr("  ")


def test_element_expr_and_format(bikwad_q):
    g = bikwad_q
    x = g.element_from_expr("sef + efs - 2*fse")
    assert g.element_from_expr(g.format_element(x)) == x


def test_generators_count(bikwad_q):
    gens = bikwad_q.generators()
    assert len(gens) == 13
    names = [n for n, _ in gens]
    assert names[0] == "a"


# ---------------------------------------------------------------------------
# cache behavior


def test_cache_round_trip_deep(tmp_path):
    pair = catalog("t3-plus-k", field_from_descriptor("fp:5"))
    direct = GradedAlgebra(pair, 6)
    c1 = build_cached(pair, 6, str(tmp_path))
    c2 = build_cached(pair, 6, str(tmp_path))
    for g in (c1, c2):
        assert g.words == direct.words
        assert g.parent == direct.parent
        assert g.E == direct.E
        assert g.FB == direct.FB
        assert g.B == direct.B
        assert g.F == direct.F
    x = direct.element_from_word("mef")
    y = direct.element_from_word("fte")
    px = c1.element_from_word("mef")
    py = c1.element_from_word("fte")
    assert direct.multiply(x, y).vec == c1.multiply(px, py).vec


def test_cache_write_once(tmp_path):
    pair = catalog("t4")
    build_cached(pair, 4, str(tmp_path))
    key = cache_key(pair, 4)
    path = tmp_path / f"{key}.json"
    first = path.read_bytes()
    build_cached(pair, 4, str(tmp_path))
    assert path.read_bytes() == first


def test_cache_tamper_detected(tmp_path):
    import json

    pair = catalog("t4")
    build_cached(pair, 4, str(tmp_path))
    key = cache_key(pair, 4)
    path = tmp_path / f"{key}.json"
    doc = json.loads(path.read_text())
    doc["key"] = "0" * 64
    path.write_text(json.dumps(doc))
    with pytest.raises(CacheValidationError):
        build_cached(pair, 4, str(tmp_path))


def test_cache_key_separates(tmp_path):
    a = cache_key(catalog("t4"), 8)
    b = cache_key(catalog("t4"), 9)
    c = cache_key(catalog("bikwad"), 8)
    d = cache_key(catalog("t4", field_from_descriptor("fp:5")), 8)
    assert len({a, b, c, d}) == 4
