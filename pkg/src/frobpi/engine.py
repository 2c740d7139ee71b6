"""Graded construction of the generalized preprojective algebra of a pair.

Degree d is built as a quotient of the free extension of degree d-1 by one
letter: coordinates are (basis word of d-1) followed by e, or followed by
f and an S-basis slot.  The two tensor relations, multiplied by every
basis word of degree d-2, span exactly the new relations; row reducing
them leaves a canonical word basis and the reduction map gives the right
multiplication operators by each letter.  Everything downstream
(multiplication, left multiplications, projections) folds through those
operators, so one code path serves every coefficient field.
"""

from __future__ import annotations

from .fields import Field
from .frobenius import FrobeniusPair
from .linalg import Subspace, rref_rows, vec_add, vec_apply

A_LETTER = -1
E_LETTER = -2
F_LETTER = -3


class DegreeRangeError(ValueError):
    """Degree outside the built range."""


class WordSyntaxError(ValueError):
    """Unreadable word text."""


class PiElement:
    """Homogeneous element, stored on the canonical word basis."""

    __slots__ = ("graded", "d", "vec")

    def __init__(self, graded, d, vec):
        self.graded = graded
        self.d = d
        self.vec = graded.field.post_reduce(dict(vec))

    def is_zero(self):
        return not self.vec

    def _like(self, other):
        if self.graded is not other.graded or self.d != other.d:
            raise DegreeRangeError("elements live in different graded pieces")

    def __add__(self, other):
        self._like(other)
        return PiElement(self.graded, self.d, vec_add(self.graded.field, self.vec, other.vec))

    def __sub__(self, other):
        self._like(other)
        f = self.graded.field
        return PiElement(self.graded, self.d, vec_add(self.graded.field, self.vec, other.vec, f.neg(f.one)))

    def __neg__(self):
        f = self.graded.field
        return PiElement(self.graded, self.d, {k: f.neg(v) for k, v in self.vec.items()})

    def scale(self, c):
        f = self.graded.field
        c = f.convert(c)
        return PiElement(self.graded, self.d, {k: f.mul(v, c) for k, v in self.vec.items()})

    def __mul__(self, other):
        if isinstance(other, PiElement):
            return self.graded.multiply(self, other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, PiElement):
            return NotImplemented
        if self.graded is not other.graded or self.d != other.d:
            return False
        f = self.graded.field
        a, b = self.vec, other.vec
        for k in a.keys() | b.keys():
            if not f.is_zero(f.sub(a.get(k, f.zero), b.get(k, f.zero))):
                return False
        return True

    def __hash__(self):
        return hash((self.d, tuple(sorted(self.vec))))

    def __repr__(self):
        return f"Pi[{self.d}]({self.graded.format_element(self)})"


class GradedAlgebra:
    """All graded pieces of the preprojective algebra up to degree D."""

    def __init__(self, pair: FrobeniusPair, D: int):
        if D < 1:
            raise ValueError("build degree must be at least 1")
        self.pair = pair
        self.field: Field = pair.field
        self.n = pair.n
        self.D = D
        self._check_names()
        self.words = []
        self.is_r = []  # True when the word ends on the R side
        self.parent = []  # (i, 'e') or (i, 'f', m) for degree >= 1
        self.E = [None]  # E[d]: right append e, degree d-1 -> d
        self.FB = [None]  # FB[d][j]: right append f b_j
        self.F = [None]  # unit-weighted FB
        self.B = []  # B[d][j]: right multiply by b_j, square
        self._l0 = {}
        self._l1 = {}
        self._split = {}
        self._r2_terms = self._relation_terms()
        self._build_degree0()
        for d in range(1, D + 1):
            self._build_degree(d)

    # -- construction -------------------------------------------------------

    def _check_names(self):
        bad = set(self.pair.algebra.names) & {"a", "e", "f"}
        if bad:
            raise ValueError(f"basis names collide with letters: {sorted(bad)}")

    def _relation_terms(self):
        """Right multiples of the dual-basis relation by each slot.

        terms[j] maps (q, m) to the coefficient of (b_q e)(f b_m) in
        (sum_i e_i f_i) b_j.
        """
        f = self.field
        alg = self.pair.algebra
        n = self.n
        base = {}
        for q in range(n):
            for m in range(n):
                c = self.pair.dual_right[q][m]
                if not f.is_zero(c):
                    base[(q, m)] = c
        terms = []
        for j in range(n):
            tj = {}
            for (q, m), c in base.items():
                for m2, c2 in alg.table[m][j].items():
                    key = (q, m2)
                    t = c * c2
                    tj[key] = tj[key] + t if key in tj else t
            terms.append({k: v for k, v in tj.items() if not f.is_zero(v)})
        return terms

    def _build_degree0(self):
        f = self.field
        n = self.n
        alg = self.pair.algebra
        self.words.append([(A_LETTER,)] + [(j,) for j in range(n)])
        self.is_r.append([True] + [False] * n)
        self.parent.append(None)
        b0 = []
        for j in range(n):
            rows = [dict()]
            for i in range(n):
                rows.append({1 + k: v for k, v in alg.table[i][j].items()})
            b0.append(rows)
        self.B.append(b0)

    def dims(self, d=None):
        if d is None:
            return [len(w) for w in self.words]
        return len(self.words[d])

    def dim(self, d: int) -> int:
        if not 0 <= d <= self.D:
            raise DegreeRangeError(f"degree {d} outside 0..{self.D}")
        return len(self.words[d])

    def _build_degree(self, d):
        f = self.field
        n = self.n
        prev_dim = len(self.words[d - 1])
        prev_isr = self.is_r[d - 1]
        ecol = {}
        fcol = {}
        coords = []
        for i in range(prev_dim):
            if not prev_isr[i]:
                ecol[i] = len(coords)
                coords.append((i, "e"))
        for i in range(prev_dim):
            if prev_isr[i]:
                for m in range(n):
                    fcol[(i, m)] = len(coords)
                    coords.append((i, "f", m))
        ncols = len(coords)

        rel = []
        if d >= 2:
            e_prev = self.E[d - 1]
            b_prev = self.B[d - 2]
            for x in range(len(self.words[d - 2])):
                # x (f e): f-append then e-append
                xf = self.F[d - 1][x]
                row = {}
                for i, c in xf.items():
                    col = ecol.get(i)
                    if col is not None:
                        row[col] = c
                if row:
                    rel.append(row)
                # x (sum e_q f_q) b_j
                xe = []
                for q in range(n):
                    xb = b_prev[q][x]
                    xe.append(vec_apply(f, xb, e_prev))
                for j in range(n):
                    row = {}
                    for (q, m), c in self._r2_terms[j].items():
                        for w, cw in xe[q].items():
                            col = fcol.get((w, m))
                            if col is None:
                                continue
                            t = c * cw
                            row[col] = row[col] + t if col in row else t
                    row = f.post_reduce(row)
                    if row:
                        rel.append(row)

        pivots, rrows = rref_rows(f, rel, ncols)
        pivset = set(pivots)
        basis_at = {}
        words = []
        is_r = []
        parent = []
        for col, coord in enumerate(coords):
            if col in pivset:
                continue
            basis_at[col] = len(words)
            if coord[1] == "e":
                i = coord[0]
                words.append(self.words[d - 1][i] + (E_LETTER,))
                is_r.append(True)
                parent.append((i, "e", None))
            else:
                i, _, m = coord[0], coord[1], coord[2]
                words.append(self.words[d - 1][i] + (F_LETTER, m))
                is_r.append(False)
                parent.append((i, "f", m))

        red = [None] * ncols
        for col in range(ncols):
            if col not in pivset:
                red[col] = {basis_at[col]: f.one}
        for pc, r in zip(pivots, rrows):
            red[pc] = {basis_at[q]: f.neg(v) for q, v in r.items() if q != pc}

        e_rows = []
        for i in range(prev_dim):
            e_rows.append(red[ecol[i]] if i in ecol else {})
        fb = []
        for j in range(n):
            rows = []
            for i in range(prev_dim):
                rows.append(red[fcol[(i, j)]] if (i, j) in fcol else {})
            fb.append(rows)
        unit = self.pair.algebra.unit
        f_rows = []
        for i in range(prev_dim):
            acc = {}
            for j in range(n):
                if f.is_zero(unit[j]):
                    continue
                acc = vec_add(f, acc, fb[j][i], unit[j])
            f_rows.append(acc)
        alg = self.pair.algebra
        b_rows = []
        for j in range(n):
            rows = []
            for k, (i, kind, m) in enumerate(parent):
                if kind == "e":
                    rows.append({})
                    continue
                acc = {}
                for q, c in alg.table[m][j].items():
                    acc = vec_add(f, acc, red[fcol[(i, q)]], c)
                rows.append(acc)
            b_rows.append(rows)

        self.words.append(words)
        self.is_r.append(is_r)
        self.parent.append(parent)
        self.E.append(e_rows)
        self.FB.append(fb)
        self.F.append(f_rows)
        self.B.append(b_rows)

    # -- elements and multiplication ---------------------------------------

    def zero(self, d: int) -> PiElement:
        return PiElement(self, d, {})

    def basis_element(self, d: int, i: int) -> PiElement:
        return PiElement(self, d, {i: self.field.one})

    def unit_element(self) -> PiElement:
        f = self.field
        vec = {0: f.one}
        for j, c in enumerate(self.pair.algebra.unit):
            if not f.is_zero(c):
                vec[1 + j] = c
        return PiElement(self, 0, vec)

    def _fold(self, vec, d, letters):
        f = self.field
        for L in letters:
            if L == A_LETTER:
                isr = self.is_r[d]
                vec = {i: c for i, c in vec.items() if isr[i]}
            elif L >= 0:
                vec = vec_apply(f, vec, self.B[d][L]) if vec else {}
            elif L == E_LETTER:
                d += 1
                if d > self.D:
                    raise DegreeRangeError(f"degree {d} exceeds build degree {self.D}")
                vec = vec_apply(f, vec, self.E[d]) if vec else {}
            elif L == F_LETTER:
                d += 1
                if d > self.D:
                    raise DegreeRangeError(f"degree {d} exceeds build degree {self.D}")
                vec = vec_apply(f, vec, self.F[d]) if vec else {}
            else:
                raise ValueError(f"bad letter {L}")
        return vec, d

    def multiply(self, x: PiElement, y: PiElement) -> PiElement:
        f = self.field
        if x.graded is not self or y.graded is not self:
            raise DegreeRangeError("elements from a different build")
        dt = x.d + y.d
        if dt > self.D:
            raise DegreeRangeError(f"product degree {dt} exceeds build degree {self.D}")
        out = {}
        for idx, c in y.vec.items():
            v, dd = self._fold(x.vec, x.d, self.words[y.d][idx])
            for k, w in v.items():
                t = c * w
                out[k] = out[k] + t if k in out else t
        return PiElement(self, dt, out)

    # -- words --------------------------------------------------------------

    def _token_list(self):
        toks = [(nm, ("slot", j)) for j, nm in enumerate(self.pair.algebra.names)]
        toks.extend([("a", ("a",)), ("e", ("e",)), ("f", ("f",))])
        toks.sort(key=lambda t: -len(t[0]))
        return toks

    def tokenize(self, text: str):
        toks = self._token_list()
        out = []
        i = 0
        while i < len(text):
            if text[i].isspace() or text[i] == "*":
                i += 1
                continue
            for nm, code in toks:
                if text.startswith(nm, i):
                    out.append(code)
                    i += len(nm)
                    break
            else:
                raise WordSyntaxError(f"unreadable word at ...{text[i:]!r}")
        if not out:
            raise WordSyntaxError("empty word")
        return out

    def element_from_word(self, text: str) -> PiElement:
        letters = []
        for code in self.tokenize(text):
            if code[0] == "slot":
                letters.append(code[1])
            elif code[0] == "a":
                letters.append(A_LETTER)
            elif code[0] == "e":
                letters.append(E_LETTER)
            else:
                letters.append(F_LETTER)
        target = sum(1 for L in letters if L in (E_LETTER, F_LETTER))
        if target > self.D:
            raise DegreeRangeError(f"word degree {target} exceeds build degree {self.D}")
        u = self.unit_element()
        vec, d = self._fold(u.vec, 0, letters)
        return PiElement(self, d, vec)

    def element_from_expr(self, text: str) -> PiElement:
        """Signed sums of words with optional integer coefficients."""
        terms = []
        cur = ""
        sign = 1
        pending = []
        for ch in text:
            if ch in "+-":
                if cur.strip():
                    pending.append((sign, cur.strip()))
                cur = ""
                sign = 1 if ch == "+" else -1
            else:
                cur += ch
        if cur.strip():
            pending.append((sign, cur.strip()))
        if not pending:
            raise WordSyntaxError("empty expression")
        out = None
        for sg, word in pending:
            coeff = sg
            if "*" in word:
                head, tail = word.split("*", 1)
                if head.strip().isdigit():
                    coeff = sg * int(head.strip())
                    word = tail
            el = self.element_from_word(word).scale(coeff)
            out = el if out is None else out + el
        return out

    def word_str(self, word) -> str:
        f = self.field
        names = self.pair.algebra.names
        unit_slot = None
        uv = self.pair.algebra.unit_vec()
        if len(uv) == 1:
            (j, c), = uv.items()
            if f.is_zero(f.sub(c, f.one)):
                unit_slot = j
        parts = []
        for idx, L in enumerate(word):
            if L == A_LETTER:
                if len(word) == 1:
                    parts.append("a")
            elif L == E_LETTER:
                parts.append("e")
            elif L == F_LETTER:
                parts.append("f")
            else:
                drop = L == unit_slot and (
                    (idx > 0 and word[idx - 1] == F_LETTER)
                    or (idx == 0 and len(word) > 1 and word[1] == E_LETTER)
                )
                if not drop:
                    parts.append(names[L])
        return "".join(parts) or "1"

    def format_element(self, x: PiElement) -> str:
        f = self.field
        if not x.vec:
            return "0"
        items = sorted(x.vec.items(), key=lambda kv: (self.word_str(self.words[x.d][kv[0]]), kv[0]))
        parts = []
        for i, c in items:
            w = self.word_str(self.words[x.d][i])
            cs = f.fmt(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            body = w if mag == "1" else f"{mag}*{w}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def basis_words(self, d: int):
        return [self.word_str(w) for w in self.words[d]]

    # -- generators and left multiplication ---------------------------------

    def generators(self):
        """The 2n + 1 algebra generators with their degrees.

        Degree 0: a and the slots; degree 1: b_i e and f b_j, which span
        the degree-1 piece.
        """
        f = self.field
        gens = [("a", PiElement(self, 0, {0: f.one}))]
        names = self.pair.algebra.names
        for j in range(self.n):
            gens.append((names[j], PiElement(self, 0, {1 + j: f.one})))
        for i in range(self.n):
            vec = self.E[1][1 + i]
            gens.append((f"{names[i]}e", PiElement(self, 1, dict(vec))))
        for j in range(self.n):
            vec = self.FB[1][j][0]
            gens.append((f"f{names[j]}", PiElement(self, 1, dict(vec))))
        return gens

    def left0(self, d: int):
        """Left multiplication rows for a and each slot, on degree d."""
        ops = self._l0.get(d)
        if ops is not None:
            return ops
        f = self.field
        if d == 0:
            ops = []
            for gvec in [{0: f.one}] + [{1 + j: f.one} for j in range(self.n)]:
                rows = []
                for w in self.words[0]:
                    v, _ = self._fold(dict(gvec), 0, w)
                    rows.append(v)
                ops.append(rows)
        else:
            prev = self.left0(d - 1)
            ops = []
            for g in range(self.n + 1):
                rows = []
                for (i, kind, m) in self.parent[d]:
                    pv = prev[g][i]
                    if kind == "e":
                        rows.append(vec_apply(f, pv, self.E[d]) if pv else {})
                    else:
                        rows.append(vec_apply(f, pv, self.FB[d][m]) if pv else {})
                ops.append(rows)
        self._l0[d] = ops
        return ops

    def left1(self, d: int):
        """Left multiplication rows for b_i e and f b_j, degree d to d+1."""
        ops = self._l1.get(d)
        if ops is not None:
            return ops
        if d + 1 > self.D:
            raise DegreeRangeError(f"degree {d + 1} exceeds build degree {self.D}")
        f = self.field
        if d == 0:
            gvecs = [dict(self.E[1][1 + i]) for i in range(self.n)]
            gvecs += [dict(self.FB[1][j][0]) for j in range(self.n)]
            ops = []
            for gvec in gvecs:
                rows = []
                for w in self.words[0]:
                    v, _ = self._fold(dict(gvec), 1, w)
                    rows.append(v)
                ops.append(rows)
        else:
            prev = self.left1(d - 1)
            ops = []
            for g in range(2 * self.n):
                rows = []
                for (i, kind, m) in self.parent[d]:
                    pv = prev[g][i]
                    if kind == "e":
                        rows.append(vec_apply(f, pv, self.E[d + 1]) if pv else {})
                    else:
                        rows.append(vec_apply(f, pv, self.FB[d + 1][m]) if pv else {})
                ops.append(rows)
        self._l1[d] = ops
        return ops

    # -- projections and dimension bookkeeping ------------------------------

    def split_dims(self, d: int):
        """Dimensions of the two one-sided pieces of degree d."""
        got = self._split.get(d)
        if got is not None:
            return got
        f = self.field
        la = self.left0(d)[0]
        unit = self.pair.algebra.unit
        ls = []
        for i in range(self.dim(d)):
            acc = {}
            for j in range(self.n):
                if f.is_zero(unit[j]):
                    continue
                acc = vec_add(f, acc, self.left0(d)[1 + j][i], unit[j])
            ls.append(acc)
        ra = Subspace.from_vectors(f, self.dim(d), [dict(r) for r in la]).dim
        rs = Subspace.from_vectors(f, self.dim(d), ls).dim
        assert ra + rs == self.dim(d)
        self._split[d] = (ra, rs)
        return ra, rs

    def resolution_identity_check(self, D: int) -> bool:
        """Euler characteristic of the standard projective resolution.

        With h_d(R) and h_d(S) the dimensions of the two one-sided pieces,
        both alternating sums must vanish for every d up to D:
        h_{d-2}(R) - h_{d-1}(S) + h_d(R) = delta_{d,0} and
        h_{d-2}(S) - n h_{d-1}(R) + h_d(S) = n delta_{d,0}.
        """
        if D > self.D:
            raise DegreeRangeError(f"degree {D} exceeds build degree {self.D}")
        n = self.n

        def h(d):
            if d < 0:
                return (0, 0)
            return self.split_dims(d)

        for d in range(D + 1):
            hr2, hs2 = h(d - 2)
            hr1, hs1 = h(d - 1)
            hr0, hs0 = h(d)
            lhs1 = hr2 - hs1 + hr0 - (1 if d == 0 else 0)
            lhs2 = hs2 - n * hr1 + hs0 - (n if d == 0 else 0)
            if lhs1 != 0 or lhs2 != 0:
                return False
        return True


def build(pair: FrobeniusPair, D: int, cache_dir=None) -> GradedAlgebra:
    """Construct all graded pieces up to degree D, optionally disk-cached."""
    if cache_dir:
        from . import cache

        return cache.build_cached(pair, D, cache_dir)
    return GradedAlgebra(pair, D)
