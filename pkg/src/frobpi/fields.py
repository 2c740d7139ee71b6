"""Exact scalars: rationals, prime fields F_p, and rational functions in u.

Every scalar that crosses a public interface carries its field tag; mixing
tags raises instead of coercing.  Internally each field works on a raw
payload type (Fraction, reduced int, RatF) so the linear algebra layer can
use native arithmetic operators in hot loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldMismatchError(ValueError):
    """Arithmetic attempted between scalars with different field tags."""


class PoleError(ZeroDivisionError):
    """Specialization of a rational function at a pole of its denominator."""


class BadReductionError(ZeroDivisionError):
    """Reduction mod p of a rational whose denominator is divisible by p."""


class ScalarSyntaxError(ValueError):
    """Unparseable scalar string."""


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the 2^31 cap used here."""
    if p < 2:
        return False
    for q in _MR_BASES:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x == 1 or x == p - 1:
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# univariate polynomials (dense, ascending coefficients, generic base field)


class UniPoly:
    """Dense univariate polynomial over a Field, trailing zeros trimmed."""

    __slots__ = ("field", "var", "coeffs")

    def __init__(self, field, coeffs, var="t"):
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs = coeffs[:-1]
        self.field = field
        self.var = var
        self.coeffs = tuple(coeffs)

    @classmethod
    def const(cls, field, c, var="t"):
        return cls(field, (field.convert(c),), var)

    @classmethod
    def gen(cls, field, var="t"):
        return cls(field, (field.zero, field.one), var)

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def lc(self):
        return self.coeffs[-1]

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.field.tag == other.field.tag
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.tag, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return UniPoly(f, out, self.var)

    def __neg__(self):
        f = self.field
        return UniPoly(f, [f.neg(c) for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.field
        if self.is_zero() or other.is_zero():
            return UniPoly(f, (), self.var)
        out = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if f.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = f.add(out[i + j], f.mul(a, b))
        return UniPoly(f, out, self.var)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(self.field, other, self.var)

    def scale(self, c):
        f = self.field
        return UniPoly(f, [f.mul(a, c) for a in self.coeffs], self.var)

    def shift(self, k):
        """Multiply by var**k."""
        if self.is_zero():
            return self
        return UniPoly(self.field, (self.field.zero,) * k + self.coeffs, self.var)

    def divmod(self, other):
        f = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(f, (), self.var), self
        quo = [f.zero] * (dq + 1)
        inv_lc = f.inv(other.lc())
        for k in range(dq, -1, -1):
            top = rem[k + other.degree]
            if f.is_zero(top):
                continue
            q = f.mul(top, inv_lc)
            quo[k] = q
            for i, c in enumerate(other.coeffs):
                rem[k + i] = f.sub(rem[k + i], f.mul(q, c))
        return UniPoly(f, quo, self.var), UniPoly(f, rem, self.var)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc()))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def eval(self, c):
        f = self.field
        c = f.convert(c)
        acc = f.zero
        for a in reversed(self.coeffs):
            acc = f.add(f.mul(acc, c), a)
        return acc

    def map_coeffs(self, field, fn):
        return UniPoly(field, [fn(c) for c in self.coeffs], self.var)

    def __repr__(self):
        return f"UniPoly({poly_str(self)})"


def poly_str(p: UniPoly) -> str:
    """Human-readable form, highest degree first; round-trips through parse."""
    if p.is_zero():
        return "0"
    f = p.field
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if f.is_zero(c):
            continue
        cs = f.fmt(c)
        neg = cs.startswith("-")
        mag = cs[1:] if neg else cs
        if k == 0:
            body = mag
        else:
            v = p.var if k == 1 else f"{p.var}^{k}"
            body = v if mag == "1" else f"{mag}*{v}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def poly_ext_gcd(a: UniPoly, b: UniPoly):
    """Return (g, x, y) with x*a + y*b = g, g monic."""
    f = a.field
    zero, one = UniPoly(f, (), a.var), UniPoly.const(f, f.one, a.var)
    r0, r1 = a, b
    x0, x1 = one, zero
    y0, y1 = zero, one
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if r0.is_zero():
        return r0, x0, y0
    c = f.inv(r0.lc())
    return r0.scale(c), x0.scale(c), y0.scale(c)


# ---------------------------------------------------------------------------
# rational functions in u over Q


class RatF:
    """Quotient of polynomials in u over Q; denominator monic, gcd one."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly = None):
        if den is None:
            den = UniPoly.const(QQ, 1, "u")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in rational function")
        if num.is_zero():
            num = UniPoly(QQ, (), "u")
            den = UniPoly.const(QQ, 1, "u")
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            c = den.lc()
            if c != 1:
                inv = QQ.inv(c)
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c):
        return cls(UniPoly.const(QQ, c, "u"))

    @classmethod
    def gen(cls):
        return cls(UniPoly.gen(QQ, "u"))

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatF.const(other)
        if not isinstance(other, RatF):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, RatF):
            return other
        if isinstance(other, int):
            return RatF.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatF(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatF(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatF(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatF(self.num * o.den, self.den * o.num)

    def eval(self, c: Fraction) -> Fraction:
        d = self.den.eval(c)
        if d == 0:
            raise PoleError(f"pole at u = {c}")
        return self.num.eval(c) / d

    def __repr__(self):
        return f"RatF({QU.fmt(self)})"


# ---------------------------------------------------------------------------
# multivariate polynomials (for generic Gram determinants)


class MultiPoly:
    """Sparse polynomial in several variables over a Field."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars, terms=None):
        self.field = field
        self.nvars = nvars
        t = {}
        if terms:
            for e, c in terms.items():
                if not field.is_zero(c):
                    t[e] = c
        self.terms = t

    @classmethod
    def const(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: field.convert(c)})

    @classmethod
    def gen(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): field.one})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = f.add(out.get(e, f.zero), c)
            if f.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(f, self.nvars, out)

    def __neg__(self):
        f = self.field
        return MultiPoly(f, self.nvars, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        f = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(out.get(e, f.zero), f.mul(c1, c2))
                if f.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(f, self.nvars, out)

    def scale(self, c):
        f = self.field
        return MultiPoly(f, self.nvars, {e: f.mul(v, c) for e, v in self.terms.items()})

    def eval(self, point):
        f = self.field
        acc = f.zero
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                for _ in range(k):
                    v = f.mul(v, point[i])
            acc = f.add(acc, v)
        return acc


# ---------------------------------------------------------------------------
# the three fields


class Field:
    tag = "?"

    def convert(self, c):
        raise NotImplementedError

    def is_zero(self, a):
        raise NotImplementedError

    def post_reduce(self, d: dict) -> dict:
        """Normalize a sparse vector accumulated with raw payload ops."""
        return {k: v for k, v in d.items() if not self.is_zero(v)}

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"Field({self.tag})"


class RationalField(Field):
    tag = "q"
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, c):
        if isinstance(c, Fraction):
            return c
        if isinstance(c, int):
            return Fraction(c)
        raise FieldMismatchError(f"cannot interpret {c!r} as a rational")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def parse(self, s: str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ScalarSyntaxError(f"bad rational {s!r}") from e

    def fmt(self, a) -> str:
        return str(a)


class PrimeField(Field):
    """F_p with int payloads kept reduced to [0, p)."""

    _cache: dict = {}

    def __new__(cls, p):
        inst = cls._cache.get(p)
        if inst is None:
            if not isinstance(p, int) or not 2 <= p < 2**31:
                raise ValueError(f"modulus out of range: {p}")
            if not is_prime(p):
                raise ValueError(f"modulus {p} is not prime")
            inst = super().__new__(cls)
            inst.p = p
            inst.tag = f"fp:{p}"
            inst.zero = 0
            inst.one = 1 % p
            cls._cache[p] = inst
        return inst

    def convert(self, c):
        if isinstance(c, int):
            return c % self.p
        if isinstance(c, Fraction):
            return reduce_fraction_mod_p(c, self.p)
        raise FieldMismatchError(f"cannot interpret {c!r} in F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def post_reduce(self, d: dict) -> dict:
        p = self.p
        out = {}
        for k, v in d.items():
            v %= p
            if v:
                out[k] = v
        return out

    def parse(self, s: str):
        s = s.strip()
        if "/" in s:
            a, b = s.split("/", 1)
            try:
                return self.div(int(a) % self.p, int(b) % self.p)
            except ValueError as e:
                raise ScalarSyntaxError(f"bad residue {s!r}") from e
        try:
            return int(s) % self.p
        except ValueError as e:
            raise ScalarSyntaxError(f"bad residue {s!r}") from e

    def fmt(self, a) -> str:
        return str(a % self.p)


class RationalFunctionField(Field):
    tag = "qu"

    def __init__(self):
        self.zero = RatF.const(0)
        self.one = RatF.const(1)

    def convert(self, c):
        if isinstance(c, RatF):
            return c
        if isinstance(c, (int, Fraction)):
            return RatF.const(Fraction(c))
        raise FieldMismatchError(f"cannot interpret {c!r} in Q(u)")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(u)")
        return RatF(a.den, a.num)

    def is_zero(self, a):
        return a.is_zero()

    def gen(self):
        return RatF.gen()

    def parse(self, s: str):
        return _parse_qu(s)

    def fmt(self, a) -> str:
        if a.is_poly():
            c = a.den.coeffs[0]
            num = a.num if c == 1 else a.num.scale(QQ.inv(c))
            return poly_str(num)
        return f"({poly_str(a.num)})/({poly_str(a.den)})"


QQ = RationalField()
QU = RationalFunctionField()


def FP(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(desc: str) -> Field:
    """Descriptor strings: 'q', 'fp:<p>', 'qu'."""
    d = desc.strip().lower()
    if d == "q":
        return QQ
    if d == "qu":
        return QU
    if d.startswith("fp:"):
        try:
            p = int(d[3:])
        except ValueError as e:
            raise ValueError(f"bad field descriptor {desc!r}") from e
        return PrimeField(p)
    raise ValueError(f"bad field descriptor {desc!r}")


# ---------------------------------------------------------------------------
# expression parser for Q(u) scalar strings


class _Tok:
    def __init__(self, s: str):
        self.s = s
        self.i = 0

    def peek(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1
        if self.i >= len(self.s):
            return None
        c = self.s[self.i]
        if c.isdigit():
            j = self.i
            while j < len(self.s) and self.s[j].isdigit():
                j += 1
            return self.s[self.i : j]
        return c

    def take(self):
        t = self.peek()
        if t is not None:
            self.i += len(t)
        return t


def _parse_qu(s: str) -> RatF:
    tk = _Tok(s)
    v = _qu_expr(tk)
    if tk.peek() is not None:
        raise ScalarSyntaxError(f"trailing input in scalar {s!r}")
    return v


def _qu_expr(tk) -> RatF:
    t = tk.peek()
    neg = False
    if t in ("+", "-"):
        tk.take()
        neg = t == "-"
    v = _qu_term(tk)
    if neg:
        v = -v
    while True:
        t = tk.peek()
        if t == "+":
            tk.take()
            v = v + _qu_term(tk)
        elif t == "-":
            tk.take()
            v = v - _qu_term(tk)
        else:
            return v


def _qu_term(tk) -> RatF:
    v = _qu_factor(tk)
    while True:
        t = tk.peek()
        if t == "*":
            tk.take()
            v = v * _qu_factor(tk)
        elif t == "/":
            tk.take()
            d = _qu_factor(tk)
            if d.is_zero():
                raise ZeroDivisionError("division by zero in scalar string")
            v = v / d
        else:
            return v


def _qu_factor(tk) -> RatF:
    v = _qu_atom(tk)
    if tk.peek() == "^":
        tk.take()
        t = tk.take()
        neg = False
        if t == "-":
            neg = True
            t = tk.take()
        if t is None or not t.isdigit():
            raise ScalarSyntaxError("exponent must be an integer")
        k = int(t)
        out = RatF.const(1)
        for _ in range(k):
            out = out * v
        if neg:
            if out.is_zero():
                raise ZeroDivisionError("zero to a negative power")
            out = RatF(out.den, out.num)
        return out
    return v


def _qu_atom(tk) -> RatF:
    t = tk.take()
    if t is None:
        raise ScalarSyntaxError("unexpected end of scalar string")
    if t == "(":
        v = _qu_expr(tk)
        if tk.take() != ")":
            raise ScalarSyntaxError("unbalanced parentheses in scalar string")
        return v
    if t == "u":
        return RatF.gen()
    if t == "-":
        return -_qu_atom(tk)
    if t.isdigit():
        return RatF.const(int(t))
    raise ScalarSyntaxError(f"unexpected token {t!r} in scalar string")


# ---------------------------------------------------------------------------
# tagged scalar surface


@dataclass(frozen=True)
class Scalar:
    field: Field
    value: object

    def __repr__(self):
        return f"Scalar[{self.field.tag}]({self.field.fmt(self.value)})"


def scalar(field: Field, value) -> Scalar:
    return Scalar(field, field.convert(value))


_OPS = {"add": "add", "sub": "sub", "mul": "mul", "div": "div"}


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if a.field.tag != b.field.tag:
        raise FieldMismatchError(f"mixed field tags {a.field.tag} and {b.field.tag}")
    if op not in _OPS:
        raise ValueError(f"unknown op {op!r}")
    f = a.field
    return Scalar(f, getattr(f, _OPS[op])(a.value, b.value))


def specialize_u(x: Scalar, c) -> Scalar:
    """Evaluate a Q(u) scalar at u = c, failing on poles."""
    if x.field.tag != "qu":
        raise FieldMismatchError(f"specialize_u needs a qu scalar, got {x.field.tag}")
    return Scalar(QQ, x.value.eval(Fraction(c)))


def reduce_fraction_mod_p(x: Fraction, p: int) -> int:
    if x.denominator % p == 0:
        raise BadReductionError(f"denominator of {x} divisible by {p}")
    return x.numerator * pow(x.denominator % p, -1, p) % p


def reduce_mod_p(x: Scalar, p: int) -> Scalar:
    """Reduce a rational scalar mod p, failing when p divides the denominator."""
    if x.field.tag != "q":
        raise FieldMismatchError(f"reduce_mod_p needs a q scalar, got {x.field.tag}")
    fp = PrimeField(p)
    return Scalar(fp, reduce_fraction_mod_p(x.value, p))
