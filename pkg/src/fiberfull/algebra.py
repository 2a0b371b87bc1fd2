"""Exact scalars, monomials, monomial orders and sparse polynomials.

Polynomials are stored as ``{exponent tuple: coefficient}`` dicts.  Rational
coefficients are ``gmpy2.mpq`` values; prime-field coefficients are Python
ints in ``[0, p)``.
"""

from __future__ import annotations

import math
import re
from functools import lru_cache

from gmpy2 import mpq

MAX_VARS = 16
MAX_EXPONENT = (1 << 16) - 1

LT, EQ, GT = -1, 0, 1


class DimensionError(ValueError):
    """Monomials or polynomials from rings of different shape were combined."""


class RingMismatchError(ValueError):
    pass


class Field:
    """The rationals (``p == 0``) or a prime field GF(p)."""

    def __init__(self, p=0):
        if p:
            if p < 2 or p >= 1 << 31 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
                raise ValueError(f"GF(p) needs a prime p < 2^31, got {p}")
        self.p = p

    @property
    def characteristic(self):
        return self.p

    def __call__(self, value):
        if isinstance(value, float):
            raise TypeError("floating-point scalars are not allowed; use int, str or Fraction")
        if self.p:
            if isinstance(value, str):
                value = mpq(value)
            if isinstance(value, int):
                return value % self.p
            value = mpq(value)
            return int(value.numerator) * pow(int(value.denominator), -1, self.p) % self.p
        return mpq(value)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(a), -1, self.p)
        return mpq(1) / a

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def to_json(self, a):
        """Canonical string form used in reports."""
        if self.p:
            return str(int(a))
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"

    @property
    def name(self):
        return f"gf:{self.p}" if self.p else "qq"


QQ = Field(0)


def GF(p):
    return Field(p)


class MonomialOrder:
    """lex, grevlex, or a weight order refined by grevlex.

    ``key(exps)`` returns an integer that is strictly increasing in the order,
    which lets the Groebner kernels compare terms with plain integer compares.
    """

    def __init__(self, kind="grevlex", weights=None):
        if kind not in ("lex", "grevlex", "weight"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "weight":
            if weights is None:
                raise ValueError("weight order needs a weight vector")
            weights = tuple(int(w) for w in weights)
        else:
            weights = None
        self.kind = kind
        self.weights = weights
        self._key = lru_cache(maxsize=None)(self._compute_key)

    def key(self, exps):
        return self._key(exps)

    def _compute_key(self, exps):
        base = MAX_EXPONENT + 1
        if self.kind == "lex":
            k = 0
            for e in exps:
                k = k * base + e
            return k
        k = sum(exps)
        for e in reversed(exps):
            k = k * base + (MAX_EXPONENT - e)
        if self.kind == "weight":
            if len(self.weights) != len(exps):
                raise DimensionError("weight vector length differs from the variable count")
            wdot = sum(w * e for w, e in zip(self.weights, exps))
            k += wdot * base ** (len(exps) + 2)
        return k

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.weights) == (other.kind, other.weights)

    def __hash__(self):
        return hash((self.kind, self.weights))

    def __repr__(self):
        if self.kind == "weight":
            return "weight:" + ",".join(map(str, self.weights))
        return self.kind

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text.startswith("weight"):
            _, _, rest = text.partition(":")
            if not rest:
                rest = text[len("weight"):].strip("() ")
            return cls("weight", [int(w) for w in re.split(r"[,\s]+", rest.strip("() ")) if w])
        return cls(text)


def compare_monomials(order, a, b):
    """Return LT, EQ or GT for exponent vectors ``a`` and ``b`` under ``order``."""
    if len(a) != len(b):
        raise DimensionError(f"monomials with {len(a)} and {len(b)} variables")
    if a == b:
        return EQ
    ka, kb = order.key(tuple(a)), order.key(tuple(b))
    return GT if ka > kb else LT


class PolynomialRing:
    """k[x_1..x_n] with the standard grading and a fixed ambient order."""

    def __init__(self, names, field=QQ, order=None):
        names = tuple(names)
        if not 0 <= len(names) <= MAX_VARS:
            raise ValueError(f"rings are limited to {MAX_VARS} variables")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.n = len(names)
        self.field = field
        self.order = order if order is not None else MonomialOrder("grevlex")
        if self.order.kind == "weight" and len(self.order.weights) != self.n:
            raise DimensionError("weight vector length differs from the variable count")

    def with_order(self, order):
        return PolynomialRing(self.names, self.field, order)

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.names == other.names
                and self.field == other.field)

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"{self.field}[{','.join(self.names)}]"

    @property
    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def var(self, i):
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field(c)
        return Polynomial(self, {(0,) * self.n: c} if c else {})

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.n:
            raise DimensionError("exponent vector length differs from the variable count")
        c = self.field(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def __call__(self, text):
        return parse_polynomial(self, text)


def _check_exps(e):
    for x in e:
        if x > MAX_EXPONENT:
            raise OverflowError("exponent exceeds the supported range")
    return e


def add_dicts(p, f, g, scale=None):
    """Return ``f + scale*g`` as a new dict (``scale`` None means 1)."""
    out = dict(f)
    if p:
        for m, c in g.items():
            if scale is not None:
                c = c * scale
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    else:
        for m, c in g.items():
            if scale is not None:
                c = c * scale
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def mul_dicts(p, f, g):
    out = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = _check_exps(tuple(a + b for a, b in zip(m1, m2)))
            v = out.get(m, 0) + c1 * c2
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


class Polynomial:
    """An immutable sparse polynomial over a :class:`PolynomialRing`."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = {m: c for m, c in coeffs.items() if c}

    # -- structure -----------------------------------------------------
    def terms(self, order=None):
        """(coefficient, exponents) pairs, strictly decreasing in ``order``."""
        order = order or self.ring.order
        return [(self.coeffs[m], m) for m in sorted(self.coeffs, key=order.key, reverse=True)]

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def degrees(self):
        return {sum(m) for m in self.coeffs}

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        """Total degree; None for the zero polynomial."""
        d = self.degrees()
        return max(d) if d else None

    def leading_term(self, order=None):
        order = order or self.ring.order
        m = max(self.coeffs, key=order.key)
        return self.coeffs[m], m

    def leading_monomial(self, order=None):
        return self.leading_term(order)[1]

    def is_monomial(self):
        return len(self.coeffs) == 1

    def is_constant(self):
        return all(not any(m) for m in self.coeffs)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, add_dicts(self.ring.field.p, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, mul_dicts(self.ring.field.p, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c):
        c = self.ring.field(c)
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m: v * c % p for m, v in self.coeffs.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self.coeffs.items()})

    def monic(self, order=None):
        c, _ = self.leading_term(order)
        return self.scale(self.ring.field.inv(c))

    def evaluate(self, values):
        """Substitute polynomials (or scalars) for the variables."""
        out = None
        for m, c in self.coeffs.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term = term * v**e
            out = term if out is None else out + term
        return out

    # -- comparison / display -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, type(mpq(0)))):
            return self.coeffs == self.ring.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        return format_polynomial(self)


def poly_arith(f, g, op):
    """Apply ``op`` in {add, sub, mul, scale}; for ``scale`` g is a scalar."""
    if op == "scale":
        return f.scale(g)
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring} vs {g.ring}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def format_monomial(names, exps):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f, order=None):
    if not f.coeffs:
        return "0"
    field = f.ring.field
    out = []
    for c, m in f.terms(order):
        if field.p and c > field.p // 2:
            c = c - field.p
        c = mpq(c)
        neg = c < 0
        c = -c if neg else c
        mono = format_monomial(f.ring.names, m)
        cs = field.to_json(mpq(c)) if not field.p else str(int(c))
        if not mono:
            body = cs
        elif c == 1:
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class ParseError(ValueError):
    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()/]))")


def parse_polynomial(ring, text):
    """Parse ``text`` such as ``"x^2 - 3/2*y*z"`` into a polynomial of ``ring``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos + 1)
        num, name, op = m.groups()
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if num is not None:
            tokens.append(("num", num, start))
        elif name is not None:
            tokens.append(("name", name, start))
        else:
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    parser = _Parser(ring, tokens)
    out = parser.expr()
    if parser.peek()[0] != "end":
        raise ParseError(f"unexpected {parser.peek()[1]!r}", parser.peek()[2] + 1)
    return out


class _Parser:
    def __init__(self, ring, tokens):
        self.ring = ring
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term()
        if sign < 0:
            out = -out
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self):
        out = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.power()
                if val == "/":
                    if not rhs.is_constant() or rhs.is_zero():
                        raise ParseError("division only by nonzero constants", self.peek()[2] + 1)
                    out = out.scale(self.ring.field.inv(rhs.coeffs[(0,) * self.ring.n]))
                else:
                    out = out * rhs
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                out = out * self.power()
            else:
                return out

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, col = self.take()
            if kind != "num" or "/" in val:
                raise ParseError("exponent must be a non-negative integer", col + 1)
            base = base ** int(val)
        return base

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            return self.ring.constant(mpq(val))
        if kind == "name":
            if val not in self.ring.names:
                raise ParseError(f"unknown variable {val!r}", col + 1)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            out = self.expr()
            kind2, val2, col2 = self.take()
            if (kind2, val2) != ("op", ")"):
                raise ParseError("expected ')'", col2 + 1)
            return out
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", col + 1)
