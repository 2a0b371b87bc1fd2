"""The line-oriented ideal file format.

::

    # comments run to the end of the line
    ring x y z over QQ          # or: over GF(101) / over gf:101
    order grevlex               # lex | grevlex | weight 2,1,1
    ideal I = x^2, y^2, x*y, x*z, y*z
    weight w = 2,1,1            # optional named weight vectors

Every generator must be homogeneous; diagnostics carry line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra import GF, QQ, MonomialOrder, ParseError, PolynomialRing, format_polynomial, parse_polynomial
from .groebner import Ideal


class IdealFileError(ValueError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + loc)
        self.message = message
        self.line = line
        self.column = column


@dataclass
class IdealFile:
    names: tuple
    field_name: str = "QQ"
    order_text: str = "grevlex"
    ideals: dict = field(default_factory=dict)     # name -> list of generator strings (canonical)
    weights: dict = field(default_factory=dict)    # name -> tuple of ints
    _ring: object = None

    @property
    def ring(self):
        if self._ring is None:
            self._ring = PolynomialRing(self.names, field_from_name(self.field_name),
                                        MonomialOrder.parse(self.order_text))
        return self._ring

    def ideal(self, name=None):
        if name is None:
            name = next(iter(self.ideals))
        if name not in self.ideals:
            raise KeyError(f"no ideal named {name!r}")
        ring = self.ring
        return Ideal(ring, [ring(g) for g in self.ideals[name]])

    def with_overrides(self, field_name=None, order_text=None):
        out = IdealFile(self.names, field_name or self.field_name, order_text or self.order_text,
                        dict(self.ideals), dict(self.weights))
        return out


def field_from_name(name):
    s = name.strip()
    low = s.lower()
    if low in ("qq", "q"):
        return QQ
    m = re.fullmatch(r"(?:gf[:(]\s*(\d+)\s*\)?)", low)
    if m:
        p = int(m.group(1))
        return GF(p)
    raise ValueError(f"unknown field {name!r}; use QQ or gf:p")


def canonical_field_name(name):
    f = field_from_name(name)
    return "QQ" if f.p == 0 else f"GF({f.p})"


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


def parse_ideal_file(text):
    names = None
    field_name = "QQ"
    order_text = "grevlex"
    raw_ideals = []
    weights = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        head, _, rest = stripped.partition(" ")
        rest = rest.strip()
        if head == "ring":
            if names is not None:
                raise IdealFileError("ring declared twice", lineno)
            m = re.fullmatch(r"(.*?)\s+over\s+(\S+)", rest)
            if m:
                vars_text, field_name = m.group(1), m.group(2)
            else:
                vars_text = rest
            names = tuple(v for v in re.split(r"[\s,]+", vars_text) if v)
            if not names:
                raise IdealFileError("ring declares no variables", lineno)
            for v in names:
                if not _NAME.match(v):
                    raise IdealFileError(f"bad variable name {v!r}", lineno, body.find(v) + 1)
            try:
                field_name = canonical_field_name(field_name)
            except ValueError as e:
                raise IdealFileError(str(e), lineno) from None
        elif head == "order":
            try:
                order = MonomialOrder.parse(rest)
            except ValueError as e:
                raise IdealFileError(str(e), lineno) from None
            order_text = repr(order)
        elif head in ("ideal", "weight"):
            name, eq, value = rest.partition("=")
            name = name.strip()
            if not eq or not _NAME.match(name):
                raise IdealFileError(f"expected '{head} NAME = ...'", lineno)
            offset = body.index("=") + 1
            if head == "weight":
                try:
                    weights[name] = tuple(int(w) for w in re.split(r"[,\s]+", value.strip()) if w)
                except ValueError:
                    raise IdealFileError("weights must be integers", lineno) from None
            else:
                raw_ideals.append((name, value, offset, lineno))
        else:
            raise IdealFileError(f"unknown directive {head!r}", lineno, body.find(head) + 1)
    if names is None:
        raise IdealFileError("no ring declared")
    if not raw_ideals:
        raise IdealFileError("no ideals declared")
    try:
        order = MonomialOrder.parse(order_text)
        ring = PolynomialRing(names, field_from_name(field_name), order)
    except ValueError as e:
        raise IdealFileError(str(e)) from None
    ideals = {}
    for name, value, offset, lineno in raw_ideals:
        if name in ideals:
            raise IdealFileError(f"ideal {name!r} declared twice", lineno)
        gens = []
        pos = offset
        for piece in value.split(","):
            lead = len(piece) - len(piece.lstrip())
            col0 = pos + lead + 1
            pos += len(piece) + 1
            if not piece.strip():
                if value.strip():
                    raise IdealFileError("empty generator", lineno, col0)
                continue
            try:
                f = parse_polynomial(ring, piece)
            except ParseError as e:
                col = col0 + (e.column - 1) if e.column else None
                raise IdealFileError(str(e), lineno, col) from None
            if not f.is_homogeneous():
                raise IdealFileError("inhomogeneous", lineno, col0)
            gens.append(format_polynomial(f))
        ideals[name] = gens
    for name, w in weights.items():
        if len(w) != len(names):
            raise IdealFileError(f"weight {name!r} has {len(w)} entries for {len(names)} variables")
    return IdealFile(names, field_name, order_text, ideals, weights)


def format_ideal_file(f):
    lines = [f"ring {' '.join(f.names)} over {f.field_name}", f"order {_order_line(f.order_text)}"]
    for name, gens in f.ideals.items():
        lines.append(f"ideal {name} = " + ", ".join(gens))
    for name, w in f.weights.items():
        lines.append(f"weight {name} = " + ",".join(map(str, w)))
    return "\n".join(lines) + "\n"


def _order_line(order_text):
    if order_text.startswith("weight:"):
        return "weight " + order_text[len("weight:"):]
    return order_text
