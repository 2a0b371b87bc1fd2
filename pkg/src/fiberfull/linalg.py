"""Sparse exact Gauss-Jordan elimination over QQ or GF(p).

Vectors are dicts ``{column key: nonzero coefficient}``; column keys only
need to be hashable and mutually comparable.
"""

from __future__ import annotations

from gmpy2 import mpq


def _axpy(p, y, a, x):
    """y += a*x in place (dicts)."""
    if p:
        for k, v in x.items():
            w = (y.get(k, 0) + a * v) % p
            if w:
                y[k] = w
            else:
                y.pop(k, None)
    else:
        for k, v in x.items():
            w = y.get(k, 0) + a * v
            if w:
                y[k] = w
            else:
                y.pop(k, None)


def _inv(p, a):
    return pow(int(a), -1, p) if p else mpq(1) / a


class Echelon:
    """Incrementally built reduced row echelon basis of a subspace.

    With ``track=True`` every stored row remembers which combination of the
    inserted vectors produced it, so dependencies come out as kernel vectors.
    """

    def __init__(self, p=0, track=False):
        self.p = p
        self.track = track
        self.rows = {}   # pivot column -> row (pivot entry 1)
        self.combos = {}
        self.count = 0

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, v, combo=None):
        v = dict(v)
        p = self.p
        for c in [c for c in v if c in self.rows]:
            a = v.get(c)
            if not a:
                continue
            _axpy(p, v, -a, self.rows[c])
            if combo is not None:
                _axpy(p, combo, -a, self.combos[c])
        return v

    def add(self, v):
        """Insert ``v``; return the kernel relation if it was dependent, else None."""
        tag = self.count
        self.count += 1
        combo = {tag: 1} if self.track else None
        r = self.reduce(v, combo)
        if not r:
            return combo if self.track else {}
        p = self.p
        piv = max(r)
        inv = _inv(p, r[piv])
        if p:
            r = {k: x * inv % p for k, x in r.items()}
            if combo is not None:
                combo = {k: x * inv % p for k, x in combo.items()}
        else:
            r = {k: x * inv for k, x in r.items()}
            if combo is not None:
                combo = {k: x * inv for k, x in combo.items()}
        for c, row in self.rows.items():
            a = row.get(piv)
            if a:
                _axpy(p, row, -a, r)
                if combo is not None:
                    _axpy(p, self.combos[c], -a, combo)
        self.rows[piv] = r
        if combo is not None:
            self.combos[piv] = combo
        return None

    def contains(self, v):
        return not self.reduce(v)


def rank(vectors, p=0):
    e = Echelon(p)
    for v in vectors:
        e.add(v)
    return e.rank


def kernel(columns, p=0):
    """Basis of ``{c : sum_i c_i * columns[i] = 0}`` as dicts ``{i: c_i}``."""
    e = Echelon(p, track=True)
    out = []
    for col in columns:
        rel = e.add(col)
        if rel is not None:
            out.append(rel)
    return out


def row_space_basis(vectors, p=0):
    e = Echelon(p)
    for v in vectors:
        e.add(v)
    return [e.rows[c] for c in sorted(e.rows)]
