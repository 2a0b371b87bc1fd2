"""Stanley-Reisner complexes and Hochster's formula.

Faces are bitsets over the ring variables.  The void complex (no faces) and
the irrelevant complex ``{empty}`` are different objects: the first belongs to
the unit ideal, the second to the maximal ideal.
"""

from __future__ import annotations

from .cohomology import CohomologyTable
from .groebner import Ideal
from .hilbert import HilbertSeries
from .linalg import rank

MAX_VERTICES = 24


class NotSquarefreeError(ValueError):
    pass


def _bits(face):
    out = []
    i = 0
    while face:
        if face & 1:
            out.append(i)
        face >>= 1
        i += 1
    return out


def _popcount(x):
    return bin(x).count("1")


class SimplicialComplex:
    """Downward closure of a facet list on vertices ``0..n-1``."""

    def __init__(self, n, facets):
        if n > MAX_VERTICES:
            raise ValueError(f"at most {MAX_VERTICES} vertices are supported")
        self.n = n
        fs = sorted(set(int(f) for f in facets), key=lambda f: (-_popcount(f), f))
        kept = []
        for f in fs:
            if not any(f & g == f for g in kept):
                kept.append(f)
        self.facets = tuple(sorted(kept))
        self._faces = None

    @classmethod
    def from_faces(cls, n, faces):
        return cls(n, list(faces))

    @property
    def is_void(self):
        return not self.facets

    def faces(self):
        """All faces, including the empty face (unless void), sorted by (size, bits)."""
        if self._faces is None:
            seen = set()
            for f in self.facets:
                sub = f
                while True:
                    seen.add(sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & f
            self._faces = sorted(seen, key=lambda s: (_popcount(s), s))
        return self._faces

    def contains(self, face):
        return any(face & f == face for f in self.facets)

    def dimension(self):
        """Largest face size minus one; -1 for {empty}, None for the void complex."""
        if self.is_void:
            return None
        return max(_popcount(f) for f in self.facets) - 1

    def f_vector(self):
        """Face counts by size, starting with the empty face."""
        out = {}
        for s in self.faces():
            out[_popcount(s)] = out.get(_popcount(s), 0) + 1
        return [out.get(k, 0) for k in range(max(out, default=-1) + 1)]

    def minimal_nonfaces(self):
        out = []
        faces = set(self.faces())
        # candidates: a face plus one vertex
        cands = set()
        for s in faces:
            for v in range(self.n):
                if not s >> v & 1:
                    cands.add(s | 1 << v)
        if self.is_void:
            return [0]
        for c in sorted(cands, key=lambda s: (_popcount(s), s)):
            if c in faces:
                continue
            if all((c & ~(1 << v)) in faces for v in _bits(c)):
                out.append(c)
        return out

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.n == other.n and self.facets == other.facets

    def __hash__(self):
        return hash((self.n, self.facets))

    def __repr__(self):
        if self.is_void:
            return "SimplicialComplex(void)"
        return "SimplicialComplex(" + ", ".join("{" + ",".join(map(str, _bits(f))) + "}" for f in self.facets) + ")"


def stanley_reisner(ideal):
    """Complex whose minimal non-faces are the supports of the generators of a squarefree ideal."""
    if not ideal.is_squarefree_monomial():
        raise NotSquarefreeError("Stanley-Reisner complexes need a squarefree monomial ideal")
    n = ideal.ring.n
    nonfaces = [sum(1 << i for i, a in enumerate(m) if a) for m in ideal.minimal_monomial_generators()]
    if 0 in nonfaces:
        return SimplicialComplex(n, [])
    facets = []

    def grow(face, start):
        extended = False
        for v in range(n):
            if face >> v & 1:
                continue
            new = face | 1 << v
            if any(new & g == g for g in nonfaces):
                continue
            extended = True
            if v >= start:
                grow(new, v + 1)
        if not extended:
            facets.append(face)

    grow(0, 0)
    return SimplicialComplex(n, facets)


def stanley_reisner_ideal(ring, complex_):
    """The ideal generated by the minimal non-faces."""
    gens = []
    for c in complex_.minimal_nonfaces():
        e = tuple(1 if c >> i & 1 else 0 for i in range(ring.n))
        gens.append(ring.monomial(e))
    return Ideal(ring, gens)


def link(complex_, face):
    """``{tau : tau & face = 0, tau | face in complex}``."""
    if not complex_.contains(face):
        raise ValueError("the given set is not a face of the complex")
    facets = [f & ~face for f in complex_.facets if f & face == face]
    return SimplicialComplex(complex_.n, facets)


def _coboundary_ranks(complex_, p):
    """rank of delta^j : C^j -> C^{j+1} for every j >= -1, plus face counts by dimension."""
    by_dim = {}
    for s in complex_.faces():
        by_dim.setdefault(_popcount(s) - 1, []).append(s)
    ranks = {}
    for j, faces in by_dim.items():
        up = by_dim.get(j + 1)
        if not up:
            ranks[j] = 0
            continue
        pos = {s: k for k, s in enumerate(faces)}
        cols = []
        # the transpose (boundary) has the same rank; build it column by column
        for t in up:
            col = {}
            for k, v in enumerate(_bits(t)):
                sign = 1 if k % 2 == 0 else (p - 1 if p else -1)
                col[pos[t & ~(1 << v)]] = sign
            cols.append(col)
        ranks[j] = rank(cols, p)
    return ranks, {j: len(f) for j, f in by_dim.items()}


def reduced_cohomology(complex_, j=None, p=0):
    """dim H~^j(complex; k); with ``j=None`` a dict over every nonzero degree."""
    if complex_.is_void:
        return {} if j is None else 0
    ranks, counts = _coboundary_ranks(complex_, p)
    out = {}
    for d, c in counts.items():
        h = c - ranks.get(d, 0) - ranks.get(d - 1, 0)
        if h:
            out[d] = h
    if j is None:
        return out
    return out.get(j, 0)


def reduced_euler_characteristic(complex_):
    return sum((-1) ** (_popcount(s) - 1) for s in complex_.faces())


def hochster_table(ideal, window=None):
    """Local cohomology of R/I for squarefree I, assembled face by face.

    A face of size s whose link has H~^{i-s-1} contributes, on the Ext side,
    ``t^(s-n) / (1-t)^s`` to Ext^{n-i}; the empty face contributes
    ``t^(-n)`` times dim H~^{i-1} of the whole complex.
    """
    Delta = stanley_reisner(ideal)
    ring = ideal.ring
    n = ring.n
    p = ring.field.p
    ext = {j: HilbertSeries.zero(n) for j in range(n + 1)}
    if not Delta.is_void:
        for face in Delta.faces():
            s = _popcount(face)
            coh = reduced_cohomology(link(Delta, face), None, p)
            for d, h in coh.items():
                i = d + s + 1
                if 0 <= i <= n:
                    ext[n - i] = ext[n - i] + HilbertSeries({s - n: h}, s)
    g = ideal.hilbert_series()
    nonzero = [i for i in range(n + 1) if not ext[n - i].is_zero()]
    dim = Delta.dimension() + 1 if not Delta.is_void else -1
    depth = min(nonzero) if nonzero else -1
    if window is None:
        top = max((sum(m) for m in ideal.minimal_monomial_generators()), default=0)
        top = max(top, 0)
        window = (-n - top, top)
    table = CohomologyTable(n=n, ext=ext, window=tuple(window), g=g, depth=depth, dim=dim)
    table.extra["complex"] = Delta
    return table


def multigraded_piece(complex_, i, b, p=0):
    """dim [H^i_m(k[complex])]_b for b <= 0 componentwise."""
    if any(x > 0 for x in b):
        return 0
    face = sum(1 << k for k, x in enumerate(b) if x < 0)
    if not complex_.contains(face):
        return 0
    return reduced_cohomology(link(complex_, face), i - _popcount(face) - 1, p)
