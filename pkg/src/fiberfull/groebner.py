"""Groebner bases of homogeneous ideals and of submodules of graded free modules.

Internally a module element is a dict ``{(component, exponents): coeff}``;
an ideal is the rank-one case with component 0.  Module orders are
position-over-term with positions ranked by ascending twist, ties by index;
a degree-first (term-over-position) variant is available through
``TermContext(mode="top")``.  Lifting and syzygies work in F (+) R^m with
every position of F above the generator coordinates.
"""

from __future__ import annotations

import heapq
import threading
from operator import add, sub

from gmpy2 import mpq

from .algebra import MonomialOrder, Polynomial, RingMismatchError
from .hilbert import HilbertSeries


class InhomogeneousError(ValueError):
    pass


# ---------------------------------------------------------------------------
# term context and vector helpers


class TermContext:
    """Compares module terms ``(component, exponents)`` through one integer key.

    ``mode="top"`` compares (block, total degree, monomial, position) and
    ``mode="pot"`` compares (position, monomial).  Positions are ranked by
    ascending twist, ties by index, unless ``ranks`` is given; ``blocks``
    splits the components into elimination blocks (higher block on top).
    """

    def __init__(self, p, order, twists, ranks=None, blocks=None, mode="pot"):
        if mode not in ("top", "pot"):
            raise ValueError(f"unknown module order {mode!r}")
        self.p = p
        self.order = order
        self.twists = tuple(twists)
        if ranks is None:
            pos = sorted(range(len(self.twists)), key=lambda i: (self.twists[i], i))
            ranks = [0] * len(self.twists)
            for r, i in enumerate(pos):
                ranks[i] = r
        self.ranks = tuple(ranks)
        self.blocks = tuple(blocks) if blocks is not None else (0,) * len(self.twists)
        self.mode = mode
        self._nranks = max(self.ranks, default=0) + 1
        self._cache = {}
        # monomial keys are below 2^(16(n+2)+1) for lex/grevlex; weight orders add |w.e|
        self._mbits = None

    def _mono_key(self, e):
        if self._mbits is None:
            n = len(e)
            bits = 16 * (n + 2) + 2
            if self.order.kind == "weight":
                bits += 16 * (n + 2) + max(abs(w) for w in self.order.weights).bit_length() + n.bit_length() + 20
            self._mbits = bits
        return self.order.key(e) + (1 << (self._mbits - 1))

    def key(self, term):
        k = self._cache.get(term)
        if k is None:
            c, e = term
            m = self._mono_key(e)
            if self.mode == "pot":
                k = (self.ranks[c] << self._mbits) + m
            else:
                deg = sum(e) + self.twists[c] + (1 << 30)
                k = ((((self.blocks[c] << 32) + deg) << self._mbits) + m) * self._nranks + self.ranks[c]
            self._cache[term] = k
        return k

    def degree(self, term):
        return sum(term[1]) + self.twists[term[0]]

    def lead(self, vec):
        return max(vec, key=self.key)


def vec_degree(vec, twists):
    degs = {sum(e) + twists[c] for c, e in vec}
    if len(degs) > 1:
        raise InhomogeneousError("module element is not homogeneous")
    return degs.pop() if degs else None


def vec_add(p, f, g, scale=None):
    out = dict(f)
    for t, c in g.items():
        if scale is not None:
            c = c * scale
        v = out.get(t, 0) + c
        if p:
            v %= p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vec_scale(p, f, a):
    if p:
        return {t: c * a % p for t, c in f.items() if c * a % p}
    return {t: c * a for t, c in f.items() if c * a}


def vec_mul_poly(p, poly, vec):
    """Multiply a module element by a polynomial given as ``{exps: coeff}``."""
    out = {}
    for m, a in poly.items():
        for (comp, e), c in vec.items():
            t = (comp, tuple(x + y for x, y in zip(m, e)))
            v = out.get(t, 0) + a * c
            if p:
                v %= p
            if v:
                out[t] = v
            else:
                out.pop(t, None)
    return out


def shift_vec(vec, m):
    return {(c, tuple(x + y for x, y in zip(e, m))): v for (c, e), v in vec.items()}


def divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class _Elt:
    __slots__ = ("vec", "lead", "tail", "degree")

    def __init__(self, vec, ctx):
        lead = ctx.lead(vec)
        c = vec[lead]
        if c != 1:
            inv = pow(int(c), -1, ctx.p) if ctx.p else mpq(1) / c
            vec = vec_scale(ctx.p, vec, inv)
        self.vec = vec
        self.lead = lead
        self.tail = [(t, v) for t, v in vec.items() if t != lead]
        self.degree = ctx.degree(lead)


def _find_reducer(index, term):
    comp, e = term
    for g in index.get(comp, ()):
        if divides(g.lead[1], e):
            return g
    return None


def reduce_vec(vec, index, ctx, full=True, stop=None):
    """Reduce ``vec`` by the elements in ``index`` (component -> elements).

    With ``full=False`` only leading terms are reduced.  ``stop(term)`` may end
    the reduction early once it returns True for the current leading term;
    the unreduced rest is then returned untouched.
    """
    p = ctx.p
    key = ctx.key
    f = dict(vec)
    heap = [(-key(t), t) for t in f]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = f.get(t)
        if c is None:
            continue
        if stop is not None and stop(t):
            rem.update(f)
            return rem
        g = _find_reducer(index, t)
        if g is None:
            del f[t]
            rem[t] = c
            if not full:
                rem.update(f)
                return rem
            continue
        del f[t]
        shift = tuple(map(sub, t[1], g.lead[1]))
        for (gc, ge), gv in g.tail:
            m = (gc, tuple(map(add, ge, shift)))
            old = f.get(m)
            if old is None:
                v = -c * gv
                if p:
                    v %= p
                f[m] = v
                heapq.heappush(heap, (-key(m), m))
            else:
                v = old - c * gv
                if p:
                    v %= p
                if v:
                    f[m] = v
                else:
                    del f[m]
    return rem


def _spoly(g, h, p):
    L = lcm(g.lead[1], h.lead[1])
    sg = tuple(x - y for x, y in zip(L, g.lead[1]))
    sh = tuple(x - y for x, y in zip(L, h.lead[1]))
    return vec_add(p, shift_vec(g.vec, sg), shift_vec(h.vec, sh), scale=-1)


def _index(elts):
    index = {}
    for g in elts:
        index.setdefault(g.lead[0], []).append(g)
    return index


def groebner_basis(gens, ctx, track_minimal=False):
    """Reduced Groebner basis of the submodule spanned by ``gens``.

    Homogeneous Buchberger: pairs and inputs are processed by increasing
    degree (pairs first, ties by pair index), with the product criterion in
    rank one and the Gebauer-Moeller chain criterion.  Returns the list of
    reduced monic basis vectors and, when ``track_minimal`` is set, the
    indices of the inputs forming a minimal generating set.
    """
    p = ctx.p
    rank_one = len(ctx.twists) == 1
    inputs = []
    for i, g in enumerate(gens):
        if g:
            d = ctx.degree(next(iter(g)))
            vec_degree(g, ctx.twists)
            inputs.append((d, i, g))
    inputs.sort(key=lambda x: (x[0], x[1]))
    basis = []
    index = {}
    pairs = {}   # (i, j) -> degree
    heap = []
    minimal = []

    def add(vec):
        g = _Elt(vec, ctx)
        k = len(basis)
        comp, e = g.lead
        for (i, j), _ in list(pairs.items()):
            a, b = basis[i], basis[j]
            if a.lead[0] != comp:
                continue
            L = lcm(a.lead[1], b.lead[1])
            if divides(e, L) and lcm(a.lead[1], e) != L and lcm(b.lead[1], e) != L:
                del pairs[(i, j)]
        for i, h in enumerate(basis):
            if h.lead[0] != comp:
                continue
            if rank_one and all(x == 0 or y == 0 for x, y in zip(h.lead[1], e)):
                continue
            L = lcm(h.lead[1], e)
            d = sum(L) + ctx.twists[comp]
            pairs[(i, k)] = d
            heapq.heappush(heap, (d, i, k))
        basis.append(g)
        index.setdefault(comp, []).append(g)

    pos = 0
    while heap or pos < len(inputs):
        d_pair = heap[0][0] if heap else None
        d_in = inputs[pos][0] if pos < len(inputs) else None
        d = min(x for x in (d_pair, d_in) if x is not None)
        while heap and heap[0][0] == d:
            _, i, j = heapq.heappop(heap)
            if pairs.pop((i, j), None) is None:
                continue
            r = reduce_vec(_spoly(basis[i], basis[j], p), index, ctx, full=False)
            if r:
                add(r)
        while pos < len(inputs) and inputs[pos][0] == d:
            _, i, g = inputs[pos]
            pos += 1
            r = reduce_vec(g, index, ctx, full=False)
            if r:
                minimal.append(i)
                add(r)
    reduced = _interreduce(basis, ctx)
    return (reduced, sorted(minimal)) if track_minimal else reduced


def _interreduce(basis, ctx):
    keep = []
    for g in basis:
        if any(h is not g and h.lead[0] == g.lead[0] and divides(h.lead[1], g.lead[1])
               and (h.lead != g.lead or id(h) < id(g)) for h in basis):
            continue
        keep.append(g)
    index = _index(keep)
    out = []
    for g in keep:
        others = {c: [h for h in hs if h is not g] for c, hs in index.items()}
        tail = reduce_vec(dict(g.tail), others, ctx)
        vec = dict(tail)
        vec[g.lead] = 1
        out.append(vec)
    out.sort(key=lambda v: ctx.key(ctx.lead(v)))
    return out


def leading_terms(gb, ctx):
    return [ctx.lead(v) for v in gb]


# ---------------------------------------------------------------------------
# monomial staircases


def minimalize_monomials(monos):
    """Minimal generators of the monomial ideal spanned by ``monos``."""
    monos = sorted(set(monos), key=lambda m: (sum(m), m))
    out = []
    for m in monos:
        if not any(divides(g, m) for g in out):
            out.append(m)
    return out


def monomial_quotient_numerator(monos, n):
    """Numerator of HS(R/J) over ``(1-t)^n`` for the monomial ideal J.

    Inclusion-exclusion over the minimal generators, merging subsets with
    equal lcm as they appear so repeated lcms are handled once.
    """
    gens = minimalize_monomials(monos)
    terms = {(0,) * n: 1}
    for g in gens:
        new = dict(terms)
        for m, c in terms.items():
            L = lcm(m, g)
            v = new.get(L, 0) - c
            if v:
                new[L] = v
            else:
                new.pop(L, None)
        terms = new
    num = {}
    for m, c in terms.items():
        d = sum(m)
        num[d] = num.get(d, 0) + c
    return {d: c for d, c in num.items() if c}


def module_quotient_series(leads, twists, n):
    """HS of ``F / M`` given the leading terms of a GB of M."""
    per = {}
    for comp, e in leads:
        per.setdefault(comp, []).append(e)
    total = HilbertSeries.zero(n)
    for comp, a in enumerate(twists):
        num = monomial_quotient_numerator(per.get(comp, []), n)
        total = total + HilbertSeries(num, n).shift(a)
    return total


def standard_monomials(leads, twists, n, degree):
    """Terms ``(comp, exps)`` of total degree ``degree`` outside the leading module."""
    per = {}
    for comp, e in leads:
        per.setdefault(comp, []).append(e)
    out = []
    for comp, a in enumerate(twists):
        d = degree - a
        if d < 0:
            continue
        L = per.get(comp, [])
        for e in monomials_of_degree(n, d):
            if not any(divides(g, e) for g in L):
                out.append((comp, e))
    return out


def monomials_of_degree(n, d):
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return out


# ---------------------------------------------------------------------------
# submodules of graded free modules


class SubmoduleOfFree:
    """Submodule of ``(+)_j R(-twists[j])`` spanned by homogeneous vectors."""

    def __init__(self, ring, twists, gens, degrees=None):
        self.ring = ring
        self.twists = tuple(twists)
        field = ring.field
        self.gens = [{t: field(c) for t, c in g.items() if field(c)} for g in gens]
        if degrees is None:
            degrees = [vec_degree(g, self.twists) if g else 0 for g in self.gens]
        self.degrees = list(degrees)
        for g, d in zip(self.gens, self.degrees):
            if g and vec_degree(g, self.twists) != d:
                raise InhomogeneousError("generator degree disagrees with its declared degree")
            for c, e in g:
                if not 0 <= c < len(self.twists) or len(e) != ring.n:
                    raise RingMismatchError("vector does not live in the ambient free module")
        self._lock = threading.Lock()
        self._gb = None
        self._minimal = None
        self._aug = None
        self._syz = None
        self._ctx = None
        self._index = None

    @property
    def ctx(self):
        if self._ctx is None:
            self._ctx = TermContext(self.ring.field.p, self.ring.order, self.twists)
        return self._ctx

    def gb(self):
        with self._lock:
            if self._gb is None:
                self._gb, self._minimal = groebner_basis(self.gens, self.ctx, track_minimal=True)
            return self._gb

    def minimal_generator_indices(self):
        self.gb()
        return list(self._minimal)

    def leading_terms(self):
        ctx = self.ctx
        return [ctx.lead(v) for v in self.gb()]

    def _reducers(self):
        if self._index is None:
            ctx = self.ctx
            self._index = _index([_Elt(v, ctx) for v in self.gb()])
        return self._index

    def normal_form(self, vec):
        return reduce_vec(vec, self._reducers(), self.ctx)

    def contains(self, vec):
        return not self.normal_form(vec)

    def quotient_series(self):
        return module_quotient_series(self.leading_terms(), self.twists, self.ring.n)

    def _augmented(self):
        """GB of {(g_i, e_i)} in F (+) R^m with F eliminated (position-over-term, F on top)."""
        with self._lock:
            if self._aug is None:
                k = len(self.twists)
                m = len(self.gens)
                degs = self.degrees
                twists = self.twists + tuple(degs)
                base = TermContext(0, self.ring.order, self.twists)
                eranks = TermContext(0, self.ring.order, degs).ranks
                ranks = tuple(m + r for r in base.ranks) + eranks
                ctx = TermContext(self.ring.field.p, self.ring.order, twists, ranks)
                zero = (0,) * self.ring.n
                aug = []
                for i, g in enumerate(self.gens):
                    v = dict(g)
                    v[(k + i, zero)] = self.ring.field.one
                    aug.append(v)
                gb = groebner_basis(aug, ctx)
                self._aug = (gb, ctx, _index([_Elt(v, ctx) for v in gb]))
            return self._aug

    def lift(self, vec):
        """Coefficients ``c`` (list of ``{exps: coeff}``) with ``vec = sum c_i gens_i``.

        Returns None when ``vec`` is not in the submodule.
        """
        gb, ctx, index = self._augmented()
        k = len(self.twists)
        p = self.ring.field.p
        r = reduce_vec(vec, index, ctx, full=True, stop=lambda t: t[0] >= k)
        if any(c < k for c, _ in r):
            return None
        coeffs = [dict() for _ in self.gens]
        for (c, e), v in r.items():
            coeffs[c - k][e] = (-v) % p if p else -v
        return coeffs

    def syzygy_vectors(self, minimal=True):
        """Generators of the first syzygy module, as vectors in R^m.

        The twists of R^m are the generator degrees.
        """
        with self._lock:
            cached = self._syz
        if cached is not None and minimal in cached:
            return cached[minimal]
        gb, ctx, _ = self._augmented()
        k = len(self.twists)
        syz = []
        for v in gb:
            if ctx.lead(v)[0] >= k:
                syz.append({(c - k, e): x for (c, e), x in v.items()})
        if minimal:
            sctx = TermContext(self.ring.field.p, self.ring.order, self.degrees)
            _, idx = groebner_basis(syz, sctx, track_minimal=True)
            syz = [syz[i] for i in idx]
        with self._lock:
            self._syz = dict(self._syz or {})
            self._syz[minimal] = syz
        return syz

    def minimal_generators(self):
        return [self.gens[i] for i in self.minimal_generator_indices()]


# ---------------------------------------------------------------------------
# ideals


def _poly_to_vec(f):
    return {(0, m): c for m, c in f.coeffs.items()}


def _vec_to_poly(ring, v):
    return Polynomial(ring, {e: c for (_, e), c in v.items()})


class Ideal:
    """A homogeneous ideal with per-order cached reduced Groebner bases."""

    def __init__(self, ring, gens):
        gens = [ring(g) if isinstance(g, str) else g for g in gens]
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator from another ring")
            if not g.is_homogeneous():
                raise InhomogeneousError(f"generator {g} is not homogeneous")
        self.ring = ring
        self.gens = [g for g in gens if g]
        self._lock = threading.Lock()
        self._gbs = {}

    def __repr__(self):
        return "(" + ", ".join(map(repr, self.gens)) + ")"

    def _ctx(self, order):
        return TermContext(self.ring.field.p, order, (0,))

    def groebner_basis(self, order=None):
        order = order or self.ring.order
        with self._lock:
            if order not in self._gbs:
                gb = groebner_basis([_poly_to_vec(g) for g in self.gens], self._ctx(order))
                self._gbs[order] = [_vec_to_poly(self.ring, v) for v in gb]
            return list(self._gbs[order])

    def normal_form(self, f, order=None):
        order = order or self.ring.order
        return normal_form(f, self.groebner_basis(order), order)

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def initial_ideal(self, order=None):
        return initial_ideal(self, order)

    def is_monomial(self):
        return all(g.is_monomial() for g in self.gens)

    def is_squarefree_monomial(self):
        return self.is_monomial() and all(max(m) <= 1 for g in self.gens for m in g.coeffs)

    def minimal_monomial_generators(self):
        if not self.is_monomial():
            raise ValueError("not a monomial ideal")
        return minimalize_monomials([m for g in self.gens for m in g.coeffs])

    def hilbert_series(self):
        return quotient_hilbert_series(self)

    def equals(self, other):
        order = self.ring.order
        return self.groebner_basis(order) == other.groebner_basis(order)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.equals(other)

    def __hash__(self):
        return hash(tuple(self.groebner_basis()))

    @property
    def is_zero(self):
        return not self.gens

    @property
    def generator_degrees(self):
        return [g.degree for g in self.gens]


def normal_form(f, gb, order=None):
    """Remainder of ``f`` on division by a reduced GB (polynomials or module vectors)."""
    if isinstance(f, Polynomial):
        order = order or f.ring.order
        ctx = TermContext(f.ring.field.p, order, (0,))
        elts = [_Elt(_poly_to_vec(g), ctx) for g in gb if g]
        r = reduce_vec(_poly_to_vec(f), _index(elts), ctx)
        return _vec_to_poly(f.ring, r)
    if isinstance(gb, SubmoduleOfFree):
        return gb.normal_form(f)
    raise TypeError("module normal forms need a SubmoduleOfFree")


def buchberger(ideal, order=None):
    return ideal.groebner_basis(order)


def initial_ideal(ideal, order=None):
    order = order or ideal.ring.order
    gb = ideal.groebner_basis(order)
    lead = [ideal.ring.monomial(g.leading_monomial(order)) for g in gb]
    return Ideal(ideal.ring, lead)


def quotient_hilbert_series(ideal):
    """HS(R/I) from the staircase of the initial ideal."""
    n = ideal.ring.n
    gb = ideal.groebner_basis()
    leads = [g.leading_monomial() for g in gb]
    return HilbertSeries(monomial_quotient_numerator(leads, n), n)


def syzygies(module):
    """First syzygies of a :class:`SubmoduleOfFree` as a new SubmoduleOfFree of R^m."""
    return SubmoduleOfFree(module.ring, module.degrees, module.syzygy_vectors(minimal=True))


def default_order():
    return MonomialOrder("grevlex")
