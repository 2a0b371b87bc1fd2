"""Graded free modules, graded matrices, presentations and free resolutions."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations

from .algebra import Polynomial, RingMismatchError
from .groebner import (
    Ideal,
    InhomogeneousError,
    SubmoduleOfFree,
    lcm,
    vec_add,
    vec_degree,
    vec_mul_poly,
)
from .hilbert import HilbertSeries


class ResolutionError(RuntimeError):
    """A resolution ran past its length cap or failed its exactness check."""


@dataclass(frozen=True)
class GradedFreeModule:
    """``(+)_j R(-twists[j])``; basis vector j sits in degree ``twists[j]``."""

    twists: tuple

    def __init__(self, twists=()):
        object.__setattr__(self, "twists", tuple(int(a) for a in twists))

    @property
    def rank(self):
        return len(self.twists)

    def dual(self):
        return GradedFreeModule(tuple(-a for a in self.twists))

    def hilbert_series(self, n):
        return HilbertSeries.free(self.twists, n)

    def shifted(self, a):
        """The module tensored with R(a)."""
        return GradedFreeModule(tuple(t - a for t in self.twists))

    def __repr__(self):
        if not self.twists:
            return "0"
        return " + ".join(f"R({-a})" for a in self.twists)


class GradedMatrix:
    """A degree-preserving map ``source -> target`` of graded free modules.

    Stored by columns: column j is the image of basis vector j of the source,
    a vector ``{(row, exps): coeff}`` of degree ``source.twists[j]``.
    """

    def __init__(self, ring, source, target, columns):
        if len(columns) != source.rank:
            raise ValueError("column count differs from the source rank")
        field = ring.field
        cols = []
        for j, col in enumerate(columns):
            col = {t: field(c) for t, c in col.items() if field(c)}
            for (r, e) in col:
                if not 0 <= r < target.rank or len(e) != ring.n:
                    raise RingMismatchError("entry outside the target module")
            d = vec_degree(col, target.twists)
            if d is not None and d != source.twists[j]:
                raise InhomogeneousError(
                    f"column {j} has degree {d}, expected {source.twists[j]}")
            cols.append(col)
        self.ring = ring
        self.source = source
        self.target = target
        self.columns = cols

    @classmethod
    def from_entries(cls, ring, source, target, entries):
        """Build from a row-major list of polynomials (rank(target) x rank(source))."""
        cols = [dict() for _ in range(source.rank)]
        for i, row in enumerate(entries):
            for j, f in enumerate(row):
                if isinstance(f, str):
                    f = ring(f)
                elif not isinstance(f, Polynomial):
                    f = ring.constant(f)
                for m, c in f.coeffs.items():
                    cols[j][(i, m)] = c
        return cls(ring, source, target, cols)

    @classmethod
    def zero(cls, ring, source, target):
        return cls(ring, source, target, [dict() for _ in range(source.rank)])

    @classmethod
    def identity(cls, ring, module):
        zero = (0,) * ring.n
        return cls(ring, module, module, [{(j, zero): 1} for j in range(module.rank)])

    @property
    def shape(self):
        return (self.target.rank, self.source.rank)

    def entry(self, i, j):
        return Polynomial(self.ring, {e: c for (r, e), c in self.columns[j].items() if r == i})

    def entries(self):
        return [[self.entry(i, j) for j in range(self.source.rank)] for i in range(self.target.rank)]

    def is_zero(self):
        return not any(self.columns)

    def transpose(self):
        """The dual map ``target^* -> source^*`` (entries transposed, twists negated)."""
        cols = [dict() for _ in range(self.target.rank)]
        for j, col in enumerate(self.columns):
            for (i, e), c in col.items():
                cols[i][(j, e)] = c
        return GradedMatrix(self.ring, self.target.dual(), self.source.dual(), cols)

    def apply(self, vec):
        """Image of a source vector ``{(j, exps): c}``."""
        p = self.ring.field.p
        out = {}
        by_comp = {}
        for (j, e), c in vec.items():
            by_comp.setdefault(j, {})[e] = c
        for j, poly in by_comp.items():
            out = vec_add(p, out, vec_mul_poly(p, poly, self.columns[j]))
        return out

    def compose(self, other):
        """``self o other``."""
        if other.target != self.source:
            raise ValueError("incompatible modules for composition")
        return GradedMatrix(self.ring, other.source, self.target,
                            [self.apply(col) for col in other.columns])

    def __eq__(self, other):
        return (isinstance(other, GradedMatrix) and self.source == other.source
                and self.target == other.target and self.columns == other.columns)

    def __repr__(self):
        rows = ["[" + ", ".join(repr(f) for f in row) + "]" for row in self.entries()]
        return f"GradedMatrix({self.source} -> {self.target}: " + "; ".join(rows) + ")"


def _drop(vec, index):
    """Remove component ``index`` from a vector and renumber the ones above it."""
    return {(c if c < index else c - 1, e): v for (c, e), v in vec.items() if c != index}


def _find_unit(matrix, zero):
    for j, col in enumerate(matrix.columns):
        for i in sorted({r for r, _ in col}):
            if (i, zero) in col:
                return i, j
    return None


def _cancel_unit(ring, mats, k, i, j):
    """Cancel a unit at entry (i, j) of ``mats[k]`` (a chain of composable maps).

    ``mats[k]`` maps F_{k+1} -> F_k in list order; rows/columns are dropped
    and the neighbouring maps adjusted so the complex stays homotopy equivalent.
    """
    p = ring.field.p
    zero = (0,) * ring.n
    d = mats[k]
    u = d.columns[j][(i, zero)]
    uinv = ring.field.inv(u)
    pivot = d.columns[j]
    new_cols = []
    for b, col in enumerate(d.columns):
        if b == j:
            continue
        row_i = {e: c for (r, e), c in col.items() if r == i}
        if row_i:
            scale = {e: (-c * uinv) % p if p else -c * uinv for e, c in row_i.items()}
            col = vec_add(p, col, vec_mul_poly(p, scale, pivot))
        new_cols.append(_drop(col, i))
    src = GradedFreeModule(d.source.twists[:j] + d.source.twists[j + 1:])
    tgt = GradedFreeModule(d.target.twists[:i] + d.target.twists[i + 1:])
    mats[k] = GradedMatrix(ring, src, tgt, new_cols)
    if k + 1 < len(mats):
        nxt = mats[k + 1]
        mats[k + 1] = GradedMatrix(ring, nxt.source, src, [_drop(c, j) for c in nxt.columns])
    if k > 0:
        prv = mats[k - 1]
        cols = prv.columns[:i] + prv.columns[i + 1:]
        mats[k - 1] = GradedMatrix(ring, tgt, prv.target, cols)


def prune_units(ring, mats):
    """Repeatedly cancel unit entries, innermost map first; returns new list."""
    mats = list(mats)
    zero = (0,) * ring.n
    k = 0
    while k < len(mats):
        hit = _find_unit(mats[k], zero)
        if hit is None:
            k += 1
            continue
        _cancel_unit(ring, mats, k, *hit)
        k = max(k - 1, 0)
    return mats


class GradedModulePresentation:
    """The module ``coker(matrix)``, generated by the basis of ``matrix.target``."""

    def __init__(self, matrix):
        self.matrix = matrix
        self.ring = matrix.ring
        self._lock = threading.Lock()
        self._hs = None
        self._res = {}

    @classmethod
    def free(cls, ring, twists=(0,)):
        F = GradedFreeModule(twists)
        return cls(GradedMatrix.zero(ring, GradedFreeModule(), F))

    @classmethod
    def quotient(cls, ideal):
        """R/I presented by the generators of I."""
        ring = ideal.ring
        F0 = GradedFreeModule((0,))
        gens = [g for g in ideal.gens if g]
        F1 = GradedFreeModule(tuple(g.degree for g in gens))
        cols = [{(0, m): c for m, c in g.coeffs.items()} for g in gens]
        return cls(GradedMatrix(ring, F1, F0, cols))

    @classmethod
    def of_ideal(cls, ideal):
        """I itself as a module, generated by its given generators."""
        ring = ideal.ring
        gens = [g for g in ideal.gens if g]
        F0 = GradedFreeModule(tuple(g.degree for g in gens))
        sub = SubmoduleOfFree(ring, (0,), [{(0, m): c for m, c in g.coeffs.items()} for g in gens])
        syz = sub.syzygy_vectors(minimal=True)
        F1 = GradedFreeModule(tuple(vec_degree(s, F0.twists) for s in syz))
        return cls(GradedMatrix(ring, F1, F0, syz))

    @property
    def generators(self):
        return self.matrix.target

    @property
    def relations(self):
        return self.matrix.source

    def relation_module(self):
        return SubmoduleOfFree(self.ring, self.generators.twists, self.matrix.columns,
                               degrees=self.relations.twists)

    def hilbert_series(self):
        with self._lock:
            if self._hs is None:
                self._hs = self.relation_module().quotient_series()
            return self._hs

    def is_zero(self):
        return self.hilbert_series().is_zero()

    def pruned(self):
        """Minimal presentation: no unit entries, minimal set of relations."""
        mat = prune_units(self.ring, [self.matrix])[0]
        sub = SubmoduleOfFree(self.ring, mat.target.twists, mat.columns, degrees=mat.source.twists)
        keep = sub.minimal_generator_indices()
        cols = [mat.columns[i] for i in keep]
        src = GradedFreeModule(tuple(mat.source.twists[i] for i in keep))
        return GradedModulePresentation(GradedMatrix(self.ring, src, mat.target, cols))

    def shifted(self, a):
        """``M(a)``: every degree lowered by ``a``."""
        m = self.matrix
        return GradedModulePresentation(
            GradedMatrix(self.ring, m.source.shifted(a), m.target.shifted(a), m.columns))

    def direct_sum(self, other):
        a, b = self.matrix, other.matrix
        r, s = a.target.rank, a.source.rank
        cols = list(a.columns) + [{(i + r, e): c for (i, e), c in col.items()} for col in b.columns]
        src = GradedFreeModule(a.source.twists + b.source.twists)
        tgt = GradedFreeModule(a.target.twists + b.target.twists)
        return GradedModulePresentation(GradedMatrix(self.ring, src, tgt, cols))

    def resolution(self, minimalize=True):
        with self._lock:
            if minimalize not in self._res:
                self._res[minimalize] = None
            cached = self._res[minimalize]
        if cached is None:
            cached = free_resolution(self, minimalize=minimalize)
            with self._lock:
                self._res[minimalize] = cached
        return cached

    def __repr__(self):
        return f"coker({self.matrix})"


class FreeResolution:
    """``0 <- F_0 <- F_1 <- ... <- F_L`` with ``differentials[i-1] = d_i: F_i -> F_{i-1}``."""

    def __init__(self, ring, differentials, module=None, F0=None):
        self.ring = ring
        self.differentials = list(differentials)
        self.module = module
        if self.differentials:
            self.modules = [self.differentials[0].target] + [d.source for d in self.differentials]
        else:
            self.modules = [F0 if F0 is not None else GradedFreeModule((0,))]
        while len(self.differentials) and self.differentials[-1].source.rank == 0:
            self.differentials.pop()
            self.modules.pop()

    @property
    def length(self):
        return len(self.differentials)

    def free_module(self, i):
        if 0 <= i < len(self.modules):
            return self.modules[i]
        return GradedFreeModule()

    def differential(self, i):
        """d_i : F_i -> F_{i-1}; the zero map outside the stored range."""
        if 1 <= i <= len(self.differentials):
            return self.differentials[i - 1]
        return GradedMatrix.zero(self.ring, self.free_module(i), self.free_module(i - 1))

    def betti(self):
        """Per homological degree, the sorted list of twists."""
        return [sorted(F.twists) for F in self.modules]

    def betti_table(self):
        table = {}
        for i, F in enumerate(self.modules):
            for a in F.twists:
                table[(i, a)] = table.get((i, a), 0) + 1
        return table

    def max_twist(self):
        return max((a for F in self.modules for a in F.twists), default=0)

    def regularity(self):
        return max((a - i for i, F in enumerate(self.modules) for a in F.twists), default=0)

    def euler_series(self):
        n = self.ring.n
        total = HilbertSeries.zero(n)
        for i, F in enumerate(self.modules):
            s = F.hilbert_series(n)
            total = total + s if i % 2 == 0 else total - s
        return total

    def composition_is_zero(self):
        return all(self.differentials[i].compose(self.differentials[i + 1]).is_zero()
                   for i in range(len(self.differentials) - 1))

    def is_minimal(self):
        zero = (0,) * self.ring.n
        return all(_find_unit(d, zero) is None for d in self.differentials)

    def check(self, series=None):
        """Raise ResolutionError unless d^2 = 0 and the Euler series matches."""
        if not self.composition_is_zero():
            raise ResolutionError("consecutive differentials do not compose to zero")
        if series is None and self.module is not None:
            series = self.module.hilbert_series()
        if series is not None and self.euler_series() != series:
            raise ResolutionError("alternating sum of free modules differs from the module series")
        return True

    def minimalized(self):
        mats = prune_units(self.ring, self.differentials)
        F0 = mats[0].target if mats else self.free_module(0)
        return FreeResolution(self.ring, mats, self.module, F0=F0)

    def __repr__(self):
        return "FreeResolution(" + " <- ".join(repr(F) for F in self.modules) + ")"


def free_resolution(M, minimalize=True):
    """Resolve ``coker(M.matrix)`` by iterated syzygies.

    With ``minimalize`` the presentation is pruned first and every step keeps
    only minimal syzygy generators (graded Nakayama), followed by a final
    unit-pivoting pass; otherwise each step uses the full syzygy Groebner basis.
    """
    ring = M.ring
    n = ring.n
    source = M.pruned() if minimalize else M
    mat = source.matrix
    if mat.target.rank == 0:
        return FreeResolution(ring, [], M, F0=GradedFreeModule())
    diffs = []
    cur = mat
    while cur.source.rank:
        diffs.append(cur)
        if len(diffs) > n + 1:
            raise ResolutionError(
                f"resolution exceeded {n + 2} steps; input is not homogeneous or is corrupted")
        sub = SubmoduleOfFree(ring, cur.target.twists, cur.columns, degrees=cur.source.twists)
        syz = sub.syzygy_vectors(minimal=minimalize)
        src = GradedFreeModule(tuple(vec_degree(s, cur.source.twists) for s in syz))
        cur = GradedMatrix(ring, src, cur.source, syz)
    res = FreeResolution(ring, diffs, M, F0=mat.target)
    if minimalize and not res.is_minimal():
        res = res.minimalized()
    return res


def taylor_resolution(ideal):
    """Taylor complex of R/I for a monomial ideal, on subsets of the minimal generators."""
    if not ideal.is_monomial():
        raise ValueError("Taylor resolution needs a monomial ideal")
    ring = ideal.ring
    gens = ideal.minimal_monomial_generators()
    m = len(gens)
    if m > 20:
        raise ValueError("Taylor resolution limited to 20 generators")
    zero = (0,) * ring.n
    one = ring.field.one
    subsets = [[()]] + [list(combinations(range(m), j)) for j in range(1, m + 1)]
    lcms = {(): zero}
    for j in range(1, m + 1):
        for S in subsets[j]:
            lcms[S] = lcm(lcms[S[:-1]], gens[S[-1]])
    modules = [GradedFreeModule(tuple(sum(lcms[S]) for S in subsets[j])) for j in range(m + 1)]
    diffs = []
    p = ring.field.p
    for j in range(1, m + 1):
        pos = {S: k for k, S in enumerate(subsets[j - 1])}
        cols = []
        for S in subsets[j]:
            col = {}
            for k in range(len(S)):
                T = S[:k] + S[k + 1:]
                e = tuple(a - b for a, b in zip(lcms[S], lcms[T]))
                c = one if k % 2 == 0 else (p - 1 if p else -one)
                col[(pos[T], e)] = c
            cols.append(col)
        diffs.append(GradedMatrix(ring, modules[j], modules[j - 1], cols))
    return FreeResolution(ring, diffs, GradedModulePresentation.quotient(ideal), F0=modules[0])


def hilbert_series_of(M):
    return M.hilbert_series()


def quotient_presentation(ideal):
    return GradedModulePresentation.quotient(ideal)


def ideal_presentation(ideal):
    return GradedModulePresentation.of_ideal(ideal)


__all__ = [
    "FreeResolution",
    "GradedFreeModule",
    "GradedMatrix",
    "GradedModulePresentation",
    "Ideal",
    "ResolutionError",
    "free_resolution",
    "hilbert_series_of",
    "taylor_resolution",
]
