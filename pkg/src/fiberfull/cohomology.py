"""Graded local cohomology through Ext and graded local duality.

For a finitely generated graded module M over R = k[x_1..x_n],

    dim [H^i_m(M)]_nu = dim [Ext^{n-i}_R(M, R)]_{-n-nu}

(canonical module R(-n)).  Tables keep the Ext-side Hilbert series, so two
tables are compared as exact rational functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import Ideal, SubmoduleOfFree, vec_degree
from .hilbert import HilbertSeries
from .resolution import GradedFreeModule, GradedMatrix, GradedModulePresentation


class InconsistencyError(RuntimeError):
    """An internal identity failed; this signals a bug, never bad input."""


def _as_presentation(M):
    if isinstance(M, Ideal):
        return GradedModulePresentation.quotient(M)
    return M


def _coker_series(matrix):
    """HS of coker(matrix) inside its target."""
    sub = SubmoduleOfFree(matrix.ring, matrix.target.twists, matrix.columns,
                          degrees=matrix.source.twists)
    return sub.quotient_series()


def dual_differential(res, j):
    """``d_j^T : F_{j-1}^* -> F_j^*``."""
    return res.differential(j).transpose()


def cocycle_generators(res, j):
    """Generators of ker(d_{j+1}^T) in F_j^*, with their degrees."""
    ring = res.ring
    Fj = res.free_module(j).dual()
    A = dual_differential(res, j + 1)
    sub = SubmoduleOfFree(ring, A.target.twists, A.columns, degrees=Fj.twists)
    gens = sub.syzygy_vectors(minimal=True)
    degs = [vec_degree(g, Fj.twists) for g in gens]
    return gens, degs


def ext_module(M, j):
    """Presentation of ``Ext^j_R(M, R)`` from the dualized minimal resolution.

    Generators are the cocycles ker(d_{j+1}^T); relations are their syzygies
    together with the coboundaries im(d_j^T) lifted onto the cocycle
    generators.  The result is pruned to a minimal presentation.
    """
    M = _as_presentation(M)
    ring = M.ring
    n = ring.n
    if not 0 <= j <= n:
        raise ValueError(f"Ext index {j} outside 0..{n}")
    res = M.resolution()
    Fj = res.free_module(j).dual()
    if Fj.rank == 0:
        return GradedModulePresentation.free(ring, ())
    gens, degs = cocycle_generators(res, j)
    G0 = GradedFreeModule(tuple(degs))
    if not gens:
        return GradedModulePresentation.free(ring, ())
    K = SubmoduleOfFree(ring, Fj.twists, gens, degrees=degs)
    rels = list(K.syzygy_vectors(minimal=True))
    B = dual_differential(res, j)
    for col in B.columns:
        if not col:
            continue
        coeffs = K.lift(col)
        if coeffs is None:
            raise InconsistencyError("a coboundary is not a cocycle")
        vec = {}
        for i, poly in enumerate(coeffs):
            for e, c in poly.items():
                vec[(i, e)] = c
        if vec:
            rels.append(vec)
    src = GradedFreeModule(tuple(vec_degree(r, G0.twists) for r in rels))
    pres = GradedModulePresentation(GradedMatrix(ring, src, G0, rels))
    return pres.pruned()


def ext_series(M):
    """Hilbert series of Ext^j(M, R) for j = 0..n, from GBs of the dual maps only.

    HS(Ext^j) = HS(coker d_j^T) + HS(coker d_{j+1}^T) - HS(F_{j+1}^*).
    """
    M = _as_presentation(M)
    ring = M.ring
    n = ring.n
    res = M.resolution()
    cok = {}
    for j in range(0, n + 2):
        Fj = res.free_module(j).dual()
        if j == 0 or Fj.rank == 0:
            cok[j] = Fj.hilbert_series(n)
        else:
            cok[j] = _coker_series(dual_differential(res, j))
    out = {}
    for j in range(0, n + 1):
        out[j] = cok[j] + cok[j + 1] - res.free_module(j + 1).dual().hilbert_series(n)
    return out


@dataclass
class CohomologyTable:
    """Per index i, the series of nu -> dim [H^i_m(M)]_nu, stored on the Ext side."""

    n: int
    ext: dict                     # j -> HilbertSeries of Ext^j(M, R)
    window: tuple = (0, 0)
    g: HilbertSeries = None       # series of M itself
    depth: int = 0
    dim: int = -1
    extra: dict = field(default_factory=dict)

    def ext_series(self, i):
        """Series of Ext^{n-i}(M, R)."""
        return self.ext.get(self.n - i, HilbertSeries.zero(self.n))

    def h(self, i, nu):
        return self.ext_series(i).coefficient(-self.n - nu)

    def row(self, i, lo=None, hi=None):
        lo = self.window[0] if lo is None else lo
        hi = self.window[1] if hi is None else hi
        return [self.h(i, nu) for nu in range(lo, hi + 1)]

    def grid(self, lo=None, hi=None):
        return {i: self.row(i, lo, hi) for i in range(self.n + 1)}

    def nonzero_indices(self):
        return [i for i in range(self.n + 1) if not self.ext_series(i).is_zero()]

    def is_cohen_macaulay(self):
        return len(self.nonzero_indices()) <= 1

    def same_as(self, other):
        """Exact equality of every index's series."""
        return self.n == other.n and all(
            self.ext_series(i) == other.ext_series(i) for i in range(self.n + 1))

    def to_json(self, lo=None, hi=None):
        lo = self.window[0] if lo is None else lo
        hi = self.window[1] if hi is None else hi
        return {
            "n": self.n,
            "window": [lo, hi],
            "depth": self.depth,
            "dim": self.dim,
            "rows": {str(i): self.row(i, lo, hi) for i in range(self.n + 1)},
            "ext_series": {str(self.n - i): self.ext_series(i).to_json() for i in range(self.n + 1)},
        }

    def render(self, lo=None, hi=None):
        lo = self.window[0] if lo is None else lo
        hi = self.window[1] if hi is None else hi
        width = max(3, len(str(lo)), len(str(hi))) + 1
        head = "nu".rjust(6) + "".join(str(nu).rjust(width) for nu in range(lo, hi + 1))
        lines = [head]
        for i in range(self.n + 1):
            lines.append(f"h_{i}".rjust(6) + "".join(str(v).rjust(width) for v in self.row(i, lo, hi)))
        return "\n".join(lines)


def cohomology_table(M, window=None):
    """Local cohomology table of a presented module via local duality."""
    M = _as_presentation(M)
    n = M.ring.n
    res = M.resolution()
    ext = ext_series(M)
    g = M.hilbert_series()
    top = res.max_twist()
    if window is None:
        window = (-n - top, top)
    dim = g.dimension
    depth = n - res.length if not g.is_zero() else -1
    return CohomologyTable(n=n, ext=ext, window=tuple(window), g=g, depth=depth, dim=dim)


def local_cohomology_table(ideal, window=None):
    """Table for R/I."""
    return cohomology_table(GradedModulePresentation.quotient(ideal), window)


@dataclass
class StratificationData:
    g: HilbertSeries
    h: CohomologyTable
    polynomial: list      # Fraction coefficients, constant term first
    checked: tuple

    def P(self, nu):
        return self.g.hilbert_polynomial_value(nu)


def euler_defect(table, nu):
    """g(nu) - sum_i (-1)^i h_i(nu)."""
    return table.g.coefficient(nu) - sum((-1) ** i * table.h(i, nu) for i in range(table.n + 1))


def stratification_data(ideal, window=None):
    """(g, h, P) for R/I with the identity g - sum (-1)^i h_i = P checked on a window."""
    table = local_cohomology_table(ideal, window)
    g = table.g
    lo, hi = table.window
    for nu in range(lo - 2, hi + 3):
        if euler_defect(table, nu) != g.hilbert_polynomial_value(nu):
            raise InconsistencyError(f"Euler identity fails at degree {nu}")
    return StratificationData(g=g, h=table, polynomial=g.hilbert_polynomial(), checked=(lo - 2, hi + 2))


def duality_self_test(ring):
    """For M = R: h_n(-n) = 1 and h_n vanishes above -n."""
    table = cohomology_table(GradedModulePresentation.free(ring))
    n = ring.n
    ok = table.h(n, -n) == 1 and all(table.h(n, nu) == 0 for nu in range(-n + 1, 3))
    ok = ok and all(table.ext_series(i).is_zero() for i in range(n))
    if not ok:
        raise InconsistencyError("local duality convention failed its self-test")
    return True
