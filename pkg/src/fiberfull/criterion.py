"""Degree-d graded Hom and Ext between presented modules, and the vanishing criterion.

A degree-d map ``coker(A) -> coker(B)`` is pinned down by the images of the
generators, each written as a combination of standard monomials of the
relation module of B.  The only constraints are that every column of A maps
into im(B), i.e. has zero normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import RingMismatchError
from .cohomology import _as_presentation, ext_module
from .groebner import Ideal, SubmoduleOfFree, standard_monomials, vec_mul_poly
from .linalg import kernel, rank
from .resolution import GradedFreeModule, GradedMatrix, GradedModulePresentation


class _Target:
    """Normal forms and standard monomials in a presented module N."""

    def __init__(self, N):
        self.N = N
        self.ring = N.ring
        self.twists = N.generators.twists
        self.sub = SubmoduleOfFree(N.ring, self.twists, N.matrix.columns, degrees=N.relations.twists)
        self._basis = {}

    def basis(self, degree):
        if degree not in self._basis:
            self._basis[degree] = standard_monomials(
                self.sub.leading_terms(), self.twists, self.ring.n, degree)
        return self._basis[degree]

    def normal_form(self, vec):
        if not vec:
            return {}
        return self.sub.normal_form(vec)


def _check_rings(M, N):
    if M.ring != N.ring:
        raise RingMismatchError("modules over different rings")


def _hom_from_free(T, twists, d):
    """Unknowns of Hom(F, N)_d for F with the given twists: (generator index, term)."""
    return [(j, term) for j, a in enumerate(twists) for term in T.basis(a + d)]


def _image_of_columns(T, unknowns, columns):
    """For each unknown, the normal forms of ``X(col)`` for every column, as one vector."""
    p = T.ring.field.p
    out = []
    for j, (comp, e) in unknowns:
        unit = {(comp, e): 1}
        vec = {}
        for k, col in enumerate(columns):
            poly = {m: c for (r, m), c in col.items() if r == j}
            if not poly:
                continue
            nf = T.normal_form(vec_mul_poly(p, poly, unit))
            for t, c in nf.items():
                vec[(k, t)] = c
        out.append(vec)
    return out


def graded_hom_component(M, N, d=0):
    """(dimension, basis) of [Hom_R(M, N)]_d for presented modules.

    Basis elements are GradedMatrices ``F_0(M) shifted by d -> G_0(N)`` whose
    columns are normal forms of the generator images.
    """
    M = _as_presentation(M)
    N = _as_presentation(N)
    _check_rings(M, N)
    ring = M.ring
    if M.generators.rank == 0 or N.generators.rank == 0:
        return 0, []
    T = _Target(N)
    unknowns = _hom_from_free(T, M.generators.twists, d)
    if not unknowns:
        return 0, []
    images = _image_of_columns(T, unknowns, M.matrix.columns)
    sols = kernel(images, ring.field.p)
    src = GradedFreeModule(tuple(a + d for a in M.generators.twists))
    basis = []
    for sol in sols:
        cols = [dict() for _ in range(src.rank)]
        for u, c in sol.items():
            j, term = unknowns[u]
            cols[j][term] = c
        basis.append(GradedMatrix(ring, src, N.generators, cols))
    return len(sols), basis


def hom_dimension(M, N, d=0):
    return graded_hom_component(M, N, d)[0]


def graded_ext_component(M, N, j, d=0):
    """dim [Ext^j_R(M, N)]_d from degree-d pieces of Hom(F_., N), F a minimal resolution of M."""
    M = _as_presentation(M)
    N = _as_presentation(N)
    _check_rings(M, N)
    if j < 0:
        return 0
    res = M.resolution()
    T = _Target(N)
    p = M.ring.field.p

    def delta_rank(i):
        """rank of Hom(F_{i-1}, N)_d -> Hom(F_i, N)_d, psi -> psi o d_i."""
        if i < 1 or i > res.length:
            return 0
        dmat = res.differential(i)
        unknowns = _hom_from_free(T, dmat.target.twists, d)
        if not unknowns:
            return 0
        return rank(_image_of_columns(T, unknowns, dmat.columns), p)

    size = len(_hom_from_free(T, res.free_module(j).twists, d))
    if size == 0:
        return 0
    return size - delta_rank(j + 1) - delta_rank(j)


@dataclass
class PairResult:
    j: int                  # the pair (Ext^{j-1}, Ext^j)
    cohomology_index: int   # the dual pair (H^{i-1}, H^i) with i = n - j + 1
    dimension: int
    skipped: bool           # one side is zero, so no system was solved


@dataclass
class CriterionReport:
    n: int
    pairs: list
    verdict: str
    cohen_macaulay: bool
    squarefree: bool
    ext_series: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.verdict == "pass"

    def dims(self):
        return {pr.j: pr.dimension for pr in self.pairs}

    def dimension_for_cohomology(self, i):
        """dim [Hom(H^{i-1}, H^i)]_0, computed on the Ext side."""
        for pr in self.pairs:
            if pr.cohomology_index == i:
                return pr.dimension
        return 0

    def to_json(self):
        return {
            "verdict": self.verdict,
            "cohen_macaulay": self.cohen_macaulay,
            "squarefree": self.squarefree,
            "pairs": [
                {"ext_pair": [pr.j - 1, pr.j], "cohomology_pair": [pr.cohomology_index - 1, pr.cohomology_index],
                 "dimension": pr.dimension, "skipped": pr.skipped}
                for pr in self.pairs
            ],
            "ext_series": {str(j): s.to_json() for j, s in sorted(self.ext_series.items())},
        }


def ext_modules(ideal):
    M = GradedModulePresentation.quotient(ideal)
    return {j: ext_module(M, j) for j in range(ideal.ring.n + 1)}


def constant_cohomology_criterion(ideal):
    """Degree-zero Hom between consecutive Ext^j(R/I, R), for every j = 1..n.

    By graded local duality the pair (Ext^{j-1}, Ext^j) is dual to
    (H^{i-1}_m, H^i_m) with i = n - j + 1, so the sweep covers every
    consecutive pair of local cohomology modules of R/I.
    """
    n = ideal.ring.n
    E = ext_modules(ideal)
    series = {j: E[j].hilbert_series() for j in E}
    nonzero = [j for j in E if not series[j].is_zero()]
    cm = len(nonzero) <= 1
    pairs = []
    for j in range(1, n + 1):
        a, b = E[j - 1], E[j]
        if series[j - 1].is_zero() or series[j].is_zero():
            pairs.append(PairResult(j, n - j + 1, 0, True))
            continue
        pairs.append(PairResult(j, n - j + 1, hom_dimension(a, b, 0), False))
    verdict = "pass" if all(pr.dimension == 0 for pr in pairs) else "fail"
    return CriterionReport(n=n, pairs=pairs, verdict=verdict, cohen_macaulay=cm,
                           squarefree=ideal.is_squarefree_monomial(), ext_series=series)


def obstruction_space_dims(ideal):
    """dim [Ext^1(I, R/I)]_0 and dim [Ext^2(E_i, E_i)]_0 for E_i = Ext^{n-i}(R/I, R)."""
    n = ideal.ring.n
    I_mod = GradedModulePresentation.of_ideal(ideal)
    Q = GradedModulePresentation.quotient(ideal)
    out = {"ext1_I_RI": graded_ext_component(I_mod, Q, 1, 0) if ideal.gens else 0}
    per = {}
    for i in range(n + 1):
        E = ext_module(Q, n - i)
        per[i] = 0 if E.is_zero() else graded_ext_component(E, E, 2, 0)
    out["ext2_dual_cohomology"] = per
    return out


__all__ = [
    "CriterionReport",
    "PairResult",
    "constant_cohomology_criterion",
    "ext_modules",
    "graded_ext_component",
    "graded_hom_component",
    "hom_dimension",
    "obstruction_space_dims",
]
