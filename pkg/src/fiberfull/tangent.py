"""Tangent vectors [Hom(I, R/I)]_0 and the maps they induce on local cohomology.

With F the minimal resolution of R/I, the ideal I is resolved by G = F_{.+1}.
A tangent vector phi lifts to a chain map alpha_k : F_{k+1} -> F_k, and the
induced map Ext^k(R/I, R) -> Ext^k(I, R) is z -> alpha_k^T z modulo the
coboundaries im(d_{k+1}^T).  By graded local duality this is the Matlis dual
of H^{n-k}_m(phi), so H^i_m(phi) = 0 exactly when these classes all vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Polynomial
from .cohomology import cocycle_generators, dual_differential
from .criterion import graded_hom_component
from .groebner import SubmoduleOfFree
from .linalg import kernel
from .resolution import GradedMatrix, GradedModulePresentation


class InvalidTangentError(ValueError):
    """The proposed map does not respect the syzygies of the ideal."""


class _Setup:
    """Shared data for one ideal: the resolution and the ideal's presentation."""

    def __init__(self, ideal):
        self.ideal = ideal
        self.ring = ideal.ring
        self.Q = GradedModulePresentation.quotient(ideal)
        self.res = self.Q.resolution()
        self.n = self.ring.n
        d1 = self.res.differential(1)
        self.generators = [Polynomial(self.ring, {e: c for (_, e), c in col.items()}) for col in d1.columns]
        self.twists = d1.source.twists
        # I = coker(d_2 : F_2 -> F_1)
        self.I_pres = GradedModulePresentation(self.res.differential(2)) if self.res.length >= 1 else None
        self._image = {}

    def image_module(self, k):
        """im(d_k) inside F_{k-1}, for lifting."""
        if k not in self._image:
            d = self.res.differential(k)
            self._image[k] = SubmoduleOfFree(self.ring, d.target.twists, d.columns, degrees=d.source.twists)
        return self._image[k]


def _setup(ideal):
    return _Setup(ideal)


def hilb_tangent_basis(ideal, setup=None):
    """Basis of [Hom(I, R/I)]_0 as lists of images of the minimal generators.

    Returns ``(dimension, basis, generators)``; each basis element is a list
    of Polynomials (normal forms modulo I) aligned with ``generators``.
    """
    S = setup or _setup(ideal)
    if not S.generators:
        return 0, [], []
    dim, mats = graded_hom_component(S.I_pres, S.Q, 0)
    basis = [[m.entry(0, j) for j in range(len(S.generators))] for m in mats]
    return dim, basis, list(S.generators)


def tangent_vector(ideal, assignment, setup=None):
    """Build phi from ``{generator: image}`` (strings or Polynomials); others map to 0.

    Generators are matched up to a nonzero scalar against the minimal generators.
    """
    S = setup or _setup(ideal)
    ring = S.ring
    images = [ring.zero() for _ in S.generators]
    for g, v in assignment.items():
        g = ring(g) if isinstance(g, str) else g
        v = ring(v) if isinstance(v, str) else v
        for j, f in enumerate(S.generators):
            if f.monic() == g.monic():
                ratio = _ratio(ring, g, f)
                images[j] = v.scale(ratio)
                break
        else:
            raise InvalidTangentError(f"{g} is not a minimal generator of the ideal")
    return images


def _ratio(ring, g, f):
    """The scalar c with f = c * g."""
    a, m = g.leading_term()
    b = f.coeffs[m]
    return ring.field.mul(b, ring.field.inv(a))


def lift_chain_map(ideal, phi, setup=None):
    """Chain map alpha_k : F_{k+1} -> F_k (k = 0..L-1) over phi; squares are checked exactly."""
    S = setup or _setup(ideal)
    ring = S.ring
    res = S.res
    L = res.length
    if len(phi) != len(S.generators):
        raise InvalidTangentError("one image per minimal generator is required")
    F1 = res.free_module(1)
    cols = []
    for j, v in enumerate(phi):
        v = ring(v) if isinstance(v, str) else v
        if not v.is_zero() and v.degree != S.twists[j]:
            raise InvalidTangentError(f"image of generator {j} has the wrong degree")
        cols.append({(0, e): c for e, c in v.coeffs.items()})
    alphas = [GradedMatrix(ring, F1, res.free_module(0), cols)]
    for k in range(1, L):
        # need d_k alpha_k = alpha_{k-1} d_{k+1}
        target = alphas[k - 1].compose(res.differential(k + 1))
        sub = S.image_module(k)
        new_cols = []
        for col in target.columns:
            if not col:
                new_cols.append({})
                continue
            coeffs = sub.lift(col)
            if coeffs is None:
                if k == 1:
                    raise InvalidTangentError("the map does not respect the syzygies of the ideal")
                raise RuntimeError("chain map lifting failed")
            vec = {}
            for i, poly in enumerate(coeffs):
                for e, c in poly.items():
                    vec[(i, e)] = c
            new_cols.append(vec)
        alphas.append(GradedMatrix(ring, res.free_module(k + 1), res.free_module(k), new_cols))
    for k in range(1, L):
        left = res.differential(k).compose(alphas[k])
        right = alphas[k - 1].compose(res.differential(k + 1))
        if left.columns != right.columns:
            raise RuntimeError("lifted chain map does not commute")
    return alphas


def _induced_classes(S, alphas, k):
    """Normal forms of alpha_k^T z mod im(d_{k+1}^T) for each cocycle generator z of F_k^*."""
    res = S.res
    if k >= len(alphas):
        return []
    Fk_star = res.free_module(k).dual()
    if Fk_star.rank == 0 or res.free_module(k + 1).rank == 0:
        return []
    gens, _ = _cocycles(S, k)
    aT = alphas[k].transpose()
    if k == 0:
        cob = None
    else:
        cob = _coboundaries(S, k)
    out = []
    for z in gens:
        img = aT.apply(z)
        if cob is not None and img:
            img = cob.normal_form(img)
        out.append(img)
    return out


def _cocycles(S, k):
    key = ("cocycles", k)
    if key not in S._image:
        S._image[key] = cocycle_generators(S.res, k)
    return S._image[key]


def _coboundaries(S, k):
    """im(d_{k+1}^T) in F_{k+1}^*: coboundaries of Hom(G, R) in slot k."""
    key = ("cob", k)
    if key not in S._image:
        B = dual_differential(S.res, k + 1)
        S._image[key] = SubmoduleOfFree(S.ring, B.target.twists, B.columns, degrees=B.source.twists)
    return S._image[key]


def induced_cohomology_maps(ideal, phi, setup=None):
    """``{i: is_zero}`` for the maps H^i_m(I) -> H^i_m(R/I) induced by phi."""
    S = setup or _setup(ideal)
    alphas = lift_chain_map(ideal, phi, S)
    out = {}
    for i in range(S.n + 1):
        k = S.n - i
        out[i] = all(not v for v in _induced_classes(S, alphas, k))
    return out


@dataclass
class TangentReport:
    dim_HS: int
    dim_Fib: int
    generators: list
    basis: list
    flags: list                     # per basis vector: {i: induced map is zero}
    fib_basis: list = field(default_factory=list)

    def to_json(self, fmt=str):
        return {
            "dim_HS": self.dim_HS,
            "dim_Fib": self.dim_Fib,
            "generators": [fmt(g) for g in self.generators],
            "basis": [[fmt(v) for v in phi] for phi in self.basis],
            "nonzero_indices": [sorted(i for i, z in fl.items() if not z) for fl in self.flags],
        }


def fib_tangent_dim(ideal):
    """Kernel of phi -> (induced classes on every Ext) over the full tangent space."""
    S = _setup(ideal)
    dim, basis, gens = hilb_tangent_basis(ideal, S)
    p = S.ring.field.p
    columns = []
    flags = []
    for phi in basis:
        alphas = lift_chain_map(ideal, phi, S)
        vec = {}
        fl = {}
        for i in range(S.n + 1):
            k = S.n - i
            classes = _induced_classes(S, alphas, k)
            fl[i] = all(not c for c in classes)
            for z, c in enumerate(classes):
                for t, v in c.items():
                    vec[(k, z, t)] = v
        columns.append(vec)
        flags.append(fl)
    ker = kernel(columns, p)
    fib_basis = []
    for sol in ker:
        combo = [S.ring.zero() for _ in gens]
        for b, c in sol.items():
            combo = [a + v.scale(c) for a, v in zip(combo, basis[b])]
        fib_basis.append(combo)
    return TangentReport(dim_HS=dim, dim_Fib=len(ker), generators=gens, basis=basis,
                         flags=flags, fib_basis=fib_basis)


__all__ = [
    "InvalidTangentError",
    "TangentReport",
    "fib_tangent_dim",
    "hilb_tangent_basis",
    "induced_cohomology_maps",
    "lift_chain_map",
    "tangent_vector",
]
