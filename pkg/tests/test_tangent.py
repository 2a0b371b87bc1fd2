import random

import pytest
from corpus import i1, i2, i3, point_ideal, random_ideal, ring_xyz

from fiberfull.algebra import PolynomialRing
from fiberfull.cohomology import ext_series
from fiberfull.groebner import Ideal, monomials_of_degree
from fiberfull.linalg import kernel
from fiberfull.resolution import GradedModulePresentation
from fiberfull.tangent import (
    InvalidTangentError, fib_tangent_dim, hilb_tangent_basis, induced_cohomology_maps,
    lift_chain_map, tangent_vector,
)


def brute_force_tangent_dim(ideal):
    """dim [Hom(I, R/I)]_0 for a monomial ideal from the pairwise lcm syzygies.

    Unknowns: coefficient of each standard monomial in the image of each
    minimal generator.  For every pair the relation (L/g_i) phi(g_i) =
    (L/g_j) phi(g_j) must hold modulo I, which is a monomial-by-monomial
    condition.
    """
    R = ideal.ring
    gens = ideal.minimal_monomial_generators()

    def in_ideal(e):
        return any(all(a <= b for a, b in zip(g, e)) for g in gens)

    unknowns = []
    for j, g in enumerate(gens):
        for m in monomials_of_degree(R.n, sum(g)):
            if not in_ideal(m):
                unknowns.append((j, m))
    columns = []
    for j, m in unknowns:
        col = {}
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                if j not in (a, b):
                    continue
                L = tuple(max(x, y) for x, y in zip(gens[a], gens[b]))
                shift = tuple(x - y for x, y in zip(L, gens[j]))
                image = tuple(x + y for x, y in zip(m, shift))
                if not in_ideal(image):
                    col[(a, b, image)] = 1 if j == a else -1
        columns.append(col)
    return len(kernel(columns, R.field.p))


def test_point_ideal_tangent_space():
    I = point_ideal()
    dim, basis, gens = hilb_tangent_basis(I)
    assert dim == 16 == len(basis)
    assert brute_force_tangent_dim(I) == 16


def test_principal_ideal():
    R = PolynomialRing("xy")
    I = Ideal(R, ["x"])
    dim, basis, _ = hilb_tangent_basis(I)
    assert dim == 1 == brute_force_tangent_dim(I)
    assert basis[0][0].monic() == R("y")


def test_maximal_ideal_has_no_degree_zero_tangents():
    R = ring_xyz()
    m = Ideal(R, ["x", "y", "z"])
    assert hilb_tangent_basis(m)[0] == 0 == brute_force_tangent_dim(m)


def test_brute_force_agrees_on_named_ideals():
    for I, expected in ((i1(), 2), (i2(), 16), (i3(), 6)):
        assert hilb_tangent_basis(I)[0] == expected == brute_force_tangent_dim(I)


def test_brute_force_agrees_on_random_monomial_ideals():
    for k in range(40):
        I = random_ideal(random.Random(4400 + k), monomial=True)
        assert hilb_tangent_basis(I)[0] == brute_force_tangent_dim(I)


def test_zero_vector_induces_zero_maps():
    I = point_ideal()
    phi = tangent_vector(I, {})
    assert all(induced_cohomology_maps(I, phi).values())


def test_exhibited_vector_is_nonzero_on_h2_only():
    I = point_ideal()
    phi = tangent_vector(I, {"y*z": "x^2"})
    flags = induced_cohomology_maps(I, phi)
    assert [i for i, zero in flags.items() if not zero] == [2]


def test_point_ideal_fiber_full_dimension():
    rep = fib_tangent_dim(point_ideal())
    assert rep.dim_HS == 16
    assert rep.dim_Fib == 15
    flagged = [fl for fl in rep.flags if not all(fl.values())]
    assert len(flagged) == 1
    assert [i for i, z in flagged[0].items() if not z] == [2]


def test_fib_basis_vectors_induce_zero_maps():
    I = point_ideal()
    rep = fib_tangent_dim(I)
    rng = random.Random(2)
    for phi in rep.fib_basis[:5]:
        assert all(induced_cohomology_maps(I, phi).values())
    # random combinations of the kernel stay in the kernel; adding the
    # flagged direction leaves it
    bad = next(b for b, fl in zip(rep.basis, rep.flags) if not all(fl.values()))
    for _ in range(3):
        combo = [I.ring.zero() for _ in rep.generators]
        for phi in rep.fib_basis:
            c = rng.randint(-3, 3)
            combo = [a + v.scale(c) for a, v in zip(combo, phi)]
        assert all(induced_cohomology_maps(I, combo).values())
        off = [a + v for a, v in zip(combo, bad)]
        assert not all(induced_cohomology_maps(I, off).values())


def test_criterion_pass_gives_full_fiber_tangent_space():
    for I in (i1(), i2(), i3()):
        rep = fib_tangent_dim(I)
        assert rep.dim_Fib == rep.dim_HS


def test_cohen_macaulay_gives_full_fiber_tangent_space():
    R = ring_xyz()
    I = Ideal(R, ["x", "y"])
    rep = fib_tangent_dim(I)
    # x and y each go to a multiple of z
    assert rep.dim_HS == 2 == brute_force_tangent_dim(I)
    assert rep.dim_Fib == 2


def test_invalid_tangent_vector_rejected():
    I = point_ideal()
    # x*z -> y breaks the syzygy y*(x*z) = x*(y*z)
    with pytest.raises(InvalidTangentError):
        induced_cohomology_maps(I, tangent_vector(I, {"x*z": "y^2"}))
    with pytest.raises(InvalidTangentError):
        tangent_vector(I, {"x*y": "z^2"})
    with pytest.raises(InvalidTangentError):
        lift_chain_map(I, tangent_vector(I, {"y*z": "x"}))


def test_chain_map_squares_commute():
    I = point_ideal()
    dim, basis, _ = hilb_tangent_basis(I)
    res = GradedModulePresentation.quotient(I).resolution()
    for phi in basis[:6]:
        alphas = lift_chain_map(I, phi)
        for k in range(1, len(alphas)):
            left = res.differential(k).compose(alphas[k])
            right = alphas[k - 1].compose(res.differential(k + 1))
            assert left.columns == right.columns


def test_flags_stable_under_generator_permutation():
    R = PolynomialRing("xyzw")
    orders = [["x^3", "x*z", "y*z", "z^2"], ["z^2", "y*z", "x^3", "x*z"], ["y*z", "z^2", "x*z", "x^3"]]
    results = []
    for gens in orders:
        I = Ideal(R, gens)
        phi = tangent_vector(I, {"y*z": "x^2"})
        results.append(induced_cohomology_maps(I, phi))
        rep = fib_tangent_dim(I)
        assert (rep.dim_HS, rep.dim_Fib) == (16, 15)
    assert results[0] == results[1] == results[2]


def test_tangent_vector_matches_generators_up_to_scalar():
    I = point_ideal()
    a = tangent_vector(I, {"y*z": "x^2"})
    b = tangent_vector(I, {"2*y*z": "2*x^2"})
    assert a == b


def test_ideal_ext_shift():
    for I in (i1(), i2(), i3(), point_ideal()):
        n = I.ring.n
        of_ideal = ext_series(GradedModulePresentation.of_ideal(I))
        of_quotient = ext_series(GradedModulePresentation.quotient(I))
        for j in range(1, n):
            assert of_ideal[j] == of_quotient[j + 1]


def test_flags_stable_under_variable_order_permutation():
    results = []
    for names in ("xyzw", "wzyx", "zxwy", "ywxz"):
        R = PolynomialRing(names)
        I = Ideal(R, ["x^3", "x*z", "y*z", "z^2"])
        phi = tangent_vector(I, {"y*z": "x^2"})
        results.append(induced_cohomology_maps(I, phi))
        rep = fib_tangent_dim(I)
        assert (rep.dim_HS, rep.dim_Fib) == (16, 15)
    assert all(r == results[0] for r in results)
