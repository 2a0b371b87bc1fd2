"""Randomized property suites; each runs at least 200 seeded cases."""

from math import comb

from corpus import (
    cases, random_binomial_ideal, random_graph_ideal, random_ideal, random_ring, random_squarefree,
    staircase_count,
)

from fiberfull.algebra import PolynomialRing
from fiberfull.cohomology import cohomology_table, euler_defect, local_cohomology_table, stratification_data
from fiberfull.criterion import constant_cohomology_criterion
from fiberfull.degeneration import verify_constant_cohomology
from fiberfull.hochster import hochster_table
from fiberfull.resolution import GradedModulePresentation
from fiberfull.tangent import fib_tangent_dim

N = 200


def test_macaulay_series_of_initial_ideal():
    for I in cases(101, N, random_ideal):
        J = I.initial_ideal()
        assert J.is_monomial()
        hs = I.hilbert_series()
        assert hs == J.hilbert_series()
        for d in range(6):
            assert hs.coefficient(d) == staircase_count(I, d) == staircase_count(J, d)


def test_resolutions_square_to_zero_and_certify_the_series():
    for I in cases(102, N, random_ideal):
        for M in (GradedModulePresentation.quotient(I), GradedModulePresentation.of_ideal(I)):
            res = M.resolution()
            assert res.length <= I.ring.n
            for k in range(1, res.length):
                assert res.differential(k).compose(res.differential(k + 1)).is_zero()
            assert res.check(M.hilbert_series())
        # the Euler series of the resolution predicts every staircase count
        euler = GradedModulePresentation.quotient(I).resolution().euler_series()
        assert [euler.coefficient(d) for d in range(5)] == [staircase_count(I, d) for d in range(5)]


def test_duality_anchor_on_twisted_free_modules():
    def make(rng):
        ring = PolynomialRing("abcde"[:rng.randint(1, 5)], random_ring(rng).field)
        twists = tuple(rng.randint(-2, 2) for _ in range(rng.randint(1, 3)))
        return ring, twists

    for ring, twists in cases(103, N, make):
        n = ring.n
        t = cohomology_table(GradedModulePresentation.free(ring, twists))
        assert t.nonzero_indices() == [n]
        top = max(twists)
        # a copy of R generated in degree a contributes comb(a - nu - 1, n - 1)
        for nu in range(top - n - 4, top - n + 1):
            assert t.h(n, nu) == sum(comb(a - nu - 1, n - 1) for a in twists if a - nu - 1 >= n - 1)
        assert t.h(n, top - n) == twists.count(top)
        assert all(t.h(n, nu) == 0 for nu in range(top - n + 1, top + 3))


def test_euler_identity_at_every_window_degree():
    for I in cases(104, N, random_ideal):
        data = stratification_data(I)
        t = data.h
        lo, hi = t.window
        for nu in range(lo - 2, hi + 3):
            assert euler_defect(t, nu) == data.P(nu)
            assert all(t.h(i, nu) >= 0 for i in range(t.n + 1))


def test_semicontinuity_and_constant_cohomology():
    strict = 0
    for make, seed in ((random_ideal, 105), (random_binomial_ideal, 205)):
        for I in cases(seed, N, make):
            rep = verify_constant_cohomology(I)
            assert rep.special.equals(I.initial_ideal())
            assert rep.macaulay_ok
            lo, hi = rep.window
            for i in range(I.ring.n + 1):
                for nu in range(lo, hi + 1):
                    assert rep.table_special.h(i, nu) >= rep.table_general.h(i, nu)
            assert rep.semicontinuity_ok
            if rep.criterion.passed:
                assert rep.equal
            strict += not rep.equal
    # the corpus has to contain families whose cohomology jumps
    assert strict >= 10


def test_hochster_agrees_with_duality():
    for I in cases(106, N, random_squarefree):
        a = hochster_table(I)
        b = local_cohomology_table(I)
        assert a.same_as(b)
        assert a.depth == b.depth and a.dim == b.dim


def test_squarefree_of_dimension_at_most_two_passes():
    seen = set()
    for I in cases(107, N, random_graph_ideal):
        t = local_cohomology_table(I)
        assert t.dim <= 2
        rep = constant_cohomology_criterion(I)
        assert rep.passed
        seen.add(rep.cohen_macaulay)
    # both Cohen-Macaulay and non-Cohen-Macaulay graphs occur
    assert seen == {True, False}


def test_criterion_pass_keeps_the_whole_tangent_space():
    passed = 0
    for I in cases(108, N, lambda rng: random_ideal(rng, monomial=True)):
        if constant_cohomology_criterion(I).passed:
            passed += 1
            rep = fib_tangent_dim(I)
            assert rep.dim_Fib == rep.dim_HS
    assert passed >= N // 2
