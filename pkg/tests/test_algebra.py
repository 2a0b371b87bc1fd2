import random
from fractions import Fraction

import pytest
from gmpy2 import mpq

from fiberfull.algebra import (
    EQ, GF, GT, LT, QQ, DimensionError, MonomialOrder, ParseError, Polynomial, PolynomialRing,
    RingMismatchError, compare_monomials, format_polynomial, parse_polynomial, poly_arith,
)

GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def test_grevlex_square_beats_mixed_term():
    assert compare_monomials(GREVLEX, (2, 0, 0), (0, 1, 1)) == GT


def test_compare_is_reflexive():
    for order in (GREVLEX, LEX, MonomialOrder("weight", (3, 1, 2))):
        assert compare_monomials(order, (1, 2, 0), (1, 2, 0)) == EQ


def test_lex_ignores_degree():
    assert compare_monomials(LEX, (1, 0), (0, 3)) == GT
    assert compare_monomials(GREVLEX, (1, 0), (0, 3)) == LT


def test_grevlex_breaks_ties_on_last_variable():
    # x*z < y^2 in grevlex with x > y > z
    assert compare_monomials(GREVLEX, (1, 0, 1), (0, 2, 0)) == LT


def test_weight_order_uses_weights_first():
    w = MonomialOrder("weight", (1, 5))
    assert compare_monomials(w, (3, 0), (0, 1)) == LT


def test_mismatched_lengths_raise():
    with pytest.raises(DimensionError):
        compare_monomials(GREVLEX, (1, 0), (1, 0, 0))


def test_additive_inverse():
    R = PolynomialRing("xyz")
    f = R("x + y")
    assert (f + R("-x - y")).is_zero()
    assert poly_arith(f, R("-x-y"), "add").is_zero()


def test_distributivity():
    R = PolynomialRing("xyz")
    assert R("x") * R("y + z") == R("x*y + x*z")
    assert poly_arith(R("x"), R("y+z"), "mul") == R("x*y + x*z")


def test_frobenius_in_characteristic_two():
    R = PolynomialRing("xy", GF(2))
    assert (R("x + y")) ** 2 == R("x^2 + y^2")


def test_ring_mismatch():
    R = PolynomialRing("xyz")
    S = PolynomialRing("xyz", GF(7))
    with pytest.raises(RingMismatchError):
        poly_arith(R("x"), S("x"), "add")


def test_mul_adds_degrees_and_keeps_homogeneity():
    R = PolynomialRing("xyz")
    f, g = R("x^2 - y*z"), R("x + 2*z")
    assert (f * g).degree == 3
    assert (f * g).is_homogeneous()
    assert not (f + g).is_homogeneous()


def test_terms_sorted_decreasing():
    R = PolynomialRing("xyz")
    f = R("z^2 + x*y + y^2 + x^2")
    mons = [m for _, m in f.terms()]
    keys = [GREVLEX.key(m) for m in mons]
    assert keys == sorted(keys, reverse=True)
    assert mons[0] == (2, 0, 0)


def test_rationals_are_canonical():
    assert QQ("6/4") == mpq(3, 2)
    assert QQ(Fraction(-2, 4)).denominator == 2
    F = GF(7)
    assert F(-1) == 6
    assert F("1/2") == 4


def test_floats_rejected():
    with pytest.raises(TypeError):
        QQ(0.5)


def test_bad_prime_rejected():
    with pytest.raises(ValueError):
        GF(15)


def test_parse_and_format_round_trip():
    R = PolynomialRing("xyz")
    for text in ["x^2 - 3/2*y*z", "-x*y + z^2", "2*x^3 - x*y*z + 5*z^3"]:
        f = R(text)
        assert R(format_polynomial(f)) == f
        assert format_polynomial(R(format_polynomial(f))) == format_polynomial(f)


def test_parse_error_has_column():
    R = PolynomialRing("xyz")
    with pytest.raises(ParseError) as info:
        parse_polynomial(R, "x + q")
    assert info.value.column == 5


def _random_monomial(rng, n, d=4):
    return tuple(rng.randint(0, d) for _ in range(n))


def test_orders_are_multiplicative():
    rng = random.Random(11)
    orders = [GREVLEX, LEX, MonomialOrder("weight", (2, 0, 1, 3))]
    for _ in range(300):
        a, b, c = (_random_monomial(rng, 4) for _ in range(3))
        ac = tuple(x + y for x, y in zip(a, c))
        bc = tuple(x + y for x, y in zip(b, c))
        for order in orders:
            assert compare_monomials(order, a, b) == compare_monomials(order, ac, bc)


def test_orders_are_global():
    rng = random.Random(12)
    for _ in range(200):
        a = _random_monomial(rng, 3)
        if any(a):
            for order in (GREVLEX, LEX, MonomialOrder("weight", (0, 1, 1))):
                assert compare_monomials(order, a, (0, 0, 0)) == GT


def _random_poly(rng, R):
    coeffs = {}
    for _ in range(rng.randint(0, 4)):
        coeffs[_random_monomial(rng, R.n, 3)] = R.field(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
    return Polynomial(R, coeffs)


def test_canonicalization_idempotent():
    rng = random.Random(13)
    for field in (QQ, GF(101)):
        R = PolynomialRing("xyz", field)
        for _ in range(100):
            f = _random_poly(rng, R)
            g = Polynomial(R, f.coeffs)
            assert g == f
            assert all(c for c in g.coeffs.values())
            assert R(format_polynomial(f)) == f


def test_field_axioms_on_random_triples():
    rng = random.Random(14)
    for F in (QQ, GF(32003), GF(2)):
        for _ in range(200):
            a, b, c = (F(Fraction(rng.randint(-50, 50), rng.choice([1, 3, 5, 7, 9]))) for _ in range(3))
            assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
            assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.add(a, F.neg(a)) == F.zero
            if a:
                assert F.mul(a, F.inv(a)) == F.one


def test_polynomial_ring_laws():
    rng = random.Random(15)
    for field in (QQ, GF(7)):
        R = PolynomialRing("xyz", field)
        for _ in range(60):
            f, g, h = (_random_poly(rng, R) for _ in range(3))
            assert (f + g) * h == f * h + g * h
            assert (f * g) * h == f * (g * h)
            assert f * g == g * f
            assert (f - f).is_zero()
