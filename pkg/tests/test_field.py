import itertools

import pytest
from hypothesis import given, settings, strategies as st

from clustercodes.field import (
    BinPoly,
    ExtField,
    ExtPoly,
    factor,
    is_b_polynomial,
    is_irreducible,
    is_primitive,
    is_square_free,
    period,
    poly_gcd,
    primitive_polys,
    splitting_field_degree,
)

P = BinPoly.from_exponents
polys = st.integers(min_value=0, max_value=(1 << 12) - 1).map(BinPoly)
nonzero = st.integers(min_value=1, max_value=(1 << 12) - 1).map(BinPoly)


def test_string_roundtrip_lowest_degree_first():
    f = BinPoly.from_string("1101")
    assert f == P([0, 1, 3])
    assert f.to_string() == "1101"
    assert f.degree == 3


def test_zero_degree_is_not_an_integer():
    d = BinPoly(0).degree
    assert d != -1 and d < 0 and not isinstance(d, int)


def test_gcd_examples():
    f = P([0, 2, 5])
    assert poly_gcd(f, BinPoly(0)) == f
    assert poly_gcd(P([0, 2]), P([0, 1])) == P([0, 1])
    assert poly_gcd(P([0, 1, 3]), P([0, 1, 2])) == BinPoly(1)


def test_square_free_examples():
    assert is_square_free(P([0, 1, 2]))
    assert not is_square_free(P([0, 2]))
    assert not is_square_free(P([3]))


def test_irreducible_examples():
    assert is_irreducible(P([0, 1, 3]))
    assert not is_irreducible(P([0, 2]))
    assert is_irreducible(P([1]))


def test_period_examples():
    assert period(P([0, 1])) == 1
    assert period(P([0, 1, 3])) == 7
    assert period(P([0, 1, 2])) == 3


def test_splitting_degree_examples():
    assert splitting_field_degree(P([0, 1])) == 1
    assert splitting_field_degree(P([0, 1, 2])) == 2
    assert splitting_field_degree(P([0, 1]) * P([0, 1, 3])) == 3


def test_b_polynomial_examples():
    assert is_b_polynomial(P([0, 1, 2]), 3)
    assert not is_b_polynomial(BinPoly.all_ones(4), 4)
    assert not is_b_polynomial(P([2]), 3)


@pytest.mark.parametrize("b", range(1, 16, 2))
def test_all_ones_is_b_polynomial_for_odd_b(b):
    assert is_b_polynomial(BinPoly.all_ones(b), b)


@pytest.mark.parametrize("b", range(4, 15, 2))
def test_all_ones_fails_for_even_b_from_four(b):
    assert not is_b_polynomial(BinPoly.all_ones(b), b)


def test_b_two_all_ones_is_a_b_polynomial():
    # 1+x is square-free with period 1, so b=2 is an exception among even b
    assert is_b_polynomial(BinPoly.all_ones(2), 2)


def test_period_divides_exhaustively_up_to_degree_10():
    one = BinPoly(1)
    for bits in range(3, 1 << 11, 2):
        f = BinPoly(bits)
        h = period(f)
        assert f.divides(BinPoly.x_power(h) + one)
        for k in range(1, min(h, 64)):
            assert not f.divides(BinPoly.x_power(k) + one)


def test_square_free_matches_factorization_up_to_degree_8():
    for bits in range(2, 1 << 9):
        f = BinPoly(bits)
        fs = factor(f)
        prod = BinPoly(1)
        for g in fs:
            assert is_irreducible(g)
            prod = prod * g
        assert prod == f
        assert is_square_free(f) == (len(set(fs)) == len(fs))


def test_primitive_polys_are_sorted_and_have_full_period():
    ps = list(primitive_polys(6))
    assert len(ps) == 6  # phi(63)/6
    assert [p.bits for p in ps] == sorted(p.bits for p in ps)
    assert all(period(p) == 63 and is_primitive(p) for p in ps)


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + a == BinPoly(0)


@given(polys, nonzero)
def test_division_identity(a, d):
    q, r = divmod(a, d)
    assert q * d + r == a
    assert r.degree < d.degree


@given(nonzero, nonzero)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    assert g.divides(a) and g.divides(b)


def test_gf4_example():
    F = ExtField(2, P([0, 1, 2]))
    alpha = F(0b10)
    assert alpha * alpha == F(0b11)
    assert alpha + alpha == F.zero()
    assert alpha * F.one() == alpha


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_field_axioms_exhaustive(s):
    F = ExtField(s)
    els = F.elements()
    for a, b in itertools.product(els, repeat=2):
        assert a * b == b * a
        if b:
            assert (a / b) * b == a
    for a, b, c in itertools.product(els, repeat=3):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("s", [5, 8, 16])
def test_default_moduli_give_fields(s):
    F = ExtField(s)
    assert is_irreducible(F.modulus)
    g = F(0b10)
    assert g ** ((1 << s) - 1) == F.one()
    assert F.parse(F.serialize()) == F


@settings(max_examples=50)
@given(st.integers(1, 255), st.integers(1, 255))
def test_gf256_inverse(a, b):
    F = ExtField(8)
    x, y = F(a), F(b)
    assert x * x.inverse() == F.one()
    assert (x * y) / y == x


def test_ext_poly_evaluation():
    F = ExtField(3)
    f = ExtPoly(F, [1, 0, 1])  # 1 + z^2
    for z in F.elements():
        assert f(z) == F.one() + z * z
    assert (f * f)(F(3)) == f(F(3)) * f(F(3))
