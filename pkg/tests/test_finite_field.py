import random

import pytest

from tower_forge.finite_field import (
    FieldError,
    FieldPoly,
    PrimeField,
    is_separable,
    make_quad_ext,
    poly_gcd,
    roots_in_field,
)
from tower_forge.legendre import hasse_polynomial


@pytest.mark.parametrize("p,d", [(5, 2), (7, 3), (13, 2), (11, 2), (17, 3)])
def test_least_nonresidue(p, d):
    assert make_quad_ext(p).d == d
    assert d not in {x * x % p for x in range(p)}


@pytest.mark.parametrize("p", [2, 4, 1, 15])
def test_make_quad_ext_rejects(p):
    with pytest.raises(FieldError):
        make_quad_ext(p)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_frobenius_basics(p):
    F = make_quad_ext(p)
    w = F.w
    assert w.frobenius() == -w
    assert w * w == F.d
    assert w**p == -w
    for c in range(p):
        assert F(c).frobenius() == F(c)
    for z in F.elements():
        assert z.frobenius() == z**p
        assert z.frobenius().frobenius() == z
        assert (z.frobenius() == z) == z.in_prime_field()


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_frobenius_is_automorphism(p):
    F = make_quad_ext(p)
    rng = random.Random(p)
    for _ in range(1000):
        a = F(rng.randrange(p), rng.randrange(p))
        b = F(rng.randrange(p), rng.randrange(p))
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()


@pytest.mark.parametrize("p", [5, 7])
def test_field_axioms(p):
    F = make_quad_ext(p)
    elems = list(F.elements())
    for a in elems:
        if a:
            assert a * a.inverse() == 1
            assert (F(1) / a) * a == 1
    with pytest.raises(ZeroDivisionError):
        F(0).inverse()
    rng = random.Random(0)
    for _ in range(300):
        a, b, c = (rng.choice(elems) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a - b + b == a


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_is_square_against_oracles(p):
    F = make_quad_ext(p)
    squares = {y * y for y in F.elements()}
    e = (p * p - 1) // 2
    for z in F.elements():
        by_pow = (not z) or z**e == 1
        assert z.is_square() == by_pow == (z in squares)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_square_count(p):
    F = make_quad_ext(p)
    assert sum(1 for z in F.elements() if z and z.is_square()) == (p * p - 1) // 2


@pytest.mark.parametrize("p", [5, 7])
def test_prime_field_elements_are_squares(p):
    F = make_quad_ext(p)
    assert all(F(c).is_square() for c in range(1, p))


def test_w_is_square_exactly_when_minus_d_is():
    # w^((p^2-1)/2) = d^((p^2-1)/4); in F_49 that is 3^12 = 1
    F49 = make_quad_ext(7)
    assert F49.w.is_square() and F49.w**24 == 1
    F25 = make_quad_ext(5)
    assert not F25.w.is_square() and F25.w**12 == -1


def test_parse_and_format():
    F = make_quad_ext(7)
    for text, pair in [("6", (6, 0)), ("2+3*w", (2, 3)), ("3*w", (0, 3)), ("w", (0, 1)), ("1-w", (1, 6))]:
        z = F.parse(text)
        assert (z.c0, z.c1) == pair
    for z in F.elements():
        assert F.parse(str(z)) == z
    for bad in ["", "x", "2+*w", "3w"]:
        with pytest.raises(FieldError):
            F.parse(bad)


def test_poly_eval():
    F5, F7 = PrimeField(5), PrimeField(7)
    assert FieldPoly([1, 4, 1], F5)(F5(0)) == 1
    assert FieldPoly([1, 2, 2, 1], F7)(F7(6)) == 0
    assert FieldPoly([], F7)(F7(3)) == 0


def test_roots_in_field():
    F5, F7 = PrimeField(5), PrimeField(7)
    h = FieldPoly([1, 4, 1], F5)
    assert roots_in_field(h) == []
    roots = roots_in_field(h, make_quad_ext(5))
    assert len(roots) == 2 and all(not r.in_prime_field() for r in roots)
    assert [r.value for r in roots_in_field(FieldPoly([1, 2, 2, 1], F7))] == [2, 4, 6]
    with pytest.raises(FieldError):
        roots_in_field(h, make_quad_ext(1009), limit=10**6)


def test_roots_of_product_contain_roots():
    F = make_quad_ext(7)
    rng = random.Random(2)
    for _ in range(20):
        f = FieldPoly([F(rng.randrange(7), rng.randrange(7)) for _ in range(3)], F)
        g = FieldPoly([F(rng.randrange(7), rng.randrange(7)) for _ in range(2)], F)
        rf, rfg = roots_in_field(f), roots_in_field(f * g)
        assert set(rf) <= set(rfg)
        assert len(rf) <= max(f.degree, 0) or f.is_zero()


def test_divmod_and_gcd():
    F = PrimeField(7)
    f = FieldPoly([1, 2, 2, 1], F)  # (t+1)(t^2+t+1)
    q, r = f.divmod(FieldPoly([1, 1], F))
    assert r.is_zero() and q == FieldPoly([1, 1, 1], F)
    assert poly_gcd(f, FieldPoly([1, 1], F) * FieldPoly([2, 1], F)) == FieldPoly([1, 1], F)


def test_is_separable():
    F5 = PrimeField(5)
    assert not is_separable(FieldPoly([0, 0, 1], F5))
    assert is_separable(FieldPoly([1, 4, 1], F5))
    assert is_separable(hasse_polynomial(13))
    with pytest.raises(FieldError):
        is_separable(FieldPoly([], F5))
