"""Polynomial ring: frozen values, exact division, ring-axiom property suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from krhom.polyring import A, H, LaurentPoly, Poly, X, frob_relation, potential


def test_potential_is_homogeneous_of_degree_six():
    p = potential(X(1))
    assert p.homogeneous_degree() == 6


def test_potential_evaluates_exactly():
    # p(x) = x^3 - (3/2) h x^2 - 3 a x at x=2, h=1, a=3: 8 - 6 - 18 = -16
    p = potential(X(1))
    assert p.evaluate({1: 2, "h": 1, "a": 3}) == Fraction(-16)


def test_divided_difference_of_potential():
    # (p(x2) - p(x1)) / (x2 - x1), exact division
    num = potential(X(2)) - potential(X(1))
    quot = num.divide_exact(X(2) - X(1))
    expect = (
        X(1) ** 2 + X(1) * X(2) + X(2) ** 2
        - Fraction(3, 2) * H * (X(1) + X(2))
        - 3 * A
    )
    assert quot == expect
    assert quot.homogeneous_degree() == 4
    # diagonal limit is the derivative: 3(x^2 - h x - a)
    diag = quot.substitute({2: X(1)})
    assert diag == 3 * frob_relation(X(1))


def test_divide_exact_rejects_non_divisor():
    with pytest.raises(ValueError):
        (X(1) ** 2 + 1).divide_exact(X(1) - X(2))


def test_divide_exact_by_constant():
    p = 3 * X(1) + 6 * A
    assert p.divide_exact(Poly.const(3)) == X(1) + 2 * A


def test_substitution_is_simultaneous():
    p = X(1) * X(2)
    q = p.substitute({1: X(3) + H, 2: X(3) - H})
    assert q == X(3) ** 2 - H ** 2


def test_substitution_rejects_cyclic_bindings():
    with pytest.raises(ValueError):
        (X(1) + X(2)).substitute({1: X(2), 2: X(1)})


def test_substitution_frozen_value():
    # -3(x3 + x4) + 3h with x4 -> h - x2 collapses to 3 x2 - 3 x3
    u2 = -3 * (X(3) + X(4)) + 3 * H
    assert u2.substitute({4: H - X(2)}) == 3 * X(2) - 3 * X(3)


def test_grading_constants():
    assert A.homogeneous_degree() == 4
    assert H.homogeneous_degree() == 2
    assert X(7).homogeneous_degree() == 2
    assert Poly.const(5).homogeneous_degree() == 0
    assert Poly.zero().homogeneous_degree() == 0
    assert (A + H).homogeneous_degree() is None


def test_coefficient_extraction():
    p = 2 * X(1) ** 2 * H + 5 * X(1) - 3 * A
    assert p.coefficient_of(1, 2) == 2 * H
    assert p.coefficient_of(1, 1) == Poly.const(5)
    assert p.coefficient_of(1, 0) == -3 * A


def test_canonical_printing():
    p = X(2) ** 2 - Fraction(3, 2) * H * X(1) - 3 * A + 1
    assert str(p) == "x2^2 - 3/2*h*x1 - 3*a + 1"
    assert str(Poly.zero()) == "0"
    assert str(-X(1)) == "-x1"


def _random_poly(rng: random.Random, nvars: int = 3, nterms: int = 4) -> Poly:
    p = Poly.zero()
    for _ in range(rng.randrange(nterms + 1)):
        c = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        term = Poly.const(c)
        for _ in range(rng.randrange(4)):
            v = rng.choice(["a", "h", 1, 2, nvars])
            term = term * Poly.var(v)
        p = p + term
    return p


def test_ring_axioms_property_suite():
    rng = random.Random(20260815)
    pts = [{"a": Fraction(2), "h": Fraction(-1), 1: Fraction(1, 2), 2: Fraction(3), 3: Fraction(-2)}]
    for trial in range(220):
        p = _random_poly(rng)
        q = _random_poly(rng)
        r = _random_poly(rng)
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p - p == Poly.zero()
        assert p * Poly.const(1) == p
        # evaluation is a ring homomorphism
        pt = pts[0]
        assert (p * q + r).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt) + r.evaluate(pt)
        # exact division round-trips
        if q:
            assert (p * q).divide_exact(q) == p


def test_divide_exact_property_round_trip():
    rng = random.Random(7)
    for _ in range(200):
        d = Poly.zero()
        while not d:
            d = _random_poly(rng, nterms=3)
        p = _random_poly(rng, nterms=3)
        prod = p * d
        assert prod.divide_exact(d) == p


def test_laurent_arithmetic():
    c = LaurentPoly.circle()
    assert str(c) == "q + q^-1"
    assert c * c == LaurentPoly({2: 1, 0: 2, -2: 1})
    assert (c ** 3).evaluate(Fraction(1)) == 8
    assert c.shift(2) == LaurentPoly({3: 1, 1: 1})
    assert c - c == LaurentPoly.zero()
    assert str(LaurentPoly({6: 1, 4: 1, 2: 1, 0: 1})) == "q^6 + q^4 + q^2 + 1"


def test_laurent_unknot_bracket_shape():
    assert LaurentPoly.circle() == LaurentPoly({1: 1, -1: 1})
