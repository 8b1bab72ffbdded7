import random

import pytest

from krhom.frobenius import AElem, CobordismMap, cup, delta, dot, eps, iota, m, permute
from krhom.polyring import Poly

A = Poly.var("a")
H = Poly.var("h")

ONE = AElem.basis((0,))
X = AElem.basis((1,))


def test_multiplication_table():
    assert m(AElem.basis((0, 0)), 0, 1) == ONE
    assert m(AElem.basis((0, 1)), 0, 1) == X
    assert m(AElem.basis((1, 0)), 0, 1) == X
    assert m(AElem.basis((1, 1)), 0, 1) == X.scale(H) + ONE.scale(A)


def test_comultiplication_table():
    assert delta(ONE, 0) == (
        AElem.basis((0, 1)) + AElem.basis((1, 0)) + AElem.basis((0, 0)).scale(-H)
    )
    assert delta(X, 0) == AElem.basis((1, 1)) + AElem.basis((0, 0)).scale(A)


def test_counit_and_unit():
    assert eps(ONE, 0) == AElem.zero(0)
    assert eps(X, 0) == AElem.basis(())
    assert iota() == ONE
    # (eps x id) . delta = id
    for v in (ONE, X):
        assert eps(delta(v, 0), 0) == v
        assert eps(delta(v, 0), 1) == v


def test_dot_is_multiplication_by_x():
    assert dot(ONE, 0) == X
    assert dot(X, 0) == X.scale(H) + ONE.scale(A)


def test_m_delta_is_two_x_minus_h():
    for v in (ONE, X):
        assert m(delta(v, 0), 0, 1) == dot(v, 0).scale(2) - v.scale(H)


def test_degrees_of_elementary_pieces():
    assert ONE.qdegree() == -1
    assert X.qdegree() == 1
    assert AElem.basis((1, 1)).scale(A).qdegree() == 6
    assert m(AElem.basis((1, 1)), 0, 1).qdegree() == 3
    assert delta(X, 0).qdegree() == 2
    assert CobordismMap(2, [("merge", 0, 1)]).degree == 1
    assert CobordismMap(1, [("split", 0)]).degree == 1
    assert CobordismMap(1, [("dot", 0)]).degree == 2
    assert CobordismMap(0, [("cup", 0)]).degree == -1
    assert CobordismMap(1, [("cap", 0)]).degree == -1
    assert CobordismMap(3, [("perm", (2, 0, 1))]).degree == 0


def test_cobordism_map_composition_and_scalar():
    tube = CobordismMap(1, [("split", 0), ("merge", 0, 1)])
    assert tube.apply(ONE) == dot(ONE, 0).scale(2) - ONE.scale(H)
    neg = tube.scaled(-1)
    assert neg.apply(X) == (dot(X, 0).scale(2) - X.scale(H)).scale(-1)
    assert CobordismMap(2, [("perm", (1, 0))]).apply(AElem.basis((0, 1))) == AElem.basis((1, 0))


def test_cobordism_map_validates_input_length():
    with pytest.raises(ValueError):
        CobordismMap(2, [("merge", 0, 1)]).apply(ONE)
    with pytest.raises(ValueError):
        permute(AElem.basis((0, 1)), (0, 0))


def _random_elem(rng, k):
    out = AElem.zero(k)
    for _ in range(rng.randrange(1, 4)):
        bits = tuple(rng.randrange(2) for _ in range(k))
        coeff = Poly.const(rng.randrange(-4, 5))
        if rng.random() < 0.3:
            coeff = coeff * A
        if rng.random() < 0.3:
            coeff = coeff * H
        out = out + AElem(k, {bits: coeff})
    return out


def test_frobenius_axioms_property_suite():
    rng = random.Random(715)
    for trial in range(220):
        k = rng.randrange(2, 5)
        z = _random_elem(rng, k)
        i = rng.randrange(k - 1)
        # associativity on three adjacent slots when available
        if k >= 3 and i + 2 < k:
            left = m(m(z, i, i + 1), i, i + 1)
            right = m(m(z, i + 1, i + 2), i, i + 1)
            assert left == right
        # coassociativity
        assert delta(delta(z, i), i) == delta(delta(z, i), i + 1)
        # Frobenius compatibility: delta . m = (m x id) . (id x delta)
        lhs = delta(m(z, i, i + 1), i)
        rhs = m(delta(z, i + 1), i, i + 1)
        assert lhs == rhs
        # unit and counit
        assert m(cup(z, i), i, i + 1) == z
        assert eps(delta(z, i), i + 1) == z
        # dot commutes through merge on either input
        assert dot(m(z, i, i + 1), i) == m(dot(z, i), i, i + 1)
        assert m(dot(z, i + 1), i, i + 1) == m(dot(z, i), i, i + 1)
    assert trial == 219
