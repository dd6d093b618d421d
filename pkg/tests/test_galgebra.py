from __future__ import annotations

import itertools

from hypothesis import given, strategies as st

from pin2inv.galgebra import (J, ONE, S, ZERO, GElement, galg_boundary, galg_mul, mono,
                              mono_degree, mono_mul)

elements = st.integers(0, 255).map(GElement)


def test_relations():
    j3 = GElement.monomial(3)
    assert galg_mul(J, j3) == ONE
    assert galg_mul(S, S) == ZERO
    assert galg_mul(S, J) == galg_mul(j3, S)
    assert J * J * J * J == ONE


def test_boundary_examples():
    assert galg_boundary(S) == ONE + GElement.monomial(2)
    assert galg_boundary(J) == ZERO
    assert galg_boundary(J * S) == J + GElement.monomial(3)


def test_all_monomial_pairs():
    for m1, m2 in itertools.product(range(8), repeat=2):
        p = mono_mul(m1, m2)
        if m1 >= 4 and m2 >= 4:
            assert p is None
            continue
        assert mono_degree(p) == mono_degree(m1) + mono_degree(m2)
        # rewrite with sj = j^3 s by hand: j^a s^b j^c s^e
        a, b, c, e = m1 % 4, m1 // 4, m2 % 4, m2 // 4
        assert p == mono(a + (3 * c if b else c), b + e)


@given(elements, elements, elements)
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(elements, elements, elements)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(elements, elements)
def test_leibniz(a, b):
    assert (a * b).boundary() == a.boundary() * b + a * b.boundary()


@given(elements)
def test_boundary_squares_to_zero(a):
    assert a.boundary().boundary() == ZERO


@given(elements, elements)
def test_conjugate_is_an_anti_automorphism(a, b):
    assert (a * b).conjugate() == b.conjugate() * a.conjugate()
    assert a.conjugate().conjugate() == a
    assert a.boundary().conjugate() == a.conjugate().boundary()
