from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from holmaps.algebra import (
    BigradedTable,
    ExteriorElement,
    ExteriorMonomial,
    PoincarePolynomial,
    ext_mul,
    graded_basis,
    mask_sign,
    series_quotient,
    symplectic_form,
)
from holmaps.errors import ConsistencyError, ParameterError

NGENS = 4

polys = st.dictionaries(st.integers(0, 12), st.integers(0, 6), max_size=6).map(PoincarePolynomial)
masks = st.integers(0, 2**NGENS - 1)
elements = st.dictionaries(masks, st.integers(-3, 3), max_size=5).map(lambda t: ExteriorElement(NGENS, t))


def test_poincare_basics():
    p = PoincarePolynomial([1, 2, 1])
    assert p == PoincarePolynomial.one_plus_x_power(2)
    assert p.total() == 4 and p.euler() == 0
    assert p.degree == 2 and p.low_degree == 0
    assert str(p) == "1 + 2x^1 + x^2"
    assert PoincarePolynomial({3: 0}).is_zero()
    assert p.shift(3) == PoincarePolynomial({3: 1, 4: 2, 5: 1})
    assert PoincarePolynomial.projective(2) == PoincarePolynomial([1, 0, 1, 0, 1])


def test_minus_refuses_negative():
    with pytest.raises(ConsistencyError):
        PoincarePolynomial([1]).minus(PoincarePolynomial([2]))


def test_reflect():
    assert PoincarePolynomial({1: 2, 3: 5}).reflect(4) == PoincarePolynomial({3: 2, 1: 5})


def test_series_quotient_geometric():
    assert series_quotient({0: 1}, {0: 1, 1: -1}, 5) == {d: 1 for d in range(6)}


@given(polys, polys, polys)
def test_poly_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)


@given(polys, polys)
def test_leq_first_excess(p, q):
    assert p.leq(p + q)
    assert (p.first_excess(q) is None) == p.leq(q)


def test_mask_sign_small():
    # e1 e2 = -e2 e1, e1 e1 = 0
    assert mask_sign(0b10, 0b01) == -1
    assert mask_sign(0b01, 0b10) == 1
    assert mask_sign(0b01, 0b01) == 0


def test_graded_basis_counts():
    from math import comb
    for d in range(NGENS + 1):
        assert len(graded_basis(NGENS, d)) == comb(NGENS, d)


def test_monomial_roundtrip():
    m = ExteriorMonomial((1, 3))
    assert ExteriorMonomial.from_mask(m.mask) == m
    assert m.degree == 2


@given(elements, elements, elements)
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(elements, elements, elements)
def test_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(masks, masks)
def test_graded_commutativity(a, b):
    x = ExteriorElement(NGENS, {a: 1})
    y = ExteriorElement(NGENS, {b: 1})
    sign = (-1) ** (bin(a).count("1") * bin(b).count("1"))
    assert x * y == (y * x).scale(sign)


def test_generators_square_to_zero():
    for i in range(1, NGENS + 1):
        e = ExteriorElement.generator(NGENS, i)
        assert (e * e).is_zero()


def test_mismatched_algebras():
    with pytest.raises(ParameterError):
        ext_mul(ExteriorElement.one(2), ExteriorElement.one(4))


def test_symplectic_top_power():
    # f_g^g = g! e_1 ... e_{2g}
    for g, fact in [(1, 1), (2, 2), (3, 6)]:
        top = symplectic_form(g) ** g
        assert top.terms == {2 ** (2 * g) - 1: Fraction(fact)}


def test_bigraded_table():
    t = BigradedTable()
    t.add((0, 1), 2)
    t.add((1, 1), 3)
    t.add((1, 2), 1)
    assert t[(1, 1)] == 3 and t.total() == 6
    assert t.project(1) == PoincarePolynomial({1: 5, 2: 1})
    assert t.project(0) == PoincarePolynomial({0: 2, 1: 4})


def test_sign_matches_sorting_parity():
    # independent check: sign of concatenating index lists equals the parity of the sorting permutation
    for a_idx in combinations(range(NGENS), 2):
        for b_idx in combinations(range(NGENS), 2):
            a = sum(1 << i for i in a_idx)
            b = sum(1 << i for i in b_idx)
            if a & b:
                continue
            seq = list(a_idx) + list(b_idx)
            inv = sum(1 for i in range(4) for j in range(i + 1, 4) if seq[i] > seq[j])
            assert mask_sign(a, b) == (-1) ** inv
