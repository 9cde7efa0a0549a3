import pytest
from hypothesis import given, strategies as st

from holmaps.algebra import PoincarePolynomial
from holmaps.errors import ParameterError
from holmaps.symprod import (
    macdonald_small_check,
    sp_poincare,
    sp_relative,
    sp_susp_relative,
    susp_basis,
    sym_prod_table,
)


def test_sp_examples():
    assert sp_poincare(2, 3) == PoincarePolynomial([1, 0, 1]) * PoincarePolynomial.one_plus_x_power(4)
    assert sp_poincare(1, 1) == PoincarePolynomial([1, 2, 1])
    assert sp_poincare(3, 0) == PoincarePolynomial([1])
    # SP^2 of genus 3: Lambda^0,1,2 plus the top class times Lambda^0,1 and its square
    assert sp_poincare(3, 2) == PoincarePolynomial([1, 6, 16, 6, 1])


@pytest.mark.parametrize("g", [1, 2, 3])
def test_bundle_range(g):
    for k in range(2 * g - 1, 2 * g + 3):
        want = PoincarePolynomial.projective(k - g) * PoincarePolynomial.one_plus_x_power(2 * g)
        assert sp_poincare(g, k) == want


@given(st.integers(1, 4), st.integers(0, 8))
def test_sp_poincare_duality(g, k):
    p = sp_poincare(g, k)
    assert p == p.reflect(2 * k)
    assert p[0] == 1


@given(st.integers(1, 4), st.integers(1, 8))
def test_sp_filtration(g, k):
    assert sp_poincare(g, k - 1).leq(sp_poincare(g, k))
    assert sp_relative(g, k) + sp_poincare(g, k - 1) == sp_poincare(g, k)


def test_table():
    t = sym_prod_table(2, 1)
    assert t.relative == PoincarePolynomial({1: 4, 2: 1})


@pytest.mark.parametrize("g,k", [(g, k) for g in (1, 2) for k in range(4)])
def test_presentation(g, k):
    rep = macdonald_small_check(g, k)
    assert rep, rep.detail


def test_presentation_bounds():
    with pytest.raises(ParameterError):
        macdonald_small_check(3, 1)


def test_suspension_relative():
    t = sp_susp_relative(1, 2)
    # |e1|^2, |e1||e2|, |e2|^2 in degree 4 and |e_i||M| in degree 5
    assert t.poincare() == PoincarePolynomial({4: 3, 5: 2})
    assert len(susp_basis(1, 2)) == 5
    assert len(susp_basis(2, 0)) == 1


def test_bad_args():
    with pytest.raises(ParameterError):
        sp_poincare(0, 1)
    with pytest.raises(ParameterError):
        sp_poincare(1, -1)
