import pytest
from hypothesis import given, strategies as st

from holmaps.algebra import PoincarePolynomial
from holmaps.errors import ParameterError, UnsupportedRegimeError
from holmaps.jacobian import w_homology
from holmaps.strata import (
    ELLIPTIC,
    HYPERELLIPTIC,
    CurveClass,
    assemble_le_e1,
    le_poincare,
    le_quotient_oracle,
    s_r_series,
    w_k_t,
)

J = PoincarePolynomial.one_plus_x_power


def hyp(g):
    return CurveClass(g, HYPERELLIPTIC)


def test_curve_validation():
    with pytest.raises(ParameterError):
        CurveClass(2, ELLIPTIC)
    with pytest.raises(ParameterError):
        CurveClass(1, HYPERELLIPTIC)
    with pytest.raises(UnsupportedRegimeError):
        CurveClass(3, "general")
    assert CurveClass.for_genus(1).family == ELLIPTIC


def test_strata_examples():
    s = w_k_t(hyp(2), 2, 1)
    assert (s.reduced_to, s.homology) == (0, PoincarePolynomial([1]))
    assert w_k_t(hyp(3), 4, 2).homology == PoincarePolynomial([1])
    assert w_k_t(hyp(3), 3, 1).homology == PoincarePolynomial([1, 6, 1])


def test_strata_rejections():
    with pytest.raises(UnsupportedRegimeError):
        w_k_t(hyp(3), 4, 1)  # case (b) needs t > k - g
    with pytest.raises(UnsupportedRegimeError):
        w_k_t(hyp(3), 3, 2)  # beyond floor(k/2)
    with pytest.raises(UnsupportedRegimeError):
        w_k_t(hyp(2), 3, 1)  # k = 2g - 1 is outside both cases


@pytest.mark.parametrize("g", [2, 3, 4])
def test_dimension_drop(g):
    for k in range(2, g + 1):
        for t in range(2, k // 2 + 1):
            assert w_k_t(hyp(g), k, t).homology.degree < w_k_t(hyp(g), k - 1, t - 1).homology.degree


@pytest.mark.parametrize("g", [2, 3, 4])
def test_containment(g):
    for r in range(2, g + 1):
        assert w_homology(g, r - 2).leq(w_homology(g, r))


def test_le_examples():
    assert le_poincare(hyp(2), 4, 1).total == J(4).shift(8)
    assert le_poincare(hyp(3), 2, 1).total == PoincarePolynomial({2: 14, 3: 6, 4: 2})
    assert le_poincare(hyp(2), 3, 1).total == PoincarePolynomial({1: 4, 2: 6, 3: 4, 4: 1}).shift(4)


def test_le_regimes():
    assert le_poincare(hyp(4), 3, 1).regime == "i"
    assert le_poincare(hyp(4), 6, 1).regime == "ii"
    assert le_poincare(hyp(4), 7, 1).regime == "iii"
    assert le_poincare(hyp(4), 8, 1).regime == "iv"
    assert le_poincare(CurveClass.for_genus(1), 1, 1).regime == "iii"


@pytest.mark.parametrize("g", [2, 3, 4])
def test_le_quotient_oracle(g):
    for v in range(1, g + 1):
        for n in (1, 2):
            assert le_poincare(hyp(g), v, n).total == le_quotient_oracle(g, v, n)


@pytest.mark.parametrize("g", [2, 3, 4])
def test_adjacent_s_rule_fails_the_oracle(g):
    # regression fixture: the C(2g,l) - C(2g,l-1) coefficients do not give the quotient
    bad = [v for v in range(1, g + 1)
           if le_poincare(hyp(g), v, 1, s_rule="adjacent").total != le_quotient_oracle(g, v, 1)]
    assert bad


def test_s_rule_unknown():
    with pytest.raises(ParameterError):
        s_r_series(2, 1, rule="other")


@given(st.integers(2, 4).flatmap(lambda g: st.tuples(st.just(g), st.integers(1, 2 * g + 2), st.integers(1, 3))))
def test_e1_assembly_matches_total(args):
    g, v, n = args
    table = assemble_le_e1(hyp(g), v, n)
    assert table.project(1) == le_poincare(hyp(g), v, n).total


def test_e1_assembly_examples():
    t = assemble_le_e1(CurveClass.for_genus(1), 2, 1)
    assert t.project(1) == J(2).shift(4)
    t = assemble_le_e1(hyp(2), 2, 2)
    assert t.project(1) == s_r_series(2, 2) + PoincarePolynomial({6: 1})
    assert assemble_le_e1(hyp(2), 5, 1).project(1) == J(4).shift(12)


@pytest.mark.parametrize("g", [2, 3])
def test_boundary_jump(g):
    n = 1
    hi = le_poincare(hyp(g), 2 * g, n).total
    lo = le_poincare(hyp(g), 2 * g - 1, n).total.shift(2 * (n + 1))
    assert hi.total() > lo.total()


def test_le_bad_args():
    with pytest.raises(ParameterError):
        le_poincare(hyp(2), 0, 1)
    with pytest.raises(ParameterError):
        le_poincare(hyp(2), 1, 0)
