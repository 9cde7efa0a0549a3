import time
from math import comb

import pytest

from holmaps.algebra import PoincarePolynomial
from holmaps.cli import run
from holmaps.extor import ext_vg_closed, minimal_resolution, tor_vanishing_check
from holmaps.jacobian import fg_mult_matrix, primitive_dim, w_homology
from holmaps.linalg import rank
from holmaps.specseq import genus1_closed_form, hol_poincare_genus1, injectivity_check, vg_koszul_homology
from holmaps.strata import HYPERELLIPTIC, CurveClass, le_poincare, le_quotient_oracle, w_k_t
from holmaps.symprod import macdonald_small_check, sp_poincare
from holmaps.verify import DETERMINISM_QUERIES

J = PoincarePolynomial.one_plus_x_power


@pytest.mark.criterion(1, "genus-one spectral sequence equals the closed forms, k=2..6, n=1..3, < 5 s")
def test_genus1_closed_forms():
    start = time.perf_counter()
    mismatches = []
    for n in (1, 2, 3):
        for k in range(2, 7):
            got = hol_poincare_genus1(k, n).dual_series
            want = genus1_closed_form(k, n)
            if got != want:
                mismatches.append((k, n, str(got), str(want)))
    assert time.perf_counter() - start < 5
    assert not mismatches, f"{len(mismatches)} of 15 cases differ; first: {mismatches[0]}"


@pytest.mark.criterion(2, "minimal resolution equals the Ext closed form, g=1..3, < 60 s")
def test_ext_oracle_equivalence():
    start = time.perf_counter()
    for g, max_l in [(1, 4), (2, 4), (3, 3)]:
        assert minimal_resolution(g, max_l).entries() == ext_vg_closed(g, max_l).entries()
    t = minimal_resolution(2, 3)
    assert (t[(2, 4)], t[(3, 5)]) == (5, 16)
    assert time.perf_counter() - start < 60


@pytest.mark.criterion(3, "Tor vanishing off m(g,l), g=1..3")
def test_tor_vanishing():
    for g, max_l in [(1, 5), (2, 5), (3, 3)]:
        rep = tor_vanishing_check(g, max_l)
        assert rep, rep.detail


@pytest.mark.criterion(4, "N(g,i) equals cokernel ranks and f_g has maximal rank, g<=4, < 10 s")
def test_primitive_ranks():
    start = time.perf_counter()
    for g in range(1, 5):
        for i in range(0, 2 * g + 1):
            image = rank(fg_mult_matrix(g, i - 2, check=False)) if i >= 2 else 0
            assert comb(2 * g, i) - image == primitive_dim(g, i)
        for i in range(0, 2 * g - 1):
            r = rank(fg_mult_matrix(g, i, check=False))
            if i <= g - 1:
                assert r == comb(2 * g, i)
            if i >= g - 1:
                assert r == comb(2 * g, i + 2)
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(5, "symmetric products: bundle form, splitting sum, presentation")
def test_symmetric_products():
    for g in range(1, 4):
        for k in range(2 * g - 1, 2 * g + 3):
            assert sp_poincare(g, k) == PoincarePolynomial.projective(k - g) * J(2 * g)
        for k in range(g):
            split = sum((PoincarePolynomial({s + 2 * (j - s): comb(2 * g, s) for s in range(j + 1)})
                         for j in range(k + 1)), PoincarePolynomial())
            assert sp_poincare(g, k) == split
    for g in (1, 2):
        for k in range(4):
            assert macdonald_small_check(g, k)


@pytest.mark.criterion(6, "W_j span oracle and strata dimension drops, g<=4")
def test_w_stratification():
    for g in range(1, 5):
        assert w_homology(g, g) == J(2 * g)
        for j in range(g + 1):
            assert w_homology(g, j).degree == 2 * j
            if j:
                assert w_homology(g, j - 1).leq(w_homology(g, j))
    for g in range(2, 5):
        curve = CurveClass(g, HYPERELLIPTIC)
        for k in range(2, g + 1):
            for t in range(2, k // 2 + 1):
                assert w_k_t(curve, k, t).homology.degree < w_k_t(curve, k - 1, t - 1).homology.degree


@pytest.mark.criterion(7, "LE_v for v<=g equals the quotient oracle; adjacent-binomial S_r rule fails it")
def test_le_quotient():
    for g in range(2, 5):
        curve = CurveClass(g, HYPERELLIPTIC)
        adjacent_ok = True
        for v in range(1, g + 1):
            assert le_poincare(curve, v, 1).total == le_quotient_oracle(g, v, 1)
            adjacent_ok &= le_poincare(curve, v, 1, s_rule="adjacent").total == le_quotient_oracle(g, v, 1)
        assert not adjacent_ok


@pytest.mark.criterion(8, "Koszul complex homology equals the resolution Betti numbers, g<=3")
def test_koszul_vs_resolution():
    for g, max_l in [(1, 5), (2, 5), (3, 4)]:
        kos = {k: v for k, v in vg_koszul_homology(g, max_l).items() if v}
        assert kos == dict(minimal_resolution(g, max_l).entries())


@pytest.mark.criterion(9, "stable survivors bounded by the mapping space, g=2, n=3, k=4,5, degree<=14")
def test_injectivity():
    for k in (4, 5):
        rep = injectivity_check(2, k, 3, 14)
        assert rep, rep.detail


@pytest.mark.criterion(10, "repeated CLI runs are byte-identical")
def test_determinism():
    for q in DETERMINISM_QUERIES:
        for fmt in ("text", "json", "csv"):
            argv = q + ["--format", fmt]
            first = run(argv)
            assert first[0] == 0
            assert run(argv) == first
