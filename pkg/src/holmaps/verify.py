"""Registry of cross-checks run by ``holmaps verify``.

Each check returns ``(ok, detail)``; ``detail`` names the first
counterexample when ``ok`` is false.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb

from .algebra import PoincarePolynomial
from .extor import ext_vg_closed, mn_ext_concentration, minimal_resolution, mn_dims, tor_vanishing_check
from .jacobian import fg_mult_matrix, primitive_dim, vg_dims, w_homology
from .linalg import rank
from .specseq import genus1_closed_form, hol_poincare_genus1, injectivity_check, vg_koszul_homology
from .strata import HYPERELLIPTIC, CurveClass, le_poincare, le_quotient_oracle, w_k_t
from .symprod import macdonald_small_check, sp_poincare


@dataclass
class Check:
    name: str
    fn: object
    suites: tuple[str, ...] = ("fast", "all")


def check_genus1_closed_forms(ks=range(2, 7), ns=(1, 2, 3), **_):
    for n in ns:
        for k in ks:
            got = hol_poincare_genus1(k, n).dual_series
            want = genus1_closed_form(k, n)
            if got != want:
                d = got.first_excess(want)
                if d is None:
                    d = want.first_excess(got)
                return False, f"k={k} n={n} degree {d}: computed {got[d]}, closed form {want[d]}"
    return True, ""


def check_ext_oracle(bounds=((1, 4), (2, 4), (3, 3)), **_):
    for g, max_l in bounds:
        res, closed = minimal_resolution(g, max_l), ext_vg_closed(g, max_l)
        if res.entries() != closed.entries():
            return False, f"g={g}: resolution {res.entries()} vs closed {closed.entries()}"
    r = minimal_resolution(2, 3)
    if (r[(2, 4)], r[(3, 5)]) != (5, 16):
        return False, f"g=2: beta_(2,4)={r[(2, 4)]}, beta_(3,5)={r[(3, 5)]}"
    return True, ""


def check_tor_vanishing(bounds=((1, 4), (2, 4), (3, 3)), **_):
    for g, max_l in bounds:
        rep = tor_vanishing_check(g, max_l)
        if not rep:
            return False, f"g={g}: {rep.detail}"
    return True, ""


def check_primitive_ranks(max_genus=4, **_):
    for g in range(1, max_genus + 1):
        vg_dims(g)  # raises on a closed form / cokernel mismatch
        for i in range(2 * g - 1):
            r = rank(fg_mult_matrix(g, i, check=False))
            if i <= g - 1 and r != comb(2 * g, i):
                return False, f"g={g}: f_g not injective in degree {i}"
            if i >= g - 1 and r != comb(2 * g, i + 2):
                return False, f"g={g}: f_g not surjective in degree {i}"
            if i + 2 <= g and comb(2 * g, i + 2) - r != primitive_dim(g, i + 2):
                return False, f"g={g}: cokernel rank in degree {i + 2}"
    return True, ""


def check_symprod(**_):
    for g in range(1, 4):
        for k in range(2 * g - 1, 2 * g + 3):
            want = PoincarePolynomial.projective(k - g) * PoincarePolynomial.one_plus_x_power(2 * g)
            if sp_poincare(g, k) != want:
                return False, f"SP^{k}, g={g}: bundle form"
        for k in range(g):
            sp_poincare(g, k)  # compares against the splitting sum internally
    for g in (1, 2):
        for k in range(4):
            rep = macdonald_small_check(g, k)
            if not rep:
                return False, f"presentation g={g} k={k} degree {rep.first_failure}"
    return True, ""


def check_w_strata(max_genus=4, **_):
    for g in range(1, max_genus + 1):
        if w_homology(g, g) != PoincarePolynomial.one_plus_x_power(2 * g):
            return False, f"W_{g} != J for g={g}"
        for j in range(1, g + 1):
            if not w_homology(g, j - 1).leq(w_homology(g, j)):
                return False, f"g={g}: W_{j - 1} not below W_{j}"
        if g < 2:
            continue
        curve = CurveClass(g, HYPERELLIPTIC)
        for k in range(2, g + 1):
            for t in range(2, k // 2 + 1):
                hi = w_k_t(curve, k, t).homology.degree
                lo = w_k_t(curve, k - 1, t - 1).homology.degree
                if not hi < lo:
                    return False, f"g={g}: dim W_{k}^{t} not below dim W_{k - 1}^{t - 1}"
    return True, ""


def check_le_quotient(s_rule="primitive", max_genus=4, **_):
    for g in range(2, max_genus + 1):
        curve = CurveClass(g, HYPERELLIPTIC)
        for v in range(1, g + 1):
            got = le_poincare(curve, v, 1, s_rule=s_rule).total
            want = le_quotient_oracle(g, v, 1)
            if got != want:
                return False, f"g={g} v={v}: S_r rule '{s_rule}' gives {got}, quotient gives {want}"
    return True, ""


def check_koszul_ext(bounds=((1, 4), (2, 4), (3, 3)), **_):
    for g, max_l in bounds:
        kos = {key: v for key, v in vg_koszul_homology(g, max_l).items() if v}
        res = dict(minimal_resolution(g, max_l).entries())
        if kos != res:
            return False, f"g={g}: Koszul {sorted(kos.items())} vs resolution {sorted(res.items())}"
    return True, ""


def check_injectivity(**_):
    for k in (4, 5):
        rep = injectivity_check(2, k, 3, 14)
        if not rep:
            return False, f"g=2 n=3 k={k}: excess in degree {rep.first_failure}"
    return True, ""


DETERMINISM_QUERIES = (
    ["sp", "--genus", "2", "--k", "3"],
    ["hol", "--genus", "1", "--k", "3", "--n", "1"],
    ["hol", "--genus", "2", "--k", "4", "--n", "3"],
    ["map", "--genus", "1", "--n", "2", "--truncate", "10"],
    ["le", "--genus", "3", "--v", "2", "--n", "1"],
    ["strata", "--genus", "3", "--k", "4", "--t", "2"],
    ["ext", "--genus", "2", "--max-l", "3"],
)


def check_determinism(**_):
    from .cli import run

    for q in DETERMINISM_QUERIES:
        for fmt in ("text", "json", "csv"):
            argv = q + ["--format", fmt]
            first, second = run(argv), run(argv)
            if first != second or first[0] != 0:
                return False, " ".join(argv)
    return True, ""


def check_mn_tower(**_):
    expected = {1: 2, 2: 5, 3: 14}
    for n, c in expected.items():
        if mn_dims(n, 2 * n + 6).c_n != c:
            return False, f"c_{n} != {c}"
    for n in (1, 2, 3):
        rep = mn_ext_concentration(n, 2 * n + 6)
        if not rep:
            return False, f"Ext of M_{n} off the line j = 2n + 2i: {rep.first_failure}"
    return True, ""


REGISTRY = [
    Check("genus1_closed_forms", check_genus1_closed_forms),
    Check("ext_resolution_vs_closed_form", check_ext_oracle),
    Check("tor_vanishing", check_tor_vanishing),
    Check("primitive_dims_and_fg_ranks", check_primitive_ranks),
    Check("symmetric_products", check_symprod),
    Check("w_stratification", check_w_strata),
    Check("le_quotient_oracle", check_le_quotient),
    Check("koszul_vs_resolution", check_koszul_ext),
    Check("stable_injectivity_bound", check_injectivity),
    Check("determinism", check_determinism),
    Check("mn_tower", check_mn_tower, ("all",)),
    Check("ext_resolution_g3_deep", lambda **_: check_ext_oracle(((2, 5), (3, 5))), ("all",)),
    Check("koszul_vs_resolution_g3_deep", lambda **_: check_koszul_ext(((2, 5), (3, 4))), ("all",)),
]


def run_suite(suite: str = "fast", s_rule: str = "primitive", out=print) -> int:
    failures = 0
    for check in REGISTRY:
        if suite not in check.suites:
            continue
        start = time.perf_counter()
        try:
            ok, detail = check.fn(s_rule=s_rule)
        except Exception as e:  # a raised consistency error is a failed check
            ok, detail = False, f"{type(e).__name__}: {e}"
        elapsed = time.perf_counter() - start
        line = f"{'PASS' if ok else 'FAIL'} {check.name} ({elapsed:.2f}s)"
        if not ok:
            failures += 1
            line += f"  first counterexample: {detail}"
        out(line)
    return 1 if failures else 0
