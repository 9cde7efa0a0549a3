"""Rational homology of symmetric products of a genus-g surface and of its suspension."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb

from .algebra import BigradedTable, PoincarePolynomial, graded_basis, mask_sign
from .errors import ConsistencyError, ParameterError
from .linalg import RowEchelon


def _check(g, k, kname="k", kmin=0):
    if not isinstance(g, int) or g < 1:
        raise ParameterError(f"genus must be a positive integer, got {g!r}")
    if not isinstance(k, int) or k < kmin:
        raise ParameterError(f"{kname} must be an integer >= {kmin}, got {k!r}")


def _generating_coefficient(g: int, k: int) -> PoincarePolynomial:
    # s^k coefficient of (1 + xs)^{2g} / ((1 - s)(1 - x^2 s)): choose a odd
    # classes, c copies of the top class and pad with the unit
    c: dict[int, int] = {}
    for a in range(min(2 * g, k) + 1):
        for cc in range(k - a + 1):
            c[a + 2 * cc] = c.get(a + 2 * cc, 0) + comb(2 * g, a)
    return PoincarePolynomial(c)


def _low_range_relative(g: int, k: int) -> PoincarePolynomial:
    # pieces Lambda_s shifted into degree s + 2(k - s)
    return PoincarePolynomial({s + 2 * (k - s): comb(2 * g, s) for s in range(min(k, 2 * g) + 1)})


def _bundle_form(g: int, k: int) -> PoincarePolynomial:
    return PoincarePolynomial.projective(k - g) * PoincarePolynomial.one_plus_x_power(2 * g)


@lru_cache(maxsize=None)
def sp_poincare(g: int, k: int) -> PoincarePolynomial:
    """Poincare polynomial of SP^k of a genus-g surface."""
    _check(g, k)
    p = _generating_coefficient(g, k)
    if k < g:
        oracle = PoincarePolynomial()
        for j in range(k + 1):
            oracle = oracle + _low_range_relative(g, j)
        if oracle != p:
            raise ConsistencyError(f"SP^{k}, g={g}: splitting sum {oracle} != {p}")
    if k >= 2 * g - 1 and _bundle_form(g, k) != p:
        raise ConsistencyError(f"SP^{k}, g={g}: bundle form {_bundle_form(g, k)} != {p}")
    return p


def sp_relative(g: int, k: int) -> PoincarePolynomial:
    """Homology of the pair (SP^k, SP^{k-1})."""
    _check(g, k, kmin=1)
    rel = sp_poincare(g, k).minus(sp_poincare(g, k - 1), f"H(SP^{k}, SP^{k - 1})")
    if k < g and rel != _low_range_relative(g, k):
        raise ConsistencyError(f"relative SP^{k}, g={g} disagrees with the splitting pieces")
    return rel


@dataclass(frozen=True)
class SymProdTable:
    genus: int
    k: int
    poincare: PoincarePolynomial
    relative: PoincarePolynomial


def sym_prod_table(g: int, k: int) -> SymProdTable:
    rel = sp_relative(g, k) if k >= 1 else sp_poincare(g, 0)
    return SymProdTable(g, k, sp_poincare(g, k), rel)


# ---------------------------------------------------------------------------
# Symmetric products of the suspension
# ---------------------------------------------------------------------------

def exponent_vectors(nvars: int, total: int) -> list[tuple[int, ...]]:
    """Exponent tuples of the degree-``total`` monomials, in a fixed canonical order."""
    if total < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), total):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


@dataclass(frozen=True)
class SuspLabel:
    """Basis class ``|e_1|^{a_1} ... |e_{2g}|^{a_{2g}}`` times ``|M|`` if ``top``."""

    exponents: tuple[int, ...]
    top: bool = False

    @property
    def degree(self) -> int:
        return 2 * sum(self.exponents) + (3 if self.top else 0)

    def __str__(self):
        parts = [f"|e{i + 1}|^{a}" if a > 1 else f"|e{i + 1}|" for i, a in enumerate(self.exponents) if a]
        if self.top:
            parts.append("|M|")
        return "".join(parts) or "1"


@lru_cache(maxsize=None)
def susp_basis(g: int, n: int) -> tuple[SuspLabel, ...]:
    """Basis of the relative homology of (SP^n, SP^{n-1}) of the suspension, n >= 0."""
    if n == 0:
        return (SuspLabel((0,) * (2 * g)),)
    low = tuple(SuspLabel(e) for e in exponent_vectors(2 * g, n))
    high = tuple(SuspLabel(e, True) for e in exponent_vectors(2 * g, n - 1))
    return low + high


@dataclass
class SuspSymProdTable:
    genus: int
    n: int
    bigraded: BigradedTable = field(default_factory=BigradedTable)

    def poincare(self) -> PoincarePolynomial:
        return self.bigraded.project(1)


def susp_relative_poly(g: int, n: int) -> PoincarePolynomial:
    if n == 0:
        return PoincarePolynomial({0: 1})
    return PoincarePolynomial({2 * n: comb(n + 2 * g - 1, 2 * g - 1), 2 * n + 1: comb(n + 2 * g - 2, 2 * g - 1)})


def sp_susp_relative(g: int, n: int) -> SuspSymProdTable:
    """Relative homology (SP^n, SP^{n-1}) of the suspension, bigraded by (n, degree)."""
    _check(g, n, "n", 1)
    table = BigradedTable()
    for lab in susp_basis(g, n):
        table.add((n, lab.degree), 1, [lab])
    expect = susp_relative_poly(g, n)
    if table.project(1) != expect:
        raise ConsistencyError(f"suspension basis count {table.project(1)} != {expect}")
    return SuspSymProdTable(g, n, table)


# ---------------------------------------------------------------------------
# Presentation check
# ---------------------------------------------------------------------------

@dataclass
class CheckReport:
    """Outcome of a consistency check; truthy iff it passed."""

    ok: bool
    first_failure: int | None = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _ring_basis(g: int, d: int) -> list[tuple[int, int]]:
    # monomials (exterior mask, power of the degree-2 class) of degree d
    out = []
    for s in range(min(d, 2 * g) + 1):
        if (d - s) % 2 == 0:
            out.extend((m, (d - s) // 2) for m in graded_basis(2 * g, s))
    return out


def _presentation_relations(g: int, k: int) -> list[tuple[int, dict]]:
    """All relations of the presentation as (degree, {(mask, q): coeff})."""
    rels = []
    idx = range(1, g + 1)
    for c in range(0, min(g, (k + 1) // 2) + 1):
        for a in range(0, k + 2 - 2 * c):
            for b in range(0, k + 2 - 2 * c - a):
                q = k + 1 - a - b - 2 * c
                if a + b + c > g:
                    continue
                for ks in combinations(idx, c):
                    rest = [i for i in idx if i not in ks]
                    for is_ in combinations(rest, a):
                        rest2 = [j for j in rest if j not in is_]
                        for js in combinations(rest2, b):
                            # f_i is e_{2i-1}, f'_j is e_{2j}; the prefix is a sorted
                            # product up to the sign of putting f's before f''s
                            elt = {(0, q): 1}
                            for i in is_:
                                elt = _mul(elt, {(1 << (2 * i - 2), 0): 1})
                            for j in js:
                                elt = _mul(elt, {(1 << (2 * j - 1), 0): 1})
                            for kk in ks:
                                elt = _mul(elt, {(0b11 << (2 * kk - 2), 0): 1, (0, 1): -1})
                            if elt:
                                rels.append((a + b + 2 * c + 2 * q, elt))
    return rels


def _mul(x: dict, y: dict) -> dict:
    out: dict = {}
    for (m1, q1), c1 in x.items():
        for (m2, q2), c2 in y.items():
            s = mask_sign(m1, m2)
            if s:
                key = (m1 | m2, q1 + q2)
                out[key] = out.get(key, 0) + s * c1 * c2
    return {key: v for key, v in out.items() if v}


def macdonald_small_check(g: int, k: int, degree_bound: int | None = None) -> CheckReport:
    """Quotient of the free graded-commutative algebra by the ring relations,
    compared degree by degree with :func:`sp_poincare`."""
    _check(g, k)
    if g > 2 or k > 3:
        raise ParameterError("presentation check is limited to g <= 2 and k <= 3")
    if degree_bound is None:
        degree_bound = 2 * k + 2
    expected = sp_poincare(g, k)
    rels = _presentation_relations(g, k)
    dims = {}
    for d in range(degree_bound + 1):
        basis = _ring_basis(g, d)
        pos = {m: i for i, m in enumerate(basis)}
        ech = RowEchelon()
        for rd, rel in rels:
            if rd > d:
                continue
            for mono in _ring_basis(g, d - rd):
                prod = _mul({mono: 1}, rel)
                ech.insert({pos[key]: v for key, v in prod.items()})
        dims[d] = len(basis) - ech.rank
        if dims[d] != expected[d]:
            return CheckReport(False, d, {"quotient": dims, "expected": expected.as_dict()})
    return CheckReport(True, None, {"quotient": dims, "expected": expected.as_dict()})
