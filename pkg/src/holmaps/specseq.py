"""The spectral sequence for QE_k (dual to Hol_k^*) and what can be read off it.

Slots are indexed by ``(i, j)`` with ``i + j = k``: slot ``(i, j)`` holds
``H~(LE_i) (x) H(SP^j, SP^{j-1})`` of the suspension, and slot ``(0, k)`` holds
the suspension term alone.  Every basis element is a pair
``(LE class, suspension monomial)``, the LE class first.  d_1 sends slot
``(i, j)`` to slot ``(i + 1, j - 1)`` and lowers total degree by one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .algebra import BigradedTable, PoincarePolynomial, graded_basis, mask_sign, series_quotient
from .errors import ConsistencyError, ParameterError, UnsupportedRegimeError
from .jacobian import vg_basis
from .linalg import RationalMatrix, RowEchelon
from .strata import CurveClass, HYPERELLIPTIC, le_poincare
from .symprod import CheckReport, SuspLabel, exponent_vectors, susp_basis, susp_relative_poly


# ---------------------------------------------------------------------------
# Basis of H~(LE_v)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LEClass:
    """A basis class of H~(LE_v).

    ``mask`` is the exterior monomial the class comes from when the class is a
    monomial of Lambda_g (the stable range and v = 1); otherwise None.
    """

    v: int
    degree: int
    name: str
    mask: int | None = None

    def __str__(self):
        return self.name


@lru_cache(maxsize=None)
def le_basis(curve: CurveClass, v: int, n: int) -> tuple[LEClass, ...]:
    g = curve.genus
    sh = 2 * (v - g) * (n + 1)
    if v == 1:
        out = [LEClass(1, 1, f"e{i}", 1 << (i - 1)) for i in range(1, 2 * g + 1)]
        out.append(LEClass(1, 2, "[M]", 0b11 if g == 1 else None))
        return tuple(out)
    if v >= 2 * g - 1:
        out = []
        for d in range(2 * g + 1):
            for m in graded_basis(2 * g, d):
                if v == 2 * g - 1 and m == 0:
                    continue
                name = "".join(f"e{i + 1}" for i in range(2 * g) if m >> i & 1) or "1"
                out.append(LEClass(v, sh + d, f"U{v}." + name, m))
        return tuple(out)
    table = le_poincare(curve, v, n)
    out = []
    for t, (shift, poly) in enumerate(table.summands):
        for d, c in poly.items():
            for idx in range(c):
                out.append(LEClass(v, shift + d, f"LE{v}.{t}.{d}.{idx}"))
    return tuple(sorted(out, key=lambda c: c.degree))


# ---------------------------------------------------------------------------
# E^1
# ---------------------------------------------------------------------------

@dataclass
class E1Page:
    curve: CurveClass
    k: int
    n: int
    slots: dict[tuple[int, int, int], int] = field(default_factory=dict)
    labels: dict[tuple[int, int], list] = field(default_factory=dict)

    def basis(self, i: int, j: int) -> list:
        return self.labels.get((i, j), [])

    def degree_of(self, element) -> int:
        le, susp = element
        return (le.degree if le is not None else 0) + susp.degree

    def total(self) -> PoincarePolynomial:
        c: dict[int, int] = {}
        for (_, _, d), v in self.slots.items():
            c[d] = c.get(d, 0) + v
        return PoincarePolynomial(c)

    def slot_poly(self, i: int, j: int) -> PoincarePolynomial:
        return PoincarePolynomial({d: v for (a, b, d), v in self.slots.items() if (a, b) == (i, j)})

    def by_filtration(self) -> BigradedTable:
        t = BigradedTable()
        for (i, _, d), v in self.slots.items():
            t.add((i, d), v)
        return t


def _check_qe_args(curve, k, n):
    if not isinstance(curve, CurveClass):
        raise ParameterError("curve must be a CurveClass")
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")


def qe_E1(curve: CurveClass, k: int, n: int) -> E1Page:
    _check_qe_args(curve, k, n)
    g = curve.genus
    page = E1Page(curve, k, n)
    for i in range(0, k + 1):
        j = k - i
        susp = susp_basis(g, j)
        les = [None] if i == 0 else list(le_basis(curve, i, n))
        elements = [(le, s) for le in les for s in susp]
        page.labels[(i, j)] = elements
        for e in elements:
            key = (i, j, page.degree_of(e))
            page.slots[key] = page.slots.get(key, 0) + 1
        # slot dims agree with the product of the two Poincare polynomials
        le_poly = PoincarePolynomial({0: 1}) if i == 0 else le_poincare(curve, i, n).total
        if page.slot_poly(i, j) != le_poly * susp_relative_poly(g, j):
            raise ConsistencyError(f"slot ({i}, {j}) dimension mismatch")
    return page


# ---------------------------------------------------------------------------
# Differentials
# ---------------------------------------------------------------------------

@dataclass
class DifferentialMap:
    source: tuple[int, int]
    target: tuple[int, int]
    matrix: RationalMatrix

    def __post_init__(self):
        si, sj = self.source
        ti, tj = self.target
        if ti != si + 1 or tj != sj - 1:
            raise ConsistencyError(f"d_1 must go from (i, j) to (i+1, j-1), got {self.source} -> {self.target}")


def _lower(exps, i):
    if exps[i] == 0:
        return None
    e = list(exps)
    e[i] -= 1
    return tuple(e)


def _tail_matrix(page: E1Page) -> DifferentialMap:
    """d(|e|^a) = sum_i e_i (x) |e|^{a - eps_i};
    d(|M||e|^a) = [M] (x) |e|^a - sum_i e_i (x) |M||e|^{a - eps_i}."""
    g, k = page.curve.genus, page.k
    src = page.basis(0, k)
    tgt = page.basis(1, k - 1)
    pos = {(le.name, s): r for r, (le, s) in enumerate(tgt)}
    rows: dict[int, dict[int, int]] = {}

    def put(r, c, v):
        rows.setdefault(r, {})[c] = rows.get(r, {}).get(c, 0) + v

    for c, (_, s) in enumerate(src):
        sign = -1 if s.top else 1
        if s.top:
            put(pos[("[M]", SuspLabel(s.exponents, False))], c, 1)
        for i in range(2 * g):
            low = _lower(s.exponents, i)
            if low is not None:
                put(pos[(f"e{i + 1}", SuspLabel(low, s.top))], c, sign)
    return DifferentialMap((0, k), (1, k - 1), RationalMatrix.from_rows(len(tgt), len(src), rows))


def _stable_maps(page: E1Page) -> list[DifferentialMap]:
    """n = 1 stable part: lambda U_{i-1} (x) |M| p  ->  2 (f contracted into lambda) U_i (x) p.

    This is the transpose of the cohomological rule U_i -> 2 f U_{i-1} |M|^*,
    applied on slots whose LE factor is in the stable range (i - 1 >= 2g - 1).
    """
    g, k = page.curve.genus, page.k
    out = []
    fs = [0b11 << (2 * t) for t in range(g)]
    for i in range(2 * g, k + 1):
        j = k - i
        src = page.basis(i - 1, j + 1)
        tgt = page.basis(i, j)
        pos = {(le.mask, s): r for r, (le, s) in enumerate(tgt)}
        rows: dict[int, dict[int, int]] = {}
        for c, (le, s) in enumerate(src):
            if not s.top or le.mask is None:
                continue
            for f in fs:
                if le.mask & f == f:
                    b = le.mask ^ f
                    r = pos[(b, SuspLabel(s.exponents, False))]
                    rows.setdefault(r, {})[c] = 2 * mask_sign(f, b)
        out.append(DifferentialMap((i - 1, j + 1), (i, j), RationalMatrix.from_rows(len(tgt), len(src), rows)))
    return out


@dataclass
class TailResult:
    kernel: PoincarePolynomial
    cokernel: PoincarePolynomial
    dmap: DifferentialMap
    family_size: int


def _cokernel_family(g: int, k: int) -> list[tuple[int, tuple[int, ...]]]:
    # e_t (x) |e|^b with b of degree k-1 and t beyond the first variable b uses
    out = []
    for b in exponent_vectors(2 * g, k - 1):
        first = next((i for i, a in enumerate(b) if a), None)
        if first is None:
            continue
        for t in range(first + 1, 2 * g):
            out.append((t, b))
    return out


def tail_d1(curve: CurveClass, k: int, n: int) -> TailResult:
    """Kernel and cokernel of d_1 from slot (0, k) to slot (1, k - 1)."""
    page = qe_E1(curve, k, n)
    dm = _tail_matrix(page)
    g = curve.genus
    src = page.basis(0, k)
    tgt = page.basis(1, k - 1)
    cols = dm.matrix.columns()
    ker, im = {}, {}
    for d in sorted({page.degree_of(e) for e in src}):
        ech = RowEchelon()
        for c, e in enumerate(src):
            if page.degree_of(e) == d:
                ech.insert(cols.get(c, {}))
        nsrc = sum(1 for e in src if page.degree_of(e) == d)
        ker[d] = nsrc - ech.rank
        im[d - 1] = ech.rank
    coker = {}
    for d in sorted({page.degree_of(e) for e in tgt}):
        coker[d] = sum(1 for e in tgt if page.degree_of(e) == d) - im.get(d, 0)
    if ker.get(2 * k, 0):
        raise ConsistencyError("d_1 on pure suspension monomials is not injective")
    # the cokernel in degree 2k - 1 is spanned by the explicit family
    family = _cokernel_family(g, k) if k >= 1 else []
    pos = {(le.name, s): r for r, (le, s) in enumerate(tgt)}
    ech = RowEchelon()
    for c, e in enumerate(src):
        if page.degree_of(e) == 2 * k:
            ech.insert(cols.get(c, {}))
    for t, b in family:
        if not ech.insert({pos[(f"e{t + 1}", SuspLabel(b, False))]: 1}):
            raise ConsistencyError("cokernel family is not independent of the image")
    if ech.rank != sum(1 for e in tgt if page.degree_of(e) == 2 * k - 1):
        raise ConsistencyError("cokernel family does not span the cokernel")
    return TailResult(PoincarePolynomial(ker), PoincarePolynomial(coker), dm, len(family))


def stable_d1_n1(g: int, k: int, n: int = 1) -> list[DifferentialMap]:
    """The stable-range d_1 for n = 1, one matrix per pair of adjacent stable slots."""
    if n != 1:
        raise ParameterError("the stable d_1 vanishes rationally for n >= 2; only n = 1 is built")
    curve = CurveClass.for_genus(g)
    if k < 2 * g:
        raise ParameterError(f"no stable slots pair up for k={k} < 2g={2 * g}")
    return _stable_maps(qe_E1(curve, k, 1))


# ---------------------------------------------------------------------------
# Running a page
# ---------------------------------------------------------------------------

@dataclass
class PageHomology:
    e1: PoincarePolynomial
    e2: PoincarePolynomial
    by_slot: BigradedTable


def page_homology(page: E1Page, maps: list[DifferentialMap]) -> PageHomology:
    """E^2 of a page under the given d_1 pieces; checks d_1 o d_1 = 0."""
    index = {}
    for (i, j), elems in page.labels.items():
        for r, e in enumerate(elems):
            index[(i, j, r)] = e
    images: dict[tuple, dict] = {}
    for dm in maps:
        si, sj = dm.source
        ti, tj = dm.target
        for c, col in dm.matrix.columns().items():
            img = images.setdefault((si, sj, c), {})
            for r, v in col.items():
                img[(ti, tj, r)] = img.get((ti, tj, r), 0) + v
    for x, img in images.items():
        acc: dict = {}
        for y, v in img.items():
            for z, w in images.get(y, {}).items():
                acc[z] = acc.get(z, 0) + v * w
        if any(acc.values()):
            raise ConsistencyError(f"d_1 o d_1 != 0 on {x}")
    gid = {key: n for n, key in enumerate(sorted(index))}
    # rank of d_1 leaving each (slot, degree)
    out_rank: dict[tuple[int, int, int], int] = {}
    groups: dict[tuple[int, int, int], list] = {}
    for key, e in index.items():
        groups.setdefault((key[0], key[1], page.degree_of(e)), []).append(key)
    in_rank: dict[tuple[int, int, int], int] = {}
    for (i, j, d), keys in groups.items():
        ech = RowEchelon()
        for key in keys:
            img = images.get(key)
            if img:
                ech.insert({gid[y]: v for y, v in img.items()})
        out_rank[(i, j, d)] = ech.rank
        if ech.rank:
            tgt = (i + 1, j - 1, d - 1)
            in_rank[tgt] = in_rank.get(tgt, 0) + ech.rank
    e2: dict[int, int] = {}
    table = BigradedTable()
    for (i, j, d), keys in groups.items():
        h = len(keys) - out_rank[(i, j, d)] - in_rank.get((i, j, d), 0)
        if h < 0:
            raise ConsistencyError(f"negative E^2 at slot ({i}, {j}) degree {d}")
        e2[d] = e2.get(d, 0) + h
        table.add((i, d), h)
    return PageHomology(page.total(), PoincarePolynomial(e2), table)


# ---------------------------------------------------------------------------
# Genus one
# ---------------------------------------------------------------------------

@dataclass
class HolSeries:
    """Output of the spectral sequence.

    ``series`` is the E^infinity total in the grading of QE_k homology;
    ``dual_series`` is the same data regraded by duality, i.e. the Poincare
    series of Hol_k^*: degree D there is degree 2k(n+1) - 2ng - D here.
    """

    curve: CurveClass
    k: int
    n: int
    kind: str
    series: PoincarePolynomial
    dual_series: PoincarePolynomial
    notes: list[str] = field(default_factory=list)


def duality_top(g: int, k: int, n: int) -> int:
    return 2 * k * (n + 1) - 2 * n * g


def genus1_closed_form(k: int, n: int) -> PoincarePolynomial:
    """Closed-form Poincare series of Hol_k^*(T, P^n)."""
    ladder = PoincarePolynomial({2 * n * (m - 1): m for m in range(1, k)})
    if n == 1:
        head = PoincarePolynomial([1, 2, 2, 1])
    else:
        head = PoincarePolynomial.one_plus_x_power(2) * PoincarePolynomial({0: 1, 2 * n - 1: 1})
    return head * ladder + PoincarePolynomial({2 * n * (k - 1) - 1: k - 2})


def hol_poincare_genus1(k: int, n: int, strict: bool = False) -> HolSeries:
    """Complete genus-one computation; ``strict`` turns a closed-form mismatch into an error."""
    if k < 2:
        raise ParameterError("Hol_1^* of an elliptic curve is empty; need k >= 2")
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    curve = CurveClass.for_genus(1)
    page = qe_E1(curve, k, n)
    maps = [_tail_matrix(page)]
    if n == 1:
        maps.extend(_stable_maps(page))
    res = page_homology(page, maps)
    dual = res.e2.reflect(duality_top(1, k, n))
    closed = genus1_closed_form(k, n)
    notes = []
    if dual != closed:
        msg = (f"spectral sequence result differs from the closed form {closed}: "
               f"closed minus computed has Euler characteristic {closed.euler() - dual.euler()}")
        if strict:
            raise ConsistencyError(msg)
        notes.append(msg)
    return HolSeries(curve, k, n, "complete", res.e2, dual, notes)


# ---------------------------------------------------------------------------
# The Koszul-type complex V_g (x) Q[|e_1|, ..., |e_{2g}|]
# ---------------------------------------------------------------------------

def m_of(g: int, l: int) -> int:
    """The only internal degree where Tor_l(Q, V_g) can be nonzero."""
    if l == 0:
        return 0
    if l == 1:
        return 2
    return l + g


def cancel_pairs(diff: dict, pairs: list[tuple]) -> dict:
    """Gaussian elimination of a based chain complex along ``x -> y`` pairs.

    ``diff`` maps each generator to ``{generator: coefficient}``; every pair
    needs ``diff[x][y] != 0``.  Returns the differential of the reduced
    complex on the surviving generators.
    """
    d = {x: dict(v) for x, v in diff.items()}
    # who hits whom, so each cancellation touches only the affected rows
    hits: dict = {}
    for z, img in d.items():
        for y in img:
            hits.setdefault(y, set()).add(z)
    for x, y in pairs:
        c = d[x].get(y, 0)
        if not c:
            raise ConsistencyError(f"pair {x} -> {y} is not invertible")
        beta = {u: Fraction(v) / c for u, v in d[x].items() if u != y}
        for z in list(hits.get(y, ())):
            if z == x or z not in d:
                continue
            a = d[z].pop(y)
            for u, v in beta.items():
                w = d[z].get(u, 0) - a * v
                if w:
                    d[z][u] = w
                    hits.setdefault(u, set()).add(z)
                else:
                    d[z].pop(u, None)
        # drop x from images of the generators above it
        for w in list(hits.get(x, ())):
            if w in d:
                d[w].pop(x, None)
        for u in d[x]:
            hits.get(u, set()).discard(x)
        del d[x]
        d.pop(y, None)
    return d


def _koszul_big_complex(g: int, bound: int):
    """Generators (w, j, l, exps, eps): V_g basis element j of degree w, [M]^l,
    a monomial in the |e_i|, and |M| if eps.  Weight deg(exps) + eps + l <= bound."""
    vb = vg_basis(g)
    gens = []
    for w in range(g + 1):
        for j in range(vb.dim(w)):
            for l in range(bound + 1):
                for q in range(bound - l + 1):
                    for eps in (0, 1):
                        if q + eps + l > bound:
                            continue
                        for e in exponent_vectors(2 * g, q):
                            gens.append((w, j, l, e, eps))

    def koszul(w, j, l, e, eps):
        out = {}
        for i in range(2 * g):
            low = _lower(e, i)
            if low is None or w + 1 > g:
                continue
            for jj, v in vb.act(i + 1, w, j).items():
                key = (w + 1, jj, l, low, eps)
                out[key] = out.get(key, 0) + v
        return out

    diff = {}
    for gen in gens:
        w, j, l, e, eps = gen
        img = koszul(*gen)
        if eps:
            img = {key: -v for key, v in img.items()}
            key = (w, j, l + 1, e, 0)
            img[key] = img.get(key, 0) + 1
        diff[gen] = {key: v for key, v in img.items() if v}
    return gens, diff


def _grade(gen):
    w, j, l, e, eps = gen
    return sum(e) + eps, w + 2 * l + sum(e) + 2 * eps


def _complex_homology(gens, diff, grade) -> dict[tuple[int, int], int]:
    """Homology dims of a complex bigraded by (chain degree, internal degree)."""
    groups: dict = {}
    for x in gens:
        groups.setdefault(grade(x), []).append(x)
    gid = {x: n for n, x in enumerate(gens)}
    rank_out = {}
    for key, xs in groups.items():
        ech = RowEchelon()
        for x in xs:
            img = diff.get(x)
            if img:
                ech.insert({gid[u]: v for u, v in img.items()})
        rank_out[key] = ech.rank
    out = {}
    for (c, m), xs in groups.items():
        h = len(xs) - rank_out[(c, m)] - rank_out.get((c + 1, m), 0)
        if h:
            out[(c, m)] = h
    return out


def vg_koszul_homology(g: int, max_susp_degree: int, cross_check: bool | None = None) -> BigradedTable:
    """Tor^{Lambda_g}_{l,m}(Q, V_g) for l <= max_susp_degree, from the complex of
    V_g-classes, [M]-powers and suspension monomials after cancelling |M| against [M]."""
    if g < 1:
        raise ParameterError("genus must be >= 1")
    if max_susp_degree < 0:
        raise ParameterError("max_susp_degree must be >= 0")
    bound = max_susp_degree + 1
    gens, diff = _koszul_big_complex(g, bound)
    pairs = [(x, (x[0], x[1], x[2] + 1, x[3], 0)) for x in gens if x[4]]
    reduced = cancel_pairs(diff, pairs)
    survivors = [x for x in gens if x in reduced]
    if any(x[2] or x[4] for x in survivors):
        raise ConsistencyError("contraction left [M] or |M| generators behind")
    homology = _complex_homology(survivors, reduced, _grade)
    if cross_check is None:
        cross_check = len(gens) <= 4000
    if cross_check:
        direct = _complex_homology(gens, diff, _grade)
        if direct != homology:
            raise ConsistencyError("contracted complex changed the homology")
    table = BigradedTable()
    for (l, m), v in sorted(homology.items()):
        if l <= max_susp_degree:
            table.add((l, m), v)
    for (l, m), v in table.items():
        if m != m_of(g, l):
            raise ConsistencyError(f"Tor_{{{l},{m}}}(Q, V_{g}) = {v} off the vanishing line")
    return table


# ---------------------------------------------------------------------------
# Mapping spaces and the hyperelliptic stable survivors
# ---------------------------------------------------------------------------

def map_poincare(g: int, n: int, truncate_degree: int) -> PoincarePolynomial:
    """Rational Poincare series of a component of the based mapping space, truncated."""
    if g < 1 or n < 1:
        raise ParameterError("need g >= 1 and n >= 1")
    if truncate_degree < 0:
        raise ParameterError("truncation degree must be >= 0")
    if g == 1 and n == 1:
        num = PoincarePolynomial([1, 2, 2, 1])
        den = {0: 1, 2: -2, 4: 1}
    elif g == 1:
        num = PoincarePolynomial.one_plus_x_power(2) * PoincarePolynomial({0: 1, 2 * n - 1: 1})
        den = {0: 1, 2 * n: -2, 4 * n: 1}
    elif n > 2:
        num = PoincarePolynomial.one_plus_x_power(2 * g) * PoincarePolynomial({0: 1, 2 * n - 1: 1})
        den = {2 * n * a: (-1) ** a * comb(2 * g, a) for a in range(2 * g + 1)}
    else:
        raise UnsupportedRegimeError(f"rational collapse is not established for g={g}, n={n}")
    return PoincarePolynomial(series_quotient(num.as_dict(), den, truncate_degree))


def _check_survivor_args(g, k, n):
    if g < 2:
        raise UnsupportedRegimeError("stable survivors are for hyperelliptic curves (g >= 2)")
    if n <= 2:
        raise UnsupportedRegimeError(f"stable survivors need n > 2, got n={n}")
    if k < 2 * g:
        raise ParameterError(f"stable survivors need k >= 2g = {2 * g}, got k={k}")


def unstable_bidegrees(g: int, k: int) -> list[tuple[int, int]]:
    """(l, m) positions of the Tor groups met by the unstable part of E^1."""
    out = set()
    for s in range(g):
        for v in range(2 * s, g + s):
            w = v - 2 * s
            l = k - v
            out.add((l, l + w))
    return sorted(out)


def hol_stable_survivors(g: int, k: int, n: int) -> HolSeries:
    """E^infinity contributed by the stable filtrations, for hyperelliptic g >= 2, n > 2, k >= 2g."""
    _check_survivor_args(g, k, n)
    tor = vg_koszul_homology(g, k)
    bad = [(l, m) for l, m in unstable_bidegrees(g, k) if tor[(l, m)]]
    if bad:
        raise ConsistencyError(f"unstable part meets nonzero Tor at {bad}")
    curve = CurveClass(g, HYPERELLIPTIC)
    series = PoincarePolynomial()
    for i in range(2 * g, k + 1):
        series = series + le_poincare(curve, i, n).total * susp_relative_poly(g, k - i)
    dual = series.reflect(duality_top(g, k, n))
    return HolSeries(curve, k, n, "stable_survivors", series, dual,
                     ["stable_survivors only: not the full Poincare series"])


def injectivity_check(g: int, k: int, n: int, degree_bound: int) -> CheckReport:
    hol = hol_stable_survivors(g, k, n)
    lhs = hol.dual_series.truncate(degree_bound)
    rhs = map_poincare(g, n, degree_bound)
    bad = lhs.first_excess(rhs)
    return CheckReport(bad is None, bad, {"survivors": lhs.as_dict(), "map": rhs.as_dict()})
