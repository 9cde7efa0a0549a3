"""Brill-Noether strata W_k^t of hyperelliptic curves and the homology of LE_v."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .algebra import BigradedTable, PoincarePolynomial
from .errors import ConsistencyError, ParameterError, UnsupportedRegimeError
from .jacobian import fg_mult_matrix, primitive_dim, w_homology, w_relative
from .linalg import rank

ELLIPTIC = "elliptic"
HYPERELLIPTIC = "hyperelliptic"

S_RULES = ("primitive", "adjacent")


@dataclass(frozen=True)
class CurveClass:
    genus: int
    family: str

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 1:
            raise ParameterError(f"genus must be a positive integer, got {self.genus!r}")
        if self.family == ELLIPTIC:
            if self.genus != 1:
                raise ParameterError("an elliptic curve has genus 1")
        elif self.family == HYPERELLIPTIC:
            if self.genus < 2:
                raise ParameterError("hyperelliptic curves have genus >= 2")
        else:
            raise UnsupportedRegimeError(f"curve family {self.family!r} is not modelled")

    @classmethod
    def for_genus(cls, g: int) -> "CurveClass":
        """Elliptic for g = 1, hyperelliptic otherwise."""
        return cls(g, ELLIPTIC if g == 1 else HYPERELLIPTIC)


def _w(g: int, j: int) -> PoincarePolynomial:
    # W_j with the conventions W_j = J for j >= g and W_{-1} = empty
    if j < 0:
        return PoincarePolynomial()
    return w_homology(g, min(j, g))


def _w_rel(g: int, j: int) -> PoincarePolynomial:
    if j == 0:
        return PoincarePolynomial({0: 1})
    return w_relative(g, j)


@dataclass(frozen=True)
class StratumDescriptor:
    k: int
    t: int
    reduced_to: int
    homology: PoincarePolynomial


def w_k_t(curve: CurveClass, k: int, t: int) -> StratumDescriptor:
    """W_k^t as a translate of W_{k-2t}."""
    if curve.family != HYPERELLIPTIC:
        raise UnsupportedRegimeError("strata translates are modelled for hyperelliptic curves only")
    g = curve.genus
    if k < 0 or t < 0:
        raise ParameterError("k and t must be nonnegative")
    if t > k // 2:
        raise UnsupportedRegimeError(f"t={t} exceeds floor(k/2)={k // 2}: the stratum is empty")
    if k <= g:
        pass  # case (a)
    elif k < 2 * g - 1:
        if t <= k - g:
            raise UnsupportedRegimeError(f"case (b) needs t > k - g = {k - g}, got t={t}")
    else:
        raise UnsupportedRegimeError(f"k={k} is neither <= g={g} nor in g < k < 2g-1")
    r = k - 2 * t
    return StratumDescriptor(k, t, r, w_homology(g, r))


def _stratum(g: int, k: int, t: int) -> PoincarePolynomial:
    """Homology of W_k^t for any k, t, including the empty and full cases."""
    if k < 0 or t > k // 2:
        return PoincarePolynomial()
    if t == 0:
        return _w(g, k)
    if k <= g or t > k - g:
        return _w(g, k - 2 * t)
    # generic fibre dimension k - g: every point of J is in W_k^t
    return _w(g, g)


# ---------------------------------------------------------------------------
# LE_v
# ---------------------------------------------------------------------------

def s_r_series(g: int, r: int, rule: str = "primitive") -> PoincarePolynomial:
    """The polynomial S_r; ``rule='adjacent'`` swaps in the C(2g,l) - C(2g,l-1) coefficients."""
    if rule not in S_RULES:
        raise ParameterError(f"unknown S_r rule {rule!r}")
    c = {}
    for l in range(r + 1):
        if rule == "primitive":
            c[2 * r - l] = primitive_dim(g, l)
        else:
            c[2 * r - l] = comb(2 * g, l) - (comb(2 * g, l - 1) if l >= 1 else 0)
    return PoincarePolynomial(c)


def le_quotient_oracle(g: int, v: int, n: int) -> PoincarePolynomial:
    """LE_v for v <= g from the quotient of Lambda_s [M]^{r-s} by f-multiples, by direct rank."""
    if not 1 <= v <= g:
        raise ParameterError(f"quotient description needs 1 <= v <= g, got v={v}, g={g}")
    out = PoincarePolynomial()
    for t in range(v // 2 + 1):
        r = v - 2 * t
        piece = {}
        for s in range(r + 1):
            image = rank(fg_mult_matrix(g, s - 2, check=False)) if s >= 2 else 0
            piece[2 * r - s] = comb(2 * g, s) - image
        out = out + PoincarePolynomial(piece).shift(2 * t * (n + 1))
    return out


@dataclass
class LETable:
    genus: int
    v: int
    n: int
    total: PoincarePolynomial
    summands: list[tuple[int, PoincarePolynomial]] = field(default_factory=list)
    regime: str = ""
    notes: list[str] = field(default_factory=list)


def _check_le_args(curve: CurveClass, v: int, n: int):
    if not isinstance(curve, CurveClass):
        raise ParameterError("curve must be a CurveClass")
    if v < 1:
        raise ParameterError(f"v must be >= 1, got {v}")
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")


def le_poincare(curve: CurveClass, v: int, n: int, s_rule: str = "primitive") -> LETable:
    """Reduced rational homology of LE_v, dispatched on the range of v."""
    _check_le_args(curve, v, n)
    g = curve.genus
    J = PoincarePolynomial.one_plus_x_power(2 * g)
    sh = 2 * (n + 1)
    notes = []
    if curve.family == HYPERELLIPTIC and v <= g:
        regime = "i"
        summands = [(t * sh, s_r_series(g, v - 2 * t, s_rule)) for t in range(v // 2 + 1)]
        notes.append("S_r coefficients use N(g,l) = C(2g,l) - C(2g,l-2)" if s_rule == "primitive"
                     else "S_r coefficients use the adjacent-binomial rule C(2g,l) - C(2g,l-1)")
    elif curve.family == HYPERELLIPTIC and v <= 2 * g - 2:
        regime = "ii"
        s = v - g
        summands = [(s * sh, J.minus(_w(g, g - s - 1)))]
        for l in range(1, (g - s) // 2 + 1):
            summands.append(((s + l) * sh, _w_rel(g, g - s - 2 * l)))
    elif v == 2 * g - 1:
        regime = "iii"
        summands = [((g - 1) * sh, J.minus(PoincarePolynomial({0: 1})))]
    else:
        regime = "iv"
        summands = [((v - g) * sh, J)]
    total = PoincarePolynomial()
    for shift, p in summands:
        total = total + p.shift(shift)
    if regime == "iv" and total != J.shift((v - g) * sh):
        raise ConsistencyError("stable LE form violated")
    return LETable(g, v, n, total, summands, regime, notes)


def assemble_le_e1(curve: CurveClass, k: int, n: int) -> BigradedTable:
    """E^1 of the filtration of LE_k by the W_j, from stratum descriptors.

    Entries are keyed by (sphere index i, homological degree).  The sum over
    all entries must reproduce :func:`le_poincare` since the sequence
    collapses.
    """
    _check_le_args(curve, k, n)
    g = curve.genus
    sh = 2 * (n + 1)
    table = BigradedTable()

    def put(i, poly):
        for d, v in poly.shift(i * sh).items():
            table.add((i, d), v)

    if k <= g:
        put(0, _stratum(g, k, 0).minus(_stratum(g, k - 1, 0)))
        start = 1
    else:
        put(k - g, _w(g, g).minus(_stratum(g, k - 1, k - g)))
        start = k - g + 1
    for i in range(start, k // 2 + 1):
        put(i, _stratum(g, k, i).minus(_stratum(g, k - 1, i), f"H(W_{k}^{i}, W_{k - 1}^{i})"))
    expect = le_poincare(curve, k, n).total
    if table.project(1) != expect:
        raise ConsistencyError(f"LE_{k} E^1 total {table.project(1)} != {expect}")
    return table
