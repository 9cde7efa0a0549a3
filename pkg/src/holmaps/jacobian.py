"""Homology of the Jacobian as an exterior algebra, the primitive quotient V_g,
and the homology of the Abel-Jacobi images W_j.

``Lambda_g`` is the exterior algebra on ``e_1, ..., e_{2g}`` and
``f_g = e_1 e_2 + ... + e_{2g-1} e_{2g}``.  ``V_g = Lambda_g / (f_g)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .algebra import (
    ExteriorElement,
    PoincarePolynomial,
    basis_position,
    graded_basis,
    mask_sign,
    symplectic_form,
)
from .errors import ConsistencyError, ParameterError
from .linalg import RationalMatrix, RowEchelon, rank, rref


def _check_genus(g):
    if not isinstance(g, int) or g < 1:
        raise ParameterError(f"genus must be a positive integer, got {g!r}")


@dataclass(frozen=True)
class JacobianAlgebra:
    genus: int

    def __post_init__(self):
        _check_genus(self.genus)

    @property
    def ngens(self) -> int:
        return 2 * self.genus

    @property
    def generators(self) -> list[ExteriorElement]:
        return [ExteriorElement.generator(self.ngens, i) for i in range(1, self.ngens + 1)]

    @property
    def fundamental_class(self) -> ExteriorElement:
        return symplectic_form(self.genus)

    def dims(self) -> PoincarePolynomial:
        return PoincarePolynomial.one_plus_x_power(self.ngens)

    def basis(self, degree: int) -> tuple[int, ...]:
        return graded_basis(self.ngens, degree)


def primitive_dim(g: int, i: int) -> int:
    """N(g, i): dimension of the degree-i part of V_g."""
    _check_genus(g)
    if i < 0 or i > g:
        return 0
    if i == 0:
        return 1
    if i == 1:
        return 2 * g
    return comb(2 * g, i) - comb(2 * g, i - 2)


def mult_matrix(g: int, element: dict[int, int], src_degree: int, elt_degree: int) -> RationalMatrix:
    """Matrix of ``x -> element * x`` from degree ``src_degree`` to ``src_degree + elt_degree``.

    Rows index the target basis, columns the source basis.
    """
    n = 2 * g
    src = graded_basis(n, src_degree)
    tgt_pos = basis_position(n, src_degree + elt_degree)
    rows: dict[int, dict[int, int]] = {}
    for j, m in enumerate(src):
        for a, c in element.items():
            s = mask_sign(a, m)
            if s:
                r = tgt_pos[a | m]
                row = rows.setdefault(r, {})
                row[j] = row.get(j, 0) + s * c
    return RationalMatrix.from_rows(len(tgt_pos), len(src), rows)


def fg_mult_matrix(g: int, i: int, check: bool = True) -> RationalMatrix:
    """Multiplication by f_g from degree i to degree i + 2."""
    _check_genus(g)
    if not 0 <= i <= 2 * g:
        raise ParameterError(f"degree {i} outside 0..{2 * g}")
    f = {(0b11 << (2 * t)): 1 for t in range(g)}
    m = mult_matrix(g, f, i, 2)
    if check:
        r = rank(m)
        if i <= g - 1 and r != comb(2 * g, i):
            raise ConsistencyError(f"multiplication by f_{g} not injective in degree {i}")
        if i >= g - 1 and r != comb(2 * g, i + 2):
            raise ConsistencyError(f"multiplication by f_{g} not surjective in degree {i}")
    return m


@dataclass(frozen=True)
class PrimitiveQuotient:
    genus: int
    dims: PoincarePolynomial

    def __getitem__(self, i: int) -> int:
        return self.dims[i]


@lru_cache(maxsize=None)
def vg_dims(g: int) -> PrimitiveQuotient:
    """Dimensions of V_g, by the closed form and by cokernel ranks; they must agree."""
    _check_genus(g)
    closed = PoincarePolynomial({i: primitive_dim(g, i) for i in range(g + 1)})
    brute = {}
    for i in range(2 * g + 1):
        image = 0 if i < 2 else rank(fg_mult_matrix(g, i - 2, check=False))
        brute[i] = comb(2 * g, i) - image
    brute = PoincarePolynomial(brute)
    if brute != closed:
        raise ConsistencyError(f"V_{g}: closed form {closed} but cokernel ranks give {brute}")
    return PrimitiveQuotient(g, closed)


# ---------------------------------------------------------------------------
# V_g as a Lambda_g-module with an explicit monomial basis
# ---------------------------------------------------------------------------

@dataclass
class VgBasis:
    """Monomial basis of V_g with normal forms.

    ``basis[d]`` lists the monomials (bitmasks) spanning ``(V_g)_d``;
    ``normal[d][m]`` expresses the class of monomial ``m`` in that basis.
    """

    genus: int
    basis: dict[int, list[int]] = field(default_factory=dict)
    normal: dict[int, dict[int, dict[int, Fraction]]] = field(default_factory=dict)

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def reduce(self, d: int, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        """Normal form of a degree-d combination of monomials, as ``{basis index: coeff}``."""
        out: dict[int, Fraction] = {}
        nf = self.normal.get(d, {})
        for m, c in vec.items():
            for j, v in nf.get(m, {}).items():
                out[j] = out.get(j, 0) + c * v
        return {j: v for j, v in out.items() if v}

    def act(self, i: int, d: int, j: int) -> dict[int, Fraction]:
        """``e_i`` times the j-th basis element of degree d, in degree d + 1."""
        m = self.basis[d][j]
        bit = 1 << (i - 1)
        s = mask_sign(bit, m)
        if not s:
            return {}
        return self.reduce(d + 1, {bit | m: Fraction(s)})


@lru_cache(maxsize=None)
def vg_basis(g: int) -> VgBasis:
    _check_genus(g)
    n = 2 * g
    f = {(0b11 << (2 * t)): 1 for t in range(g)}
    out = VgBasis(g)
    for d in range(n + 1):
        mons = graded_basis(n, d)
        pos = basis_position(n, d)
        ideal_rows = []
        if d >= 2:
            for m in graded_basis(n, d - 2):
                row: dict[int, int] = {}
                for a, c in f.items():
                    s = mask_sign(a, m)
                    if s:
                        k = pos[a | m]
                        row[k] = row.get(k, 0) + s * c
                ideal_rows.append(row)
        red = rref(ideal_rows)
        free = [k for k in range(len(mons)) if k not in red]
        index = {k: j for j, k in enumerate(free)}
        out.basis[d] = [mons[k] for k in free]
        normal: dict[int, dict[int, Fraction]] = {}
        for k, m in enumerate(mons):
            if k in index:
                normal[m] = {index[k]: Fraction(1)}
            else:
                normal[m] = {index[c]: -v for c, v in red[k].items() if c != k}
        out.normal[d] = normal
        if len(free) != primitive_dim(g, d):
            raise ConsistencyError(f"V_{g} basis in degree {d} has {len(free)} elements")
    return out


# ---------------------------------------------------------------------------
# Homology of W_j
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _fg_powers(g: int) -> tuple[dict[int, int], ...]:
    """f_g^t for t = 0..g as ``{mask: int}``."""
    f = symplectic_form(g)
    powers = [ExteriorElement.one(2 * g)]
    for _ in range(g):
        powers.append(powers[-1] * f)
    return tuple({m: int(c) for m, c in p.terms.items()} for p in powers)


@lru_cache(maxsize=None)
def w_homology(g: int, j: int) -> PoincarePolynomial:
    """Degreewise dimension of the span of ``m * f_g^t`` (|m| = s, s + t <= j) in Lambda_g."""
    _check_genus(g)
    if not 0 <= j <= g:
        raise ParameterError(f"index j={j} outside 0..{g}")
    n = 2 * g
    powers = _fg_powers(g)
    dims = {}
    for d in range(n + 1):
        pos = basis_position(n, d)
        ech = RowEchelon()
        for t in range(d // 2 + 1):
            s = d - 2 * t
            if s + t > j:
                continue
            for m in graded_basis(n, s):
                row: dict[int, int] = {}
                for a, c in powers[t].items():
                    sg = mask_sign(m, a)
                    if sg:
                        k = pos[m | a]
                        row[k] = row.get(k, 0) + sg * c
                ech.insert(row)
        dims[d] = ech.rank
    return PoincarePolynomial(dims)


def w_relative(g: int, j: int) -> PoincarePolynomial:
    """Homology of the pair (W_j, W_{j-1}) as a degreewise difference."""
    _check_genus(g)
    if not 1 <= j <= g:
        raise ParameterError(f"index j={j} outside 1..{g}")
    return w_homology(g, j).minus(w_homology(g, j - 1), f"H(W_{j}, W_{j - 1}) for g={g}")
