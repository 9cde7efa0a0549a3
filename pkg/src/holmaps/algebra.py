"""Graded bookkeeping and exterior-monomial arithmetic.

Everything here is exact: coefficients are Python ints or
:class:`fractions.Fraction`.  Exterior monomials in ``e_1, ..., e_{2g}`` are
encoded as bitmasks, bit ``i - 1`` standing for ``e_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping

from .errors import ConsistencyError, ParameterError


# ---------------------------------------------------------------------------
# Poincare polynomials
# ---------------------------------------------------------------------------

class PoincarePolynomial:
    """Finite table ``degree -> dimension`` with nonnegative entries.

    Zero coefficients are never stored, so two polynomials compare equal
    exactly when their tables agree.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients: Mapping[int, int] | Iterable[int] = ()):
        if isinstance(coefficients, Mapping):
            items = coefficients.items()
        else:
            items = enumerate(coefficients)
        c = {}
        for d, v in items:
            d, v = int(d), int(v)
            if d < 0:
                raise ParameterError(f"negative degree {d}")
            if v < 0:
                raise ConsistencyError(f"negative dimension {v} in degree {d}")
            if v:
                c[d] = c.get(d, 0) + v
        self._c = dict(sorted(c.items()))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "PoincarePolynomial":
        return cls({degree: coefficient})

    @classmethod
    def one_plus_x_power(cls, e: int) -> "PoincarePolynomial":
        """``(1 + x)^e``."""
        return cls({i: comb(e, i) for i in range(e + 1)})

    @classmethod
    def projective(cls, m: int) -> "PoincarePolynomial":
        """Poincare polynomial ``1 + x^2 + ... + x^{2m}`` of complex projective m-space."""
        return cls({2 * i: 1 for i in range(m + 1)}) if m >= 0 else cls()

    # table access -------------------------------------------------------
    def __getitem__(self, degree: int) -> int:
        return self._c.get(degree, 0)

    def items(self):
        return self._c.items()

    def degrees(self):
        return list(self._c)

    def as_dict(self) -> dict[int, int]:
        return dict(self._c)

    def to_list(self) -> list[int]:
        if not self._c:
            return []
        return [self._c.get(d, 0) for d in range(self.degree + 1)]

    @property
    def degree(self) -> int:
        """Top degree with nonzero coefficient, -1 for the zero polynomial."""
        return max(self._c) if self._c else -1

    @property
    def low_degree(self) -> int:
        return min(self._c) if self._c else -1

    def total(self) -> int:
        return sum(self._c.values())

    def euler(self) -> int:
        return sum((-1) ** d * v for d, v in self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        c = dict(self._c)
        for d, v in other._c.items():
            c[d] = c.get(d, 0) + v
        return PoincarePolynomial(c)

    def __mul__(self, other) -> "PoincarePolynomial":
        if isinstance(other, int):
            if other < 0:
                raise ConsistencyError("scaling by a negative integer")
            return PoincarePolynomial({d: v * other for d, v in self._c.items()})
        c: dict[int, int] = {}
        for d1, v1 in self._c.items():
            for d2, v2 in other._c.items():
                c[d1 + d2] = c.get(d1 + d2, 0) + v1 * v2
        return PoincarePolynomial(c)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PoincarePolynomial":
        out = PoincarePolynomial({0: 1})
        for _ in range(e):
            out = out * self
        return out

    def minus(self, other: "PoincarePolynomial", what: str = "difference") -> "PoincarePolynomial":
        """Degreewise difference; a negative coefficient is a consistency failure."""
        c = dict(self._c)
        for d, v in other._c.items():
            c[d] = c.get(d, 0) - v
        bad = {d: v for d, v in c.items() if v < 0}
        if bad:
            raise ConsistencyError(f"{what} has negative coefficients {bad}")
        return PoincarePolynomial(c)

    def shift(self, k: int) -> "PoincarePolynomial":
        """Multiply by ``x^k``."""
        return PoincarePolynomial({d + k: v for d, v in self._c.items()})

    def truncate(self, degree_bound: int) -> "PoincarePolynomial":
        return PoincarePolynomial({d: v for d, v in self._c.items() if d <= degree_bound})

    def leq(self, other: "PoincarePolynomial") -> bool:
        top = max(self.degree, other.degree)
        return all(self[d] <= other[d] for d in range(top + 1))

    def first_excess(self, other: "PoincarePolynomial") -> int | None:
        """Smallest degree where ``self`` exceeds ``other``, or None."""
        top = max(self.degree, other.degree)
        for d in range(top + 1):
            if self[d] > other[d]:
                return d
        return None

    def reflect(self, top: int) -> "PoincarePolynomial":
        """Regrade ``x^d -> x^{top - d}``."""
        c = {}
        for d, v in self._c.items():
            if d > top:
                raise ConsistencyError(f"degree {d} above reflection centre {top}")
            c[top - d] = v
        return PoincarePolynomial(c)

    # protocol -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, PoincarePolynomial):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def __repr__(self):
        return f"PoincarePolynomial({self._c})"

    def __str__(self):
        return format_poly(self._c)


def format_poly(coefficients: Mapping[int, int], var: str = "x") -> str:
    """Lowest degree first, explicit powers: ``1 + 2x^1 + x^2``."""
    terms = []
    for d in sorted(coefficients):
        v = coefficients[d]
        if not v:
            continue
        if d == 0:
            terms.append(str(v))
        else:
            terms.append(f"{'' if v == 1 else v}{var}^{d}")
    return " + ".join(terms) if terms else "0"


def poly_add(p: PoincarePolynomial, q: PoincarePolynomial) -> PoincarePolynomial:
    return p + q


def poly_mul(p: PoincarePolynomial, q: PoincarePolynomial) -> PoincarePolynomial:
    return p * q


def poly_truncate(p: PoincarePolynomial, degree_bound: int) -> PoincarePolynomial:
    return p.truncate(degree_bound)


def poly_leq(p: PoincarePolynomial, q: PoincarePolynomial) -> bool:
    return p.leq(q)


def series_quotient(num: Mapping[int, int], den: Mapping[int, int], bound: int) -> dict[int, int]:
    """Power series ``num / den`` through ``x^bound``; ``den`` must have constant term 1."""
    if den.get(0) != 1:
        raise ParameterError("denominator must have constant term 1")
    out: dict[int, int] = {}
    for d in range(bound + 1):
        v = num.get(d, 0) - sum(den.get(j, 0) * out.get(d - j, 0) for j in range(1, d + 1))
        if v:
            out[d] = v
    return out


# ---------------------------------------------------------------------------
# Exterior algebra on bitmasks
# ---------------------------------------------------------------------------

def mask_indices(mask: int) -> tuple[int, ...]:
    """1-based generator indices present in ``mask``, increasing."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def indices_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


@lru_cache(maxsize=None)
def mask_sign(a: int, b: int) -> int:
    """Sign of ``e_a * e_b`` relative to the sorted monomial ``e_{a|b}``; 0 if they overlap.

    Counts pairs (i in a, j in b) with i > j: each is one transposition.
    """
    if a & b:
        return 0
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        swaps += (a & ~((low << 1) - 1)).bit_count()
        bb ^= low
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def graded_basis(ngens: int, degree: int) -> tuple[int, ...]:
    """Monomials of the given length in lexicographic order of their index tuples."""
    if degree < 0 or degree > ngens:
        return ()
    return tuple(indices_mask(c) for c in combinations(range(1, ngens + 1), degree))


@lru_cache(maxsize=None)
def basis_position(ngens: int, degree: int) -> dict[int, int]:
    return {m: i for i, m in enumerate(graded_basis(ngens, degree))}


@dataclass(frozen=True, order=True)
class ExteriorMonomial:
    """A square-free monomial ``e_{i_1} ... e_{i_r}`` with ``i_1 < ... < i_r``."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ParameterError(f"indices must be strictly increasing: {self.indices}")
        if self.indices and self.indices[0] < 1:
            raise ParameterError("indices start at 1")

    @property
    def degree(self) -> int:
        return len(self.indices)

    @property
    def mask(self) -> int:
        return indices_mask(self.indices)

    @classmethod
    def from_mask(cls, mask: int) -> "ExteriorMonomial":
        return cls(mask_indices(mask))

    def __str__(self):
        return "".join(f"e{i}" for i in self.indices) or "1"


class ExteriorElement:
    """Rational combination of exterior monomials on ``ngens`` generators."""

    __slots__ = ("ngens", "terms")

    def __init__(self, ngens: int, terms: Mapping[int, Fraction | int] | None = None):
        if ngens < 0 or ngens % 2:
            raise ParameterError(f"generator count must be even and nonnegative, got {ngens}")
        self.ngens = ngens
        full = (1 << ngens) - 1
        clean = {}
        for m, c in (terms or {}).items():
            if m & ~full:
                raise ParameterError(f"monomial {mask_indices(m)} exceeds {ngens} generators")
            c = Fraction(c)
            if c:
                clean[m] = c
        self.terms = clean

    @classmethod
    def generator(cls, ngens: int, i: int) -> "ExteriorElement":
        if not 1 <= i <= ngens:
            raise ParameterError(f"generator e{i} outside 1..{ngens}")
        return cls(ngens, {1 << (i - 1): 1})

    @classmethod
    def one(cls, ngens: int) -> "ExteriorElement":
        return cls(ngens, {0: 1})

    @classmethod
    def from_monomial(cls, ngens: int, mono: ExteriorMonomial, coeff=1) -> "ExteriorElement":
        return cls(ngens, {mono.mask: coeff})

    def homogeneous_part(self, d: int) -> "ExteriorElement":
        return ExteriorElement(self.ngens, {m: c for m, c in self.terms.items() if m.bit_count() == d})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        _check_same(self, other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return ExteriorElement(self.ngens, t)

    def __neg__(self):
        return ExteriorElement(self.ngens, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ExteriorElement":
        return ExteriorElement(self.ngens, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: "ExteriorElement") -> "ExteriorElement":
        return ext_mul(self, other)

    def __pow__(self, e: int) -> "ExteriorElement":
        out = ExteriorElement.one(self.ngens)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ExteriorElement):
            return self.ngens == other.ngens and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ngens, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (m.bit_count(), mask_indices(m))):
            parts.append(f"{self.terms[m]}*{ExteriorMonomial.from_mask(m)}")
        return " + ".join(parts)


def _check_same(a: ExteriorElement, b: ExteriorElement) -> None:
    if a.ngens != b.ngens:
        raise ParameterError(f"mismatched generator counts {a.ngens} and {b.ngens}")


def ext_mul(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    """Product in the exterior algebra with Koszul signs."""
    _check_same(a, b)
    out: dict[int, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            s = mask_sign(ma, mb)
            if s:
                m = ma | mb
                out[m] = out.get(m, 0) + s * ca * cb
    return ExteriorElement(a.ngens, out)


def symplectic_form(g: int) -> ExteriorElement:
    """``e_1 e_2 + e_3 e_4 + ... + e_{2g-1} e_{2g}``."""
    return ExteriorElement(2 * g, {(0b11 << (2 * i)): 1 for i in range(g)})


# ---------------------------------------------------------------------------
# Bigraded tables
# ---------------------------------------------------------------------------

@dataclass
class BigradedTable:
    """Table ``(index1, index2) -> dimension`` with optional basis labels."""

    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    labels: dict[tuple[int, int], list] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, v in self.entries.items():
            if v < 0:
                raise ConsistencyError(f"negative dimension at {key}")
            if v:
                clean[(int(key[0]), int(key[1]))] = int(v)
        self.entries = dict(sorted(clean.items()))

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def add(self, key: tuple[int, int], dim: int, labels: list | None = None) -> None:
        if dim < 0:
            raise ConsistencyError(f"negative dimension at {key}")
        if dim:
            self.entries[key] = self.entries.get(key, 0) + dim
            self.entries = dict(sorted(self.entries.items()))
        if labels:
            self.labels.setdefault(key, []).extend(labels)

    def total(self) -> int:
        return sum(self.entries.values())

    def project(self, axis: int) -> PoincarePolynomial:
        """Sum out the other index: ``axis=0`` keeps index1, ``axis=1`` keeps index2."""
        c: dict[int, int] = {}
        for key, v in self.entries.items():
            c[key[axis]] = c.get(key[axis], 0) + v
        return PoincarePolynomial(c)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(self.entries.items())

    def __eq__(self, other):
        if isinstance(other, BigradedTable):
            return self.entries == other.entries
        return NotImplemented
