"""Exact linear algebra over Q on sparse rows.

Rows are dicts ``column -> int``.  Rational input is cleared of denominators
row by row (which does not change the row space), and elimination is
fraction-free: reducing ``r`` by a pivot row ``p`` at column ``c`` replaces
``r`` with ``p[c] * r - r[c] * p`` and then divides by the content.  Leading
coefficients are kept positive, so every result is canonical for a fixed
insertion order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import ConsistencyError, ParameterError

Row = dict  # column -> int


def _normalize(row: Row) -> Row:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def integer_row(entries: Mapping[int, Fraction | int]) -> Row:
    """Scale a rational row to a primitive integer row with the same span."""
    den = 1
    for v in entries.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {}
    for c, v in entries.items():
        v = v * den
        if v:
            if isinstance(v, Fraction):
                v = v.numerator  # denominator is 1 after scaling
            out[c] = int(v)
    return _normalize(out)


class RowEchelon:
    """Incrementally built echelon form of a row space.

    ``insert`` reduces a row against the current pivots and keeps it if it
    survives.  This doubles as a membership test and as a way to pick
    complements: insert the subspace first, then candidates.
    """

    def __init__(self):
        self.pivots: dict[int, Row] = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, int], stop: int | None = None) -> Row:
        """Reduce ``row`` until its leading column has no pivot or is >= ``stop``."""
        row = integer_row(row)
        pivots = self.pivots
        while row:
            c = min(row)
            if stop is not None and c >= stop:
                break
            p = pivots.get(c)
            if p is None:
                break
            a, b = p[c], row[c]
            new = {k: a * v for k, v in row.items()}
            for k, v in p.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = _normalize(new)
        return row

    def insert(self, row: Mapping[int, int]) -> bool:
        """Add ``row`` to the span; return False if it was already in it."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True

    def contains(self, row: Mapping[int, int]) -> bool:
        return not self.reduce(row)

    def rows(self) -> list[Row]:
        return [self.pivots[c] for c in sorted(self.pivots)]


class RationalMatrix:
    """Sparse ``nrows x ncols`` matrix with rational entries.

    Entries are held row-wise as ``{col: value}``; ints are kept as ints and
    anything else is converted to :class:`fractions.Fraction`.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if nrows < 0 or ncols < 0:
            raise ParameterError("matrix shape must be nonnegative")
        self.nrows, self.ncols = nrows, ncols
        rows: dict[int, dict] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise ParameterError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            v = _coerce(v)
            if v:
                rows.setdefault(r, {})[c] = v
        self._rows = rows

    @classmethod
    def from_rows(cls, nrows: int, ncols: int, rows: Mapping[int, Mapping[int, object]]) -> "RationalMatrix":
        m = cls(nrows, ncols)
        for r, row in rows.items():
            clean = {c: _coerce(v) for c, v in row.items() if v}
            for c in clean:
                if not 0 <= c < ncols:
                    raise ParameterError(f"column {c} outside 0..{ncols - 1}")
            if clean:
                if not 0 <= r < nrows:
                    raise ParameterError(f"row {r} outside 0..{nrows - 1}")
                m._rows[r] = clean
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]], ncols: int | None = None) -> "RationalMatrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        return cls.from_rows(nrows, ncols, {i: dict(enumerate(row)) for i, row in enumerate(data)})

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, rc: tuple[int, int]):
        r, c = rc
        return self._rows.get(r, {}).get(c, 0)

    def row(self, r: int) -> dict:
        return dict(self._rows.get(r, {}))

    def nonzero_rows(self) -> Iterable[tuple[int, dict]]:
        for r in sorted(self._rows):
            yield r, self._rows[r]

    def entries(self) -> dict[tuple[int, int], object]:
        return {(r, c): v for r, row in self._rows.items() for c, v in row.items()}

    def to_dense(self) -> list[list]:
        return [[self[r, c] for c in range(self.ncols)] for r in range(self.nrows)]

    def transpose(self) -> "RationalMatrix":
        t = RationalMatrix(self.ncols, self.nrows)
        for r, row in self._rows.items():
            for c, v in row.items():
                t._rows.setdefault(c, {})[r] = v
        return t

    def columns(self) -> dict[int, dict]:
        return self.transpose()._rows

    def apply(self, vec: Sequence[object]) -> list:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise ParameterError(f"vector length {len(vec)} does not match {self.ncols} columns")
        out = [0] * self.nrows
        for r, row in self._rows.items():
            out[r] = sum(v * vec[c] for c, v in row.items())
        return out

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ParameterError(f"cannot compose {self.shape} with {other.shape}")
        out = RationalMatrix(self.nrows, other.ncols)
        for r, row in self._rows.items():
            acc: dict[int, object] = {}
            for k, v in row.items():
                for c, w in other._rows.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + v * w
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out._rows[r] = acc
        return out

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other):
        if isinstance(other, RationalMatrix):
            return self.shape == other.shape and self._rows == other._rows
        return NotImplemented

    def __repr__(self):
        return f"RationalMatrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self._rows.values()))})"

    # linear algebra -------------------------------------------------------
    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> list[list[Fraction]]:
        return kernel_basis(self)

    def image_basis(self) -> list[list[Fraction]]:
        return image_basis(self)


def _coerce(v):
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, float):
        raise ParameterError("floating-point entries are not accepted")
    f = Fraction(v)
    return f.numerator if f.denominator == 1 else f


def rank_of_rows(rows: Iterable[Mapping[int, object]]) -> int:
    ech = RowEchelon()
    for r in rows:
        ech.insert(r)
    return ech.rank


def rank(m: RationalMatrix) -> int:
    # eliminate along the shorter side
    if m.nrows <= m.ncols:
        return rank_of_rows(row for _, row in m.nonzero_rows())
    return rank_of_rows(m.columns().values())


def kernel_basis(m: RationalMatrix) -> list[list[Fraction]]:
    """Basis of ``{v : m v = 0}`` as integer-valued Fraction vectors.

    Each column of ``m`` is tagged with an identity column placed past the
    row indices; a tagged column that reduces to its tag part alone is a
    dependency among columns, i.e. a kernel vector.
    """
    off = m.nrows
    cols = m.columns()
    ech = RowEchelon()
    out = []
    for j in range(m.ncols):
        row = dict(cols.get(j, {}))
        row[off + j] = 1
        r = ech.reduce(row, stop=off)
        if r and min(r) < off:
            ech.pivots[min(r)] = r
            continue
        vec = [Fraction(0)] * m.ncols
        for c, v in r.items():
            vec[c - off] = Fraction(v)
        out.append(vec)
    if len(out) + ech.rank != m.ncols:
        raise ConsistencyError("rank-nullity failed in kernel computation")
    return out


def image_basis(m: RationalMatrix) -> list[list[Fraction]]:
    """Echelon basis of the column space, as length-``nrows`` vectors."""
    ech = RowEchelon()
    for col in m.columns().values():
        ech.insert(col)
    out = []
    for row in ech.rows():
        vec = [Fraction(0)] * m.nrows
        for c, v in row.items():
            vec[c] = Fraction(v)
        out.append(vec)
    return out


def cokernel_dim(m: RationalMatrix) -> int:
    return m.nrows - rank(m)


def rref(rows: Iterable[Mapping[int, object]]) -> dict[int, dict[int, Fraction]]:
    """Fully reduced echelon form: ``pivot column -> row`` with leading entry 1.

    No pivot column appears in any other row, so the non-pivot columns index
    a basis of the quotient of the ambient space by the row span.
    """
    ech = RowEchelon()
    for r in rows:
        ech.insert(r)
    out: dict[int, dict[int, Fraction]] = {}
    # back-substitute from the last pivot up
    for c in sorted(ech.pivots, reverse=True):
        row = {k: Fraction(v, ech.pivots[c][c]) for k, v in ech.pivots[c].items()}
        for k in [k for k in row if k != c and k in out]:
            coef = row[k]
            for kk, vv in out[k].items():
                w = row.get(kk, 0) - coef * vv
                if w:
                    row[kk] = w
                else:
                    row.pop(kk, None)
        out[c] = row
    return dict(sorted(out.items()))
