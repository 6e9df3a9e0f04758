"""Exact dense linear algebra over the rationals.

Elimination runs on integer rows (denominators cleared per row) with a
gcd normalisation after every update, which keeps entry growth bounded for
the 0/1 matrices this package produces.  Results are returned as
``Fraction`` values.  No floating point anywhere in this module.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm
from typing import Any, Iterable, Sequence

Number = int | Fraction


class LinalgError(ValueError):
    pass


class RationalMatrix:
    """Immutable dense matrix of ``Fraction`` entries with optional labels."""

    __slots__ = ("_rows", "_ncols", "row_labels", "col_labels")

    def __init__(
        self,
        rows: Iterable[Iterable[Number | str]],
        ncols: int | None = None,
        row_labels: Sequence[Any] | None = None,
        col_labels: Sequence[Any] | None = None,
    ) -> None:
        data = tuple(tuple(x if type(x) is Fraction else Fraction(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise LinalgError("column count is ambiguous for a matrix with no rows")
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise LinalgError("ragged rows")
        if row_labels is not None and len(row_labels) != len(data):
            raise LinalgError("row_labels length does not match row count")
        if col_labels is not None and len(col_labels) != ncols:
            raise LinalgError("col_labels length does not match column count")
        self._rows = data
        self._ncols = ncols
        self.row_labels = tuple(row_labels) if row_labels is not None else None
        self.col_labels = tuple(col_labels) if col_labels is not None else None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], ncols=cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[Number]], nrows: int) -> "RationalMatrix":
        if any(len(c) != nrows for c in cols):
            raise LinalgError("column length mismatch")
        return cls([[c[i] for c in cols] for i in range(nrows)], ncols=len(cols))

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self._rows), self._ncols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def transpose(self) -> "RationalMatrix":
        cols = [self.column(j) for j in range(self._ncols)]
        return RationalMatrix(
            cols, ncols=len(self._rows), row_labels=self.col_labels, col_labels=self.row_labels
        )

    def hstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows != other.rows:
            raise LinalgError("row count mismatch in hstack")
        return RationalMatrix(
            (a + b for a, b in zip(self._rows, other._rows)), ncols=self.cols + other.cols
        )

    def vstack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise LinalgError("column count mismatch in vstack")
        return RationalMatrix(self._rows + other._rows, ncols=self.cols)

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise LinalgError("inner dimension mismatch")
        ocols = other.column
        cols = [ocols(j) for j in range(other.cols)]
        return RationalMatrix(
            ([sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols] for r in self._rows),
            ncols=other.cols,
        )

    def permute(self, row_order: Sequence[int] | None = None, col_order: Sequence[int] | None = None) -> "RationalMatrix":
        """New matrix whose row i is old row ``row_order[i]`` (likewise columns)."""
        ro = list(range(self.rows)) if row_order is None else list(row_order)
        co = list(range(self.cols)) if col_order is None else list(col_order)
        rl = None if self.row_labels is None else [self.row_labels[i] for i in ro]
        cl = None if self.col_labels is None else [self.col_labels[j] for j in co]
        return RationalMatrix(
            ([self._rows[i][j] for j in co] for i in ro), ncols=len(co), row_labels=rl, col_labels=cl
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"

    def to_json_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_rational(x) for x in r] for r in self._rows],
        }
        if self.row_labels is not None:
            d["row_labels"] = list(self.row_labels)
        if self.col_labels is not None:
            d["col_labels"] = list(self.col_labels)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict[str, Any]) -> "RationalMatrix":
        m = cls(
            (parse_rational(x) for x in r) for r in d["entries"]
        ) if d["entries"] else cls([], ncols=int(d["cols"]))
        if m.shape != (int(d["rows"]), int(d["cols"])):
            raise LinalgError("declared shape does not match entries")
        return cls(m._rows, ncols=m.cols, row_labels=d.get("row_labels"), col_labels=d.get("col_labels"))


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: str | int) -> Fraction:
    if isinstance(s, bool):
        raise LinalgError("boolean is not a rational entry")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise LinalgError(f"cannot parse rational from {s!r}")


# elimination core ---------------------------------------------------------

def _int_row(r: Sequence[Fraction]) -> list[int]:
    den = lcm(*(x.denominator for x in r)) if r else 1
    if den == 1:
        return [x.numerator for x in r]
    return [x.numerator * (den // x.denominator) for x in r]


def _primitive(r: list[int]) -> list[int]:
    g = gcd(*r)
    if g > 1:
        return [x // g for x in r]
    return r


def _echelon(rows: list[list[int]], ncols: int, jordan: bool) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Gauss-)Jordan elimination on integer rows.

    Returns the non-zero rows (primitive, pivot entry positive) and pivot
    columns.  With ``jordan`` every pivot column is cleared above as well.
    """
    rows = [r for r in rows if any(r)]
    pivots: list[int] = []
    pr = 0
    for c in range(ncols):
        if pr == len(rows):
            break
        sel = None
        for i in range(pr, len(rows)):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        prow = rows[pr]
        if prow[c] < 0:
            prow = rows[pr] = [-x for x in prow]
        p = prow[c]
        targets = range(len(rows)) if jordan else range(pr + 1, len(rows))
        for i in targets:
            if i == pr:
                continue
            a = rows[i][c]
            if a:
                g = gcd(a, p)
                ma, mp = p // g, a // g
                rows[i] = _primitive([ma * x - mp * y for x, y in zip(rows[i], prow)])
        pivots.append(c)
        pr += 1
        if not jordan:
            rows[pr:] = [r for r in rows[pr:] if any(r)]
    return rows[: len(pivots)], pivots


def _to_int_rows(m: RationalMatrix) -> list[list[int]]:
    return [_int_row(m.row(i)) for i in range(m.rows)]


def rref(m: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form (leading ones, zero rows last) and pivot columns."""
    rows, pivots = _echelon(_to_int_rows(m), m.cols, jordan=True)
    out = [[Fraction(x, r[c]) for x in r] for r, c in zip(rows, pivots)]
    out.extend([[Fraction(0)] * m.cols for _ in range(m.rows - len(out))])
    return RationalMatrix(out, ncols=m.cols), pivots


def rank(m: RationalMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter dimension
    rows = _to_int_rows(m)
    if m.cols > m.rows:
        rows = [list(c) for c in zip(*rows)]
        return len(_echelon(rows, m.rows, jordan=False)[1])
    return len(_echelon(rows, m.cols, jordan=False)[1])


def _canonical_integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    """Scale rows to coprime integers with the first non-zero entry positive."""
    out = []
    for r in rows:
        ir = _primitive(_int_row(r))
        first = next((x for x in ir if x), 0)
        if first < 0:
            ir = [-x for x in ir]
        out.append(ir)
    return out


def _int_nullspace(rows: list[list[int]], n: int) -> list[list[int]]:
    """Integer vectors spanning {x : rows . x = 0}, one per free column."""
    red, pivots = _echelon(rows, n, jordan=True)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        # x_f = L, x_c = -r[f] * L / r[c] with L the lcm of pivot entries involved
        involved = [(r, c) for r, c in zip(red, pivots) if r[f]]
        den = lcm(*(r[c] for r, c in involved)) if involved else 1
        v = [0] * n
        v[f] = den
        for r, c in involved:
            v[c] = -r[f] * (den // r[c])
        basis.append(_primitive(v))
    return basis


def nullspace(m: RationalMatrix) -> RationalMatrix:
    """Basis (as rows) of {x : M x = 0}, in canonical integer RREF form."""
    n = m.cols
    if m.rows == 0:
        return RationalMatrix.identity(n)
    basis = _int_nullspace(_to_int_rows(m), n)
    if not basis:
        return RationalMatrix([], ncols=n)
    return RationalMatrix(_canonical_int(basis, n), ncols=n)


def _canonical_int(rows: list[list[int]], n: int) -> list[list[int]]:
    red, _ = _echelon(rows, n, jordan=True)
    return [_primitive(r) for r in red]


def left_nullspace(m: RationalMatrix) -> RationalMatrix:
    """Basis (as rows) of {y : y^T M = 0}; ``rows(M) - rank(M)`` rows."""
    if m.cols == 0:
        return RationalMatrix.identity(m.rows)
    return nullspace(m.transpose())


def canonical_row_basis(m: RationalMatrix) -> RationalMatrix:
    """Canonical integer basis of the row space: RREF rows scaled to coprime integers."""
    if m.rows == 0:
        return RationalMatrix([], ncols=m.cols)
    rows, _ = _echelon(_to_int_rows(m), m.cols, jordan=True)
    return RationalMatrix(_canonical_integer_rows([[Fraction(x) for x in r] for r in rows]), ncols=m.cols)


def column_basis(m: RationalMatrix) -> RationalMatrix:
    """Canonical basis of the column span, returned as columns."""
    return canonical_row_basis(m.transpose()).transpose() if m.cols else RationalMatrix([[]] * m.rows, ncols=0)


def in_span(v: Sequence[Number], m: RationalMatrix) -> bool:
    """Whether ``v`` lies in the column span of ``m`` (decided by solving M x = v)."""
    if len(v) != m.rows:
        raise LinalgError(f"vector length {len(v)} does not match {m.rows} rows")
    if all(Fraction(x) == 0 for x in v):
        return True
    if m.cols == 0:
        return False
    aug = m.hstack(RationalMatrix([[x] for x in v], ncols=1))
    _, pivots = _echelon(_to_int_rows(aug), aug.cols, jordan=False)
    return m.cols not in pivots


def same_span(m1: RationalMatrix, m2: RationalMatrix) -> bool:
    """Whether the column spans of ``m1`` and ``m2`` coincide."""
    if m1.rows != m2.rows:
        raise LinalgError(f"row count mismatch: {m1.rows} vs {m2.rows}")
    return _span_key(m1) == _span_key(m2)


def _span_key(m: RationalMatrix) -> tuple:
    if m.cols == 0:
        return ()
    rows, _ = _echelon(_to_int_rows(m.transpose()), m.rows, jordan=True)
    return tuple(tuple(r) for r in _canonical_integer_rows([[Fraction(x) for x in r] for r in rows]))


def span_sum(*ms: RationalMatrix) -> RationalMatrix:
    """Columns of all arguments side by side (a spanning set of the sum)."""
    if not ms:
        raise LinalgError("need at least one matrix")
    out = ms[0]
    for m in ms[1:]:
        out = out.hstack(m)
    return out


def span_intersection(m1: RationalMatrix, m2: RationalMatrix) -> RationalMatrix:
    """Basis (columns) of Col(m1) ∩ Col(m2).

    Computed as the common solution space of both annihilators: a vector lies
    in Col(M) exactly when every left-nullspace row of M kills it.
    """
    if m1.rows != m2.rows:
        raise LinalgError(f"row count mismatch: {m1.rows} vs {m2.rows}")
    n = m1.rows
    ann = []
    for m in (m1, m2):
        cols = [_int_row(m.column(j)) for j in range(m.cols)]
        ann.extend(_int_nullspace(cols, n) if cols else [[int(i == j) for j in range(n)] for i in range(n)])
    if not ann:
        return RationalMatrix.identity(n)
    basis = _int_nullspace(ann, n)
    if not basis:
        return RationalMatrix([[]] * n, ncols=0) if n else RationalMatrix([], ncols=0)
    return RationalMatrix([[Fraction(x) for x in r] for r in basis], ncols=n).transpose()


def dot(u: Sequence[Number], v: Sequence[Number]) -> Fraction:
    if len(u) != len(v):
        raise LinalgError("length mismatch")
    return sum((Fraction(a) * b for a, b in zip(u, v) if a and b), Fraction(0))
