"""Exact linear algebra over Q or Q(sqrt2, sqrt3, sqrt5).

Entries may be ``Fraction`` or ``FieldElem``; matrices whose entries are all
rational are eliminated in plain ``Fraction`` arithmetic, which is several
times faster.  Elimination picks the first nonzero pivot in a fixed column
order and divides only once per pivot row (to normalise the pivot to 1).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .numberfield import FieldElem, ONE, ZERO, to_field


def _all_rational(rows: Sequence[Sequence]) -> bool:
    for row in rows:
        for x in row:
            if isinstance(x, FieldElem) and not x.is_rational():
                return False
    return True


def _demote(rows):
    return [[x.rational_part() if isinstance(x, FieldElem) else Fraction(x) for x in row] for row in rows]


def _promote(x) -> FieldElem:
    return x if isinstance(x, FieldElem) else FieldElem.rational(x)


def _prepare(rows):
    rows = [list(r) for r in rows]
    if _all_rational(rows):
        return _demote(rows), True
    return [[to_field(x) for x in r] for r in rows], False


class Echelon:
    """Incrementally maintained row echelon form with unit pivots.

    ``add_row`` reduces a new row against the stored pivot rows and keeps it if
    it is independent.  ``rank`` and ``pivot_cols`` are available at any time;
    ``rref`` finishes the back substitution.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, list] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: list) -> list:
        row = list(row)
        for c in sorted(self.pivots):
            f = row[c]
            if not f:
                continue
            prow = self.pivots[c]
            for j in range(c, self.ncols):
                p = prow[j]
                if p:
                    row[j] = row[j] - f * p
        return row

    def add_row(self, row: list) -> bool:
        row = self.reduce(row)
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            return False
        inv = 1 / row[lead]
        self.pivots[lead] = [x * inv if x else x for x in row]
        return True

    def rref(self) -> list[tuple[int, list]]:
        cols = sorted(self.pivots)
        rows = {c: list(self.pivots[c]) for c in cols}
        for c in reversed(cols):
            prow = rows[c]
            for c2 in cols:
                if c2 >= c:
                    break
                r = rows[c2]
                f = r[c]
                if f:
                    for j in range(c, self.ncols):
                        if prow[j]:
                            r[j] = r[j] - f * prow[j]
        return [(c, rows[c]) for c in cols]


def echelon(rows: Iterable[Sequence], ncols: int, stop_at: int | None = None) -> tuple[Echelon, bool]:
    """Echelon form of ``rows``; returns (echelon, rational_flag).

    Stops early once the rank reaches ``stop_at`` (default: ncols).
    """
    rows, rational = _prepare(rows)
    ech = Echelon(ncols)
    limit = ncols if stop_at is None else stop_at
    for row in rows:
        if ech.rank >= limit:
            break
        ech.add_row(row)
    return ech, rational


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    rows = list(rows)
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    return echelon(rows, ncols)[0].rank


def nullspace(rows: Sequence[Sequence], ncols: int, stop_at: int | None = None) -> tuple[list[list[FieldElem]], int]:
    """Basis of {x : rows . x = 0} and the rank of ``rows``.

    One basis vector per free column f, with x_f = 1 and zeros at the other
    free columns, so the basis is canonical for the given column order.
    """
    ech, _ = echelon(rows, ncols, stop_at)
    reduced = ech.rref()
    pivot_cols = {c for c, _ in reduced}
    free = [j for j in range(ncols) if j not in pivot_cols]
    basis = []
    for f in free:
        vec = [ZERO] * ncols
        vec[f] = ONE
        for c, row in reduced:
            if row[f]:
                vec[c] = -_promote(row[f])
        basis.append(vec)
    return basis, ech.rank


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[FieldElem]:
    """Solve a square nonsingular system exactly."""
    n = len(matrix)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    rows, _ = _prepare(aug)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        prow = [x * inv for x in rows[col]]
        rows[col] = prow
        for r in range(n):
            f = rows[r][col]
            if r != col and f:
                rows[r] = [x - f * p for x, p in zip(rows[r], prow)]
    return [_promote(rows[i][n]) for i in range(n)]


def inverse(matrix: Sequence[Sequence]) -> list[list[FieldElem]]:
    n = len(matrix)
    aug = [list(matrix[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    rows, _ = _prepare(aug)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        prow = rows[col]
        for r in range(n):
            f = rows[r][col]
            if r != col and f:
                rows[r] = [x - f * p for x, p in zip(rows[r], prow)]
    return [[_promote(x) for x in rows[i][n:]] for i in range(n)]


# -- small dense helpers ----------------------------------------------------


def dot(x: Sequence, y: Sequence):
    acc = ZERO
    for a, b in zip(x, y):
        if a and b:
            acc = acc + a * b
    return acc


def matvec(m: Sequence[Sequence], v: Sequence) -> list:
    return [dot(row, v) for row in m]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b))
    return [[dot(row, col) for col in cols] for row in a]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in zip(*a)]


def identity(n: int) -> list[list[FieldElem]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def bilinear(x: Sequence, gram: Sequence[Sequence] | None, y: Sequence):
    """x^T G y, with G = identity when ``gram`` is None."""
    if gram is None:
        return dot(x, y)
    return dot(x, matvec(gram, y))
