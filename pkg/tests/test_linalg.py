from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from perfpoly import linalg
from perfpoly.numberfield import ONE, SQRT2, SQRT5, ZERO, FieldElem

from strategies import field_elems, q5_elems


def _sym(x):
    x = FieldElem.rational(x) if not isinstance(x, FieldElem) else x
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.sqrt(k) for c, k in zip(x.coeffs, (1, 2, 3, 5, 6, 10, 15, 30)))


def matrices(elems, max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(elems, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@given(matrices(st.fractions(min_value=-3, max_value=3, max_denominator=3)))
def test_rank_matches_sympy_rational(rows):
    assert linalg.rank(rows) == sympy.Matrix(rows).rank()


@given(matrices(q5_elems, 4, 4))
def test_rank_matches_sympy_q5(rows):
    M = sympy.Matrix([[_sym(x) for x in r] for r in rows])
    assert linalg.rank(rows) == M.rank(simplify=True)


@given(st.lists(q5_elems, min_size=3, max_size=3), st.lists(q5_elems, min_size=3, max_size=3), q5_elems, q5_elems)
def test_dependent_rows_detected(u, v, a, b):
    w = [a * x + b * y for x, y in zip(u, v)]
    assert linalg.rank([u, v, w]) <= 2


@given(matrices(field_elems(radicands=(1, 2, 3)), 4, 6))
def test_nullspace_vectors_annihilate(rows):
    ncols = len(rows[0])
    basis, r = linalg.nullspace(rows, ncols)
    assert len(basis) + r == ncols
    for vec in basis:
        assert all(linalg.dot(row, vec) == 0 for row in rows)
    if basis:
        assert linalg.rank(basis, ncols) == len(basis)


def test_nullspace_is_canonical():
    rows = [[1, 2, 3], [2, 4, 6]]
    basis, r = linalg.nullspace(rows, 3)
    assert r == 1
    assert basis == [[-2 * ONE, ONE, ZERO], [-3 * ONE, ZERO, ONE]]


def test_stop_at_limits_rank():
    rows = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    ech, _ = linalg.echelon(rows, 3, stop_at=2)
    assert ech.rank == 2


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(q5_elems, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_and_solve(m):
    n = len(m)
    if linalg.rank(m) < n:
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(m)
        return
    inv = linalg.inverse(m)
    assert linalg.matmul(m, inv) == linalg.identity(n)
    rhs = [FieldElem.rational(i + 1) for i in range(n)]
    x = linalg.solve(m, rhs)
    assert linalg.matvec(m, x) == rhs


def test_rational_fast_path_returns_field_elements():
    basis, _ = linalg.nullspace([[Fraction(1, 2), 1]], 2)
    assert all(isinstance(x, FieldElem) for x in basis[0])


def test_bilinear_with_gram():
    G = [[ONE, SQRT5 / 4], [SQRT5 / 4, ONE]]
    assert linalg.bilinear([1, 0], G, [0, 1]) == SQRT5 / 4
    assert linalg.bilinear([SQRT2, 0], None, [SQRT2, 1]) == 2
