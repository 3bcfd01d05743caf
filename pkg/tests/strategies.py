"""Hypothesis strategies shared by the test modules."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from perfpoly.numberfield import BASIS_RADICANDS, FieldElem

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def field_elems(draw, radicands=BASIS_RADICANDS, nonzero=False):
    coeffs = [draw(small_fractions) if k in radicands else Fraction(0) for k in BASIS_RADICANDS]
    x = FieldElem(coeffs)
    if nonzero and not x:
        x = FieldElem.rational(draw(st.integers(1, 9)))
    return x


q5_elems = field_elems(radicands=(1, 5))
