"""Exact arithmetic in the real field Q(sqrt2, sqrt3, sqrt5).

Elements are stored as 8 rational coordinates over the basis

    1, sqrt2, sqrt3, sqrt5, sqrt6, sqrt10, sqrt15, sqrt30

Every coordinate appearing in the polytope catalog (half-integers, sqrt2/4,
sqrt6/12, the golden ratio, ...) lives here.  Zero testing is exact; the sign
of a nonzero element is found by interval evaluation with rational endpoints.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Union

__all__ = [
    "BASIS_RADICANDS",
    "FieldElem",
    "ZERO",
    "ONE",
    "SQRT2",
    "SQRT3",
    "SQRT5",
    "PHI",
    "sqrt",
    "parse",
    "to_field",
    "LiteralError",
    "sign",
    "to_float",
]

Rational = Fraction
Scalar = Union["FieldElem", Fraction, int]

# square-free radicand of each basis element, in storage order
BASIS_RADICANDS = (1, 2, 3, 5, 6, 10, 15, 30)
_PRIMES = (2, 3, 5)
_INDEX = {k: i for i, k in enumerate(BASIS_RADICANDS)}


def _mask(k: int) -> int:
    return sum(1 << b for b, p in enumerate(_PRIMES) if k % p == 0)


def _build_table():
    # product of basis i and j is factor * basis k
    table = {}
    for i, ki in enumerate(BASIS_RADICANDS):
        for j, kj in enumerate(BASIS_RADICANDS):
            common = _mask(ki) & _mask(kj)
            factor = 1
            for b, p in enumerate(_PRIMES):
                if common >> b & 1:
                    factor *= p
            k = ki * kj // (factor * factor)
            table[i, j] = (_INDEX[k], factor)
    return table


MUL_TABLE = _build_table()
_TABLE_ROWS = tuple(tuple(MUL_TABLE[i, j] for j in range(8)) for i in range(8))
_ZEROS = (Fraction(0),) * 8


class LiteralError(ValueError):
    """Raised for a malformed field-element literal."""


class FieldElem:
    """Immutable element of Q(sqrt2, sqrt3, sqrt5).

    Stored as eight integer numerators over one positive common denominator,
    reduced so that gcd(den, *nums) == 1.  ``coeffs`` exposes the rational
    coordinates.
    """

    __slots__ = ("nums", "den", "_hash")

    def __init__(self, coeffs: Iterable = _ZEROS):
        c = [Fraction(x) for x in coeffs]
        if len(c) != 8:
            raise ValueError("FieldElem needs exactly 8 coefficients")
        den = 1
        for a in c:
            den = den * a.denominator // gcd(den, a.denominator)
        self.nums = tuple(a.numerator * (den // a.denominator) for a in c)
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, nums: tuple, den: int) -> FieldElem:
        g = gcd(den, *nums)
        if g != 1:
            nums = tuple(n // g for n in nums)
            den //= g
        obj = cls.__new__(cls)
        obj.nums = nums
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, q) -> FieldElem:
        q = Fraction(q)
        return cls._make((q.numerator, 0, 0, 0, 0, 0, 0, 0), q.denominator)

    @classmethod
    def radical(cls, k: int, coeff=1) -> FieldElem:
        """coeff * sqrt(k) for a square-free basis radicand k."""
        q = Fraction(coeff)
        nums = [0] * 8
        nums[_INDEX[k]] = q.numerator
        return cls._make(tuple(nums), q.denominator)

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(n, self.den) for n in self.nums)

    # -- predicates ----------------------------------------------------------

    def is_rational(self) -> bool:
        n = self.nums
        return not (n[1] or n[2] or n[3] or n[4] or n[5] or n[6] or n[7])

    def rational_part(self) -> Fraction:
        return Fraction(self.nums[0], self.den)

    def __bool__(self) -> bool:
        return any(self.nums)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.den == other.den and self.nums == other.nums
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.nums[0], self.den))
            else:
                self._hash = hash((self.nums, self.den))
        return self._hash

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: Scalar) -> FieldElem:
        if not isinstance(other, FieldElem):
            if isinstance(other, (int, Fraction)):
                other = FieldElem.rational(other)
            else:
                return NotImplemented
        d1, d2 = self.den, other.den
        if d1 == d2:
            return FieldElem._make(tuple(a + b for a, b in zip(self.nums, other.nums)), d1)
        return FieldElem._make(tuple(a * d2 + b * d1 for a, b in zip(self.nums, other.nums)), d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        obj = FieldElem.__new__(FieldElem)
        obj.nums = tuple(-a for a in self.nums)
        obj.den = self.den
        obj._hash = None
        return obj

    def __pos__(self) -> FieldElem:
        return self

    def __sub__(self, other: Scalar) -> FieldElem:
        if not isinstance(other, FieldElem):
            if isinstance(other, (int, Fraction)):
                other = FieldElem.rational(other)
            else:
                return NotImplemented
        d1, d2 = self.den, other.den
        if d1 == d2:
            return FieldElem._make(tuple(a - b for a, b in zip(self.nums, other.nums)), d1)
        return FieldElem._make(tuple(a * d2 - b * d1 for a, b in zip(self.nums, other.nums)), d1 * d2)

    def __rsub__(self, other: Scalar) -> FieldElem:
        return (-self).__add__(other)

    def __mul__(self, other: Scalar) -> FieldElem:
        if not isinstance(other, FieldElem):
            if isinstance(other, (int, Fraction)):
                q = Fraction(other)
                return FieldElem._make(tuple(a * q.numerator for a in self.nums), self.den * q.denominator)
            return NotImplemented
        xs = [(i, a) for i, a in enumerate(self.nums) if a]
        ys = [(j, b) for j, b in enumerate(other.nums) if b]
        if not xs or not ys:
            return ZERO
        out = [0] * 8
        for i, a in xs:
            row = _TABLE_ROWS[i]
            for j, b in ys:
                k, f = row[j]
                out[k] += a * b * f
        return FieldElem._make(tuple(out), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        """Multiplicative inverse, from the 8x8 system (multiply-by-self) y = 1."""
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        if self.is_rational():
            return FieldElem.rational(Fraction(self.den, self.nums[0]))
        # column j of the multiplication matrix is self * basis_j
        mat = [[Fraction(0)] * 9 for _ in range(8)]
        for i, a in enumerate(self.nums):
            if not a:
                continue
            for j in range(8):
                k, f = MUL_TABLE[i, j]
                mat[k][j] += a * f
        mat[0][8] = Fraction(self.den)
        return FieldElem(_solve_augmented(mat))

    def __truediv__(self, other: Scalar) -> FieldElem:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            q = Fraction(other)
            sgn = -1 if q < 0 else 1
            return FieldElem._make(tuple(a * q.denominator * sgn for a in self.nums), self.den * abs(q.numerator))
        if isinstance(other, FieldElem):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other: Scalar) -> FieldElem:
        return self.inverse() * other

    def __pow__(self, n: int) -> FieldElem:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order ---------------------------------------------------------------

    def sign(self) -> int:
        return sign(self)

    def __lt__(self, other: Scalar) -> bool:
        return sign(self - other) < 0

    def __le__(self, other: Scalar) -> bool:
        return sign(self - other) <= 0

    def __gt__(self, other: Scalar) -> bool:
        return sign(self - other) > 0

    def __ge__(self, other: Scalar) -> bool:
        return sign(self - other) >= 0

    def __abs__(self) -> FieldElem:
        return -self if sign(self) < 0 else self

    def __float__(self) -> float:
        return to_float(self)

    # -- text ----------------------------------------------------------------

    def literal(self) -> str:
        """Render in the literal grammar accepted by :func:`parse`."""
        terms = []
        for k, a in zip(BASIS_RADICANDS, self.coeffs):
            if not a:
                continue
            mag = abs(a)
            if k == 1:
                body = str(mag)
            elif mag == 1:
                body = f"sqrt({k})"
            elif mag.denominator == 1:
                body = f"{mag.numerator}*sqrt({k})"
            elif mag.numerator == 1:
                body = f"sqrt({k})/{mag.denominator}"
            else:
                body = f"{mag.numerator}*sqrt({k})/{mag.denominator}"
            terms.append(("-" if a < 0 else "+", body))
        if not terms:
            return "0"
        s, body = terms[0]
        out = ("-" if s == "-" else "") + body
        for s, body in terms[1:]:
            out += f" {s} {body}"
        return out

    def __str__(self) -> str:
        return self.literal()

    def __repr__(self) -> str:
        return f"FieldElem({self.literal()!r})"


def _solve_augmented(mat: list) -> list:
    """Gauss-Jordan on an n x (n+1) augmented rational matrix (nonsingular)."""
    n = len(mat)
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col])
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = 1 / mat[col][col]
        prow = [v * inv for v in mat[col]]
        mat[col] = prow
        for r in range(n):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [v - f * p for v, p in zip(mat[r], prow)]
    return [mat[r][n] for r in range(n)]


ZERO = FieldElem()
ONE = FieldElem.rational(1)
SQRT2 = FieldElem.radical(2)
SQRT3 = FieldElem.radical(3)
SQRT5 = FieldElem.radical(5)
PHI = (ONE + SQRT5) / 2


def to_field(x) -> FieldElem:
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElem.rational(x)
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"cannot convert {type(x).__name__} to FieldElem")


def sqrt(k: int) -> FieldElem:
    """sqrt(k) for integers k whose square-free part is a basis radicand."""
    if k < 0:
        raise ValueError("negative radicand")
    if k == 0:
        return ZERO
    square = 1
    free = k
    d = 2
    while d * d <= free:
        while free % (d * d) == 0:
            free //= d * d
            square *= d
        d += 1
    if free not in _INDEX:
        raise ValueError(f"sqrt({k}) is outside Q(sqrt2, sqrt3, sqrt5)")
    return FieldElem.radical(free, square)


# -- sign and float evaluation ----------------------------------------------


@lru_cache(maxsize=None)
def _radical_bounds(bits: int) -> tuple:
    # floor(sqrt(k) * 2^bits) for each basis radicand; true value lies in [f, f+1]
    return tuple(isqrt(k << (2 * bits)) for k in BASIS_RADICANDS)


def _interval(x: FieldElem, bits: int) -> tuple:
    """Rational interval [lo, hi] containing x, radicals known to 2^-bits."""
    floors = _radical_bounds(bits)
    lo = hi = 0
    for i, (n, f) in enumerate(zip(x.nums, floors)):
        if not n:
            continue
        if i == 0:
            lo += n << bits
            hi += n << bits
        elif n > 0:
            lo += n * f
            hi += n * (f + 1)
        else:
            lo += n * (f + 1)
            hi += n * f
    scale = x.den << bits
    return Fraction(lo, scale), Fraction(hi, scale)


def sign(x: FieldElem) -> int:
    """Exact sign of x: -1, 0 or +1."""
    if not isinstance(x, FieldElem):
        x = to_field(x)
    if not x:
        return 0
    if x.is_rational():
        return 1 if x.nums[0] > 0 else -1
    bits = 32
    while True:
        lo, hi = _interval(x, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


def to_float(x) -> float:
    """Nearest-binary64 evaluation (error well under 4 ulp)."""
    if not isinstance(x, FieldElem):
        return float(x)
    if not x:
        return 0.0
    if x.is_rational():
        return float(Fraction(x.nums[0], x.den))
    bits = 64
    while True:
        lo, hi = _interval(x, bits)
        if lo > 0 or hi < 0:
            mid = (lo + hi) / 2
            if (hi - lo) * (1 << 60) <= abs(mid):
                return float(mid)
        bits *= 2


# -- literal parsing ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|(phi)|([-+*/()]))")


def parse(text: str) -> FieldElem:
    """Parse a literal such as ``(1+sqrt(5))/2``, ``-3/4``, ``phi*sqrt(2)``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise LiteralError(f"bad character in literal {text!r} at {pos}")
        num, sq, ph, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif sq:
            tokens.append(("sqrt", None))
        elif ph:
            tokens.append(("phi", None))
        else:
            tokens.append((op, None))
        pos = m.end()
    if not tokens:
        raise LiteralError("empty literal")
    parser = _Parser(tokens, text)
    value = parser.expr()
    if parser.i != len(tokens):
        raise LiteralError(f"trailing input in literal {text!r}")
    return value


class _Parser:
    def __init__(self, tokens, text):
        self.tokens = tokens
        self.text = text
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, kind):
        if self.peek() != kind:
            raise LiteralError(f"expected {kind!r} in literal {self.text!r}")
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self) -> FieldElem:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> FieldElem:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take(self.peek())[0]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise LiteralError(f"division by zero in literal {self.text!r}")
                value = value / rhs
        return value

    def unary(self) -> FieldElem:
        if self.peek() == "-":
            self.take("-")
            return -self.unary()
        if self.peek() == "+":
            self.take("+")
            return self.unary()
        return self.atom()

    def atom(self) -> FieldElem:
        kind = self.peek()
        if kind == "num":
            return FieldElem.rational(self.take("num")[1])
        if kind == "phi":
            self.take("phi")
            return PHI
        if kind == "sqrt":
            self.take("sqrt")
            self.take("(")
            k = self.take("num")[1]
            self.take(")")
            if k not in (2, 3, 5, 6, 10, 15, 30):
                raise LiteralError(f"sqrt({k}) not allowed; use 2, 3, 5, 6, 10, 15 or 30")
            return FieldElem.radical(k)
        if kind == "(":
            self.take("(")
            value = self.expr()
            self.take(")")
            return value
        raise LiteralError(f"unexpected token {kind!r} in literal {self.text!r}")
