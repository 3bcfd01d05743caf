"""Linear spaces of quadrics through a vertex set, and the perfectness verdict.

A quadric is F(x) = x^T A x + b^T x + c.  Its coefficient vector follows the
fixed monomial order

    x_i x_j (i <= j, lexicographic),  x_i,  1

so the coefficient of x_i x_j (i < j) is 2 a_ij.  The quadric space of a point
set is the nullspace of the design matrix whose rows are the monomials
evaluated at each point.  In centered mode the points are first translated to
their centroid and the linear monomials are dropped.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .numberfield import FieldElem, ONE, ZERO, to_field
from .polytopes import DegenerateError, VertexSet

FULL = "full"
CENTERED = "centered"


class Verdict(str, enum.Enum):
    PERFECT = "Perfect"
    ALMOST_PERFECT_ONLY = "AlmostPerfectOnly"
    NOT_ALMOST_PERFECT = "NotAlmostPerfect"

    def __str__(self) -> str:
        return self.value


class NotCosphericalError(ValueError):
    """Vertices do not lie on a common sphere about their centroid."""


class IllConditionedWarning(UserWarning):
    pass


def monomials(n: int, mode: str = FULL) -> list[tuple]:
    quad = [(i, j) for i in range(n) for j in range(i, n)]
    lin = [(i,) for i in range(n)] if mode == FULL else []
    return quad + lin + [()]


def monomial_count(n: int, mode: str = FULL) -> int:
    return n * (n + 1) // 2 + (n if mode == FULL else 0) + 1


def design_row(v: Sequence, mode: str = FULL, one=ONE) -> list:
    n = len(v)
    row = [v[i] * v[j] for i in range(n) for j in range(i, n)]
    if mode == FULL:
        row.extend(v)
    row.append(one)
    return row


@dataclass(frozen=True, eq=False)
class Quadric:
    """x^T A x + b^T x + c with A symmetric."""

    A: tuple
    b: tuple
    c: object

    def __post_init__(self):
        n = len(self.A)
        if len(self.b) != n or any(len(r) != n for r in self.A):
            raise ValueError("inconsistent quadric shapes")
        if any(self.A[i][j] != self.A[j][i] for i in range(n) for j in range(i + 1, n)):
            raise ValueError("quadric matrix must be symmetric")
        if not (any(x for r in self.A for x in r) or any(self.b) or self.c):
            raise ValueError("the zero polynomial is not a quadric")

    @property
    def dim(self) -> int:
        return len(self.A)

    def __call__(self, x: Sequence):
        n = self.dim
        acc = self.c
        for i in range(n):
            if self.b[i] and x[i]:
                acc = acc + self.b[i] * x[i]
            for j in range(n):
                a = self.A[i][j]
                if a and x[i] and x[j]:
                    acc = acc + a * x[i] * x[j]
        return acc

    def vector(self, mode: str = FULL) -> list:
        """Coefficient vector in the fixed monomial order."""
        n = self.dim
        vec = [self.A[i][i] if i == j else self.A[i][j] * 2 for i in range(n) for j in range(i, n)]
        if mode == FULL:
            vec.extend(self.b)
        elif any(self.b):
            raise ValueError("quadric has linear terms; not expressible in centered mode")
        vec.append(self.c)
        return vec

    @classmethod
    def from_vector(cls, vec: Sequence, n: int, mode: str = FULL) -> Quadric:
        vec = list(vec)
        exact = all(isinstance(x, (FieldElem, int, Fraction)) for x in vec)
        zero = ZERO if exact else 0.0
        A = [[zero] * n for _ in range(n)]
        k = 0
        for i in range(n):
            for j in range(i, n):
                x = to_field(vec[k]) if exact else float(vec[k])
                if i == j:
                    A[i][i] = x
                else:
                    A[i][j] = A[j][i] = x / 2
                k += 1
        if mode == FULL:
            b = [to_field(x) if exact else float(x) for x in vec[k : k + n]]
            k += n
        else:
            b = [zero] * n
        c = to_field(vec[k]) if exact else float(vec[k])
        return cls(tuple(map(tuple, A)), tuple(b), c)

    def translated(self, shift: Sequence) -> Quadric:
        """The quadric G(x) = F(x - shift)."""
        n = self.dim
        As = linalg.matvec(self.A, shift)
        b = tuple(self.b[i] - 2 * As[i] for i in range(n))
        c = self.c + linalg.dot(shift, As) - linalg.dot(self.b, shift)
        return Quadric(self.A, b, c)

    def to_text(self, names: Sequence[str] | None = None) -> str:
        n = self.dim
        names = list(names) if names is not None else default_names(n)
        terms = []
        for coef, mono in zip(self.vector(FULL), monomials(n, FULL)):
            if not coef:
                continue
            if len(mono) == 2:
                i, j = mono
                body = f"{names[i]}^2" if i == j else f"{names[i]}*{names[j]}"
            elif len(mono) == 1:
                body = names[mono[0]]
            else:
                body = ""
            terms.append(_term(coef, body))
        if not terms:
            return "0"
        text = terms[0]
        if text.startswith("+ "):
            text = text[2:]
        elif text.startswith("- "):
            text = "-" + text[2:]
        return " ".join([text] + terms[1:])


def default_names(n: int) -> list[str]:
    return ["x", "y", "z"][:n] if n <= 3 else [f"x{i + 1}" for i in range(n)]


def _term(coef, body: str) -> str:
    if isinstance(coef, FieldElem):
        neg = coef.sign() < 0
        mag = -coef if neg else coef
        lit = mag.literal()
        if mag == 1 and body:
            text = body
        else:
            if " " in lit:
                lit = f"({lit})"
            text = f"{lit}*{body}" if body else lit
    else:
        neg = coef < 0
        mag = abs(coef)
        text = f"{mag:.17g}*{body}" if body else f"{mag:.17g}"
    return ("- " if neg else "+ ") + text


@dataclass(eq=False)
class QuadricSpace:
    """Basis of the quadrics vanishing on a point set (in its own coordinates)."""

    dim_ambient: int
    mode: str
    basis: tuple
    dimension: int
    design_rank: int
    source: VertexSet
    exact: bool = True
    singular_values: tuple = ()
    singular_gap: float | None = None

    @property
    def monomial_count(self) -> int:
        return monomial_count(self.dim_ambient, self.mode)

    def contains(self, q: Quadric) -> bool:
        """Exact linear-dependence test of q on the basis (full coefficients)."""
        if not self.exact:
            raise ValueError("membership is only decided for exact spaces")
        rows = [b.vector(FULL) for b in self.basis]
        base_rank = linalg.rank(rows, len(rows[0])) if rows else 0
        return linalg.rank(rows + [q.vector(FULL)]) == base_rank


def _check_nondegenerate(V: VertexSet) -> None:
    if V.dim == 0 or V.affine_rank() < V.dim:
        raise DegenerateError(
            f"{V.name}: affine span has dimension {V.affine_rank()} < {V.dim}; restrict it first"
        )


def quadric_space(V: VertexSet, mode: str = FULL) -> QuadricSpace:
    """Exact space of quadrics through the vertices of V.

    Basis quadrics are expressed in V's own coordinates in both modes; in
    centered mode they are symmetric about the centroid.
    """
    if mode not in (FULL, CENTERED):
        raise ValueError(f"unknown mode {mode!r}")
    if not V.exact:
        raise ValueError("float vertex sets go through quadric_space_float")
    _check_nondegenerate(V)
    n = V.dim
    ncols = monomial_count(n, mode)
    shift = V.center if mode == CENTERED else (ZERO,) * n
    pts = [tuple(a - s for a, s in zip(v, shift)) for v in V.vertices]
    rows = [design_row(p, mode) for p in pts]
    # a cospherical set has the sphere as a solution, so rank <= ncols - 1 and
    # elimination may stop as soon as that rank is reached
    null, rnk = linalg.nullspace(rows, ncols, stop_at=ncols - 1 if V.is_cospherical() else None)
    basis = []
    neg_shift = tuple(-s for s in shift)
    for vec in null:
        q = Quadric.from_vector(vec, n, mode)
        if mode == CENTERED:
            q = q.translated(neg_shift)
        basis.append(q)
    return QuadricSpace(n, mode, tuple(basis), len(basis), rnk, V)


def quadric_space_float(V: VertexSet, mode: str = FULL, tol: float = 1e-9) -> QuadricSpace:
    """Numerical quadric space from the singular values of the design matrix."""
    if mode not in (FULL, CENTERED):
        raise ValueError(f"unknown mode {mode!r}")
    Vf = V.to_float()
    X = np.array(Vf.vertices, dtype=float)
    n = X.shape[1]
    if np.linalg.matrix_rank(X - X.mean(axis=0)) < n:
        raise DegenerateError(f"{V.name}: vertices span a proper affine subspace")
    shift = X.mean(axis=0) if mode == CENTERED else np.zeros(n)
    P = X - shift
    D = np.array([design_row(list(p), mode, one=1.0) for p in P], dtype=float)
    rows, cols = D.shape
    _, s, vt = np.linalg.svd(D, full_matrices=True)
    thresh = tol * (s[0] if len(s) else 0.0) * max(rows, cols)
    keep = int(np.sum(s >= thresh))
    dropped = s[keep:]
    if keep == 0:
        gap = 0.0
    elif len(dropped) == 0 or dropped[0] == 0.0:
        gap = float("inf")
    else:
        gap = float(s[keep - 1] / dropped[0])
    if gap < 1e3:
        warnings.warn(f"{V.name}: singular-value gap {gap:.3g} is below 1e3", IllConditionedWarning)
    basis = []
    for vec in vt[keep:]:
        q = Quadric.from_vector([float(x) for x in vec], n, mode)
        if mode == CENTERED:
            q = _float_translate(q, -shift)
        basis.append(q)
    return QuadricSpace(
        n, mode, tuple(basis), cols - keep, keep, V, exact=False, singular_values=tuple(map(float, s)), singular_gap=gap
    )


def _float_translate(q: Quadric, shift) -> Quadric:
    A = np.array(q.A, dtype=float)
    b = np.array(q.b, dtype=float)
    As = A @ shift
    nb = b - 2 * As
    c = float(q.c + shift @ As - b @ shift)
    return Quadric(q.A, tuple(map(float, nb)), c)


def sphere_quadric(V: VertexSet) -> Quadric:
    """The circumscribed sphere (x-c)^T G (x-c) - r^2 in V's chart."""
    if not V.exact:
        raise ValueError("sphere_quadric needs exact input")
    if not V.is_cospherical():
        raise NotCosphericalError(f"{V.name}: vertices are not on a common sphere about the centroid")
    n = V.dim
    G = V.gram if V.gram is not None else tuple(map(tuple, linalg.identity(n)))
    c = V.center
    r2 = V.squared_radii()[0]
    Gc = linalg.matvec(G, c)
    b = tuple(-2 * x for x in Gc)
    const = linalg.dot(c, Gc) - r2
    return Quadric(tuple(tuple(row) for row in G), b, const)


@dataclass
class Classification:
    name: str
    dim: int
    n_vertices: int
    exact: bool
    d_full: int
    d_centered: int
    verdict: Verdict
    full: QuadricSpace = field(repr=False)
    centered: QuadricSpace = field(repr=False)

    @property
    def exactness(self) -> str:
        return "exact" if self.exact else "float"


def verdict_from_dims(d_full: int, d_centered: int) -> Verdict:
    if d_full == 1:
        return Verdict.PERFECT
    if d_centered == 1:
        return Verdict.ALMOST_PERFECT_ONLY
    return Verdict.NOT_ALMOST_PERFECT


def classify(V: VertexSet, tol: float = 1e-9) -> Classification:
    """Perfect iff d_full = 1; almost perfect only iff d_centered = 1 < d_full."""
    if not V.is_cospherical():
        raise NotCosphericalError(f"{V.name}: vertices are not on a common sphere about the centroid")
    if V.exact:
        full = quadric_space(V, FULL)
        centered = quadric_space(V, CENTERED)
    else:
        full = quadric_space_float(V, FULL, tol)
        centered = quadric_space_float(V, CENTERED, tol)
    return Classification(
        V.name,
        V.dim,
        len(V),
        V.exact,
        full.dimension,
        centered.dimension,
        verdict_from_dims(full.dimension, centered.dimension),
        full,
        centered,
    )


def _coef_dot(u: Sequence, v: Sequence):
    return linalg.dot(u, v)


def witness_quadric(S: QuadricSpace, sphere: Quadric) -> Quadric | None:
    """A quadric of S independent of the sphere, or None if S is just the sphere.

    The first basis element not proportional to the sphere is made orthogonal
    to it (in coefficient space) and checked to vanish on every vertex.
    """
    if not S.exact:
        raise ValueError("witness_quadric needs an exact space")
    if S.dimension <= 1:
        return None
    s = sphere.vector(FULL)
    ss = _coef_dot(s, s)
    for q in S.basis:
        v = q.vector(FULL)
        lam = _coef_dot(v, s) / ss
        w = [a - lam * b for a, b in zip(v, s)]
        if any(w):
            wq = Quadric.from_vector(w, S.dim_ambient, FULL)
            if any(wq(p) for p in S.source.vertices):
                raise AssertionError("witness does not vanish on the vertex set")
            return wq
    return None


def family_basis(S: QuadricSpace) -> list[Quadric]:
    """Sphere first (when it belongs to S), then a complement orthogonal to it."""
    if not S.exact:
        return list(S.basis)
    try:
        sphere = sphere_quadric(S.source)
    except NotCosphericalError:
        return list(S.basis)
    s = sphere.vector(FULL)
    ss = _coef_dot(s, s)
    ech = linalg.Echelon(len(s))
    ech.add_row(list(s))
    out = [sphere]
    for q in S.basis:
        v = q.vector(FULL)
        lam = _coef_dot(v, s) / ss
        w = [a - lam * b for a, b in zip(v, s)]
        if any(w) and ech.add_row(list(w)):
            out.append(Quadric.from_vector(w, S.dim_ambient, FULL))
    return out


def family_description(S: QuadricSpace, names: Sequence[str] | None = None) -> str:
    """Parametric form t1*(Q1) + t2*(Q2) + ... = 0 of the quadric family."""
    quads = family_basis(S)
    parts = [f"t{i + 1}*({q.to_text(names)})" for i, q in enumerate(quads)]
    return " + ".join(parts) + " = 0"
