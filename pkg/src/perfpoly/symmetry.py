"""Side checks from the symmetry group: transitivity, irreducibility, ellipsoid families.

Everything is decided from generators alone.  A symmetric matrix S with
g^T S g = S for every generator is invariant under the whole generated group,
so the space of such S (the symmetric commutant) is computed from a handful
of linear equations even for the Weyl group of E8.

Charts with a Gram matrix H are handled throughout: generators satisfy
g^T H g = H and H itself plays the role of the identity in the commutant.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .numberfield import FieldElem, ONE, PHI, SQRT2, ZERO, parse, sqrt, to_field
from .polytopes import (
    Chart,
    GeneratorSet,
    NotInvariantError,
    NotOrthogonalError,
    VertexSet,
    quaternion_mul,
)
from .quadrics import Quadric

Matrix = tuple


class IrreducibleError(ValueError):
    """The symmetric commutant is one-dimensional: no ellipsoid family to split off."""


class EigenvalueOutsideField(ArithmeticError):
    """A non-scalar invariant exists but its eigenvalues leave Q(sqrt2, sqrt3, sqrt5).

    ``invariant`` is the invariant symmetric matrix and ``quadric`` the
    invariant quadric x^T S x = v^T S v through the orbit; both still
    certify reducibility.
    """

    def __init__(self, message: str, invariant, quadric: Quadric):
        super().__init__(message)
        self.invariant = invariant
        self.quadric = quadric


@dataclass(frozen=True)
class CommutantSpace:
    dim_ambient: int
    basis: tuple
    dimension: int

    @property
    def irreducible(self) -> bool:
        return self.dimension == 1


# -- small matrix helpers ----------------------------------------------------


def _mat(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(to_field(x) for x in r) for r in rows)


def _gram(G: GeneratorSet) -> Matrix:
    return G.gram if G.gram is not None else _mat(linalg.identity(G.dim))


def _is_scalar_multiple(S: Sequence[Sequence], H: Sequence[Sequence]) -> bool:
    n = len(H)
    ratio = None
    for i in range(n):
        for j in range(n):
            if H[i][j]:
                r = S[i][j] / H[i][j]
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    return False
            elif S[i][j]:
                return False
    return True


def _check_orthogonal(G: GeneratorSet) -> None:
    H = _gram(G)
    for g in G.generators:
        gtg = linalg.matmul(linalg.transpose(g), linalg.matmul(H, g))
        if any(gtg[i][j] != H[i][j] for i in range(G.dim) for j in range(G.dim)):
            raise NotOrthogonalError("generator does not preserve the chart metric")


# -- the four operations -------------------------------------------------------


def vertex_permutation(g, V: VertexSet) -> list[int]:
    """Index permutation induced by ``g`` on V; raises if g does not permute V."""
    idx = V.index
    perm = []
    for v in V.vertices:
        w = tuple(linalg.matvec(g, v))
        j = idx.get(w)
        if j is None:
            raise NotInvariantError(f"generator maps a vertex of {V.name} outside the set")
        perm.append(j)
    return perm


def is_vertex_transitive(G: GeneratorSet, V: VertexSet) -> bool:
    """Orbit closure of vertex 0 on indices, after checking every generator permutes V."""
    if not V.exact:
        raise ValueError("transitivity is checked on exact vertex sets")
    if G.dim != V.dim:
        raise ValueError("generator and vertex dimensions differ")
    perms = [vertex_permutation(g, V) for g in G.generators]
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for p in perms:
            j = p[i]
            if j not in seen:
                seen.add(j)
                frontier.append(j)
    return len(seen) == len(V)


def _sym_unknowns(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def symmetric_commutant(G: GeneratorSet) -> CommutantSpace:
    """All symmetric S with g^T S g = S for every generator, exactly."""
    _check_orthogonal(G)
    n = G.dim
    unknowns = _sym_unknowns(n)
    col = {u: k for k, u in enumerate(unknowns)}
    rows = []
    for g in G.generators:
        for k, l in unknowns:
            row = [ZERO] * len(unknowns)
            for (i, j), u in col.items():
                if i == j:
                    coef = g[i][k] * g[i][l]
                else:
                    coef = g[i][k] * g[j][l] + g[j][k] * g[i][l]
                if coef:
                    row[u] = row[u] + coef
            row[col[(k, l)]] = row[col[(k, l)]] - 1
            if any(row):
                rows.append(row)
    if rows:
        basis_vecs, rank = linalg.nullspace(rows, len(unknowns))
    else:
        basis_vecs = [[ONE if k == u else ZERO for k in range(len(unknowns))] for u in range(len(unknowns))]
    basis = []
    for vec in basis_vecs:
        S = [[ZERO] * n for _ in range(n)]
        for (i, j), x in zip(unknowns, vec):
            S[i][j] = S[j][i] = x
        basis.append(_mat(S))
    return CommutantSpace(n, tuple(basis), len(basis))


def commutative_subgroup_check(G: GeneratorSet) -> bool:
    gens = G.generators
    for a, b in itertools.combinations(gens, 2):
        if linalg.matmul(a, b) != linalg.matmul(b, a):
            return False
    return True


def _to_sympy(x: FieldElem):
    import sympy

    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.sqrt(k) for c, k in zip(x.coeffs, (1, 2, 3, 5, 6, 10, 15, 30)) if c)


def _from_sympy(expr) -> FieldElem | None:
    """Field element equal to a sympy expression built from square roots, or None."""
    import sympy

    acc = ZERO
    for term, coef in sympy.expand(expr).as_coefficients_dict().items():
        if not coef.is_Rational:
            return None
        c = Fraction(int(coef.p), int(coef.q))
        if term == 1:
            acc = acc + c
        elif term.is_Pow and term.exp == sympy.Rational(1, 2) and term.base.is_Integer and term.base > 0:
            try:
                acc = acc + sqrt(int(term.base)) * c
            except ValueError:
                return None
        else:
            return None
    return acc


def field_eigenvalues(T: Sequence[Sequence]) -> list[FieldElem] | None:
    """Distinct eigenvalues of T if all lie in the field (None otherwise).

    T is assumed diagonalizable over the reals, which holds for the
    self-adjoint operators built here.
    """
    import sympy

    x = sympy.Symbol("x")
    M = sympy.Matrix([[_to_sympy(to_field(a)) for a in row] for row in T])
    poly = sympy.expand(M.charpoly(x).as_expr())
    ext = [sympy.sqrt(2), sympy.sqrt(3), sympy.sqrt(5)]
    _, factors = sympy.factor_list(poly, x, extension=ext)
    roots = []
    for f, _mult in factors:
        p = sympy.Poly(f, x)
        if p.degree() != 1:
            return None
        a, b = p.all_coeffs()
        r = _from_sympy(-b / a)
        if r is None:
            return None
        if r not in roots:
            roots.append(r)
    return sorted(roots)


def _orbit_quadric(S, v0: Sequence, n: int) -> Quadric:
    return Quadric(S, tuple(ZERO for _ in range(n)), -linalg.bilinear(v0, S, v0))


def reducible_ellipsoid_family(G: GeneratorSet, V: VertexSet) -> list[Quadric]:
    """Block quadrics |P_i x|^2 - r_i^2 from the eigenspaces of an invariant form.

    Any combination sum_i a_i q_i vanishes on V; the sphere is the combination
    with all a_i equal.  Raises IrreducibleError if the commutant is scalar,
    EigenvalueOutsideField if the splitting needs a larger field.
    """
    if not V.exact:
        raise ValueError("ellipsoid families need an exact orbit")
    if any(x for x in V.center):
        raise ValueError("the orbit must be centered at the origin")
    C = symmetric_commutant(G)
    H = _gram(G)
    nonscalar = [B for B in C.basis if not _is_scalar_multiple(B, H)]
    if not nonscalar:
        raise IrreducibleError(f"{G.name or 'group'} acts irreducibly (commutant dimension {C.dimension})")
    n = G.dim
    v0 = V.vertices[0]
    Hinv = linalg.inverse(H)
    # a generic combination of the basis splits as finely as possible; single
    # basis elements are the fallback when its eigenvalues leave the field
    generic = [[sum((B[i][j] * 3**k for k, B in enumerate(C.basis)), ZERO) for j in range(n)] for i in range(n)]
    eig = None
    for S in [generic] + nonscalar:
        T = linalg.matmul(Hinv, S)
        eig = field_eigenvalues(T)
        if eig is not None and len(eig) > 1:
            break
    if eig is None:
        S = nonscalar[0]
        q = _orbit_quadric(S, v0, n)
        _verify_on(q, V)
        raise EigenvalueOutsideField("eigenvalues of the invariant operator are not in the field", _mat(S), q)
    I = linalg.identity(n)
    out = []
    for lam in eig:
        P = I
        for mu in eig:
            if mu != lam:
                factor = [[(T[i][j] - (mu if i == j else ZERO)) / (lam - mu) for j in range(n)] for i in range(n)]
                P = linalg.matmul(P, factor)
        A = _mat(linalg.matmul(linalg.transpose(P), linalg.matmul(H, P)))
        pv = linalg.matvec(P, v0)
        q = Quadric(A, tuple(ZERO for _ in range(n)), -linalg.bilinear(pv, H, pv))
        _verify_on(q, V)
        out.append(q)
    return out


def _verify_on(q: Quadric, V: VertexSet) -> None:
    for v in V.vertices:
        if q(v):
            raise AssertionError("family quadric does not vanish on the orbit")


# -- generator catalog -----------------------------------------------------------


def _diag(entries) -> Matrix:
    n = len(entries)
    return _mat([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def permutation_matrix(perm: Sequence[int], signs: Sequence[int] | None = None) -> Matrix:
    """Matrix sending e_i to signs[i] * e_perm[i]."""
    n = len(perm)
    signs = signs or [1] * n
    m = [[0] * n for _ in range(n)]
    for i, p in enumerate(perm):
        m[p][i] = signs[i]
    return _mat(m)


def diagonal_flips(n: int) -> GeneratorSet:
    """Z_2^n: one sign flip per coordinate."""
    return GeneratorSet(n, tuple(_diag([-1 if j == i else 1 for j in range(n)]) for i in range(n)), f"flips:{n}")


def even_flips(n: int) -> GeneratorSet:
    """Sign flips of coordinate pairs (0, i); they generate all even flips."""
    if n < 2:
        raise ValueError("even flips need n >= 2")
    gens = tuple(_diag([-1 if j in (0, i) else 1 for j in range(n)]) for i in range(1, n))
    return GeneratorSet(n, gens, f"even-flips:{n}")


def signed_permutations(n: int) -> GeneratorSet:
    """Hyperoctahedral group: one sign flip, a transposition and an n-cycle."""
    gens = [_diag([-1] + [1] * (n - 1))]
    if n >= 2:
        gens.append(permutation_matrix([1, 0] + list(range(2, n))))
    if n >= 3:
        gens.append(permutation_matrix([(i + 1) % n for i in range(n)]))
    return GeneratorSet(n, tuple(gens), f"signed-perms:{n}")


def linear_map_from_images(V: VertexSet, images: Sequence[int]) -> Matrix:
    """The linear map sending vertex i to vertex images[i], if one exists.

    Solved on an independent subset of vertices and then checked on all of them.
    """
    n = V.dim
    ech = linalg.Echelon(n)
    chosen = []
    for i, v in enumerate(V.vertices):
        if ech.add_row(list(v)):
            chosen.append(i)
        if len(chosen) == n:
            break
    if len(chosen) < n:
        raise ValueError("vertices do not span the chart")
    src = [list(V.vertices[i]) for i in chosen]
    dst = [list(V.vertices[images[i]]) for i in chosen]
    # M src_i = dst_i  <=>  src^T M^T = dst^T
    inv = linalg.inverse(src)
    mt = linalg.matmul(inv, dst)
    M = _mat(linalg.transpose(mt))
    for i, v in enumerate(V.vertices):
        if tuple(linalg.matvec(M, v)) != V.vertices[images[i]]:
            raise NotInvariantError("vertex permutation is not induced by a linear map")
    return M


def polygon_rotation(V: VertexSet) -> GeneratorSet:
    """Rotation by one step for a polygon listed in cyclic order."""
    m = len(V)
    g = linear_map_from_images(V, [(i + 1) % m for i in range(m)])
    return GeneratorSet(2, (g,), f"rotation:{m}", V.gram)


def simplex_symmetries(V: VertexSet) -> GeneratorSet:
    """A transposition and an (n+1)-cycle of the simplex vertices."""
    k = len(V)
    swap = [1, 0] + list(range(2, k))
    cycle = [(i + 1) % k for i in range(k)]
    gens = (linear_map_from_images(V, swap), linear_map_from_images(V, cycle))
    return GeneratorSet(V.dim, gens, f"sym:{k}", V.gram)


def tetra_example_pair(V: VertexSet) -> GeneratorSet:
    """The two commuting involutions (B1B2)(B3B4) and (B1B3)(B2B4)."""
    g1 = linear_map_from_images(V, [1, 0, 3, 2])
    g2 = linear_map_from_images(V, [2, 3, 0, 1])
    return GeneratorSet(3, (g1, g2), "tetra-pair")


def reflection(u: Sequence, gram: Sequence[Sequence] | None = None) -> Matrix:
    """x -> x - 2 <x,u>/<u,u> u in the metric ``gram``."""
    n = len(u)
    u = [to_field(x) for x in u]
    H = gram if gram is not None else linalg.identity(n)
    Hu = linalg.matvec(H, u)
    uu = linalg.dot(u, Hu)
    return _mat([[(ONE if i == j else ZERO) - 2 * u[i] * Hu[j] / uu for j in range(n)] for i in range(n)])


def edge_reflection(V: VertexSet, i: int = 0) -> Matrix:
    """Mirror swapping vertex i with a nearest neighbour (a symmetry of any regular polytope)."""
    v = V.vertices[i]
    others = [w for w in V.vertices if w != v]
    w = min(others, key=lambda u: V.sqdist(u, v))
    return reflection([a - b for a, b in zip(v, w)], V.gram)


def h3_generators(V: VertexSet) -> GeneratorSet:
    """Pyritohedral flips and cyclic shift plus one edge mirror of V.

    The pyritohedral group has prime index 5 in the icosahedral group, so any
    extra symmetry generates all of it.
    """
    flip = _diag([-1, 1, 1])
    cyc = permutation_matrix([1, 2, 0])
    return GeneratorSet(3, (flip, cyc, edge_reflection(V)), f"H3({V.name})")


def left_mult(q: Sequence) -> Matrix:
    cols = [quaternion_mul(q, tuple(ONE if k == i else ZERO for k in range(4))) for i in range(4)]
    return _mat(linalg.transpose(cols))


def right_mult(q: Sequence) -> Matrix:
    cols = [quaternion_mul(tuple(ONE if k == i else ZERO for k in range(4)), q) for i in range(4)]
    return _mat(linalg.transpose(cols))


_I = (ZERO, ONE, ZERO, ZERO)
_OMEGA = (ONE / 2,) * 4
# (phi + i/phi + j)/2, an element of order 10 generating BI together with i
_BI_GEN = (PHI / 2, 1 / (2 * PHI), ONE / 2, ZERO)
_BO_GEN = (SQRT2 / 2, SQRT2 / 2, ZERO, ZERO)


def bt_left() -> GeneratorSet:
    return GeneratorSet(4, (left_mult(_I), left_mult(_OMEGA)), "BT-left")


def bi_left() -> GeneratorSet:
    return GeneratorSet(4, (left_mult(_I), left_mult(_BI_GEN)), "BI-left")


def bo_left() -> GeneratorSet:
    return GeneratorSet(4, (left_mult(_I), left_mult(_OMEGA), left_mult(_BO_GEN)), "BO-left")


def bi_left_right() -> GeneratorSet:
    gens = tuple(f(q) for q in (_I, _BI_GEN) for f in (left_mult, right_mult))
    return GeneratorSet(4, gens, "BI-left-right")


def simple_roots(roots: Sequence[Sequence]) -> list:
    """A simple system: positive roots (for a fixed generic functional) that are not sums of two."""
    n = len(roots[0])
    weights = [2**k for k in range(n)]

    def level(r):
        return linalg.dot(r, weights)

    positive = [tuple(r) for r in roots if level(r) > 0]
    pos_set = set(positive)
    out = []
    for r in positive:
        decomposable = any(
            tuple(a - b for a, b in zip(r, s)) in pos_set for s in positive if s != r
        )
        if not decomposable:
            out.append(r)
    return sorted(out, key=level)


def e8_weyl() -> GeneratorSet:
    from .polytopes import e8_roots

    simple = simple_roots(e8_roots().vertices)
    return GeneratorSet(8, tuple(reflection(a) for a in simple), "W(E8)")


def section_weyl(k: int) -> GeneratorSet:
    """Reflections in the simple roots orthogonal to the first k E8 anchors (ambient R^8)."""
    from .polytopes import E8_ANCHORS, e8_roots

    anchors = E8_ANCHORS[:k]
    roots = [r for r in e8_roots().vertices if all(not linalg.dot(r, a) for a in anchors)]
    simple = simple_roots(roots)
    return GeneratorSet(8, tuple(reflection(a) for a in simple), f"W(E8 fixing {k} anchors)")


def restrict_generators(G: GeneratorSet, chart: Chart, name: str | None = None) -> GeneratorSet:
    """Express generators in an affine chart; each must fix the chart origin and span."""
    H = _gram(G)
    for g in G.generators:
        if tuple(linalg.matvec(g, chart.origin)) != tuple(chart.origin):
            raise NotInvariantError("generator moves the chart origin")
    basis = [list(b) for b in chart.basis]
    k = len(basis)
    HB = [linalg.matvec(H, b) for b in basis]
    ginv = linalg.inverse(chart.gram)
    out = []
    for g in G.generators:
        cols = []
        for b in basis:
            gb = linalg.matvec(g, b)
            t = linalg.matvec(ginv, [linalg.dot(hb, gb) for hb in HB])
            back = [sum((t[i] * basis[i][c] for i in range(k)), ZERO) for c in range(len(gb))]
            if any(x != y for x, y in zip(back, gb)):
                raise NotInvariantError("generator does not preserve the chart's span")
            cols.append(t)
        out.append(_mat(linalg.transpose(cols)))
    return GeneratorSet(k, tuple(out), name or G.name, chart.gram)


def prism_generators(base: GeneratorSet) -> GeneratorSet:
    """base (+) 1 together with the flip of the prism axis."""
    n = base.dim

    def extend(g, last):
        return _mat([list(g[i]) + [0] for i in range(n)] + [[0] * n + [last]])

    I = linalg.identity(n)
    gens = tuple(extend(g, 1) for g in base.generators) + (extend(I, -1),)
    gram = None
    if base.gram is not None:
        gram = _mat([list(base.gram[i]) + [0] for i in range(n)] + [[0] * n + [1]])
    return GeneratorSet(n + 1, gens, f"prism({base.name})", gram)


# -- generator files ---------------------------------------------------------------


def read_generator_text(text: str, name: str = "file") -> GeneratorSet:
    """Header ``dim n``, then matrices of field literals separated by blank lines.

    A block introduced by a line ``gram`` gives the chart metric; without it
    the chart is Euclidean.
    """
    lines = [ln.split("#", 1)[0].rstrip() for ln in text.splitlines()]
    while lines and not lines[0].strip():
        lines.pop(0)
    if not lines:
        raise ValueError("empty generator file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim":
        raise ValueError("generator file header must be 'dim <n>'")
    n = int(head[1])
    blocks, cur, gram_next = [], [], False
    labels = []
    for ln in lines[1:]:
        if ln.strip() == "gram":
            if cur:
                blocks.append(cur)
                labels.append(gram_next)
                cur = []
            gram_next = True
        elif ln.strip():
            cur.append([parse(tok) for tok in ln.split()])
        elif cur:
            blocks.append(cur)
            labels.append(gram_next)
            cur, gram_next = [], False
    if cur:
        blocks.append(cur)
        labels.append(gram_next)
    gens, gram = [], None
    for b, is_gram in zip(blocks, labels):
        if len(b) != n or any(len(r) != n for r in b):
            raise ValueError(f"matrix block is not {n}x{n}")
        if is_gram:
            gram = _mat(b)
        else:
            gens.append(_mat(b))
    if not gens:
        raise ValueError("no generators in file")
    return GeneratorSet(n, tuple(gens), name, gram)


def read_generator_file(path: str) -> GeneratorSet:
    with open(path, encoding="utf-8") as fh:
        return read_generator_text(fh.read(), name=path)


def _format_block(m) -> str:
    return "\n".join(" ".join(x.literal().replace(" ", "") for x in row) for row in m)


def format_generator_text(G: GeneratorSet) -> str:
    parts = [f"dim {G.dim}"]
    if G.gram is not None:
        parts.append("gram\n" + _format_block(G.gram))
    parts.extend(_format_block(g) for g in G.generators)
    return "\n\n".join(parts) + "\n"
