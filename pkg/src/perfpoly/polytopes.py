"""Exact vertex sets of the homogeneous polytopes in the catalog.

A :class:`VertexSet` holds coordinates in some affine chart.  When the chart is
not orthonormal (regular pentagon, simplices, Gosset sections of E8) the chart
Gram matrix is carried along so that distances and spheres stay exact without
leaving Q(sqrt2, sqrt3, sqrt5).
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .numberfield import (
    FieldElem,
    ONE,
    PHI,
    SQRT2,
    SQRT3,
    SQRT5,
    ZERO,
    parse,
    to_field,
    to_float,
)

Vector = tuple


class DegenerateError(ValueError):
    """The vertex set spans a proper affine subspace of its ambient space."""


class NotInvariantError(ValueError):
    """A generator does not map the vertex set onto itself."""


class NotOrthogonalError(ValueError):
    """A generator fails g^T G g = G exactly."""


class OrbitCapExceeded(RuntimeError):
    pass


class CubeSearchBudgetExceeded(RuntimeError):
    pass


def _vec(xs: Iterable) -> Vector:
    return tuple(to_field(x) for x in xs)


def _sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def _add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _scale(u: Sequence, s) -> Vector:
    return tuple(a * s for a in u)


@dataclass(frozen=True, eq=False)
class VertexSet:
    """Finite point configuration with exact (or float-tagged) coordinates.

    ``gram`` is the metric of the coordinate chart; ``None`` means the
    standard Euclidean inner product.
    """

    name: str
    vertices: tuple
    exact: bool = True
    gram: tuple | None = None

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("empty vertex set")
        n = len(self.vertices[0])
        if any(len(v) != n for v in self.vertices):
            raise ValueError("vertices have mixed dimensions")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"{self.name}: vertices are not distinct")

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def exactness(self) -> str:
        return "exact" if self.exact else "float"

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @cached_property
    def center(self) -> Vector:
        q = len(self.vertices)
        if self.exact:
            acc = [ZERO] * self.dim
            for v in self.vertices:
                acc = [a + x for a, x in zip(acc, v)]
            return tuple(a / q for a in acc)
        return tuple(math.fsum(col) / q for col in zip(*self.vertices))

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def inner(self, u: Sequence, v: Sequence):
        if self.exact:
            return linalg.bilinear(u, self.gram, v)
        g = self.gram
        if g is None:
            return math.fsum(a * b for a, b in zip(u, v))
        return math.fsum(u[i] * g[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))

    def sqdist(self, u: Sequence, v: Sequence):
        d = _sub(u, v)
        return self.inner(d, d)

    def squared_radii(self) -> list:
        c = self.center
        return [self.sqdist(v, c) for v in self.vertices]

    def is_cospherical(self) -> bool:
        radii = self.squared_radii()
        if self.exact:
            return all(r == radii[0] for r in radii)
        return max(radii) - min(radii) <= 1e-9 * max(radii)

    def circumradius_sq(self):
        if not self.is_cospherical():
            raise ValueError(f"{self.name}: vertices are not on a common sphere about the centroid")
        return self.squared_radii()[0]

    def affine_rank(self) -> int:
        c = self.center
        diffs = [_sub(v, c) for v in self.vertices]
        if self.exact:
            return linalg.rank(diffs, self.dim)
        import numpy as np

        return int(np.linalg.matrix_rank(np.array(diffs, dtype=float)))

    def to_float(self) -> VertexSet:
        if not self.exact:
            return self
        verts = tuple(tuple(to_float(x) for x in v) for v in self.vertices)
        gram = None if self.gram is None else tuple(tuple(to_float(x) for x in row) for row in self.gram)
        return VertexSet(self.name, verts, exact=False, gram=gram)

    def float_array(self):
        import numpy as np

        return np.array(self.to_float().vertices, dtype=float)

    def float_gram(self):
        import numpy as np

        if self.gram is None:
            return np.eye(self.dim)
        return np.array([[to_float(x) for x in row] for row in self.gram], dtype=float)

    def renamed(self, name: str) -> VertexSet:
        return VertexSet(name, self.vertices, self.exact, self.gram)


@dataclass(frozen=True)
class Chart:
    """Affine chart x = origin + sum_i t_i basis_i, with Gram matrix of the basis."""

    origin: Vector
    basis: tuple
    gram: tuple


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    """Generators of a finite group acting isometrically on a chart."""

    dim: int
    generators: tuple
    name: str = ""
    gram: tuple | None = None

    def __post_init__(self):
        G = self.gram if self.gram is not None else linalg.identity(self.dim)
        for g in self.generators:
            if len(g) != self.dim or any(len(row) != self.dim for row in g):
                raise ValueError("generator has wrong shape")
            gtg = linalg.matmul(linalg.transpose(g), linalg.matmul(G, g))
            if any(gtg[i][j] != G[i][j] for i in range(self.dim) for j in range(self.dim)):
                raise NotOrthogonalError(f"{self.name or 'generator'} is not orthogonal")

    def apply(self, g, v: Sequence) -> Vector:
        return tuple(linalg.matvec(g, v))


# -- elementary constructions ------------------------------------------------

# cos and sin of 2*pi/m when both lie in the field; angle of vertex 0 is 0
# except for the square, which is placed at 45 degrees.
_ORTHO_POLYGONS = {
    3: (-ONE / 2, SQRT3 / 2),
    4: (ZERO, ONE),
    6: (ONE / 2, SQRT3 / 2),
    8: (SQRT2 / 2, SQRT2 / 2),
    12: (SQRT3 / 2, ONE / 2),
}
# cos(2*pi/m) in the field but sin(2*pi/m) not: use the chart spanned by v0, v1
_GRAM_POLYGONS = {
    5: (SQRT5 - 1) / 4,
    10: (SQRT5 + 1) / 4,
}
EXACT_POLYGONS = frozenset(_ORTHO_POLYGONS) | frozenset(_GRAM_POLYGONS)


def regular_polygon(m: int, exact: bool | None = None) -> VertexSet:
    """Regular m-gon inscribed in the unit circle.

    Exact when cos(2*pi/m) lies in the field (m in 3,4,5,6,8,10,12), float
    otherwise.  For m = 5, 10 the coordinates are taken in the (non-orthonormal)
    basis v0, v1 with Gram matrix [[1, c], [c, 1]].
    """
    if m < 3:
        raise ValueError("a polygon needs m >= 3")
    if exact is None:
        exact = m in EXACT_POLYGONS
    name = f"polygon:{m}"
    if not exact:
        start = math.pi / 4 if m == 4 else 0.0
        verts = tuple(
            (math.cos(start + 2 * math.pi * k / m), math.sin(start + 2 * math.pi * k / m)) for k in range(m)
        )
        return VertexSet(name, verts, exact=False)
    if m in _ORTHO_POLYGONS:
        c, s = _ORTHO_POLYGONS[m]
        v = (SQRT2 / 2, SQRT2 / 2) if m == 4 else (ONE, ZERO)
        verts = []
        for _ in range(m):
            verts.append(v)
            v = (c * v[0] - s * v[1], s * v[0] + c * v[1])
        return VertexSet(name, tuple(verts))
    if m in _GRAM_POLYGONS:
        c = _GRAM_POLYGONS[m]
        verts = [(ONE, ZERO), (ZERO, ONE)]
        while len(verts) < m:
            a, b = verts[-1], verts[-2]
            verts.append((2 * c * a[0] - b[0], 2 * c * a[1] - b[1]))
        return VertexSet(name, tuple(verts), gram=((ONE, c), (c, ONE)))
    raise ValueError(f"cos(2*pi/{m}) is not in Q(sqrt2, sqrt3, sqrt5); use exact=False")


def simplex(n: int) -> VertexSet:
    """Regular n-simplex: e_0..e_n of R^(n+1) in the chart centered at the centroid.

    Chart basis w_i = e_i - centroid (i < n); vertex n has coordinates (-1,...,-1).
    """
    if n < 1:
        raise ValueError("simplex dimension must be >= 1")
    verts = [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
    verts.append(tuple(-ONE for _ in range(n)))
    off = -ONE / (n + 1)
    gram = tuple(tuple(ONE + off if i == j else off for j in range(n)) for i in range(n))
    return VertexSet(f"simplex:{n}", tuple(verts), gram=gram)


def parallelotope(d: Sequence) -> VertexSet:
    d = _vec(d)
    if not d:
        raise ValueError("parallelotope needs at least one half-side")
    if any(x.sign() <= 0 for x in d):
        raise ValueError("half-sides must be positive")
    verts = tuple(tuple(s * x for s, x in zip(signs, d)) for signs in itertools.product((1, -1), repeat=len(d)))
    if all(x == d[0] for x in d):
        name = f"cube:{len(d)}" + ("" if d[0] == 1 else f":{d[0].literal()}")
    else:
        name = "box:" + ",".join(x.literal() for x in d)
    return VertexSet(name, verts)


def cube(n: int, d=1) -> VertexSet:
    return parallelotope([d] * n)


def orthoplex(n: int, d=1) -> VertexSet:
    if n < 1:
        raise ValueError("orthoplex dimension must be >= 1")
    d = to_field(d)
    if d.sign() <= 0:
        raise ValueError("d must be positive")
    verts = []
    for i in range(n):
        for s in (1, -1):
            verts.append(tuple(d * s if j == i else ZERO for j in range(n)))
    return VertexSet(f"orthoplex:{n}" + ("" if d == 1 else f":{d.literal()}"), tuple(verts))


def demihypercube(n: int, b=1) -> VertexSet:
    """Points (+-b, ..., +-b) with an even number of minus signs."""
    if n < 2:
        raise ValueError("demihypercube dimension must be >= 2")
    b = to_field(b)
    if b.sign() <= 0:
        raise ValueError("b must be positive")
    verts = tuple(
        tuple(b * s for s in signs)
        for signs in itertools.product((1, -1), repeat=n)
        if signs.count(-1) % 2 == 0
    )
    return VertexSet(f"demicube:{n}" + ("" if b == 1 else f":{b.literal()}"), verts)


def tetra_example() -> VertexSet:
    """Homogeneous non-regular tetrahedron B1..B4 on the unit sphere."""
    h = ONE / 2
    verts = (
        (ONE, ZERO, ZERO),
        (ZERO, ONE, ZERO),
        (-h, -h, SQRT2 / 2),
        (-h, -h, -SQRT2 / 2),
    )
    return VertexSet("tetra-example", verts)


def _signed(values: Sequence) -> list:
    """All sign choices on the nonzero entries of ``values``."""
    nz = [i for i, x in enumerate(values) if x]
    out = []
    for signs in itertools.product((1, -1), repeat=len(nz)):
        v = list(values)
        for i, s in zip(nz, signs):
            v[i] = v[i] * s
        out.append(tuple(v))
    return out


def _cyclic(v: Sequence) -> list:
    return [tuple(v[(i + k) % len(v)] for i in range(len(v))) for k in range(len(v))]


def _is_even(perm: Sequence[int]) -> bool:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return inv % 2 == 0


def _permuted(values: Sequence, even_only: bool) -> list:
    out = []
    seen = set()
    for perm in itertools.permutations(range(len(values))):
        if even_only and not _is_even(perm):
            continue
        for v in _signed([values[p] for p in perm]):
            if v not in seen:
                seen.add(v)
                out.append(v)
    return out


def _unique(points: Iterable) -> tuple:
    seen = set()
    out = []
    for p in points:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return tuple(out)


def icosahedron() -> VertexSet:
    pts = []
    for base in _cyclic((ZERO, ONE, PHI)):
        pts.extend(_signed(base))
    return VertexSet("icosa", _unique(pts))


def dodecahedron() -> VertexSet:
    pts = _signed((ONE, ONE, ONE))
    for base in _cyclic((ZERO, 1 / PHI, PHI)):
        pts.extend(_signed(base))
    return VertexSet("dodeca", _unique(pts))


# -- four-dimensional polytopes via quaternions ------------------------------


def quaternion_mul(p: Sequence, q: Sequence) -> Vector:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def binary_tetrahedral() -> tuple:
    pts = []
    for i in range(4):
        pts.extend(_signed(tuple(ONE if j == i else ZERO for j in range(4))))
    pts.extend(_signed((ONE / 2,) * 4))
    return _unique(pts)


def binary_icosahedral() -> tuple:
    # even permutations of (0, 1, 1/phi, phi)/2; these are unit quaternions
    half = ONE / 2
    extra = _permuted((ZERO, half, half / PHI, half * PHI), even_only=True)
    return _unique(list(binary_tetrahedral()) + extra)


def binary_octahedral() -> tuple:
    r = SQRT2 / 2
    extra = []
    for i, j in itertools.combinations(range(4), 2):
        v = [ZERO] * 4
        v[i] = v[j] = r
        extra.extend(_signed(v))
    return _unique(list(binary_tetrahedral()) + extra)


def cell24() -> VertexSet:
    return VertexSet("cell24", binary_tetrahedral())


def cell600() -> VertexSet:
    return VertexSet("cell600", binary_icosahedral())


def dysphenoidal288() -> VertexSet:
    return VertexSet("dysph288", binary_octahedral())


def cell120_families() -> list[tuple]:
    """The seven coordinate families of the 120-cell (circumradius sqrt 8).

    Families 1, 3, 4, 5 use all permutations, families 2, 6, 7 even
    permutations, with all sign changes of nonzero entries in each case.
    """
    ip, ip2, p2 = 1 / PHI, 1 / (PHI * PHI), PHI * PHI
    two = ONE * 2
    specs = [
        ((ZERO, ZERO, two, two), False),
        ((ZERO, ip, PHI, SQRT5), True),
        ((PHI, PHI, PHI, ip2), False),
        ((ONE, ONE, ONE, SQRT5), False),
        ((ip, ip, ip, p2), False),
        ((ZERO, ip2, ONE, p2), True),
        ((ip, ONE, PHI, two), True),
    ]
    return [tuple(_permuted(vals, even)) for vals, even in specs]


def cell120() -> VertexSet:
    pts = []
    for fam in cell120_families():
        pts.extend(fam)
    return VertexSet("cell120", _unique(pts))


# -- E8 and the Gosset polytopes ----------------------------------------------

# pairwise tangent roots used to cut out successive sections of the E8 roots
E8_ANCHORS = tuple(
    tuple(ONE if k in (0, j) else ZERO for k in range(8)) for j in (1, 2, 3, 4, 5)
)


def e8_roots() -> VertexSet:
    pts = []
    for i, j in itertools.combinations(range(8), 2):
        v = [ZERO] * 8
        v[i] = v[j] = ONE
        pts.extend(_signed(v))
    half = ONE / 2
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            pts.append(tuple(half * s for s in signs))
    return VertexSet("e8roots", tuple(pts))


def e8_section(k: int) -> VertexSet:
    """Roots r with <r, a> = 1 for the first k anchors (still in R^8)."""
    roots = e8_roots().vertices
    anchors = E8_ANCHORS[:k]
    pts = tuple(r for r in roots if all(linalg.dot(r, a) == 1 for a in anchors))
    return VertexSet(f"e8-section:{k}", pts)


def gosset(n: int) -> VertexSet:
    """Goss_n for n in 5..8 as an E8 section, restricted to its affine span."""
    if n not in (5, 6, 7, 8):
        raise ValueError("Gosset polytopes are available for n = 5, 6, 7, 8")
    if n == 8:
        return e8_roots().renamed("goss:8")
    restricted, _ = affine_restrict(e8_section(8 - n))
    return restricted.renamed(f"goss:{n}")


def goss6_explicit() -> VertexSet:
    """The 27 explicit coordinates of Goss_6 with a = sqrt2/4, b = sqrt6/12."""
    a = SQRT2 / 4
    b = FieldElem.radical(6, Fraction(1, 12))
    pts = [(ZERO,) * 5 + (4 * b,)]
    for signs in itertools.product((1, -1), repeat=5):
        if signs.count(-1) % 2 == 0:
            pts.append(tuple(a * s for s in signs) + (b,))
    for s in (1, -1):
        for i in range(5):
            pts.append(tuple(2 * a * s if j == i else ZERO for j in range(5)) + (-2 * b,))
    return VertexSet("goss6-explicit", tuple(pts))


def truncated_simplex4() -> VertexSet:
    """Points of {+-1}^5 with exactly two -1 coordinates, in their 4-dim span."""
    pts = tuple(
        tuple(-ONE if k in pair else ONE for k in range(5)) for pair in itertools.combinations(range(5), 2)
    )
    restricted, _ = affine_restrict(VertexSet("trunc-simplex4-R5", pts))
    return restricted.renamed("trunc-simplex4")


def octahedron_via_e8() -> VertexSet:
    restricted, _ = affine_restrict(e8_section(5))
    return restricted.renamed("octahedron-e8")


# -- prisms ------------------------------------------------------------------


def prism(base: VertexSet, height) -> VertexSet:
    """Right prism base x {-h/2, +h/2}."""
    if base.exact:
        h = to_field(height)
        if h.sign() <= 0:
            raise ValueError("height must be positive")
        top, bottom = h / 2, -h / 2
        one, zero = ONE, ZERO
    else:
        h = float(height) if not isinstance(height, FieldElem) else to_float(height)
        if h <= 0:
            raise ValueError("height must be positive")
        top, bottom = h / 2, -h / 2
        one, zero = 1.0, 0.0
    verts = tuple(v + (bottom,) for v in base.vertices) + tuple(v + (top,) for v in base.vertices)
    gram = None
    if base.gram is not None:
        n = base.dim
        gram = tuple(tuple(base.gram[i]) + (zero,) for i in range(n)) + ((zero,) * n + (one,),)
    hname = h.literal() if isinstance(h, FieldElem) else repr(h)
    return VertexSet(f"prism:{base.name}:{hname}", verts, base.exact, gram)


def antiprism(m: int, height) -> VertexSet:
    """Right antiprism over regular m-gons with unit circumradius.

    Built from the regular 2m-gon with alternating heights +-h/2; exact when
    the 2m-gon is exact and the height is a field element.
    """
    if m < 3:
        raise ValueError("antiprism needs m >= 3")
    if isinstance(height, (int, Fraction, FieldElem, str)) and 2 * m in EXACT_POLYGONS:
        h = to_field(height)
        if h.sign() <= 0:
            raise ValueError("height must be positive")
        ring = regular_polygon(2 * m)
        verts = tuple(v + ((h / 2) if k % 2 == 0 else (-h / 2),) for k, v in enumerate(ring.vertices))
        gram = None
        if ring.gram is not None:
            gram = tuple(tuple(r) + (ZERO,) for r in ring.gram) + ((ZERO, ZERO, ONE),)
        return VertexSet(f"antiprism:{m}:{h.literal()}", verts, True, gram)
    h = to_float(height) if isinstance(height, FieldElem) else float(height)
    if h <= 0:
        raise ValueError("height must be positive")
    verts = tuple(
        (math.cos(math.pi * k / m), math.sin(math.pi * k / m), h / 2 if k % 2 == 0 else -h / 2) for k in range(2 * m)
    )
    return VertexSet(f"antiprism:{m}:{h!r}", verts, exact=False)


def antiprism_equal_edge_height_sq(m: int) -> float:
    """h^2 making lateral edges equal to base edges (unit circumradius)."""
    return 2 * math.cos(math.pi / m) - 2 * math.cos(2 * math.pi / m)


# -- orbits and charts -------------------------------------------------------


def orbit(G: GeneratorSet, seed: Sequence, cap: int = 10**6, name: str | None = None) -> VertexSet:
    """Closure of {seed} under the generators (breadth first, exact dedup)."""
    seed = _vec(seed)
    if len(seed) != G.dim:
        raise ValueError("seed has wrong dimension")
    seen = {seed}
    order = [seed]
    queue = deque([seed])
    while queue:
        p = queue.popleft()
        for g in G.generators:
            q = G.apply(g, p)
            if q not in seen:
                if len(order) >= cap:
                    raise OrbitCapExceeded(f"orbit exceeds {cap} points")
                seen.add(q)
                order.append(q)
                queue.append(q)
    return VertexSet(name or f"orbit:{G.name}", tuple(order), gram=G.gram)


def affine_restrict(V: VertexSet) -> tuple[VertexSet, Chart]:
    """Coordinates of V in a chart of its affine span, origin at the centroid.

    A full-dimensional V keeps the ambient basis (only the origin moves);
    otherwise the basis is a maximal independent set of centroid-to-vertex
    vectors and the chart carries their exact Gram matrix.
    """
    if not V.exact:
        raise ValueError("affine_restrict needs exact input")
    c = V.center
    diffs = [_sub(v, c) for v in V.vertices]
    H = V.gram if V.gram is not None else linalg.identity(V.dim)
    ech = linalg.Echelon(V.dim)
    basis = []
    for d in diffs:
        if ech.add_row(list(d)):
            basis.append(d)
    k = len(basis)
    if k == V.dim:
        chart = Chart(c, tuple(tuple(r) for r in linalg.identity(V.dim)), tuple(tuple(r) for r in H))
        return VertexSet(V.name, tuple(diffs), True, V.gram), chart
    if k == 0:
        chart = Chart(c, (), ())
        return VertexSet(V.name, ((),) * 1, True, ()), chart
    HB = [linalg.matvec(H, b) for b in basis]
    gram = [[linalg.dot(bi, hbj) for hbj in HB] for bi in basis]
    ginv = linalg.inverse(gram)
    coords = []
    for d in diffs:
        rhs = [linalg.dot(hb, d) for hb in HB]
        coords.append(tuple(linalg.matvec(ginv, rhs)))
    gram_t = tuple(tuple(r) for r in gram)
    return VertexSet(V.name, tuple(coords), True, gram_t), Chart(c, tuple(basis), gram_t)


def pairwise_sqdists(V: VertexSet) -> list:
    vs = V.vertices
    return [V.sqdist(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))]


def distance_multiset(V: VertexSet) -> dict:
    counts: dict = {}
    for d in pairwise_sqdists(V):
        counts[d] = counts.get(d, 0) + 1
    return counts


def distance_spheres(V: VertexSet, v: int) -> list[tuple]:
    """Vertex indices grouped by squared distance to vertex v, nearest first."""
    if not 0 <= v < len(V):
        raise IndexError(f"vertex index {v} out of range")
    groups: dict = {}
    p = V.vertices[v]
    for i, q in enumerate(V.vertices):
        groups.setdefault(V.sqdist(p, q), []).append(i)
    keys = sorted(groups)
    return [(k, groups[k]) for k in keys]


def vertex_subset_check(small: VertexSet, big: VertexSet) -> bool:
    """Every vertex of ``small`` is a vertex of ``big`` and the centroids agree."""
    if small.dim != big.dim:
        raise ValueError("ambient dimensions differ")
    if not (small.exact and big.exact):
        raise ValueError("subset check needs exact vertex sets")
    idx = big.index
    return all(v in idx for v in small.vertices) and tuple(small.center) == tuple(big.center)


# -- inscribed cubes ---------------------------------------------------------


def is_cube_signature(V: VertexSet, indices: Sequence[int]) -> bool:
    """Exact distance-multiset test: 2^(n-1) C(n,k) pairs at distance k*l^2."""
    n = V.dim
    if len(indices) != 2**n:
        return False
    pts = [V.vertices[i] for i in indices]
    counts: dict = {}
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = V.sqdist(pts[i], pts[j])
            counts[d] = counts.get(d, 0) + 1
    edge = min(counts)
    expected = {edge * k: 2 ** (n - 1) * math.comb(n, k) for k in range(1, n + 1)}
    if counts != expected:
        return False
    c = [ZERO] * n
    for p in pts:
        c = [a + x for a, x in zip(c, p)]
    return tuple(a / len(pts) for a in c) == tuple(V.center)


@dataclass
class FaceCheck:
    direction: Vector
    face: list
    holds: bool


@dataclass
class CubeReport:
    indices: list
    edge_sq: FieldElem
    proper: bool
    faces: list = field(default_factory=list)

    @property
    def condition2(self) -> bool:
        return any(f.holds for f in self.faces)


def supporting_face(V: VertexSet, direction: Sequence) -> list[int]:
    """Indices of vertices minimising <direction, x> (the supporting face)."""
    vals = [V.inner(direction, v) for v in V.vertices]
    lo = min(vals)
    return [i for i, x in enumerate(vals) if x == lo]


def find_inscribed_cube(V: VertexSet, budget: int = 200_000) -> CubeReport | None:
    """Search for an n-cube with vertices in V centered at the centroid.

    From a corner p (relative to the centroid) every cube edge w = p - q
    satisfies 2<w, p> = |w|^2; frames of n mutually orthogonal such edges of
    one length are grown depth first.  ``budget`` caps the frames visited.
    """
    if not V.exact:
        raise ValueError("cube search needs exact input")
    n = V.dim
    if len(V) < 2**n:
        return None
    c = V.center
    rel = [_sub(v, c) for v in V.vertices]
    index = {r: i for i, r in enumerate(rel)}
    visited = 0
    for pi, p in enumerate(rel):
        by_len: dict = {}
        for qi, q in enumerate(rel):
            if qi == pi:
                continue
            w = _sub(p, q)
            L = V.inner(w, w)
            if 2 * V.inner(w, p) == L:
                by_len.setdefault(L, []).append(w)
        for L, ws in by_len.items():
            if len(ws) < n:
                continue
            stack = [((), 0)]
            while stack:
                frame, start = stack.pop()
                visited += 1
                if visited > budget:
                    raise CubeSearchBudgetExceeded(f"no cube found within {budget} frames")
                if len(frame) == n:
                    found = _cube_from_frame(V, p, frame, index)
                    if found is not None:
                        return _cube_report(V, found, frame, L)
                    continue
                for k in range(len(ws) - 1, start - 1, -1):
                    w = ws[k]
                    if all(not V.inner(w, f) for f in frame):
                        stack.append((frame + (w,), k + 1))
    return None


def _cube_from_frame(V, p, frame, index):
    total = [ZERO] * len(p)
    for w in frame:
        total = [a + x for a, x in zip(total, w)]
    if tuple(total) != tuple(2 * x for x in p):
        return None
    out = []
    for subset in itertools.product((0, 1), repeat=len(frame)):
        q = p
        for bit, w in zip(subset, frame):
            if bit:
                q = _sub(q, w)
        i = index.get(tuple(q))
        if i is None:
            return None
        out.append(i)
    return out if is_cube_signature(V, out) else None


def _cube_report(V, indices, frame, L) -> CubeReport:
    report = CubeReport(indices=indices, edge_sq=L, proper=len(indices) < len(V))
    for w in frame:
        face = supporting_face(V, w)
        holds = not any(
            V.sqdist(V.vertices[a], V.vertices[b]) == L for a, b in itertools.combinations(face, 2)
        )
        report.faces.append(FaceCheck(direction=w, face=face, holds=holds))
    return report


# -- file formats ------------------------------------------------------------


def read_vertex_text(text: str, name: str = "file") -> VertexSet:
    """Parse the vertex-file format: header ``dim n exact|float`` then one vertex per line.

    Exact files may put a chart metric first: a line ``gram`` and n rows.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty vertex file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "dim" or head[2] not in ("exact", "float"):
        raise ValueError("vertex file header must be 'dim <n> exact|float'")
    n = int(head[1])
    exact = head[2] == "exact"
    body = lines[1:]
    gram = None
    if body and body[0] == "gram":
        if not exact:
            raise ValueError("a gram block needs exact coordinates")
        rows = [tuple(parse(p) for p in ln.split()) for ln in body[1 : n + 1]]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"gram block must be {n}x{n}")
        gram = tuple(rows)
        body = body[n + 1 :]
    verts = []
    for ln in body:
        parts = ln.split()
        if len(parts) != n:
            raise ValueError(f"expected {n} coordinates, got {len(parts)}: {ln!r}")
        if exact:
            verts.append(tuple(parse(p) for p in parts))
        else:
            verts.append(tuple(float(p) if _is_float(p) else to_float(parse(p)) for p in parts))
    return VertexSet(name, tuple(verts), exact=exact, gram=gram)


def _is_float(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def read_vertex_file(path: str) -> VertexSet:
    with open(path) as fh:
        return read_vertex_text(fh.read(), name=f"file:{path}")


def format_vertex_text(V: VertexSet) -> str:
    lines = [f"dim {V.dim} {V.exactness}"]
    if V.exact and V.gram is not None:
        lines.append("gram")
        lines.extend(" ".join(x.literal().replace(" ", "") for x in row) for row in V.gram)
    for v in V.vertices:
        if V.exact:
            lines.append(" ".join(x.literal().replace(" ", "") for x in v))
        else:
            lines.append(" ".join(repr(float(x)) for x in v))
    return "\n".join(lines) + "\n"
