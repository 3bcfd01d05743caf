"""Polytope spec strings, the expected-verdict tables, and (generators, orbit) pairs.

Spec grammar::

    polygon:m  simplex:n  cube:n[:d]  box:d1,d2,...  orthoplex:n[:d]
    demicube:n[:b]  icosa  dodeca  cell24  cell120  cell600  dysph288
    goss:n  e8roots  e8-section:k  trunc-simplex4  tetra-example  octahedron-e8
    prism:<base-spec>:h  antiprism:m:h  file:<path>

Numbers are field literals (``sqrt(2)``, ``1/2 + sqrt(5)/2``, ``phi``); a
height containing a decimal point or exponent makes the result float.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from . import polytopes as pt
from . import symmetry as sy
from .numberfield import ONE, LiteralError, parse
from .quadrics import Verdict


class SpecError(ValueError):
    """Unparseable polytope spec."""


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise SpecError(f"{what} must be an integer, got {text!r}") from None


def _num(text: str):
    t = text.strip()
    if any(ch in t for ch in ".eE") and "sqrt" not in t:
        try:
            return float(t)
        except ValueError:
            pass
    try:
        return parse(t)
    except LiteralError as exc:
        raise SpecError(str(exc)) from None


_SIMPLE = {
    "icosa": pt.icosahedron,
    "dodeca": pt.dodecahedron,
    "cell24": pt.cell24,
    "cell120": pt.cell120,
    "cell600": pt.cell600,
    "dysph288": pt.dysphenoidal288,
    "e8roots": pt.e8_roots,
    "trunc-simplex4": pt.truncated_simplex4,
    "tetra-example": pt.tetra_example,
    "octahedron-e8": pt.octahedron_via_e8,
}


def parse_spec(spec: str) -> pt.VertexSet:
    """Build the vertex set named by ``spec``; raises SpecError on bad input."""
    spec = spec.strip()
    if spec in _SIMPLE:
        return _SIMPLE[spec]()
    head, _, rest = spec.partition(":")
    try:
        if head == "file":
            if not rest:
                raise SpecError("file: needs a path")
            return pt.read_vertex_file(rest)
        if head == "prism":
            base, sep, h = rest.rpartition(":")
            if not sep or not base:
                raise SpecError("prism spec is prism:<base-spec>:h")
            return pt.prism(parse_spec(base), _num(h))
        args = rest.split(":") if rest else []
        if head == "polygon" and len(args) == 1:
            return pt.regular_polygon(_int(args[0], "m"))
        if head == "simplex" and len(args) == 1:
            return pt.simplex(_int(args[0], "n"))
        if head in ("cube", "orthoplex", "demicube") and len(args) in (1, 2):
            n = _int(args[0], "n")
            size = _num(args[1]) if len(args) == 2 else 1
            build = {"cube": pt.cube, "orthoplex": pt.orthoplex, "demicube": pt.demihypercube}[head]
            return build(n, size)
        if head == "box" and len(args) == 1:
            return pt.parallelotope([_num(x) for x in args[0].split(",")])
        if head == "goss" and len(args) == 1:
            return pt.gosset(_int(args[0], "n"))
        if head == "e8-section" and len(args) == 1:
            k = _int(args[0], "k")
            if not 0 <= k <= 5:
                raise SpecError("e8-section:k needs 0 <= k <= 5")
            return pt.affine_restrict(pt.e8_section(k))[0].renamed(spec)
        if head == "antiprism" and len(args) == 2:
            return pt.antiprism(_int(args[0], "m"), _num(args[1]))
    except SpecError:
        raise
    except (ValueError, TypeError, OSError) as exc:
        if isinstance(exc, pt.DegenerateError):
            raise
        raise SpecError(f"{spec}: {exc}") from None
    raise SpecError(f"unknown polytope spec {spec!r}")


# -- expected verdicts ----------------------------------------------------------

P, A, N = Verdict.PERFECT, Verdict.ALMOST_PERFECT_ONLY, Verdict.NOT_ALMOST_PERFECT


def theorem1_rows(n_max: int) -> list[tuple[str, Verdict]]:
    """All regular polytopes of dimension <= n_max with their expected verdicts."""
    if not 2 <= n_max <= 8:
        raise ValueError("n_max must be between 2 and 8")
    rows = [(f"polygon:{m}", A if m == 3 else N if m == 4 else P) for m in range(3, 13)]
    for n in range(3, n_max + 1):
        rows += [(f"simplex:{n}", N), (f"cube:{n}", N), (f"orthoplex:{n}", N)]
        if n == 3:
            rows += [("dodeca", P), ("icosa", P)]
        if n == 4:
            rows += [("cell24", P), ("cell120", P), ("cell600", P)]
    return rows


# verdicts as stated for the Gosset family and its E8 sections
GOSSET_ROWS: list[tuple[str, int, Verdict]] = [
    ("goss:5", 16, N),
    ("goss:6", 27, P),
    ("goss:7", 56, P),
    ("goss:8", 240, P),
    ("trunc-simplex4", 10, N),
    ("octahedron-e8", 6, N),
]


# -- (generators, orbit) pairs ----------------------------------------------------


@dataclass(frozen=True)
class CatalogPair:
    spec: str
    generators: Callable[[pt.VertexSet], pt.GeneratorSet]
    note: str = ""

    def build(self) -> tuple[pt.GeneratorSet, pt.VertexSet]:
        V = parse_spec(self.spec)
        return self.generators(V), V


def _section_generators(k: int):
    def make(V: pt.VertexSet) -> pt.GeneratorSet:
        _, chart = pt.affine_restrict(pt.e8_section(k))
        return sy.restrict_generators(sy.section_weyl(k), chart)

    return make


def _trunc_generators(V: pt.VertexSet) -> pt.GeneratorSet:
    """A transposition and a 5-cycle of the R^5 coordinates, in the 4-dim chart."""
    pts = tuple(
        tuple(-ONE if k in pair else ONE for k in range(5)) for pair in itertools.combinations(range(5), 2)
    )
    _, chart = pt.affine_restrict(pt.VertexSet("trunc-simplex4-R5", pts))
    ambient = pt.GeneratorSet(5, (sy.permutation_matrix([1, 0, 2, 3, 4]), sy.permutation_matrix([1, 2, 3, 4, 0])), "S5")
    return sy.restrict_generators(ambient, chart, "S5")


def _prism_polygon(V: pt.VertexSet) -> pt.GeneratorSet:
    m = len(V) // 2
    return sy.prism_generators(sy.polygon_rotation(pt.regular_polygon(m)))


def catalog_pairs() -> list[CatalogPair]:
    pairs = []
    for n in range(2, 6):
        pairs.append(CatalogPair(f"cube:{n}", lambda V: sy.diagonal_flips(V.dim), "Z2^n"))
        pairs.append(CatalogPair(f"cube:{n}", lambda V: sy.signed_permutations(V.dim), "hyperoctahedral"))
        pairs.append(CatalogPair(f"orthoplex:{n}", lambda V: sy.signed_permutations(V.dim), "hyperoctahedral"))
    pairs.append(CatalogPair("box:1,2", lambda V: sy.diagonal_flips(2), "Z2^2"))
    pairs.append(CatalogPair("box:1,2,3", lambda V: sy.diagonal_flips(3), "Z2^3"))
    for n in range(3, 7):
        pairs.append(CatalogPair(f"demicube:{n}", lambda V: sy.even_flips(V.dim), "even sign flips"))
    for m in sorted(pt.EXACT_POLYGONS):
        pairs.append(CatalogPair(f"polygon:{m}", sy.polygon_rotation, "cyclic rotation"))
    for n in range(2, 6):
        pairs.append(CatalogPair(f"simplex:{n}", sy.simplex_symmetries, "symmetric group"))
    pairs += [
        CatalogPair("tetra-example", sy.tetra_example_pair, "commuting involutions"),
        CatalogPair("icosa", sy.h3_generators, "H3"),
        CatalogPair("dodeca", sy.h3_generators, "H3"),
        CatalogPair("cell24", lambda V: sy.bt_left(), "BT left multiplication"),
        CatalogPair("cell600", lambda V: sy.bi_left(), "BI left multiplication"),
        CatalogPair("dysph288", lambda V: sy.bo_left(), "BO left multiplication (generators chosen here)"),
        CatalogPair("cell120", lambda V: sy.bi_left_right(), "BI left and right multiplication"),
        CatalogPair("goss:8", lambda V: sy.e8_weyl(), "W(E8)"),
        CatalogPair("goss:7", _section_generators(1), "W(E7)"),
        CatalogPair("goss:6", _section_generators(2), "W(E6)"),
        CatalogPair("goss:5", _section_generators(3), "W(D5)"),
        CatalogPair("trunc-simplex4", _trunc_generators, "S5 on coordinates"),
        CatalogPair("e8-section:4", _section_generators(4), "W(A4)"),
        CatalogPair("octahedron-e8", _section_generators(5), "W(A2 x A1)"),
        CatalogPair("prism:polygon:5:1", _prism_polygon, "rotation (+) axis flip"),
        CatalogPair("prism:polygon:8:sqrt(2)", _prism_polygon, "rotation (+) axis flip"),
        CatalogPair("prism:polygon:6:1", _prism_polygon, "rotation (+) axis flip"),
    ]
    return pairs


def catalog_specs(n_max: int = 8) -> list[str]:
    """Every named polytope the package builds, each spec once, in a fixed order."""
    specs = [s for s, _ in theorem1_rows(n_max)]
    specs += [s for s, _, _ in GOSSET_ROWS]
    specs += ["dysph288", "antiprism:4:1", "antiprism:5:1"]
    specs += [p.spec for p in catalog_pairs()]
    return list(dict.fromkeys(specs))
