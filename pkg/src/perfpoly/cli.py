"""Command line front end: ``perfpoly <command> [options]``.

Exit codes: 0 ok, 1 verdict mismatch, 2 parse error, 3 degenerate input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import catalog
from . import polytopes as pt
from . import symmetry as sy
from .mvee import IterationCapExceeded, coincides_with_circumsphere, mvee, report
from .numberfield import FieldElem, LiteralError, parse
from .quadrics import FULL, NotCosphericalError, classify, family_description, quadric_space, quadric_space_float

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_DEGENERATE = 0, 1, 2, 3
FORMATS = ("json", "csv", "markdown")


@dataclass
class RunConfig:
    command: str
    specs: list = field(default_factory=list)
    format: str = "markdown"
    tol: float = 1e-9
    eps: float = 1e-7
    orbit_cap: int = 10**6
    budget: int = 200_000

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.tol <= 0 or self.eps <= 0:
            raise ValueError("tolerances must be positive")
        if self.orbit_cap < 1:
            raise ValueError("orbit cap must be >= 1")
        if self.budget < 1:
            raise ValueError("budget must be >= 1")


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# -- output ----------------------------------------------------------------------


def _cell(x) -> str:
    if isinstance(x, FieldElem):
        return x.literal()
    if isinstance(x, float):
        return f"{x:.17g}"
    if isinstance(x, (list, tuple)):
        return json.dumps(_jsonable(x))
    if x is None:
        return ""
    return str(x)


def _jsonable(x):
    if isinstance(x, FieldElem):
        return x.literal()
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if hasattr(x, "value") and isinstance(getattr(x, "value"), str):
        return x.value
    if isinstance(x, float) and x != x:
        return None
    if isinstance(x, float) and x in (float("inf"), float("-inf")):
        return str(x)
    return x


def render(rows: list[dict], fmt: str, columns: Sequence[str] | None = None) -> str:
    """Rows as JSON (full records), CSV (RFC 4180) or a markdown table."""
    if fmt == "json":
        return json.dumps(_jsonable(rows), indent=2) + "\n"
    columns = list(columns or (rows[0].keys() if rows else []))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
    for r in rows:
        lines.append("| " + " | ".join(_cell(r.get(c)).replace("|", "\\|") for c in columns) + " |")
    return "\n".join(lines) + "\n"


# -- commands ----------------------------------------------------------------------


def _load(spec: str) -> pt.VertexSet:
    try:
        return catalog.parse_spec(spec)
    except catalog.SpecError as exc:
        raise CommandError(str(exc), EXIT_PARSE) from None
    except pt.DegenerateError as exc:
        raise CommandError(str(exc), EXIT_DEGENERATE) from None


def _classify_row(V: pt.VertexSet, cfg: RunConfig) -> dict:
    try:
        c = classify(V, cfg.tol)
    except (pt.DegenerateError, NotCosphericalError) as exc:
        raise CommandError(f"{V.name}: {exc}", EXIT_DEGENERATE) from None
    basis = [q.vector(FULL) for q in c.full.basis]
    gap = None
    if not c.exact:
        gap = min(c.full.singular_gap, c.centered.singular_gap)
    return {
        "name": c.name,
        "dim": c.dim,
        "n_vertices": c.n_vertices,
        "exactness": c.exactness,
        "d_full": c.d_full,
        "d_centered": c.d_centered,
        "verdict": c.verdict.value,
        "basis": basis,
        "singular_gap": gap,
    }


TABLE_COLUMNS = ["name", "dim", "n_vertices", "d_full", "d_centered", "verdict", "exactness"]


def cmd_classify(cfg: RunConfig) -> tuple[list[dict], int]:
    return [_classify_row(_load(s), cfg) for s in cfg.specs], EXIT_OK


def _expected_rows(pairs, cfg: RunConfig) -> tuple[list[dict], int]:
    rows, code = [], EXIT_OK
    for spec, expected, count in pairs:
        row = _classify_row(_load(spec), cfg)
        row["expected"] = expected.value
        row["match"] = row["verdict"] == expected.value and (count is None or row["n_vertices"] == count)
        if count is not None:
            row["expected_vertices"] = count
        if not row["match"]:
            code = EXIT_MISMATCH
        rows.append(row)
    return rows, code


def cmd_theorem1(cfg: RunConfig, n_max: int) -> tuple[list[dict], int]:
    try:
        table = catalog.theorem1_rows(n_max)
    except ValueError as exc:
        raise CommandError(str(exc), EXIT_PARSE) from None
    return _expected_rows([(s, v, None) for s, v in table], cfg)


def cmd_gosset(cfg: RunConfig) -> tuple[list[dict], int]:
    return _expected_rows([(s, v, k) for s, k, v in catalog.GOSSET_ROWS], cfg)


def cmd_mvee(cfg: RunConfig) -> tuple[list[dict], int]:
    rows = []
    for spec in cfg.specs:
        V = _load(spec)
        try:
            E = mvee(V, eps=cfg.eps)
        except pt.DegenerateError as exc:
            raise CommandError(f"{V.name}: {exc}", EXIT_DEGENERATE) from None
        except IterationCapExceeded as exc:
            raise CommandError(f"{V.name}: {exc}", EXIT_DEGENERATE) from None
        cmp = coincides_with_circumsphere(E, V) if V.is_cospherical() else None
        row = {"name": V.name}
        row.update(report(E, cmp))
        row["coincides"] = None if cmp is None else cmp.coincides
        rows.append(row)
    return rows, EXIT_OK


def cmd_family(cfg: RunConfig) -> tuple[list[dict], int]:
    rows = []
    for spec in cfg.specs:
        V = _load(spec)
        try:
            S = quadric_space(V, FULL) if V.exact else quadric_space_float(V, FULL, cfg.tol)
        except pt.DegenerateError as exc:
            raise CommandError(f"{V.name}: {exc}", EXIT_DEGENERATE) from None
        rows.append({"name": V.name, "parameters": S.dimension, "family": family_description(S)})
    return rows, EXIT_OK


def cmd_distance_spheres(cfg: RunConfig, vertex: int) -> tuple[list[dict], int]:
    V = _load(cfg.specs[0])
    if not 0 <= vertex < len(V):
        raise CommandError(f"vertex index {vertex} out of range", EXIT_PARSE)
    rows = []
    for d, idx in pt.distance_spheres(V, vertex):
        rows.append({"sqdist": d, "size": len(idx), "indices": list(idx)})
    return rows, EXIT_OK


def cmd_orbit(cfg: RunConfig, generator_file: str, seed: str) -> tuple[list[dict], int]:
    try:
        G = sy.read_generator_file(generator_file)
        point = [parse(x) for x in seed.split(",")]
    except (OSError, ValueError, LiteralError) as exc:
        raise CommandError(str(exc), EXIT_PARSE) from None
    try:
        V = pt.orbit(G, point, cap=cfg.orbit_cap)
    except pt.OrbitCapExceeded as exc:
        raise CommandError(str(exc), EXIT_DEGENERATE) from None
    except ValueError as exc:
        raise CommandError(str(exc), EXIT_PARSE) from None
    return [{"index": i, "vertex": list(v)} for i, v in enumerate(V.vertices)], EXIT_OK


def cmd_cube_search(cfg: RunConfig) -> tuple[list[dict], int]:
    rows = []
    for spec in cfg.specs:
        V = _load(spec)
        if not V.exact:
            raise CommandError(f"{V.name}: cube search needs exact coordinates", EXIT_PARSE)
        try:
            rep = pt.find_inscribed_cube(V, cfg.budget)
        except pt.CubeSearchBudgetExceeded:
            rep = None
        rows.append(
            {
                "name": V.name,
                "found": rep is not None,
                "edge_sq": None if rep is None else rep.edge_sq,
                "proper": None if rep is None else rep.proper,
                "condition2": None if rep is None else rep.condition2,
                "indices": None if rep is None else rep.indices,
            }
        )
    return rows, EXIT_OK


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="markdown")
    common.add_argument("--tol", type=float, default=1e-9, help="relative SVD threshold for float input")
    common.add_argument("--eps", type=float, default=1e-7, help="mvee accuracy")
    common.add_argument("--orbit-cap", type=int, default=10**6)
    common.add_argument("--budget", type=int, default=200_000, help="cube-search frame budget")
    p = argparse.ArgumentParser(prog="perfpoly", description="Perfect and almost perfect homogeneous polytopes.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("classify", parents=[common], help="classify polytope specs")
    s.add_argument("specs", nargs="+")
    s = sub.add_parser("theorem1", parents=[common], help="regular polytope table with expected verdicts")
    s.add_argument("--n-max", type=int, default=4)
    sub.add_parser("gosset", parents=[common], help="Gosset polytopes and E8 sections")
    s = sub.add_parser("mvee", parents=[common], help="Loewner-John ellipsoid")
    s.add_argument("specs", nargs="+")
    s = sub.add_parser("family", parents=[common], help="parametric quadric family")
    s.add_argument("specs", nargs="+")
    s = sub.add_parser("distance-spheres", parents=[common], help="vertices grouped by distance")
    s.add_argument("spec")
    s.add_argument("vertex", type=int)
    s = sub.add_parser("orbit", parents=[common], help="orbit of a seed under a generator file")
    s.add_argument("generator_file")
    s.add_argument("seed", help="comma separated field literals")
    s = sub.add_parser("cube-search", parents=[common], help="inscribed centered cube")
    s.add_argument("specs", nargs="+")
    return p


_COLUMNS = {
    "classify": TABLE_COLUMNS,
    "theorem1": TABLE_COLUMNS + ["expected", "match"],
    "gosset": TABLE_COLUMNS + ["expected_vertices", "expected", "match"],
    "mvee": ["name", "iterations", "max_violation", "semiaxes", "coincides"],
    "family": ["name", "parameters", "family"],
    "distance-spheres": ["sqdist", "size", "indices"],
    "orbit": ["index", "vertex"],
    "cube-search": ["name", "found", "edge_sq", "proper", "condition2", "indices"],
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    specs = list(getattr(args, "specs", None) or ([args.spec] if hasattr(args, "spec") else []))
    try:
        cfg = RunConfig(args.command, specs, args.format, args.tol, args.eps, args.orbit_cap, args.budget)
    except ValueError as exc:
        print(f"perfpoly: {exc}", file=err)
        return EXIT_PARSE
    try:
        if cfg.command == "classify":
            rows, code = cmd_classify(cfg)
        elif cfg.command == "theorem1":
            rows, code = cmd_theorem1(cfg, args.n_max)
        elif cfg.command == "gosset":
            rows, code = cmd_gosset(cfg)
        elif cfg.command == "mvee":
            rows, code = cmd_mvee(cfg)
        elif cfg.command == "family":
            rows, code = cmd_family(cfg)
        elif cfg.command == "distance-spheres":
            rows, code = cmd_distance_spheres(cfg, args.vertex)
        elif cfg.command == "orbit":
            rows, code = cmd_orbit(cfg, args.generator_file, args.seed)
        else:
            rows, code = cmd_cube_search(cfg)
    except CommandError as exc:
        print(f"perfpoly: {exc}", file=err)
        return exc.code
    out.write(render(rows, cfg.format, _COLUMNS[cfg.command]))
    if code == EXIT_MISMATCH:
        bad = [r["name"] for r in rows if not r.get("match", True)]
        print(f"perfpoly: verdict mismatch for {', '.join(bad)}", file=err)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
