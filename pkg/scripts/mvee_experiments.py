"""Loewner-John ellipsoids of homogeneous polytopes versus their circumspheres.

Prisms over bases that contain a centered cube (octagon, dodecahedron, 24-cell)
have reducible symmetry yet their ellipsoid is the circumsphere; boxes and
other prisms show the ellipsoid separating from the sphere.
"""
from __future__ import annotations

import argparse
import time

from perfpoly import polytopes as pt
from perfpoly.catalog import parse_spec
from perfpoly.mvee import coincides_with_circumsphere, mvee
from perfpoly.quadrics import classify

DEFAULT = [
    "cube:4",
    "box:1,2",
    "box:1,2,3",
    "prism:polygon:8:sqrt(2)",
    "prism:polygon:8:1",
    "prism:dodeca:2",
    "prism:cell24:1",
    "prism:polygon:5:1",
    "antiprism:5:1",
    "cell600",
    "goss:6",
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("specs", nargs="*", default=DEFAULT)
    ap.add_argument("--eps", type=float, default=1e-7)
    args = ap.parse_args()
    print(f"{'spec':26s} {'|V|':>4s} {'iters':>6s} {'ms':>7s} {'sphere':>6s} {'dev':>9s}  verdict / semiaxes")
    for spec in args.specs:
        V = parse_spec(spec)
        t0 = time.perf_counter()
        E = mvee(V, eps=args.eps)
        ms = 1000 * (time.perf_counter() - t0)
        cmp = coincides_with_circumsphere(E, V)
        verdict = classify(V).verdict.value
        axes = ", ".join(f"{a:.5f}" for a in E.semiaxes())
        print(
            f"{spec:26s} {len(V):4d} {E.iterations:6d} {ms:7.1f} {str(cmp.coincides):>6s} "
            f"{cmp.shape_deviation:9.2e}  {verdict} / {axes}"
        )


if __name__ == "__main__":
    main()
