"""Symmetric commutants and invariant-ellipsoid families for the catalog pairs.

For each (generators, orbit) pair prints whether the generators act
transitively, the commutant dimension, commutativity, the verdict, and (with
--quadrics) the block quadrics |P_i x|^2 - r_i^2 that vanish on the orbit.
"""
from __future__ import annotations

import argparse

from perfpoly import symmetry as sy
from perfpoly.catalog import catalog_pairs
from perfpoly.quadrics import classify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quadrics", action="store_true", help="print the reducible families")
    args = ap.parse_args()
    print(f"{'spec':26s} {'group':34s} {'trans':>5s} {'comm':>4s} {'abel':>5s}  verdict")
    for pair in catalog_pairs():
        G, V = pair.build()
        C = sy.symmetric_commutant(G)
        verdict = classify(V).verdict.value
        print(
            f"{pair.spec:26s} {pair.note[:34]:34s} {str(sy.is_vertex_transitive(G, V)):>5s} "
            f"{C.dimension:4d} {str(sy.commutative_subgroup_check(G)):>5s}  {verdict}"
        )
        if args.quadrics and not C.irreducible:
            try:
                family = sy.reducible_ellipsoid_family(G, V)
            except sy.EigenvalueOutsideField as exc:
                family = [exc.quadric]
            for q in family:
                print(f"{'':28s}{q.to_text()} = 0")


if __name__ == "__main__":
    main()
