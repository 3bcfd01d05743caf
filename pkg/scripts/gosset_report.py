"""Gosset polytopes from the E8 kissing configuration, with dimension counts.

For every section k = 0..5 of the 240 roots (points at distance sqrt(2) from
the origin and from k pairwise adjacent roots) prints the size, the pairwise
distance multiset, the quadric space dimensions, and the symmetric commutant
dimension of the Weyl group that fixes the anchors.
"""
from __future__ import annotations

import argparse
import json
import time

from perfpoly import polytopes as pt
from perfpoly import symmetry as sy
from perfpoly.numberfield import FieldElem
from perfpoly.quadrics import classify

LABELS = ["Goss8", "Goss7", "Goss6", "Goss5", "truncated 4-simplex", "e8 section 5"]


def section_row(k: int) -> dict:
    t0 = time.perf_counter()
    V, chart = pt.affine_restrict(pt.e8_section(k))
    c = classify(V)
    G = sy.restrict_generators(sy.section_weyl(k), chart)
    dists = {d.literal() if isinstance(d, FieldElem) else str(d): m for d, m in sorted(pt.distance_multiset(V).items())}
    return {
        "k": k,
        "label": LABELS[k],
        "dim": V.dim,
        "n_vertices": len(V),
        "sqdist_multiset": dists,
        "d_full": c.d_full,
        "d_centered": c.d_centered,
        "verdict": c.verdict.value,
        "commutant_dim": sy.symmetric_commutant(G).dimension,
        "transitive": sy.is_vertex_transitive(G, V),
        "seconds": round(time.perf_counter() - t0, 3),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description="E8 section report")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = [section_row(k) for k in range(6)]
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    cols = ["k", "label", "dim", "n_vertices", "d_full", "d_centered", "verdict", "commutant_dim", "transitive", "seconds"]
    print("| " + " | ".join(cols) + " |")
    print("|" + "|".join("---" for _ in cols) + "|")
    for r in rows:
        print("| " + " | ".join(str(r[c]) for c in cols) + " |")
    print()
    for r in rows:
        print(f"{r['label']}: squared distances {r['sqdist_multiset']}")


if __name__ == "__main__":
    main()
