"""Line bundle cohomology and folded Hom tables on projective space.

Usage: python3 scripts/pn_tables.py [n_max]
"""

from __future__ import annotations

import sys

from mfcat.projective import exceptional_collection_table, koszul_KE_check, pn_line_cohomology


def main(n_max: int = 3):
    for n in range(1, n_max + 1):
        print(f"P^{n}: h^i(O(d))")
        for d in range(-n - 3, 4):
            print(f"  d={d:3}  {list(pn_line_cohomology(n, d).dims)}")
        t = exceptional_collection_table(n)
        print(f"  folded Hom table for O({t.twists[0]})..O({t.twists[-1]}), pass={t.passed}")
        width = max(len(str(list(c))) for row in t.folded for c in row)
        for a, row in zip(t.twists, t.folded):
            cells = " ".join(f"{str(list(c)):>{width}}" for c in row)
            print(f"    O({a:2}) | {cells}")
    print("Koszul complex on y1..yr")
    for r in range(1, n_max + 2):
        res = koszul_KE_check(r)
        print(f"  r={r} pass={res.passed} kernel ranks {res.kernel_ranks} "
              f"homology k-dims {[k for _, _, k in res.homology]}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 3)
