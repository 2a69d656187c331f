#!/usr/bin/env python3
"""Print graded dimension tables of the positive cones next to their closed
series, for a quick visual comparison.

Example:
    python scripts/hilbert_report.py --max 6
"""

import argparse

from qhc.daha import sdaha_spec
from qhc.dqops import dq_spec
from qhc.invham import ham_spec, inv_spec
from qhc.rewrite import hilbert_table
from qhc.suites import invariant_series, spherical_series


def show(name, spec, series, M):
    tab = hilbert_table(spec, (M, M))
    print(f"\n{name}: rows m = 0..{M}, columns n = 0..{M} (computed | series)")
    mism = 0
    for m in range(M + 1):
        cells = []
        for n in range(M + 1):
            d = tab.dim(m, n)
            s = series.get((m, n), 0)
            cells.append(f"{d:3d}" if d == s else f"{d}!={s}")
            mism += d != s
        print("   " + " ".join(cells))
    print("   all entries match the series" if not mism else f"   {mism} mismatches")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=6)
    args = ap.parse_args()
    M = args.max
    sph = spherical_series(M, M)
    inv = invariant_series(M, M)
    show("spherical positive cone", sdaha_spec(), sph, M)
    show("reduction positive cone", ham_spec(), sph, M)
    show("invariant positive cone", inv_spec(), inv, M)
    from math import comb

    dq_series = {(m, n): comb(m + 3, 3) * comb(n + 3, 3) for m in range(M + 1) for n in range(M + 1)}
    show("operator positive cone", dq_spec(), dq_series, min(M, 4))


if __name__ == "__main__":
    main()
