"""Sweep the weight simplex on a case study and print how the optimal fleet moves.

    python demos/weight_sweep.py [--scenario case_study_1] [--grid 6] [--csv sweep.csv]

Every grid point keeps its single best fleet; repeated fleets are listed once
with the first weight vector that produced them.
"""

from __future__ import annotations

import argparse
import csv

from agridse.catalog import default_catalog
from agridse.constraints import load_scenario
from agridse.ilp import enumerate_configurations, weight_sweep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scenario", default="case_study_1")
    ap.add_argument("--grid", type=int, default=6)
    ap.add_argument("--csv", help="also write the rows to this file")
    args = ap.parse_args()

    catalog = default_catalog()
    scen = load_scenario(args.scenario, catalog)
    configs = enumerate_configurations(catalog, scen)
    pool = weight_sweep(configs, scen, grid_resolution=args.grid)
    header = ["alpha", "beta", "gamma", "units", "lines", "total_cost", "coverage_m2", "payload_kg", "sat_valid"]
    rows = []
    for e in pool.entries:
        a, b, g = e.weights.normalized()
        d = e.design
        rows.append([f"{float(a):.2f}", f"{float(b):.2f}", f"{float(g):.2f}", str(d.total_units),
                     str(len(d.lines)), f"{d.total_cost_cents / 100:.2f}", str(d.total_coverage_m2),
                     f"{d.total_payload_kg:.2f}", str(e.sat_valid).lower()])
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    for r in [header] + rows:
        print("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    print(f"\n{len(rows)} distinct fleets from {pool.log.solves} solves over {len(configs)} configurations")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            csv.writer(fh).writerows([header] + rows)


if __name__ == "__main__":
    main()
