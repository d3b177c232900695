#!/usr/bin/env python3
"""Print the invariance table for the reference scenario.

Runs a three-amplitude length-preserving sweep and shows that L1, L2 and
theta(L) stay constant while Lc and y(L)/x(L) drift only at second order.

Usage: python3 scripts/reproduce_invariants.py [scenario.json]
"""

import sys
from pathlib import Path

from distal_beam.cli import initial_curvature, sweep_direction
from distal_beam.constraints import sweep
from distal_beam.scenario import load_scenario


def main() -> int:
    default = Path(__file__).resolve().parent.parent / "scenarios" / "table1.json"
    path = sys.argv[1] if len(sys.argv) > 1 else default
    scn = load_scenario(path)
    if scn.sweep is None:
        print(f"scenario {scn.name} has no sweep section", file=sys.stderr)
        return 2

    kappa0 = initial_curvature(scn)
    direction = sweep_direction(scn)
    reports = sweep(kappa0, direction, scn.sweep.alphas, scn.beam)

    print(f"{'alpha':>8} {'L1':>8} {'L2':>8} {'Lc':>8} {'theta(L)':>9} {'theta_bar':>10} {'y/x':>8}")
    for r in reports:
        print(
            f"{r.alpha:8.2f} {r.l1:8.4f} {r.l2:8.4f} {r.lc:8.4f} "
            f"{r.theta_tip:9.4f} {r.theta_bar:10.6f} {r.tip_ratio:8.4f}"
        )
    base = reports[0]
    worst = max(reports, key=lambda r: abs(r.tip_ratio - base.tip_ratio))
    print(
        f"\nmax drift:  L2 {max(abs(r.l2 - base.l2) for r in reports):.2e}, "
        f"theta(L) {max(abs(r.theta_tip - base.theta_tip) for r in reports):.2e}, "
        f"Lc {max(abs(r.lc - base.lc) for r in reports):.2e}, "
        f"y/x {abs(worst.tip_ratio - base.tip_ratio):.4f}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
