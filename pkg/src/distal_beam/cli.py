"""Command-line front-end: shape, sweep, and oracle runs from scenario files.

Exit codes: 0 success, 2 scenario/config error, 3 numerical failure in all
requested cases.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import constraints, disk_chain, geometry
from .curvature import FourierCurvature
from .errors import NonConvergenceError, SelfIntersectError
from .export import SvgPlot, data_limits, write_csv, write_curve_csv
from .scenario import Scenario, ScenarioError, load_scenario

REPORT_HEADER = ["alpha", "L1", "L2", "Lc", "theta_L", "theta_bar", "tip_ratio"]

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"]


def _report_row(r: geometry.InvariantReport) -> list[float]:
    return [r.alpha, r.l1, r.l2, r.lc, r.theta_tip, r.theta_bar, r.tip_ratio]


def initial_curvature(scn: Scenario) -> FourierCurvature:
    if scn.coeffs is not None:
        return FourierCurvature(coeffs=np.array(scn.coeffs), length_L=scn.beam.length)
    return constraints.fit_initial_curvature(scn.targets, scn.beam)


def sweep_direction(scn: Scenario) -> np.ndarray:
    basis = constraints.nullspace(constraints.build_constraint_matrix(scn.beam))
    if scn.sweep is not None and scn.sweep.direction_index is not None:
        return basis.vectors[scn.sweep.direction_index]
    return constraints.default_direction(basis, scn.beam)


def _rod_curves(kappa: FourierCurvature, cfg: geometry.BeamConfig):
    ref = geometry.integrate_reference_curve(kappa, cfg)
    par = geometry.offset_parallel(ref, cfg.offset)
    conv = geometry.offset_convergent(ref, cfg.offset, cfg.length)
    return ref, par, conv


def cmd_shape(scn: Scenario, out: Path) -> int:
    kappa = initial_curvature(scn)
    try:
        report = geometry.invariant_report(kappa, scn.beam)
    except SelfIntersectError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    ref, par, conv = _rod_curves(kappa, scn.beam)
    write_curve_csv(out / "rod_reference.csv", ref)
    write_curve_csv(out / "rod_parallel.csv", par)
    write_curve_csv(out / "rod_convergent.csv", conv)
    write_csv(out / "report.csv", REPORT_HEADER, [_report_row(report)])

    xlim, ylim = data_limits([c.points for c in (ref, par, conv)])
    plot = SvgPlot(xlim, ylim)
    for curve, color in zip((ref, par, conv), _COLORS):
        plot.polyline(curve.points, color=color)
    plot.write(out / "shape.svg")
    return 0


def cmd_sweep(scn: Scenario, out: Path) -> int:
    if scn.sweep is None:
        print("error: scenario has no 'sweep' section", file=sys.stderr)
        return 2
    kappa0 = initial_curvature(scn)
    direction = sweep_direction(scn)

    frames_dir = out / "frames"
    frames_dir.mkdir(exist_ok=True)
    rows = []
    frames = []
    n_failed = 0
    for i, alpha in enumerate(scn.sweep.alphas):
        kappa = constraints.deformed(kappa0, direction, alpha)
        try:
            report = geometry.invariant_report(kappa, scn.beam, alpha=alpha)
        except SelfIntersectError as err:
            print(f"warning: alpha={alpha:g} skipped: {err}", file=sys.stderr)
            rows.append([alpha] + [math.nan] * 6 + ["self-intersect"])
            n_failed += 1
            continue
        rows.append(_report_row(report) + ["ok"])
        ref, par, conv = _rod_curves(kappa, scn.beam)
        frames.append((alpha, ref))
        frame = np.column_stack([
            ref.grid.nodes, ref.theta, ref.points, par.points, conv.points,
        ])
        write_csv(
            frames_dir / f"frame_{i:03d}.csv",
            ["s", "theta", "x", "y", "x_parallel", "y_parallel", "x_convergent", "y_convergent"],
            frame,
        )
    write_csv(out / "invariants.csv", REPORT_HEADER + ["status"], rows)
    if not frames:
        print("error: all sweep amplitudes failed", file=sys.stderr)
        return 3

    base_tip = frames[0][1].tip
    tip_line = np.array([[0.0, 0.0], 1.1 * base_tip])
    xlim, ylim = data_limits([c.points for _, c in frames] + [tip_line])
    plot = SvgPlot(xlim, ylim)
    plot.polyline(tip_line, color="#555555", width=1.0, dashed=True)
    for j, (_, curve) in enumerate(frames):
        plot.polyline(curve.points, color=_COLORS[j % len(_COLORS)])
    plot.write(out / "sweep.svg")
    return 0


def _order(err_coarse: float, err_fine: float) -> float:
    # per doubling of the interval count; degenerate when already at roundoff
    if err_fine < 1e-14 or err_coarse < 1e-14:
        return math.inf
    return math.log2(err_coarse / err_fine)


def cmd_oracle(scn: Scenario, out: Path) -> int:
    if scn.oracle is None:
        print("error: scenario has no 'oracle' section", file=sys.stderr)
        return 2
    kappa = initial_curvature(scn)
    try:
        cont = geometry.invariant_report(kappa, scn.beam)
    except SelfIntersectError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    exact_lc = geometry.length_convergent_exact(kappa, scn.beam)

    rows = []
    errors = {}
    for n in scn.oracle.n_disks:
        chain = disk_chain.chain_from_curvature(kappa, scn.beam, n)
        disc = disk_chain.discrete_invariant_report(chain)
        errs = (
            abs(disc.theta_tip - cont.theta_tip),
            abs(disc.tip_ratio - cont.tip_ratio),
            abs(disc.l1 - scn.beam.length),
            abs(disc.l2 - cont.l2),
            abs(disc.lc - exact_lc),
        )
        errors[n] = errs
        rows.append([n, *errs])
    write_csv(
        out / "oracle.csv",
        ["n_disks", "tip_angle_err", "tip_ratio_err", "l1_err", "l2_err", "lc_err"],
        rows,
    )

    pairs = list(zip(scn.oracle.n_disks[:-1], scn.oracle.n_disks[1:]))
    conv_rows = [
        [a, b, _order(errors[a][0], errors[b][0]), _order(errors[a][1], errors[b][1]),
         _order(errors[a][4], errors[b][4])]
        for a, b in pairs
    ]
    write_csv(
        out / "convergence.csv",
        ["n_coarse", "n_fine", "order_tip_angle", "order_tip_ratio", "order_lc"],
        conv_rows,
    )

    if scn.oracle.perturbation is not None:
        p = scn.oracle.perturbation
        proj_rows = []
        n_failed = 0
        for n in scn.oracle.n_disks:
            chain = disk_chain.chain_from_curvature(kappa, scn.beam, n)
            mids = 0.5 * (chain.stations()[:-1] + chain.stations()[1:])
            bump = p.amplitude * chain.segment_length * np.exp(
                -(((mids - p.center * scn.beam.length) / (p.width * scn.beam.length)) ** 2)
            )
            target = disk_chain.rod_lengths(chain)
            base = disk_chain.discrete_invariant_report(chain)
            try:
                projected = disk_chain.project_to_constraints(chain, target, bump)
            except NonConvergenceError as err:
                print(f"warning: n_disks={n} projection failed: {err}", file=sys.stderr)
                proj_rows.append([n, math.nan, math.nan, "failed"])
                n_failed += 1
                continue
            after = disk_chain.discrete_invariant_report(projected)
            tip = np.array(after.tip)
            line_dir = np.array([math.cos(cont.theta_bar), math.sin(cont.theta_bar)])
            perp = abs(tip[0] * line_dir[1] - tip[1] * line_dir[0])
            proj_rows.append([n, abs(after.theta_tip - base.theta_tip), perp, "ok"])
        write_csv(
            out / "projection.csv",
            ["n_disks", "tip_angle_change", "tip_perp_deviation", "status"],
            proj_rows,
        )
        if n_failed == len(scn.oracle.n_disks):
            print("error: all projection cases failed", file=sys.stderr)
            return 3
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="distal-beam",
        description="Planar three-rod beam model: shapes, length-preserving "
        "deformation sweeps, and a discrete disk-chain oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("shape", "write the three rod curves and the invariance report"),
        ("sweep", "run a length-preserving deformation sweep"),
        ("oracle", "compare the continuum model against the disk-chain oracle"),
    ]:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="scenario JSON file")
        cmd.add_argument("--out", required=True, help="output directory")
        cmd.add_argument("--grid-n", type=int, default=None, help="override grid sample count")
        cmd.add_argument("--seed", type=int, default=None,
                         help="reserved for future randomized tests; currently unused")
    args = parser.parse_args(argv)

    try:
        scn = load_scenario(args.config, grid_n=args.grid_n)
    except FileNotFoundError:
        print(f"error: scenario file not found: {args.config}", file=sys.stderr)
        return 2
    except (ScenarioError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    handler = {"shape": cmd_shape, "sweep": cmd_sweep, "oracle": cmd_oracle}[args.command]
    return handler(scn, out)


if __name__ == "__main__":
    sys.exit(main())
