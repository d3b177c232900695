"""Rod curves, offset constructions, lengths, and distal-posture invariants.

The three rods share a reference backbone r1(s) parameterized by arc length:
a parallel rod at constant normal offset a0, and a convergent rod whose
offset tapers linearly from a0 at the base to 0 at the tip.  The normal is
the left normal (-sin theta, cos theta), so positive a0 offsets to +y for an
initially straight beam.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curvature import (
    ArcGrid,
    FourierCurvature,
    average_angle_exact,
    cumulative_integral,
    curvature_on_grid,
    definite_integral,
    tip_angle,
)
from .errors import DegenerateTipError, SelfIntersectError


@dataclass(frozen=True)
class BeamConfig:
    """Geometric constants of one scenario: beam length, base offset, modes, grid."""

    length: float
    offset: float
    n_modes: int = 3
    grid: ArcGrid | None = None

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError(f"length must be positive, got {self.length}")
        if self.offset <= 0:
            raise ValueError(f"offset must be positive, got {self.offset}")
        if self.offset >= self.length:
            raise ValueError("offset must be smaller than the beam length (slender regime)")
        if self.n_modes < 2:
            raise ValueError(f"n_modes must be >= 2, got {self.n_modes}")
        if self.grid is None:
            object.__setattr__(self, "grid", ArcGrid(self.length))
        elif not np.isclose(self.grid.length, self.length):
            raise ValueError("grid length does not match beam length")


@dataclass(frozen=True)
class SampledCurve:
    """Discretized planar curve: tangent angles and points on an ArcGrid."""

    grid: ArcGrid
    theta: np.ndarray
    points: np.ndarray  # (n, 2)

    def __post_init__(self):
        if self.theta.shape != (self.grid.n_samples,):
            raise ValueError("theta shape does not match grid")
        if self.points.shape != (self.grid.n_samples, 2):
            raise ValueError("points shape does not match grid")

    @property
    def tip(self) -> np.ndarray:
        return self.points[-1]

    def normals(self) -> np.ndarray:
        """Left normals (-sin theta, cos theta), shape (n, 2)."""
        return np.column_stack([-np.sin(self.theta), np.cos(self.theta)])


@dataclass(frozen=True)
class InvariantReport:
    """One row of the invariance table for a deformation amplitude alpha."""

    alpha: float
    l1: float
    l2: float
    lc: float
    theta_tip: float
    theta_bar: float
    tip_ratio: float
    tip: tuple[float, float]


def curve_from_curvature_values(values: np.ndarray, grid: ArcGrid) -> SampledCurve:
    """Integrate sampled curvature values into a curve with r(0)=0, theta(0)=0.

    Direct test hook for curvature fields (e.g. constants) that are not
    representable in the Fourier basis.
    """
    theta = cumulative_integral(values, grid)
    x = cumulative_integral(np.cos(theta), grid)
    y = cumulative_integral(np.sin(theta), grid)
    return SampledCurve(grid=grid, theta=theta, points=np.column_stack([x, y]))


def integrate_reference_curve(kappa: FourierCurvature, cfg: BeamConfig) -> SampledCurve:
    """Reference backbone r1 from the curvature field."""
    return curve_from_curvature_values(curvature_on_grid(kappa, cfg.grid), cfg.grid)


def offset_parallel(ref: SampledCurve, a0: float) -> SampledCurve:
    """Offset curve at constant normal distance a0 (same tangent angles)."""
    return SampledCurve(
        grid=ref.grid, theta=ref.theta, points=ref.points + a0 * ref.normals()
    )


def offset_convergent(ref: SampledCurve, a0: float, L: float) -> SampledCurve:
    """Offset curve whose normal distance tapers linearly from a0 to 0 at s=L."""
    taper = a0 * (1.0 - ref.grid.nodes / L)
    return SampledCurve(
        grid=ref.grid, theta=ref.theta, points=ref.points + taper[:, None] * ref.normals()
    )


def check_parallel_offset_valid(kappa_values: np.ndarray, cfg: BeamConfig) -> None:
    """Raise SelfIntersectError unless a0 * kappa(s_i) < 1 at every node."""
    products = cfg.offset * np.asarray(kappa_values, dtype=float)
    i = int(np.argmax(products))
    if products[i] >= 1.0:
        raise SelfIntersectError(float(products[i]), float(cfg.grid.nodes[i]))


def length_parallel_exact(theta_tip: float, cfg: BeamConfig) -> float:
    """Closed-form parallel rod length L2 = L - a0 * theta(L)."""
    return cfg.length - cfg.offset * theta_tip


def length_numeric(curve: SampledCurve) -> float:
    """Polyline length through the grid nodes; O(h^2) arc-length estimate."""
    return float(np.sum(np.linalg.norm(np.diff(curve.points, axis=0), axis=1)))


def length_convergent_exact(kappa: FourierCurvature, cfg: BeamConfig) -> float:
    """Convergent rod length by quadrature of the speed of the tapered offset."""
    s = cfg.grid.nodes
    k = curvature_on_grid(kappa, cfg.grid)
    taper = 1.0 - s / cfg.length
    speed = np.hypot(1.0 - cfg.offset * taper * k, cfg.offset / cfg.length)
    return definite_integral(speed, cfg.grid)


def length_convergent_approx(theta_bar: float, cfg: BeamConfig) -> float:
    """First-order small-curvature approximation of the convergent rod length."""
    hyp = np.hypot(cfg.length, cfg.offset)
    return float(hyp - cfg.offset / hyp * cfg.length * theta_bar)


def tip_angle_from_lengths(l2: float, cfg: BeamConfig) -> float:
    """Invert the parallel length constraint: theta(L) = (L - L2) / a0."""
    return (cfg.length - l2) / cfg.offset


def average_angle(theta: np.ndarray, grid: ArcGrid) -> float:
    """Mean tangent angle (1/L) int_0^L theta ds by quadrature."""
    return definite_integral(theta, grid) / grid.length


def tip_posture(curve: SampledCurve) -> tuple[float, float, np.ndarray]:
    """(theta(L), y(L)/x(L), tip point); the ratio needs x(L) away from zero."""
    tip = curve.tip
    if abs(tip[0]) < 1e-9 * curve.grid.length:
        raise DegenerateTipError(f"x(L) = {tip[0]:.3e} is numerically zero; tip ratio undefined")
    return float(curve.theta[-1]), float(tip[1] / tip[0]), tip


def invariant_report(kappa: FourierCurvature, cfg: BeamConfig, alpha: float = 0.0) -> InvariantReport:
    """Assemble all invariance-table quantities for one curvature state.

    theta(L), theta_bar, and L2 come from the closed-form basis integrals so
    that quantities the length constraints fix exactly are reported without
    quadrature noise.  L1 is the polyline length of the reference curve: a
    self-check of the arc-length parameterization.  Lc and the tip ratio
    carry the genuine second-order drift.
    """
    k_values = curvature_on_grid(kappa, cfg.grid)
    check_parallel_offset_valid(k_values, cfg)
    curve = integrate_reference_curve(kappa, cfg)
    theta_L = tip_angle(kappa)
    theta_bar = average_angle_exact(kappa)
    _, ratio, tip = tip_posture(curve)
    return InvariantReport(
        alpha=float(alpha),
        l1=length_numeric(curve),
        l2=length_parallel_exact(theta_L, cfg),
        lc=length_convergent_exact(kappa, cfg),
        theta_tip=theta_L,
        theta_bar=theta_bar,
        tip_ratio=ratio,
        tip=(float(tip[0]), float(tip[1])),
    )
