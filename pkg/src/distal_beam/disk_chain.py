"""Discrete disk-chain oracle: rigid links, hinge joints, rods through holes.

A chain of n rigid guide disks spaced by equal backbone links discretizes
the continuum beam.  Disk k carries three holes on its normal line at
offsets (0, a0, a0 * (1 - s_k / L)); rod lengths are polyline lengths
through consecutive holes.  This is an independent brute-force check of the
continuum invariants: backbone length is exact by construction, and hole
polylines converge to the continuum rod lengths at O(1/n^2).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .curvature import FourierCurvature, tangent_angle
from .errors import DegenerateTipError, NonConvergenceError
from .geometry import BeamConfig, InvariantReport


@dataclass(frozen=True)
class DiskChain:
    """Hinge chain of guide disks; joint_angles[i] is the relative rotation
    between disk i and disk i+1."""

    length: float
    offset: float
    joint_angles: np.ndarray  # (n_disks - 1,)

    def __post_init__(self):
        phi = np.asarray(self.joint_angles, dtype=float)
        if phi.ndim != 1 or phi.size < 2:
            raise ValueError("need at least 3 disks (2 joints)")
        phi.flags.writeable = False
        object.__setattr__(self, "joint_angles", phi)

    @property
    def n_disks(self) -> int:
        return self.joint_angles.size + 1

    @property
    def segment_length(self) -> float:
        return self.length / (self.n_disks - 1)

    def stations(self) -> np.ndarray:
        return np.linspace(0.0, self.length, self.n_disks)

    def disk_orientations(self) -> np.ndarray:
        """Absolute disk angles theta_k, theta_0 = 0."""
        theta = np.empty(self.n_disks)
        theta[0] = 0.0
        np.cumsum(self.joint_angles, out=theta[1:])
        return theta

    def backbone_points(self) -> np.ndarray:
        """Rigid-link polyline; link k points along the mean of the adjacent
        disk angles, so the backbone length is exactly L for any joints."""
        theta = self.disk_orientations()
        psi = 0.5 * (theta[:-1] + theta[1:])
        h = self.segment_length
        pts = np.zeros((self.n_disks, 2))
        np.cumsum(h * np.cos(psi), out=pts[1:, 0])
        np.cumsum(h * np.sin(psi), out=pts[1:, 1])
        return pts

    def hole_points(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Hole positions of the three rods at every disk, each (n, 2)."""
        theta = self.disk_orientations()
        pts = self.backbone_points()
        normals = np.column_stack([-np.sin(theta), np.cos(theta)])
        taper = self.offset * (1.0 - self.stations() / self.length)
        return pts, pts + self.offset * normals, pts + taper[:, None] * normals


@dataclass(frozen=True)
class RodLengths:
    """Polyline lengths of the three rods through consecutive holes."""

    l1: float
    l2: float
    lc: float


def _polyline_length(points: np.ndarray) -> float:
    return float(np.sum(np.linalg.norm(np.diff(points, axis=0), axis=1)))


def chain_from_curvature(kappa: FourierCurvature, cfg: BeamConfig, n_disks: int) -> DiskChain:
    """Sample the continuum tangent field at the disk stations."""
    if n_disks < 3:
        raise ValueError(f"n_disks must be >= 3, got {n_disks}")
    theta = tangent_angle(kappa, np.linspace(0.0, cfg.length, n_disks))
    return DiskChain(length=cfg.length, offset=cfg.offset, joint_angles=np.diff(theta))


def rod_lengths(chain: DiskChain) -> RodLengths:
    p1, p2, pc = chain.hole_points()
    return RodLengths(
        l1=_polyline_length(p1), l2=_polyline_length(p2), lc=_polyline_length(pc)
    )


def project_to_constraints(
    chain: DiskChain,
    target: RodLengths,
    perturbation: np.ndarray,
    max_iter: int = 50,
    tol_scale: float = 1e-10,
) -> DiskChain:
    """Apply a joint-angle perturbation, then restore the rod lengths.

    Gauss-Newton with minimum-norm steps on the two residuals
    (l2 - target.l2, lc - target.lc); l1 is preserved automatically by the
    rigid links.  The residual norm must decrease monotonically, otherwise
    the perturbation is deemed too large.
    """
    perturbation = np.asarray(perturbation, dtype=float)
    if perturbation.shape != chain.joint_angles.shape:
        raise ValueError("perturbation shape does not match joint angles")
    tol = tol_scale * chain.length
    phi = chain.joint_angles + perturbation

    def residual(angles: np.ndarray) -> np.ndarray:
        lengths = rod_lengths(replace(chain, joint_angles=angles))
        return np.array([lengths.l2 - target.l2, lengths.lc - target.lc])

    r = residual(phi)
    step = 1e-7
    for _ in range(max_iter):
        norm = np.max(np.abs(r))
        if norm <= tol:
            return replace(chain, joint_angles=phi)
        J = np.empty((2, phi.size))
        for j in range(phi.size):
            bumped = phi.copy()
            bumped[j] += step
            J[:, j] = (residual(bumped) - r) / step
        phi = phi + np.linalg.pinv(J) @ (-r)
        r_new = residual(phi)
        if np.max(np.abs(r_new)) >= norm:
            raise NonConvergenceError(
                "length projection stalled (perturbation too large?)",
                residual=float(np.max(np.abs(r_new))),
            )
        r = r_new
    if np.max(np.abs(r)) <= tol:
        return replace(chain, joint_angles=phi)
    raise NonConvergenceError(
        "length projection did not converge", residual=float(np.max(np.abs(r)))
    )


def discrete_invariant_report(chain: DiskChain, alpha: float = 0.0) -> InvariantReport:
    """Invariance-table row evaluated on the discrete chain."""
    theta = chain.disk_orientations()
    tip = chain.backbone_points()[-1]
    if abs(tip[0]) < 1e-9 * chain.length:
        raise DegenerateTipError(f"x(L) = {tip[0]:.3e} is numerically zero; tip ratio undefined")
    lengths = rod_lengths(chain)
    theta_bar = float(np.trapezoid(theta, dx=chain.segment_length)) / chain.length
    return InvariantReport(
        alpha=float(alpha),
        l1=lengths.l1,
        l2=lengths.l2,
        lc=lengths.lc,
        theta_tip=float(theta[-1]),
        theta_bar=theta_bar,
        tip_ratio=float(tip[1] / tip[0]),
        tip=(float(tip[0]), float(tip[1])),
    )
