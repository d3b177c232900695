"""Length-constraint system on Fourier coefficients and deformation sweeps.

Keeping L2 and (to first order) Lc constant requires the curvature
fluctuation to satisfy two linear integral constraints:

    int_0^L delta_kappa ds = 0        (distal angle)
    int_0^L s delta_kappa ds = 0      (first moment / average angle)

Both are linear in the Fourier coefficients, so feasible fluctuations form
the nullspace of a 2 x 2M matrix A whose entries are closed-form basis
integrals.  Deformation sweeps move along unit-norm nullspace directions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curvature import FourierCurvature, basis_line_integrals, basis_matrix, curvature_on_grid
from .errors import NonConvergenceError, RankDeficientError, SelfIntersectError
from .geometry import BeamConfig, InvariantReport, integrate_reference_curve, invariant_report

_RANK_TOL = 1e-12


@dataclass(frozen=True)
class ConstraintMatrix:
    """2 x 2M matrix: row 0 = int B_i ds, row 1 = int s B_i ds."""

    matrix: np.ndarray
    length: float

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != 2 or m.shape[1] % 2 != 0:
            raise ValueError(f"expected a 2 x 2M matrix, got shape {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class DeformationBasis:
    """Orthonormal nullspace vectors of the constraint matrix, one per row."""

    vectors: np.ndarray  # (2M - 2, 2M)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]


def build_constraint_matrix(cfg: BeamConfig) -> ConstraintMatrix:
    """Constraint matrix from closed-form antiderivatives (no quadrature)."""
    row0, row1 = basis_line_integrals(cfg.n_modes, cfg.length)
    return ConstraintMatrix(matrix=np.vstack([row0, row1]), length=cfg.length)


def nullspace(A: ConstraintMatrix) -> DeformationBasis:
    """Orthonormal basis of {c : Ac = 0} via SVD, with a fixed sign convention.

    Kernel vectors are the right singular vectors beyond the row rank, kept
    in descending singular-value order; each vector's first nonzero
    component is made positive so the basis is reproducible.
    """
    m = A.matrix
    _, sv, vt = np.linalg.svd(m, full_matrices=True)
    if sv[-1] <= _RANK_TOL * sv[0]:
        raise RankDeficientError("constraint matrix rows are linearly dependent")
    kernel = vt[m.shape[0]:]
    signs = np.ones(kernel.shape[0])
    for i, v in enumerate(kernel):
        lead = v[np.abs(v) > 1e-12]
        if lead.size and lead[0] < 0:
            signs[i] = -1.0
    return DeformationBasis(vectors=signs[:, None] * kernel)


def fit_initial_curvature(targets: tuple[float, float], cfg: BeamConfig) -> FourierCurvature:
    """Minimum-norm coefficients hitting (theta_tip, theta_bar).

    Both targets are linear in the coefficients:
        row0 . C = theta_tip
        row1 . C = L * theta_tip - L * theta_bar
    (the second from int theta ds = L theta(L) - int s kappa ds), so the
    pseudoinverse gives the unique minimum-norm solution.
    """
    theta_tip, theta_bar = targets
    A = build_constraint_matrix(cfg)
    if np.linalg.svd(A.matrix, compute_uv=False)[-1] <= _RANK_TOL:
        raise RankDeficientError("constraint matrix rows are linearly dependent")
    b = np.array([theta_tip, cfg.length * (theta_tip - theta_bar)])
    coeffs = np.linalg.pinv(A.matrix) @ b
    return FourierCurvature(coeffs=coeffs, length_L=cfg.length)


def default_direction(basis: DeformationBasis, cfg: BeamConfig) -> np.ndarray:
    """Kernel vector with the largest mid-span curvature coupling |dk(L/2)|."""
    B_mid = basis_matrix(cfg.n_modes, cfg.length / 2.0, cfg.length)[:, 0]
    return basis.vectors[int(np.argmax(np.abs(basis.vectors @ B_mid)))]


def max_feasible_amplitude(
    kappa0: FourierCurvature, direction: np.ndarray, cfg: BeamConfig, limit: float = 0.9
) -> float:
    """Largest alpha >= 0 keeping a0 |kappa0 + alpha * dk| <= limit on the grid.

    The bound is per-node affine in alpha, so the minimum over nodes of the
    positive crossing points is exact on the grid.
    """
    k0 = curvature_on_grid(kappa0, cfg.grid)
    dk = direction @ basis_matrix(cfg.n_modes, cfg.grid.nodes, cfg.length)
    c = limit / cfg.offset
    if np.any(np.abs(k0) > c):
        return 0.0
    with np.errstate(divide="ignore"):
        upper = np.where(dk > 0, (c - k0) / dk, np.inf)
        lower = np.where(dk < 0, (-c - k0) / dk, np.inf)
    return float(min(upper.min(), lower.min()))


def deformed(kappa0: FourierCurvature, direction: np.ndarray, alpha: float) -> FourierCurvature:
    """kappa0 + alpha * direction, as a new curvature field."""
    return FourierCurvature(
        coeffs=kappa0.coeffs + alpha * np.asarray(direction, dtype=float),
        length_L=kappa0.length_L,
    )


def sweep(
    kappa0: FourierCurvature,
    direction: np.ndarray,
    alphas,
    cfg: BeamConfig,
) -> list[InvariantReport]:
    """One invariance report per amplitude along a nullspace direction.

    Raises SelfIntersectError tagged with the offending alpha if any
    amplitude violates the parallel-offset validity bound.
    """
    reports = []
    for alpha in alphas:
        try:
            reports.append(invariant_report(deformed(kappa0, direction, alpha), cfg, alpha=alpha))
        except SelfIntersectError as err:
            raise SelfIntersectError(err.max_product, err.s, alpha=float(alpha)) from None
    return reports


def fit_tip_position(
    targets: tuple[float, tuple[float, float]],
    cfg: BeamConfig,
    max_iter: int = 100,
    tol: float = 1e-8,
) -> FourierCurvature:
    """Gauss-Newton fit of (theta(L), tip point) over the coefficient vector.

    Residual is (theta(L) - theta*, x(L) - x*, y(L) - y*) with a
    finite-difference Jacobian (step 1e-6); the iteration starts from the
    linear fit with theta_bar guessed from the target tip direction.
    """
    theta_star, (x_star, y_star) = targets
    if np.hypot(x_star, y_star) > cfg.length:
        raise NonConvergenceError(
            "target tip lies outside the inextensibility bound |tip| <= L",
            residual=float(np.hypot(x_star, y_star) - cfg.length),
        )

    row0, _ = basis_line_integrals(cfg.n_modes, cfg.length)

    def residual(coeffs: np.ndarray) -> np.ndarray:
        kappa = FourierCurvature(coeffs=coeffs, length_L=cfg.length)
        tip = integrate_reference_curve(kappa, cfg).tip
        return np.array([row0 @ coeffs - theta_star, tip[0] - x_star, tip[1] - y_star])

    coeffs = fit_initial_curvature((theta_star, np.arctan2(y_star, x_star)), cfg).coeffs.copy()
    r = residual(coeffs)
    step = 1e-6
    for _ in range(max_iter):
        if np.linalg.norm(r) <= tol:
            return FourierCurvature(coeffs=coeffs, length_L=cfg.length)
        J = np.empty((3, coeffs.size))
        for j in range(coeffs.size):
            bumped = coeffs.copy()
            bumped[j] += step
            J[:, j] = (residual(bumped) - r) / step
        coeffs = coeffs + np.linalg.pinv(J) @ (-r)
        r = residual(coeffs)
    if np.linalg.norm(r) <= tol:
        return FourierCurvature(coeffs=coeffs, length_L=cfg.length)
    raise NonConvergenceError("tip-position fit did not converge", residual=float(np.linalg.norm(r)))
