"""Truncated Fourier curvature fields and quadrature on a uniform arc-length grid.

Conventions
-----------
The curvature of the backbone curve is expanded in 2M modes,

    kappa(s) = sum_n a_n cos(n pi s / L) + b_n sin(n pi s / L),

with the coefficient vector ordered (a_1..a_M, b_1..b_M).  All integrals in
this module use the composite trapezoid rule on a uniform grid, which is
O(h^2) everywhere on the grid and exact for linear integrands.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ArcGrid:
    """Uniform arc-length grid s_0 = 0 .. s_{n-1} = L.

    n_samples must be odd so that halving the interval count always lands on
    existing nodes (convenient for refinement studies).
    """

    length: float
    n_samples: int = 2049

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError(f"grid length must be positive, got {self.length}")
        if self.n_samples < 3 or self.n_samples % 2 == 0:
            raise ValueError(f"n_samples must be odd and >= 3, got {self.n_samples}")

    @property
    def spacing(self) -> float:
        return self.length / (self.n_samples - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.length, self.n_samples)


@dataclass(frozen=True)
class FourierCurvature:
    """Curvature field kappa(s) = coeffs . basis(s) on [0, length_L].

    coeffs has even length 2M with the cosine amplitudes first.
    """

    coeffs: np.ndarray
    length_L: float

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size < 2 or c.size % 2 != 0:
            raise ValueError(f"coeffs must be a 1-d vector of even length >= 2, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coeffs must be finite")
        if self.length_L <= 0:
            raise ValueError(f"length_L must be positive, got {self.length_L}")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def n_modes(self) -> int:
        return self.coeffs.size // 2


def eval_basis(m: int, kind: str, s, L: float):
    """Evaluate a single basis function cos(m pi s / L) or sin(m pi s / L).

    m is 1-based; s may be a scalar or array in [0, L].
    """
    if m < 1:
        raise ValueError(f"mode index must be >= 1, got {m}")
    s = np.asarray(s, dtype=float)
    if np.any(s < 0.0) or np.any(s > L):
        raise ValueError(f"arc length out of range [0, {L}]")
    arg = m * np.pi * s / L
    if kind == "cos":
        return np.cos(arg)
    if kind == "sin":
        return np.sin(arg)
    raise ValueError(f"kind must be 'cos' or 'sin', got {kind!r}")


def basis_matrix(M: int, s, L: float) -> np.ndarray:
    """Stack all 2M basis functions at the points s, shape (2M, len(s))."""
    s = np.atleast_1d(np.asarray(s, dtype=float))
    n = np.arange(1, M + 1)[:, None]
    arg = n * np.pi * s[None, :] / L
    return np.vstack([np.cos(arg), np.sin(arg)])


def eval_curvature(kappa: FourierCurvature, s):
    """kappa(s) as the dot product of the coefficients with the basis at s."""
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0.0) or np.any(s_arr > kappa.length_L):
        raise ValueError(f"arc length out of range [0, {kappa.length_L}]")
    B = basis_matrix(kappa.n_modes, s_arr, kappa.length_L)
    out = kappa.coeffs @ B
    return float(out[0]) if s_arr.ndim == 0 else out


def curvature_on_grid(kappa: FourierCurvature, grid: ArcGrid) -> np.ndarray:
    if not np.isclose(grid.length, kappa.length_L):
        raise ValueError("grid length does not match curvature length_L")
    return eval_curvature(kappa, grid.nodes)


def cumulative_integral(values: np.ndarray, grid: ArcGrid) -> np.ndarray:
    """Running integral F(s_i) of a sampled function, F(s_0) = 0.

    Composite trapezoid on the uniform grid; exact for linear integrands.
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (grid.n_samples,):
        raise ValueError(f"expected {grid.n_samples} samples, got shape {values.shape}")
    out = np.empty_like(values)
    out[0] = 0.0
    np.cumsum((values[1:] + values[:-1]) * (0.5 * grid.spacing), out=out[1:])
    return out


def definite_integral(values: np.ndarray, grid: ArcGrid) -> float:
    """Trapezoid integral of a sampled function over the whole grid."""
    values = np.asarray(values, dtype=float)
    if values.shape != (grid.n_samples,):
        raise ValueError(f"expected {grid.n_samples} samples, got shape {values.shape}")
    return float(np.trapezoid(values, dx=grid.spacing))


def basis_line_integrals(M: int, L: float) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form integrals of the basis functions over [0, L].

    Returns (row0, row1), each of length 2M:
        row0[i] = int_0^L B_i(s) ds
        row1[i] = int_0^L s B_i(s) ds
    The cosine entries of row0 vanish identically (whole half-periods).
    """
    n = np.arange(1, M + 1, dtype=float)
    sgn = (-1.0) ** n
    row0 = np.concatenate([np.zeros(M), (L / (n * np.pi)) * (1.0 - sgn)])
    row1 = np.concatenate(
        [(L**2 / (n**2 * np.pi**2)) * (sgn - 1.0), -(L**2) * sgn / (n * np.pi)]
    )
    return row0, row1


def tangent_angle(kappa: FourierCurvature, s):
    """theta(s) = int_0^s kappa du from the closed-form antiderivative.

    Exact (no quadrature); accepts scalar or array s in [0, L].
    """
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr < 0.0) or np.any(s_arr > kappa.length_L):
        raise ValueError(f"arc length out of range [0, {kappa.length_L}]")
    M, L = kappa.n_modes, kappa.length_L
    n = np.arange(1, M + 1)[:, None]
    arg = n * np.pi * np.atleast_1d(s_arr)[None, :] / L
    scale = L / (n * np.pi)
    prim = np.vstack([scale * np.sin(arg), scale * (1.0 - np.cos(arg))])
    out = kappa.coeffs @ prim
    return float(out[0]) if s_arr.ndim == 0 else out


def tip_angle(kappa: FourierCurvature) -> float:
    """theta(L) = int_0^L kappa ds, from the closed-form basis integrals."""
    row0, _ = basis_line_integrals(kappa.n_modes, kappa.length_L)
    return float(row0 @ kappa.coeffs)


def average_angle_exact(kappa: FourierCurvature) -> float:
    """Mean tangent angle (1/L) int_0^L theta ds, via integration by parts.

    int theta ds = L theta(L) - int s kappa ds, both terms closed-form.
    """
    row0, row1 = basis_line_integrals(kappa.n_modes, kappa.length_L)
    L = kappa.length_L
    return float(L * (row0 @ kappa.coeffs) - row1 @ kappa.coeffs) / L
