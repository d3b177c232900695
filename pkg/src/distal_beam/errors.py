"""Shared exception types for geometric and numerical failure modes."""

from __future__ import annotations


class SelfIntersectError(ValueError):
    """Parallel offset curve is locally invalid: a0 * kappa(s) >= 1 at a node."""

    def __init__(self, max_product: float, s: float, alpha: float | None = None):
        self.max_product = max_product
        self.s = s
        self.alpha = alpha
        where = f" (alpha={alpha:g})" if alpha is not None else ""
        super().__init__(
            f"parallel offset self-intersects: a0*kappa = {max_product:.6g} >= 1 "
            f"at s = {s:.6g}{where}"
        )


class DegenerateTipError(ValueError):
    """Tip ratio y(L)/x(L) is undefined because x(L) is numerically zero."""


class RankDeficientError(ValueError):
    """Constraint matrix rows are linearly dependent; nullspace is degenerate."""


class NonConvergenceError(RuntimeError):
    """Iterative solve failed to reach its residual tolerance."""

    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (final residual {residual:.3e})")
