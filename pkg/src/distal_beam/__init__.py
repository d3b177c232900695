"""Planar distal-stable beam model: three coupled rods whose length
constraints make the distal posture invariant under intermediate deformation."""

from .curvature import ArcGrid, FourierCurvature, eval_basis, eval_curvature
from .errors import (
    DegenerateTipError,
    NonConvergenceError,
    RankDeficientError,
    SelfIntersectError,
)
from .geometry import BeamConfig, InvariantReport, SampledCurve, invariant_report
from .constraints import (
    ConstraintMatrix,
    DeformationBasis,
    build_constraint_matrix,
    fit_initial_curvature,
    fit_tip_position,
    nullspace,
    sweep,
)
from .disk_chain import DiskChain, RodLengths, chain_from_curvature, rod_lengths

__version__ = "0.1.0"

__all__ = [
    "ArcGrid",
    "BeamConfig",
    "ConstraintMatrix",
    "DeformationBasis",
    "DegenerateTipError",
    "DiskChain",
    "FourierCurvature",
    "InvariantReport",
    "NonConvergenceError",
    "RankDeficientError",
    "RodLengths",
    "SampledCurve",
    "SelfIntersectError",
    "build_constraint_matrix",
    "chain_from_curvature",
    "eval_basis",
    "eval_curvature",
    "fit_initial_curvature",
    "fit_tip_position",
    "invariant_report",
    "nullspace",
    "rod_lengths",
    "sweep",
]
