"""Scenario files: JSON schema, validation, and loading.

A scenario pins everything a run needs: the beam constants, the initial
shape (boundary-condition targets or an explicit coefficient vector,
exactly one of the two), and optional sweep / oracle sections.  See
scenarios/schema.json for the documented field list.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .curvature import ArcGrid
from .geometry import BeamConfig

SCHEMA_VERSION = 1


class ScenarioError(ValueError):
    """Invalid scenario file; carries the offending field path."""

    def __init__(self, field_path: str, message: str):
        self.field_path = field_path
        super().__init__(f"scenario field '{field_path}': {message}")


@dataclass(frozen=True)
class SweepSpec:
    alphas: tuple[float, ...]
    direction_index: int | None = None  # None -> strongest mid-span direction


@dataclass(frozen=True)
class PerturbationSpec:
    """Curvature-density bump applied to the joint angles.

    Joint i gets amplitude * h * exp(-((s_i - c L) / (w L))^2) with h the
    link length, so the physical deformation is independent of n_disks.
    """

    amplitude: float
    center: float = 0.5
    width: float = 0.15


@dataclass(frozen=True)
class OracleSpec:
    n_disks: tuple[int, ...]
    perturbation: PerturbationSpec | None = None


@dataclass(frozen=True)
class Scenario:
    name: str
    beam: BeamConfig
    targets: tuple[float, float] | None = None  # (theta_tip, theta_bar)
    coeffs: tuple[float, ...] | None = None
    sweep: SweepSpec | None = None
    oracle: OracleSpec | None = None


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ScenarioError(f"{where}.{key}" if where else key, "missing required field")
    return obj[key]


def _number(value, where: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
        raise ScenarioError(where, f"expected a finite number, got {value!r}")
    return float(value)


def _positive(value, where: str) -> float:
    x = _number(value, where)
    if x <= 0:
        raise ScenarioError(where, f"must be positive, got {x}")
    return x


def parse_scenario(data: dict, name: str = "scenario", grid_n: int | None = None) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("", "top level must be a JSON object")
    version = _require(data, "schema_version", "")
    if version != SCHEMA_VERSION:
        raise ScenarioError("schema_version", f"unsupported version {version!r}, expected {SCHEMA_VERSION}")

    beam = _require(data, "beam", "")
    length = _positive(_require(beam, "length", "beam"), "beam.length")
    offset = _positive(_require(beam, "offset", "beam"), "beam.offset")
    modes = _require(beam, "modes", "beam")
    if not isinstance(modes, int) or modes < 2:
        raise ScenarioError("beam.modes", f"must be an integer >= 2, got {modes!r}")
    n = grid_n if grid_n is not None else beam.get("grid_n", 2049)
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise ScenarioError("beam.grid_n", f"must be an odd integer >= 3, got {n!r}")
    if offset >= length:
        raise ScenarioError("beam.offset", f"must be smaller than beam.length ({length})")
    cfg = BeamConfig(length=length, offset=offset, n_modes=modes, grid=ArcGrid(length, n))

    shape = _require(data, "shape", "")
    has_targets = "targets" in shape
    has_coeffs = "coeffs" in shape
    if has_targets == has_coeffs:
        raise ScenarioError("shape", "exactly one of 'targets' or 'coeffs' must be present")
    targets = coeffs = None
    if has_targets:
        t = shape["targets"]
        targets = (
            _number(_require(t, "theta_tip", "shape.targets"), "shape.targets.theta_tip"),
            _number(_require(t, "theta_bar", "shape.targets"), "shape.targets.theta_bar"),
        )
    else:
        raw = shape["coeffs"]
        if not isinstance(raw, list) or len(raw) != 2 * modes:
            raise ScenarioError("shape.coeffs", f"must be a list of length 2*modes = {2 * modes}")
        coeffs = tuple(_number(v, f"shape.coeffs[{i}]") for i, v in enumerate(raw))

    sweep = None
    if "sweep" in data:
        sw = data["sweep"]
        raw = _require(sw, "alphas", "sweep")
        if not isinstance(raw, list) or not raw:
            raise ScenarioError("sweep.alphas", "must be a non-empty list")
        alphas = tuple(_number(a, f"sweep.alphas[{i}]") for i, a in enumerate(raw))
        idx = sw.get("direction_index")
        if idx is not None and (not isinstance(idx, int) or not 0 <= idx < 2 * modes - 2):
            raise ScenarioError("sweep.direction_index", f"must be in [0, {2 * modes - 3}]")
        sweep = SweepSpec(alphas=alphas, direction_index=idx)

    oracle = None
    if "oracle" in data:
        oc = data["oracle"]
        raw = _require(oc, "n_disks", "oracle")
        if not isinstance(raw, list) or not raw:
            raise ScenarioError("oracle.n_disks", "must be a non-empty list")
        for i, nd in enumerate(raw):
            if not isinstance(nd, int) or nd < 3:
                raise ScenarioError(f"oracle.n_disks[{i}]", f"must be an integer >= 3, got {nd!r}")
        pert = None
        if "perturbation" in oc:
            p = oc["perturbation"]
            pert = PerturbationSpec(
                amplitude=_number(_require(p, "amplitude", "oracle.perturbation"),
                                  "oracle.perturbation.amplitude"),
                center=_number(p.get("center", 0.5), "oracle.perturbation.center"),
                width=_positive(p.get("width", 0.15), "oracle.perturbation.width"),
            )
        oracle = OracleSpec(n_disks=tuple(raw), perturbation=pert)

    return Scenario(name=name, beam=cfg, targets=targets, coeffs=coeffs, sweep=sweep, oracle=oracle)


def load_scenario(path, grid_n: int | None = None) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as err:
            raise ScenarioError("", f"invalid JSON: {err}") from None
    import os

    name = os.path.splitext(os.path.basename(str(path)))[0]
    return parse_scenario(data, name=name, grid_n=grid_n)
