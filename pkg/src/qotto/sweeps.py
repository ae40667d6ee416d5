"""Parameter-space drivers: 2-D grids, maximum-power scans, the linear fit.

Every grid point is an independent limit-cycle computation over an
immutable parameter set, so sweeps parallelize trivially; results are
always gathered back into grid-index order, making repeated sweeps of the
same spec bit-identical regardless of the worker count.

Non-convergent points are data, not failures: they carry the last cycle's
ledger, N = max_iterations and converged=False.  Non-operational points
(decoupled non-11 layouts) are recorded with zero power and excluded from
argmax domains, which only ever range over engine-classified points.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .cycle import (
    DegenerateLedgerError,
    MachineKind,
    Metrics,
    NonConvergenceError,
    StrokeLedger,
    iterate_to_limit,
)
from .models import EngineParameters, ModelId, NonOperationalError, build_config

AXIS_NAMES = ("temp_ratio", "omega_ratio", "omega1_c", "g")

STATUS_OK = "ok"
STATUS_NON_CONVERGENT = "non-convergent"
STATUS_NON_OPERATIONAL = "non-operational"
STATUS_DEGENERATE = "degenerate"
STATUS_INVALID = "invalid"


@dataclass(frozen=True)
class AxisSpec:
    """One scan axis: an EngineParameters field name and a closed range."""

    name: str
    start: float
    stop: float
    step: float

    def __post_init__(self) -> None:
        if self.name not in AXIS_NAMES:
            raise ValueError(f"axis name must be one of {AXIS_NAMES}, got {self.name!r}")
        if self.step <= 0:
            raise ValueError(f"axis step must be positive, got {self.step}")
        if self.start >= self.stop + 1e-12:
            raise ValueError("axis start must not exceed stop")

    def values(self) -> list[float]:
        count = int(np.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(count)]


@dataclass(frozen=True)
class GridSpec:
    axis1: AxisSpec
    axis2: AxisSpec
    fixed: EngineParameters
    budget: int = 10**6


@dataclass(frozen=True)
class SweepPoint:
    """Outcome of one grid point; ledger/kind/metrics are None when unavailable."""

    params: EngineParameters
    status: str
    iterations: int
    converged: bool
    ledger: StrokeLedger | None
    kind: MachineKind | None
    metrics: Metrics | None

    @property
    def power(self) -> float:
        if self.metrics is not None and self.metrics.power is not None:
            return self.metrics.power
        return 0.0


class MaxPowerRecord(NamedTuple):
    """Grid argmax of the power over one scan, with the values at the peak."""

    model: ModelId
    temp_ratio: float
    argmax_level: float | None
    argmax_g: float | None
    p_max: float
    eta_at_pm: float | None
    n_at_pm: int
    converged_at_pm: bool
    boundary: bool


class MprFit(NamedTuple):
    slope: float
    intercept: float
    max_residual: float


class NoEnginePointError(Exception):
    """No engine-classified point anywhere on the scan grid."""


def evaluate_point(params: EngineParameters) -> SweepPoint:
    """Limit-cycle computation for one parameter point, never raising."""
    try:
        config = build_config(params)
    except NonOperationalError:
        return SweepPoint(
            params=params,
            status=STATUS_NON_OPERATIONAL,
            iterations=0,
            converged=False,
            ledger=None,
            kind=None,
            metrics=None,
        )
    try:
        result = iterate_to_limit(config)
        status = STATUS_OK
    except NonConvergenceError as err:
        result = err.result
        status = STATUS_NON_CONVERGENT
    except DegenerateLedgerError as err:
        result = err.result
        status = STATUS_DEGENERATE
    except ValueError:
        # e.g. a dressed gap hits zero (g^2 = omega1 * omega2): no generator exists.
        return SweepPoint(
            params=params,
            status=STATUS_INVALID,
            iterations=0,
            converged=False,
            ledger=None,
            kind=None,
            metrics=None,
        )
    return SweepPoint(
        params=params,
        status=status,
        iterations=result.iterations,
        converged=result.converged,
        ledger=result.ledger,
        kind=result.kind,
        metrics=result.metrics,
    )


def _replace_axis(params: EngineParameters, name: str, value: float) -> EngineParameters:
    return replace(params, **{name: value})


def _map_points(
    points: list[EngineParameters], workers: int
) -> list[SweepPoint]:
    if workers <= 1 or len(points) < 2:
        return [evaluate_point(p) for p in points]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunk = max(1, len(points) // (8 * workers))
        return list(pool.map(evaluate_point, points, chunksize=chunk))


def sweep_grid(spec: GridSpec, workers: int = 1) -> list[SweepPoint]:
    """Evaluate every grid point, ordered by (axis1 index, axis2 index)."""
    v1 = spec.axis1.values()
    v2 = spec.axis2.values()
    if len(v1) * len(v2) > spec.budget:
        raise ValueError(
            f"grid of {len(v1)}x{len(v2)} points exceeds the budget of {spec.budget}"
        )
    points = [
        _replace_axis(_replace_axis(spec.fixed, spec.axis1.name, a), spec.axis2.name, b)
        for a in v1
        for b in v2
    ]
    return _map_points(points, workers)


def _argmax_record(
    model: ModelId,
    temp_ratio: float,
    scan_values: list[float],
    points: list[SweepPoint],
    axis: str,
) -> MaxPowerRecord:
    best_idx = None
    for i, pt in enumerate(points):
        if pt.kind is not MachineKind.ENGINE:
            continue
        if best_idx is None or pt.power > points[best_idx].power:
            best_idx = i  # strict > keeps the smallest scan value on ties
    if best_idx is None:
        raise NoEnginePointError(
            f"no engine point for model {model.value} at temp_ratio {temp_ratio}"
        )
    best = points[best_idx]
    boundary = best_idx in (0, len(points) - 1)
    if not boundary:
        boundary = (
            points[best_idx - 1].power > best.power
            or points[best_idx + 1].power > best.power
        )
    eta = best.metrics.efficiency if best.metrics is not None else None
    return MaxPowerRecord(
        model=model,
        temp_ratio=temp_ratio,
        argmax_level=scan_values[best_idx] if axis != "g" else None,
        argmax_g=scan_values[best_idx] if axis == "g" else None,
        p_max=best.power,
        eta_at_pm=eta,
        n_at_pm=best.iterations,
        converged_at_pm=best.converged,
        boundary=boundary,
    )


def max_power_over_level(
    model: ModelId,
    temp_ratio: float,
    g: float,
    scan: tuple[float, float, float],
    base: EngineParameters | None = None,
    workers: int = 1,
) -> tuple[MaxPowerRecord, list[SweepPoint]]:
    """Scan the work-qubit level (omega_ratio for single, omega1_c otherwise).

    ``base`` overrides the shared defaults (temperatures, kappa, durations);
    its model/temp_ratio/g fields are replaced by the arguments.  Returns the
    argmax record together with every scanned point.
    """
    axis_name = "omega1_c" if model.is_coupled else "omega_ratio"
    axis = AxisSpec(axis_name, *scan)
    fixed = base if base is not None else EngineParameters(model=model, temp_ratio=temp_ratio)
    fixed = replace(fixed, model=model, temp_ratio=temp_ratio, g=g)
    values = axis.values()
    points = _map_points([_replace_axis(fixed, axis_name, v) for v in values], workers)
    record = _argmax_record(model, temp_ratio, values, points, axis_name)
    return record, points


def max_power_over_coupling(
    model: ModelId,
    temp_ratio: float,
    scan_g: tuple[float, float, float],
    base: EngineParameters | None = None,
    workers: int = 1,
) -> tuple[MaxPowerRecord, list[SweepPoint]]:
    """Scan the coupling strength with qubit 1 pinned to the single-qubit levels."""
    if not model.is_coupled:
        raise ValueError("coupling scans need a coupled model")
    axis = AxisSpec("g", *scan_g)
    fixed = base if base is not None else EngineParameters(model=model, temp_ratio=temp_ratio)
    # omega1_c = omega_c pins (omega1_c, omega1_h) to the single-qubit pair.
    fixed = replace(fixed, model=model, temp_ratio=temp_ratio, omega1_c=fixed.omega_c)
    values = axis.values()
    points = _map_points([_replace_axis(fixed, "g", v) for v in values], workers)
    record = _argmax_record(model, temp_ratio, values, points, "g")
    return record, points


def fit_mpr(records: list[MaxPowerRecord]) -> MprFit:
    """Least-squares line through (temp_ratio, argmax_level)."""
    if len(records) < 3:
        raise ValueError(f"need at least 3 records to fit, got {len(records)}")
    x = np.array([r.temp_ratio for r in records], dtype=float)
    y = np.array([r.argmax_level for r in records], dtype=float)
    if np.any(np.isnan(y)):
        raise ValueError("records must carry a level argmax")
    slope, intercept = np.polyfit(x, y, 1)
    residuals = y - (slope * x + intercept)
    return MprFit(
        slope=float(slope),
        intercept=float(intercept),
        max_residual=float(np.max(np.abs(residuals))),
    )
