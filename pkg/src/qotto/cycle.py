"""Six-step Otto cycle: energy ledger, limit-cycle iteration, classification.

One cycle is: hot-bath contact for t_h, projective measurement (dephasing
in the current frame), instantaneous work stroke relabeling the medium to
the cold Hamiltonian, cold-bath contact for t_c, measurement, work stroke
back.  The state matrix is carried numerically unchanged across the work
strokes: populations of the outgoing dressed basis become populations of
the incoming one, one-to-one, which is exactly the map realized by the
indirect-measurement work extraction (see :mod:`qotto.measurement`).

Sign convention: every ledger entry is energy flowing *into* the medium,
so an engine has Q_h > 0, Q_c < 0 and W_1 + W_2 < 0.  With H_h/H_c the
(diagonal, dressed) stroke Hamiltonians and rho_0 -> rho_h -> rho_c the
states at the stroke boundaries,

    Q_h = tr[H_h (rho_h - rho_0)],     W_1 = tr[rho_h (H_c - H_h)],
    Q_c = tr[H_c (rho_c - rho_h)],     W_2 = tr[rho_c (H_h - H_c)].

The cycle is iterated from the ground state until the first-law defect
|Q_h + Q_c + W_1 + W_2| drops below 10^-2 times the smallest ledger
magnitude; the iteration count N is part of the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .baths import BathSpec
from .dynamics import StrokeGenerator, evolve, global_liouvillian, local_liouvillian
from .hamiltonians import CoupledSystemSpec, SingleQubitLevels

CONVERGENCE_FACTOR = 1e-2
DEGENERATE_FLOOR = 1e-14


class MachineKind(Enum):
    ENGINE = "Engine"
    HEATER = "Heater"
    COOLER = "Cooler"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class CycleConfig:
    """Everything needed to run one machine at one parameter point.

    ``contacts`` names the qubit touching the (hot, cold) bath and is
    required for a coupled medium, meaningless for a single qubit.
    """

    medium: SingleQubitLevels | CoupledSystemSpec
    hot_bath: BathSpec
    cold_bath: BathSpec
    t_h: float = 50.0
    t_c: float = 50.0
    contacts: tuple[str, str] | None = None
    max_iterations: int = 10_000

    def __post_init__(self) -> None:
        if self.t_h < 0 or self.t_c < 0:
            raise ValueError("stroke durations must be nonnegative")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        coupled = isinstance(self.medium, CoupledSystemSpec)
        if coupled and self.contacts is None:
            raise ValueError("a coupled medium needs (hot, cold) bath contacts")
        if not coupled and self.contacts is not None:
            raise ValueError("a single-qubit medium takes no bath contacts")

    @property
    def dim(self) -> int:
        return 4 if isinstance(self.medium, CoupledSystemSpec) else 2


@dataclass(frozen=True)
class StrokeLedger:
    """Signed energy book of one full cycle (positive = into the medium)."""

    q_h: float
    q_c: float
    w_1: float
    w_2: float

    @property
    def work(self) -> float:
        return self.w_1 + self.w_2

    @property
    def delta_e(self) -> float:
        """First-law defect |Q_h + Q_c + W_1 + W_2| of this cycle."""
        return abs(self.q_h + self.q_c + self.w_1 + self.w_2)

    @property
    def min_magnitude(self) -> float:
        return min(abs(self.q_h), abs(self.q_c), abs(self.w_1), abs(self.w_2))

    def entries(self) -> tuple[float, float, float, float]:
        return (self.q_h, self.q_c, self.w_1, self.w_2)


@dataclass(frozen=True)
class Metrics:
    """Performance numbers derived from a ledger; inapplicable ones are None."""

    power: float | None
    efficiency: float | None
    hcop: float | None
    ccop: float | None
    eta_otto: float
    eta_carnot: float
    eta_ca: float


@dataclass(frozen=True)
class LimitCycleResult:
    state: np.ndarray = field(repr=False)
    iterations: int
    ledger: StrokeLedger
    kind: MachineKind
    metrics: Metrics
    converged: bool = True


class CycleError(Exception):
    """Base class for limit-cycle iteration failures."""


class NonConvergenceError(CycleError):
    """The energy-conservation criterion was not met within max_iterations.

    ``result`` holds the last cycle's (non-converged) data so sweeps can
    record the point instead of aborting.
    """

    def __init__(self, result: LimitCycleResult):
        self.result = result
        super().__init__(
            f"no limit cycle within {result.iterations} iterations "
            f"(defect {result.ledger.delta_e:.3e}, "
            f"floor {result.ledger.min_magnitude * CONVERGENCE_FACTOR:.3e})"
        )


class DegenerateLedgerError(CycleError):
    """A ledger magnitude fell below the floor; the stop rule is undefined."""

    def __init__(self, result: LimitCycleResult):
        self.result = result
        super().__init__(
            f"degenerate ledger after {result.iterations} iterations: "
            f"min magnitude {result.ledger.min_magnitude:.3e} < {DEGENERATE_FLOOR:.0e}"
        )


def is_converged(ledger: StrokeLedger, factor: float = CONVERGENCE_FACTOR) -> bool:
    """Energy-conservation stop rule: delta_e <= factor * min ledger magnitude."""
    return ledger.delta_e <= factor * ledger.min_magnitude


def ground_state(dim: int) -> np.ndarray:
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def _dephase(rho: np.ndarray) -> np.ndarray:
    """Projective measurement in the current frame: drop all coherences."""
    return np.diag(np.diag(rho))


def _real_trace(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.trace(a @ b).real)


@dataclass(frozen=True)
class _CompiledCycle:
    gen_hot: StrokeGenerator
    gen_cold: StrokeGenerator

    @property
    def dim(self) -> int:
        return self.gen_hot.n

    def run(self, rho0: np.ndarray) -> tuple[np.ndarray, StrokeLedger]:
        h_hot = self.gen_hot.hamiltonian
        h_cold = self.gen_cold.hamiltonian
        rho_h = _dephase(evolve(self.gen_hot, rho0))
        q_h = _real_trace(h_hot, rho_h - rho0)
        w_1 = _real_trace(rho_h, h_cold - h_hot)
        rho_c = _dephase(evolve(self.gen_cold, rho_h))
        q_c = _real_trace(h_cold, rho_c - rho_h)
        w_2 = _real_trace(rho_c, h_hot - h_cold)
        return rho_c, StrokeLedger(q_h=q_h, q_c=q_c, w_1=w_1, w_2=w_2)


@lru_cache(maxsize=128)
def _compile(config: CycleConfig) -> _CompiledCycle:
    medium = config.medium
    if isinstance(medium, CoupledSystemSpec):
        hot_contact, cold_contact = config.contacts  # validated in __post_init__
        gen_hot = global_liouvillian(medium, "hot", config.hot_bath, hot_contact, config.t_h)
        gen_cold = global_liouvillian(medium, "cold", config.cold_bath, cold_contact, config.t_c)
    else:
        gen_hot = local_liouvillian(medium, "hot", config.hot_bath, config.t_h)
        gen_cold = local_liouvillian(medium, "cold", config.cold_bath, config.t_c)
    return _CompiledCycle(gen_hot=gen_hot, gen_cold=gen_cold)


def run_cycle(config: CycleConfig, rho0: np.ndarray) -> tuple[np.ndarray, StrokeLedger]:
    """Execute one full cycle from ``rho0``; returns the end state and ledger.

    The returned state is the next cycle's start state (populations already
    relabeled to the hot frame by the final work stroke).
    """
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (config.dim, config.dim):
        raise ValueError(
            f"state shape {rho0.shape} does not match medium dimension {config.dim}"
        )
    return _compile(config).run(rho0)


def classify(ledger: StrokeLedger) -> MachineKind:
    """Machine type from the ledger signs."""
    w = ledger.work
    if ledger.q_h > 0 and ledger.q_c < 0 and w < 0:
        return MachineKind.ENGINE
    if ledger.q_h > 0 and ledger.q_c < 0 and w > 0:
        return MachineKind.HEATER
    if ledger.q_h < 0 and ledger.q_c > 0 and w > 0:
        return MachineKind.COOLER
    return MachineKind.INDETERMINATE


def reference_gap_ratio(medium: SingleQubitLevels | CoupledSystemSpec) -> float:
    """Small-over-large reference gap ratio defining the Otto efficiency."""
    if isinstance(medium, CoupledSystemSpec):
        return medium.omega1_c / medium.omega1_h
    return medium.omega_c / medium.omega_h


def metrics(ledger: StrokeLedger, config: CycleConfig) -> Metrics:
    """Power, the kind-specific figure of merit, and the reference efficiencies."""
    kind = classify(ledger)
    w = ledger.work
    total_time = config.t_h + config.t_c
    power = -w / total_time if total_time > 0 else None
    efficiency = hcop = ccop = None
    if kind is MachineKind.ENGINE and ledger.q_h != 0:
        efficiency = -w / ledger.q_h
    elif kind is MachineKind.HEATER and w != 0:
        hcop = -ledger.q_c / w
    elif kind is MachineKind.COOLER and w != 0:
        ccop = ledger.q_c / w
    t_ratio = config.cold_bath.temperature / config.hot_bath.temperature
    return Metrics(
        power=power,
        efficiency=efficiency,
        hcop=hcop,
        ccop=ccop,
        eta_otto=1.0 - reference_gap_ratio(config.medium),
        eta_carnot=1.0 - t_ratio,
        eta_ca=1.0 - math.sqrt(t_ratio),
    )


def iterate_to_limit(config: CycleConfig) -> LimitCycleResult:
    """Iterate cycles from the ground state until the limit cycle is reached.

    Raises :class:`NonConvergenceError` when the stop rule is still unmet
    after ``config.max_iterations`` cycles and :class:`DegenerateLedgerError`
    when a ledger magnitude falls below the floor that makes the rule
    meaningful; both carry the partial result.
    """
    engine = _compile(config)
    rho = ground_state(config.dim)
    ledger = None
    for n in range(1, config.max_iterations + 1):
        rho, ledger = engine.run(rho)
        if ledger.min_magnitude < DEGENERATE_FLOOR:
            raise DegenerateLedgerError(_result(rho, n, ledger, config, converged=False))
        if is_converged(ledger):
            return _result(rho, n, ledger, config, converged=True)
    raise NonConvergenceError(
        _result(rho, config.max_iterations, ledger, config, converged=False)
    )


def _result(
    rho: np.ndarray,
    iterations: int,
    ledger: StrokeLedger,
    config: CycleConfig,
    converged: bool,
) -> LimitCycleResult:
    return LimitCycleResult(
        state=rho,
        iterations=iterations,
        ledger=ledger,
        kind=classify(ledger),
        metrics=metrics(ledger, config),
        converged=converged,
    )
