"""Catalogue of machine layouts and their shared parameterization.

``single`` is the one-qubit reference engine.  The coupled layouts are
named by the qubit each bath touches: model "HC" attaches the hot bath to
Q``H`` and the cold bath to Q``C`` (the work storage always couples through
qubit 1).  All coupled layouts inherit the single-qubit maximum-power
level change

    delta_omega = (omega_c / 2) (T_h / T_c - 1),

so omega1_h = omega1_c + delta_omega, and qubit 2's gap is pinned to the
energy unit omega_c.  For the single qubit, leaving ``omega_ratio`` unset
selects the maximum-power reference gap Omega_h = (omega_c/2)(1 + T_h/T_c).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .baths import BathSpec
from .cycle import CycleConfig
from .hamiltonians import CoupledSystemSpec, SingleQubitLevels, dress


class ModelId(Enum):
    SINGLE = "single"
    M11 = "11"
    M12 = "12"
    M21 = "21"
    M22 = "22"

    @property
    def is_coupled(self) -> bool:
        return self is not ModelId.SINGLE

    @property
    def contacts(self) -> tuple[str, str] | None:
        """(hot, cold) bath attachment points for coupled layouts."""
        return _CONTACTS[self]


_CONTACTS: dict[ModelId, tuple[str, str] | None] = {
    ModelId.SINGLE: None,
    ModelId.M11: ("Q1", "Q1"),
    ModelId.M12: ("Q1", "Q2"),
    ModelId.M21: ("Q2", "Q1"),
    ModelId.M22: ("Q2", "Q2"),
}


class NonOperationalError(ValueError):
    """Layout cannot run at these parameters (decoupled non-11 models)."""


@dataclass(frozen=True)
class EngineParameters:
    """One parameter point, with the shared defaults baked in.

    ``omega1_c`` and ``g`` only matter for coupled models; ``omega_ratio``
    (omega_h / omega_c) only for the single qubit, where None means the
    maximum-power reference point.
    """

    model: ModelId
    temp_ratio: float
    omega1_c: float = 1.0
    g: float = 0.0
    omega_ratio: float | None = None
    omega_c: float = 1.0
    temp_cold: float = 5.0
    kappa: float = 0.005
    t_h: float = 50.0
    t_c: float = 50.0
    cutoff: float = 1000.0
    max_iterations: int = 10_000

    def __post_init__(self) -> None:
        if self.temp_ratio <= 0:
            raise ValueError(f"temperature ratio must be positive, got {self.temp_ratio}")
        if self.omega_c <= 0 or self.omega1_c <= 0:
            raise ValueError("energy levels must be positive")
        if self.g < 0:
            raise ValueError(f"coupling strength must be nonnegative, got {self.g}")
        if self.omega_ratio is not None and self.omega_ratio <= 0:
            raise ValueError(f"omega_ratio must be positive, got {self.omega_ratio}")

    @property
    def temp_hot(self) -> float:
        return self.temp_ratio * self.temp_cold

    @property
    def delta_omega(self) -> float:
        """Level change of the work-producing qubit."""
        return 0.5 * self.omega_c * (self.temp_ratio - 1.0)

    @property
    def omega1_h(self) -> float:
        return self.omega1_c + self.delta_omega

    @property
    def omega_h(self) -> float:
        """Single-qubit hot gap; defaults to the maximum-power reference."""
        if self.omega_ratio is not None:
            return self.omega_ratio * self.omega_c
        return self.omega_c + self.delta_omega


def build_config(params: EngineParameters) -> CycleConfig:
    """Fully-populated cycle configuration for this parameter point."""
    hot_bath = BathSpec(
        temperature=params.temp_hot, kappa=params.kappa, cutoff=params.cutoff
    )
    cold_bath = BathSpec(
        temperature=params.temp_cold, kappa=params.kappa, cutoff=params.cutoff
    )
    if params.model.is_coupled:
        if params.g == 0.0 and params.model is not ModelId.M11:
            raise NonOperationalError(
                f"model {params.model.value} cannot operate without coupling"
            )
        medium: SingleQubitLevels | CoupledSystemSpec = CoupledSystemSpec(
            omega1_h=params.omega1_h,
            omega1_c=params.omega1_c,
            omega2=params.omega_c,
            g=params.g,
        )
    else:
        medium = SingleQubitLevels(omega_h=params.omega_h, omega_c=params.omega_c)
    return CycleConfig(
        medium=medium,
        hot_bath=hot_bath,
        cold_bath=cold_bath,
        t_h=params.t_h,
        t_c=params.t_c,
        contacts=params.model.contacts,
        max_iterations=params.max_iterations,
    )


def reference_otto_efficiency(params: EngineParameters) -> float:
    """Otto reference 1 - (small gap)/(large gap), on the bare qubit-1 gaps."""
    if params.model.is_coupled:
        if params.omega1_h <= params.omega1_c:
            raise ValueError("Otto reference needs omega1_h > omega1_c")
        return 1.0 - params.omega1_c / params.omega1_h
    if params.omega_h <= params.omega_c:
        raise ValueError("Otto reference needs omega_h > omega_c")
    return 1.0 - params.omega_c / params.omega_h


def dressed_otto_efficiency(params: EngineParameters) -> float:
    """Variant of the Otto reference built on the dressed upper gaps."""
    if not params.model.is_coupled:
        return reference_otto_efficiency(params)
    spec = CoupledSystemSpec(
        omega1_h=params.omega1_h,
        omega1_c=params.omega1_c,
        omega2=params.omega_c,
        g=params.g,
    )
    hot = dress(spec, "hot")
    cold = dress(spec, "cold")
    return 1.0 - cold.omega_tilde_1 / hot.omega_tilde_1
