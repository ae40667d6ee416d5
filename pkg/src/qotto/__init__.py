"""Quantum Otto machines built from one or two XX-coupled qubits.

The package simulates four-stroke Otto cycles whose bath contacts evolve
under GKSL master equations (standard form for the single qubit, global
dressed-frame form for the coupled pair), iterates them to a limit cycle,
books heat and work, classifies the machine and searches parameter space
for the power peak.
"""

from .baths import BathSpec, bose_einstein, damping_rate, ohmic_spectral_density, spectral_response
from .cycle import (
    CycleConfig,
    DegenerateLedgerError,
    LimitCycleResult,
    MachineKind,
    Metrics,
    NonConvergenceError,
    StrokeLedger,
    classify,
    ground_state,
    is_converged,
    iterate_to_limit,
    metrics,
    run_cycle,
)
from .dynamics import StrokeGenerator, evolve, global_liouvillian, local_liouvillian, with_duration
from .hamiltonians import (
    CoupledSystemSpec,
    DressedFrame,
    SingleQubitLevels,
    coupled_hamiltonian,
    dress,
    single_hamiltonian,
)
from .linalg import Superoperator, kron, matexp, vectorize_generator
from .measurement import (
    MeasurementSetup,
    coupled_extracted_work,
    coupled_setup,
    single_qubit_extracted_work,
    single_qubit_setup,
    verify_energy_conservation_of_unitary,
)
from .models import (
    EngineParameters,
    ModelId,
    NonOperationalError,
    build_config,
    dressed_otto_efficiency,
    reference_otto_efficiency,
)
from .sweeps import (
    AxisSpec,
    GridSpec,
    MaxPowerRecord,
    MprFit,
    NoEnginePointError,
    SweepPoint,
    evaluate_point,
    fit_mpr,
    max_power_over_coupling,
    max_power_over_level,
    sweep_grid,
)

__all__ = [
    "AxisSpec",
    "BathSpec",
    "CoupledSystemSpec",
    "CycleConfig",
    "DegenerateLedgerError",
    "DressedFrame",
    "EngineParameters",
    "GridSpec",
    "LimitCycleResult",
    "MachineKind",
    "MaxPowerRecord",
    "MeasurementSetup",
    "Metrics",
    "ModelId",
    "MprFit",
    "NoEnginePointError",
    "NonConvergenceError",
    "NonOperationalError",
    "SingleQubitLevels",
    "StrokeGenerator",
    "StrokeLedger",
    "Superoperator",
    "SweepPoint",
    "bose_einstein",
    "build_config",
    "classify",
    "coupled_extracted_work",
    "coupled_hamiltonian",
    "coupled_setup",
    "damping_rate",
    "dress",
    "dressed_otto_efficiency",
    "evaluate_point",
    "evolve",
    "fit_mpr",
    "global_liouvillian",
    "ground_state",
    "is_converged",
    "iterate_to_limit",
    "kron",
    "local_liouvillian",
    "matexp",
    "max_power_over_coupling",
    "max_power_over_level",
    "metrics",
    "ohmic_spectral_density",
    "reference_otto_efficiency",
    "run_cycle",
    "single_hamiltonian",
    "single_qubit_extracted_work",
    "single_qubit_setup",
    "spectral_response",
    "sweep_grid",
    "vectorize_generator",
    "verify_energy_conservation_of_unitary",
    "with_duration",
]

__version__ = "0.1.0"
