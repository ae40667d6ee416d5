"""GKSL generators for bath-contact strokes and propagator-based evolution.

Single qubit (standard form): dissipators G(omega) D[sigma-] and
G(-omega) D[sigma+] attached to the bare gap of the current stroke.

Coupled pair (global form): everything lives in the stroke's dressed
frame.  The jump operators are lowering operators of the two dressed
transition families,

    sigma1- = sigma- (x) I   (gap omega_tilde_1),
    sigma2- = I (x) sigma-   (gap omega_tilde_2),

read in the dressed labeling, so every dissipator is monochromatic.  A
bath attached to qubit 1 weights the families (cos^2 beta, sin^2 beta);
attached to qubit 2, (sin^2 beta, cos^2 beta).

Because the generator of a stroke is time independent, evolution over the
stroke duration is a single cached matrix exponential, reused across all
limit-cycle iterations at one parameter point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .baths import BathSpec, spectral_response
from .hamiltonians import (
    CoupledSystemSpec,
    DressedFrame,
    SingleQubitLevels,
    Stroke,
    dress,
    single_hamiltonian,
)
from .linalg import (
    I2,
    SIGMA_MINUS,
    SIGMA_PLUS,
    Superoperator,
    kron,
    unvec,
    vec,
    vectorize_generator,
)

# Dressed-frame jump operators (numerically the tensor-factor lowering
# operators, interpreted in the dressed basis ordering).
SIGMA1_MINUS = kron(SIGMA_MINUS, I2)
SIGMA1_PLUS = kron(SIGMA_PLUS, I2)
SIGMA2_MINUS = kron(I2, SIGMA_MINUS)
SIGMA2_PLUS = kron(I2, SIGMA_PLUS)

Contact = str  # "Q1" | "Q2"


@dataclass(frozen=True)
class StrokeGenerator:
    """One stroke's generator, its evolution-frame Hamiltonian and cached propagator.

    ``hamiltonian`` is the Hamiltonian the generator evolves under: the bare
    diagonal for the single qubit, the diagonal dressed Hamiltonian for the
    coupled pair.  ``propagator`` is exp(generator * duration); it is fixed
    at construction, so changing the duration means building a new generator
    (see :func:`with_duration`).
    """

    generator: Superoperator
    hamiltonian: np.ndarray = field(repr=False)
    duration: float
    propagator: np.ndarray = field(repr=False)
    frame: DressedFrame | None = None

    @property
    def n(self) -> int:
        return self.generator.n


def _build(
    h: np.ndarray,
    jumps: list[tuple[float, np.ndarray]],
    duration: float,
    frame: DressedFrame | None,
) -> StrokeGenerator:
    if duration < 0:
        raise ValueError(f"stroke duration must be nonnegative, got {duration}")
    gen = vectorize_generator(h, jumps)
    return StrokeGenerator(
        generator=gen,
        hamiltonian=h,
        duration=duration,
        propagator=gen.propagator(duration),
        frame=frame,
    )


def local_liouvillian(
    levels: SingleQubitLevels,
    stroke: Stroke,
    bath: BathSpec,
    duration: float,
) -> StrokeGenerator:
    """Standard single-qubit stroke generator for one bath contact."""
    omega = levels.gap(stroke)
    h = single_hamiltonian(levels, stroke)
    jumps = [
        (spectral_response(omega, bath), SIGMA_MINUS),
        (spectral_response(-omega, bath), SIGMA_PLUS),
    ]
    return _build(h, jumps, duration, frame=None)


def global_liouvillian(
    spec: CoupledSystemSpec,
    stroke: Stroke,
    bath: BathSpec,
    contact: Contact,
    duration: float,
) -> StrokeGenerator:
    """Dressed-frame stroke generator for a bath attached at one qubit.

    Jump terms with an exactly zero weight (beta = 0 or pi/2) are dropped,
    which keeps the decoupled limit free of spurious bath evaluations.
    """
    if contact not in ("Q1", "Q2"):
        raise ValueError(f"contact must be 'Q1' or 'Q2', got {contact!r}")
    frame = dress(spec, stroke)
    h = frame.dressed_hamiltonian()
    c2 = np.cos(frame.beta) ** 2
    s2 = np.sin(frame.beta) ** 2
    w1_weight, w2_weight = (c2, s2) if contact == "Q1" else (s2, c2)
    jumps: list[tuple[float, np.ndarray]] = []
    for weight, gap, lower, raise_ in (
        (w1_weight, frame.omega_tilde_1, SIGMA1_MINUS, SIGMA1_PLUS),
        (w2_weight, frame.omega_tilde_2, SIGMA2_MINUS, SIGMA2_PLUS),
    ):
        if weight == 0.0:
            continue
        jumps.append((weight * spectral_response(gap, bath), lower))
        jumps.append((weight * spectral_response(-gap, bath), raise_))
    return _build(h, jumps, duration, frame=frame)


def with_duration(gen: StrokeGenerator, duration: float) -> StrokeGenerator:
    """Same generator, new duration; the propagator is rebuilt."""
    if duration < 0:
        raise ValueError(f"stroke duration must be nonnegative, got {duration}")
    return StrokeGenerator(
        generator=gen.generator,
        hamiltonian=gen.hamiltonian,
        duration=duration,
        propagator=gen.generator.propagator(duration),
        frame=gen.frame,
    )


def evolve(gen: StrokeGenerator, rho: np.ndarray) -> np.ndarray:
    """Apply the stroke's cached propagator to a state in the generator's frame."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (gen.n, gen.n):
        raise ValueError(
            f"state dimension {rho.shape} does not match generator dimension {gen.n}"
        )
    return unvec(gen.propagator @ vec(rho))
