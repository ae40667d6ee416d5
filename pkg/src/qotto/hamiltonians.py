"""Working-medium Hamiltonians and the dressed frame of the coupled pair.

The single qubit has gap omega_h during the hot half of the cycle and
omega_c during the cold half, with H = diag(0, omega).  The coupled medium
is two qubits with an XX exchange coupling g; only the first qubit's gap
changes between strokes while omega_2 and g stay fixed.  In the product
basis (down-down, down-up, up-down, up-up) the coupled Hamiltonian is

    [[0,       0,       0,   0              ],
     [0,       omega_2, g,   0              ],
     [0,       g,       omega_1,  0         ],
     [0,       0,       0,   omega_1+omega_2]]

Diagonalizing the central 2x2 block gives the dressed frame used by the
global master equation: eigenvalues omega_tilde_1 >= omega_tilde_2, mixing
angle beta, and a rotation that leaves the outer levels untouched.  The two
transitions down-down <-> up-down~ and down-up~ <-> up-up share the gap
omega_tilde_1; the complementary pair shares omega_tilde_2 (sum rule
omega_tilde_1 + omega_tilde_2 = omega_1 + omega_2, exact by construction).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import HERMITICITY_TOL

Stroke = str  # "hot" | "cold"


def _check_stroke(stroke: str) -> str:
    if stroke not in ("hot", "cold"):
        raise ValueError(f"stroke must be 'hot' or 'cold', got {stroke!r}")
    return stroke


@dataclass(frozen=True)
class SingleQubitLevels:
    """Energy gaps of the single-qubit medium during the two halves of a cycle."""

    omega_h: float
    omega_c: float

    def __post_init__(self) -> None:
        if self.omega_h <= 0 or self.omega_c <= 0:
            raise ValueError("energy gaps must be positive")

    def gap(self, stroke: Stroke) -> float:
        return self.omega_h if _check_stroke(stroke) == "hot" else self.omega_c


@dataclass(frozen=True)
class CoupledSystemSpec:
    """Two XX-coupled qubits; only qubit 1's gap changes across strokes."""

    omega1_h: float
    omega1_c: float
    omega2: float = 1.0
    g: float = 0.0

    def __post_init__(self) -> None:
        if self.omega1_h <= 0 or self.omega1_c <= 0 or self.omega2 <= 0:
            raise ValueError("energy gaps must be positive")
        if self.g < 0:
            raise ValueError(f"coupling strength must be nonnegative, got {self.g}")

    def omega1(self, stroke: Stroke) -> float:
        return self.omega1_h if _check_stroke(stroke) == "hot" else self.omega1_c


@dataclass(frozen=True)
class DressedFrame:
    """Eigenframe of one stroke's coupled Hamiltonian.

    ``omega_tilde_1`` is always the larger central eigenvalue, so the
    labeling never swaps as parameters scan across the resonance
    omega_1 = omega_2.  ``unitary`` maps dressed coordinates to bare ones:
    U^dag H U is diagonal.
    """

    omega_tilde_1: float
    omega_tilde_2: float
    beta: float
    unitary: np.ndarray = field(repr=False)

    def dressed_hamiltonian(self) -> np.ndarray:
        """diag(0, omega_tilde_2, omega_tilde_1, omega_tilde_1 + omega_tilde_2)."""
        return np.diag(
            [
                0.0,
                self.omega_tilde_2,
                self.omega_tilde_1,
                self.omega_tilde_1 + self.omega_tilde_2,
            ]
        ).astype(complex)


def single_hamiltonian(levels: SingleQubitLevels, stroke: Stroke) -> np.ndarray:
    """2x2 diag(0, omega) for the requested stroke."""
    return np.diag([0.0, levels.gap(stroke)]).astype(complex)


def coupled_hamiltonian(spec: CoupledSystemSpec, stroke: Stroke) -> np.ndarray:
    """4x4 coupled Hamiltonian in the product basis, g on the one-excitation block."""
    w1 = spec.omega1(stroke)
    w2 = spec.omega2
    h = np.zeros((4, 4), dtype=complex)
    h[1, 1] = w2
    h[2, 2] = w1
    h[3, 3] = w1 + w2
    h[1, 2] = h[2, 1] = spec.g
    return h


def dress(spec: CoupledSystemSpec, stroke: Stroke) -> DressedFrame:
    """Diagonalize one stroke's coupled Hamiltonian in closed form.

    beta = atan2(2g, omega_1 - omega_2) / 2 handles the resonant case
    omega_1 = omega_2 (beta = pi/4) and omega_1 < omega_2 without branch
    errors.  omega_tilde_2 is computed as (omega_1 + omega_2) - omega_tilde_1
    so the sum rule holds exactly in floating point.
    """
    w1 = spec.omega1(stroke)
    w2 = spec.omega2
    g = spec.g
    total = w1 + w2
    split = math.hypot(2.0 * g, w1 - w2)
    wt1 = 0.5 * (total + split)
    wt2 = total - wt1
    beta = 0.5 * math.atan2(2.0 * g, w1 - w2)
    c, s = math.cos(beta), math.sin(beta)
    u = np.eye(4, dtype=complex)
    u[1, 1] = c
    u[1, 2] = s
    u[2, 1] = -s
    u[2, 2] = c
    frame = DressedFrame(omega_tilde_1=wt1, omega_tilde_2=wt2, beta=beta, unitary=u)
    _assert_diagonalizes(frame, coupled_hamiltonian(spec, stroke))
    return frame


def _assert_diagonalizes(frame: DressedFrame, h: np.ndarray) -> None:
    transformed = frame.unitary.conj().T @ h @ frame.unitary
    off = transformed - np.diag(np.diag(transformed))
    if np.max(np.abs(off)) > HERMITICITY_TOL * max(1.0, float(np.max(np.abs(h)))):
        raise AssertionError("dressed unitary failed to diagonalize the Hamiltonian")
