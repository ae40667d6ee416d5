"""Indirect-measurement work extraction on system + clock + storage composites.

The work strokes can be realized without touching the medium's populations:
couple the medium to a two-level clock and a work storage, apply a swap-type
unitary that flips the clock and moves the level-change energy into the
storage, then projectively measure the storage.  The storage's mean energy
equals the extracted work, and the construction conserves energy exactly
([U, H] = 0), which pins the storage level energies to

    E_W(b) = E_b(outgoing frame) - E_b(incoming frame).

This module is a verification oracle for :mod:`qotto.cycle`'s trace-formula
ledger (extracted work = -W_ledger), not the production work path: the
composite is 8- or 32-dimensional and exists to be checked, not to be fast.

Directions: "expand" is the hot-to-cold stroke (gap decreases, work comes
out for an engine), "compress" is cold-to-hot.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hamiltonians import DressedFrame, SingleQubitLevels
from .linalg import kron, partial_trace

DIAGONAL_TOL = 1e-10
STATE_TOL = 1e-9

Direction = str  # "expand" | "compress"


@dataclass(frozen=True)
class MeasurementSetup:
    """Composite pieces for one work stroke: system (x) clock (x) storage."""

    system_dim: int
    storage_dim: int
    h_se: np.ndarray = field(repr=False)       # full composite Hamiltonian
    u: np.ndarray = field(repr=False)           # energy-conserving swap unitary
    h_storage: np.ndarray = field(repr=False)   # storage Hamiltonian alone

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.system_dim, 2, self.storage_dim)


def _check_direction(direction: str) -> str:
    if direction not in ("expand", "compress"):
        raise ValueError(f"direction must be 'expand' or 'compress', got {direction!r}")
    return direction


def _clock_projectors() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    p0 = np.diag([1.0, 0.0]).astype(complex)
    p1 = np.diag([0.0, 1.0]).astype(complex)
    flip = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    return p0, p1, flip


def _assemble(
    h_from: np.ndarray,
    h_to: np.ndarray,
    storage_energies: np.ndarray,
    u: np.ndarray,
) -> MeasurementSetup:
    n = h_from.shape[0]
    m = storage_energies.size
    p0, p1, _ = _clock_projectors()
    i_s = np.eye(n, dtype=complex)
    i_c = np.eye(2, dtype=complex)
    i_w = np.eye(m, dtype=complex)
    h_storage = np.diag(storage_energies).astype(complex)
    h_se = (
        kron(kron(h_from, p0), i_w)
        + kron(kron(h_to, p1), i_w)
        + kron(kron(i_s, i_c), h_storage)
    )
    return MeasurementSetup(system_dim=n, storage_dim=m, h_se=h_se, u=u, h_storage=h_storage)


def single_qubit_setup(levels: SingleQubitLevels, direction: Direction) -> MeasurementSetup:
    """2 (x) 2 (x) 2 composite for the single-qubit work stroke.

    The swap unitary flips the clock unconditionally; for the excited system
    level it also flips the storage, depositing omega_from - omega_to there.
    """
    _check_direction(direction)
    w_from, w_to = (
        (levels.omega_h, levels.omega_c)
        if direction == "expand"
        else (levels.omega_c, levels.omega_h)
    )
    h_from = np.diag([0.0, w_from]).astype(complex)
    h_to = np.diag([0.0, w_to]).astype(complex)
    storage_energies = np.array([0.0, w_from - w_to])

    p0s = np.diag([1.0, 0.0]).astype(complex)
    p1s = np.diag([0.0, 1.0]).astype(complex)
    _, _, flip = _clock_projectors()
    i_w = np.eye(2, dtype=complex)
    # Clock-storage block for the excited system level, basis order
    # (c w) = (00, 01, 10, 11): swap 00 <-> 11, fix 01 and 10.
    u_cw = np.zeros((4, 4), dtype=complex)
    u_cw[0, 3] = u_cw[3, 0] = 1.0
    u_cw[1, 1] = u_cw[2, 2] = 1.0
    u = kron(p0s, kron(flip, i_w)) + kron(p1s, u_cw)
    return _assemble(h_from, h_to, storage_energies, u)


def coupled_setup(
    frames: tuple[DressedFrame, DressedFrame],
    bare_gaps: tuple[float, float, float],
    direction: Direction,
) -> MeasurementSetup:
    """4 (x) 2 (x) 4 composite for the coupled work stroke.

    ``frames`` is (hot, cold); ``bare_gaps`` is (omega1_h, omega1_c, omega2).
    Storage levels mirror the system eigenlevels: the down-down level costs
    nothing, the two one-excitation levels carry the dressed-gap differences
    and the top level the bare qubit-1 gap difference (the dressed top level
    is omega_1 + omega_2 in both frames, so only omega_1 changes).
    """
    _check_direction(direction)
    hot, cold = frames
    omega1_h, omega1_c, _omega2 = bare_gaps
    if direction == "expand":
        frame_from, frame_to = hot, cold
        top_diff = omega1_h - omega1_c
    else:
        frame_from, frame_to = cold, hot
        top_diff = omega1_c - omega1_h
    h_from = frame_from.dressed_hamiltonian()
    h_to = frame_to.dressed_hamiltonian()
    storage_energies = np.array(
        [
            0.0,
            frame_from.omega_tilde_2 - frame_to.omega_tilde_2,
            frame_from.omega_tilde_1 - frame_to.omega_tilde_1,
            top_diff,
        ]
    )

    p0c, p1c, flip = _clock_projectors()
    i_w = np.eye(4, dtype=complex)
    p_dd_w = np.zeros((4, 4), dtype=complex)
    p_dd_w[0, 0] = 1.0
    u = np.zeros((32, 32), dtype=complex)
    # Ground sector: clock flips, storage untouched.
    e0 = np.zeros((4, 4), dtype=complex)
    e0[0, 0] = 1.0
    u += kron(e0, kron(flip, i_w))
    for b in (1, 2, 3):
        eb = np.zeros((4, 4), dtype=complex)
        eb[b, b] = 1.0
        ket_b = np.zeros((4, 1), dtype=complex)
        ket_b[b, 0] = 1.0
        ket_dd = np.zeros((4, 1), dtype=complex)
        ket_dd[0, 0] = 1.0
        swap_down = ket_dd @ ket_b.conj().T   # |dd><b| on the storage
        swap_up = ket_b @ ket_dd.conj().T
        p_b_w = ket_b @ ket_b.conj().T
        clock01 = np.zeros((2, 2), dtype=complex)
        clock01[0, 1] = 1.0
        clock10 = clock01.T
        block = (
            kron(clock01, swap_down)
            + kron(clock10, swap_up)
            + kron(p0c, i_w - p_dd_w)
            + kron(p1c, i_w - p_b_w)
        )
        u += kron(eb, block)
    return _assemble(h_from, h_to, storage_energies, u)


def _validate_state(rho: np.ndarray, dim: int) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} state, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > STATE_TOL:
        raise ValueError("state is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > STATE_TOL:
        raise ValueError("state is not normalized")
    return rho


def measure_storage(
    setup: MeasurementSetup, populations: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray]:
    """Run the composite protocol on the given system populations.

    Returns (extracted work, storage distribution after measurement,
    system populations after the protocol).
    """
    n, m = setup.system_dim, setup.storage_dim
    rho_s = np.diag(np.asarray(populations, dtype=complex))
    clock0 = np.zeros((2, 2), dtype=complex)
    clock0[0, 0] = 1.0
    storage0 = np.zeros((m, m), dtype=complex)
    storage0[0, 0] = 1.0
    rho_i = kron(kron(rho_s, clock0), storage0)
    rho_f = setup.u @ rho_i @ setup.u.conj().T
    rho_w = partial_trace(rho_f, setup.dims, keep=2)
    p_w = np.diag(rho_w).real  # projective measurement in the storage basis
    work = float(np.sum(p_w * np.diag(setup.h_storage).real))
    system_after = np.diag(partial_trace(rho_f, setup.dims, keep=0)).real
    return work, p_w, system_after


def single_qubit_extracted_work(
    rho: np.ndarray, levels: SingleQubitLevels, direction: Direction
) -> float:
    """Work deposited in the storage; equals (omega_from - omega_to) rho_11."""
    rho = _validate_state(rho, 2)
    setup = single_qubit_setup(levels, direction)
    work, _, _ = measure_storage(setup, np.diag(rho).real)
    return work


def coupled_extracted_work(
    rho: np.ndarray,
    frames: tuple[DressedFrame, DressedFrame],
    bare_gaps: tuple[float, float, float],
    direction: Direction,
) -> float:
    """Work deposited in the two-qubit storage for a dressed-diagonal state.

    The protocol presumes eigenstate populations; a state with coherences
    beyond ``DIAGONAL_TOL`` in the current dressed frame is rejected.
    """
    rho = _validate_state(rho, 4)
    off = rho - np.diag(np.diag(rho))
    if np.max(np.abs(off)) > DIAGONAL_TOL:
        raise ValueError("state must be diagonal in the current dressed frame")
    setup = coupled_setup(frames, bare_gaps, direction)
    work, _, _ = measure_storage(setup, np.diag(rho).real)
    return work


def verify_energy_conservation_of_unitary(setup: MeasurementSetup) -> float:
    """Max-entry magnitude of [U, H]; zero iff the protocol conserves energy."""
    comm = setup.u @ setup.h_se - setup.h_se @ setup.u
    return float(np.max(np.abs(comm)))
