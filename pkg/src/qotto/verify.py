"""Self-check suites behind the command-line ``verify`` subcommand.

Two batteries, both fully deterministic (fixed internal seed):

* measurement equivalence: the composite-space extracted work must equal
  the negated trace-formula work, the swap unitaries must commute with
  the composite Hamiltonians, and the medium must come out untouched;
* generator properties: trace preservation, Hermiticity preservation,
  positivity slack, the propagator semigroup law and the dressed-basis
  Gibbs fixed points, across all layouts and strokes.
"""

from __future__ import annotations

import numpy as np

from .baths import BathSpec
from .dynamics import evolve, global_liouvillian, local_liouvillian, with_duration
from .hamiltonians import CoupledSystemSpec, SingleQubitLevels, dress
from .linalg import unvec, vec
from .measurement import (
    coupled_extracted_work,
    coupled_setup,
    measure_storage,
    single_qubit_extracted_work,
    single_qubit_setup,
    verify_energy_conservation_of_unitary,
)

_SEED = 20240615

WORK_EQUALITY_TOL = 1e-12
COMMUTATOR_TOL = 1e-12
TRACE_TOL = 1e-9
HERMITICITY_TOL = 1e-9
POSITIVITY_SLACK = 1e-8
SEMIGROUP_TOL = 1e-9
GIBBS_TOL = 1e-6


def _random_populations(rng: np.random.Generator, dim: int) -> np.ndarray:
    p = rng.random(dim)
    return p / p.sum()


def _random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def _check(report: dict, name: str, ok: bool, detail: str) -> None:
    report["checks"].append({"name": name, "passed": bool(ok), "detail": detail})
    if ok:
        report["passed"] += 1
    else:
        report["failed"] += 1


def measurement_equivalence_suite(draws: int = 1000) -> dict:
    """Random states and level draws through both work-extraction routes."""
    rng = np.random.default_rng(_SEED)
    report: dict = {"suite": "measurement-equivalence", "passed": 0, "failed": 0, "checks": []}

    worst_eq = 0.0
    worst_comm = 0.0
    worst_marginal = 0.0
    worst_norm = 0.0
    for _ in range(draws // 2):
        levels = SingleQubitLevels(
            omega_h=1.0 + 3.0 * rng.random(), omega_c=0.2 + 0.8 * rng.random()
        )
        rho = _random_state(rng, 2)
        for direction in ("expand", "compress"):
            got = single_qubit_extracted_work(rho, levels, direction)
            sign = 1.0 if direction == "expand" else -1.0
            h_h = np.diag([0.0, levels.omega_h])
            h_c = np.diag([0.0, levels.omega_c])
            ledger_work = float(np.trace(rho @ (h_c - h_h)).real) * sign
            worst_eq = max(worst_eq, abs(got + ledger_work))
            setup = single_qubit_setup(levels, direction)
            worst_comm = max(worst_comm, verify_energy_conservation_of_unitary(setup))
            pops = np.diag(rho).real
            _, p_w, after = measure_storage(setup, pops)
            worst_marginal = max(worst_marginal, float(np.max(np.abs(after - pops))))
            worst_norm = max(worst_norm, abs(float(p_w.sum()) - 1.0), -float(p_w.min()))
    _check(
        report,
        "single-qubit work equality",
        worst_eq <= WORK_EQUALITY_TOL,
        f"max |measured - (-W_ledger)| = {worst_eq:.3e}",
    )

    worst_eq4 = 0.0
    for _ in range(draws - draws // 2):
        omega1_c = 0.5 + 3.0 * rng.random()
        spec = CoupledSystemSpec(
            omega1_h=omega1_c + 2.0 * rng.random(),
            omega1_c=omega1_c,
            omega2=0.5 + 1.0 * rng.random(),
            g=rng.random(),
        )
        frames = (dress(spec, "hot"), dress(spec, "cold"))
        gaps = (spec.omega1_h, spec.omega1_c, spec.omega2)
        rho = np.diag(_random_populations(rng, 4)).astype(complex)
        h_h = frames[0].dressed_hamiltonian()
        h_c = frames[1].dressed_hamiltonian()
        for direction in ("expand", "compress"):
            got = coupled_extracted_work(rho, frames, gaps, direction)
            sign = 1.0 if direction == "expand" else -1.0
            ledger_work = float(np.trace(rho @ (h_c - h_h)).real) * sign
            worst_eq4 = max(worst_eq4, abs(got + ledger_work))
            setup = coupled_setup(frames, gaps, direction)
            worst_comm = max(worst_comm, verify_energy_conservation_of_unitary(setup))
            pops = np.diag(rho).real
            _, p_w, after = measure_storage(setup, pops)
            worst_marginal = max(worst_marginal, float(np.max(np.abs(after - pops))))
            worst_norm = max(worst_norm, abs(float(p_w.sum()) - 1.0), -float(p_w.min()))
    _check(
        report,
        "coupled work equality",
        worst_eq4 <= WORK_EQUALITY_TOL,
        f"max |measured - (-W_ledger)| = {worst_eq4:.3e}",
    )
    _check(
        report,
        "unitary energy conservation",
        worst_comm <= COMMUTATOR_TOL,
        f"max commutator entry = {worst_comm:.3e}",
    )
    _check(
        report,
        "medium populations preserved",
        worst_marginal <= WORK_EQUALITY_TOL,
        f"max marginal change = {worst_marginal:.3e}",
    )
    _check(
        report,
        "storage distribution is a probability vector",
        worst_norm <= WORK_EQUALITY_TOL,
        f"max normalization/negativity defect = {worst_norm:.3e}",
    )
    return report


def _all_stroke_generators(duration: float = 50.0):
    """One generator per (layout, stroke) at representative engine parameters."""
    hot = BathSpec(temperature=15.0)
    cold = BathSpec(temperature=5.0)
    levels = SingleQubitLevels(omega_h=2.0, omega_c=1.0)
    yield "single/hot", local_liouvillian(levels, "hot", hot, duration), 15.0
    yield "single/cold", local_liouvillian(levels, "cold", cold, duration), 5.0
    spec = CoupledSystemSpec(omega1_h=3.5, omega1_c=2.5, omega2=1.0, g=0.55)
    for name, contacts in (("11", ("Q1", "Q1")), ("12", ("Q1", "Q2")),
                           ("21", ("Q2", "Q1")), ("22", ("Q2", "Q2"))):
        yield (
            f"model {name}/hot",
            global_liouvillian(spec, "hot", hot, contacts[0], duration),
            15.0,
        )
        yield (
            f"model {name}/cold",
            global_liouvillian(spec, "cold", cold, contacts[1], duration),
            5.0,
        )


def liouvillian_property_suite(draws: int = 200) -> dict:
    """Generator/propagator sanity across every layout and stroke."""
    rng = np.random.default_rng(_SEED + 1)
    report: dict = {"suite": "liouvillian-properties", "passed": 0, "failed": 0, "checks": []}

    worst_row = 0.0
    worst_trace = 0.0
    worst_herm = 0.0
    worst_eig = 0.0
    worst_semi = 0.0
    worst_gibbs = 0.0
    for _, gen, temperature in _all_stroke_generators():
        n = gen.n
        ident = np.eye(n, dtype=complex)
        worst_row = max(worst_row, float(np.max(np.abs(vec(ident) @ gen.generator.matrix))))
        half = with_duration(gen, gen.duration / 2.0)
        worst_semi = max(
            worst_semi,
            float(np.max(np.abs(half.propagator @ half.propagator - gen.propagator))),
        )
        for _ in range(max(1, draws // 10)):
            rho = _random_state(rng, n)
            out = evolve(gen, rho)
            worst_trace = max(worst_trace, abs(float(np.trace(out).real) - 1.0))
            worst_herm = max(worst_herm, float(np.max(np.abs(out - out.conj().T))))
            eigs = np.linalg.eigvalsh((out + out.conj().T) / 2.0)
            worst_eig = max(worst_eig, -float(eigs.min()))
        # Unique fixed point: dressed-level Gibbs populations at the bath temperature.
        long = with_duration(gen, 1e4)
        out = evolve(long, _random_state(rng, n))
        pops = np.diag(out).real
        energies = np.diag(gen.hamiltonian).real
        gibbs = np.exp(-energies / temperature)
        gibbs /= gibbs.sum()
        worst_gibbs = max(worst_gibbs, float(np.max(np.abs(pops - gibbs))))

    _check(
        report,
        "generator trace-preservation rows",
        worst_row <= 1e-12,
        f"max |vec(I)^T L| = {worst_row:.3e}",
    )
    _check(report, "propagator trace preservation", worst_trace <= TRACE_TOL,
           f"max trace defect = {worst_trace:.3e}")
    _check(report, "propagator Hermiticity preservation", worst_herm <= HERMITICITY_TOL,
           f"max Hermiticity defect = {worst_herm:.3e}")
    _check(report, "positivity slack", worst_eig <= POSITIVITY_SLACK,
           f"most negative eigenvalue = {-worst_eig:.3e}")
    _check(report, "propagator semigroup law", worst_semi <= SEMIGROUP_TOL,
           f"max |P(t/2)^2 - P(t)| = {worst_semi:.3e}")
    _check(report, "dressed-basis Gibbs fixed points", worst_gibbs <= GIBBS_TOL,
           f"max population deviation = {worst_gibbs:.3e}")
    return report


def run_all(draws: int = 1000) -> dict:
    suites = [measurement_equivalence_suite(draws), liouvillian_property_suite()]
    return {
        "passed": sum(s["passed"] for s in suites),
        "failed": sum(s["failed"] for s in suites),
        "suites": suites,
    }
