import math

import numpy as np
import pytest

from qotto.baths import BathSpec, spectral_response
from qotto.dynamics import (
    evolve,
    global_liouvillian,
    local_liouvillian,
    with_duration,
)
from qotto.hamiltonians import CoupledSystemSpec, SingleQubitLevels, dress
from qotto.linalg import I2, SIGMA_MINUS, SIGMA_PLUS, kron, vectorize_generator
from conftest import random_density_matrix, random_populations

LEVELS = SingleQubitLevels(omega_h=2.0, omega_c=1.0)
BATH_T5 = BathSpec(temperature=5.0)

# Two-level closed-form oracle values at omega=1, T=5, kappa=0.005:
# p_ss = 1/(exp(0.2)+1), Gamma = G(1) + G(-1), frozen at high precision.
P_SS_1_T5 = 0.45016600268752209
GAMMA_TOTAL_1_T5 = 0.3148907172276171


def two_level_population(p0: float, p_ss: float, gamma_total: float, t: float) -> float:
    return p_ss + (p0 - p_ss) * math.exp(-gamma_total * t)


class TestLocalLiouvillian:
    def test_transient_matches_rate_equation(self):
        gen = local_liouvillian(LEVELS, "cold", BATH_T5, duration=50.0)
        rho = np.diag([1.0, 0.0]).astype(complex)
        out = evolve(gen, rho)
        expected = two_level_population(0.0, P_SS_1_T5, GAMMA_TOTAL_1_T5, 50.0)
        assert out[1, 1].real == pytest.approx(expected, abs=1e-12)
        assert out[1, 1].real == pytest.approx(0.450166, abs=1e-6)

    def test_steady_state_detailed_balance(self):
        gen = with_duration(local_liouvillian(LEVELS, "cold", BATH_T5, 50.0), 1e4)
        out = evolve(gen, np.diag([1.0, 0.0]).astype(complex))
        ratio = out[1, 1].real / out[0, 0].real
        assert ratio == pytest.approx(math.exp(-1.0 / 5.0), abs=1e-8)
        assert out[1, 1].real == pytest.approx(P_SS_1_T5, abs=1e-10)

    def test_cold_bath_limit_is_ground(self):
        gen = local_liouvillian(LEVELS, "cold", BathSpec(temperature=1e-2), 1e3)
        out = evolve(gen, np.diag([0.0, 1.0]).astype(complex))
        assert out[0, 0].real == pytest.approx(1.0, abs=1e-10)

    def test_uses_stroke_gap(self):
        gen_h = local_liouvillian(LEVELS, "hot", BathSpec(temperature=15.0), 1.0)
        assert gen_h.hamiltonian[1, 1].real == 2.0


class TestGlobalLiouvillian:
    def test_decoupled_q1_reduces_to_local(self):
        # g = 0, contact Q1: same generator as the lifted single-qubit one.
        spec = CoupledSystemSpec(omega1_h=2.0, omega1_c=1.5, omega2=1.0, g=0.0)
        bath = BathSpec(temperature=15.0)
        gen = global_liouvillian(spec, "hot", bath, "Q1", 50.0)
        h4 = np.diag([0.0, 1.0, 2.0, 3.0]).astype(complex)
        jumps = [
            (spectral_response(2.0, bath), kron(SIGMA_MINUS, I2)),
            (spectral_response(-2.0, bath), kron(SIGMA_PLUS, I2)),
        ]
        expected = vectorize_generator(h4, jumps)
        assert np.max(np.abs(gen.generator.matrix - expected.matrix)) <= 1e-12

    def test_decoupled_q2_conserves_q1_populations(self, rng):
        spec = CoupledSystemSpec(omega1_h=2.0, omega1_c=1.5, omega2=1.0, g=0.0)
        gen = global_liouvillian(spec, "hot", BATH_T5, "Q2", 37.0)
        pops = random_populations(rng, 4)
        out = evolve(gen, np.diag(pops).astype(complex))
        q1_before = pops[2] + pops[3]
        q1_after = (out[2, 2] + out[3, 3]).real
        assert q1_after == pytest.approx(q1_before, abs=1e-12)

    @pytest.mark.parametrize("contact", ["Q1", "Q2"])
    def test_gibbs_fixed_point(self, contact, rng):
        spec = CoupledSystemSpec(omega1_h=3.55, omega1_c=2.5, omega2=1.0, g=0.55)
        for stroke, temp in (("hot", 15.0), ("cold", 5.0)):
            bath = BathSpec(temperature=temp)
            gen = with_duration(global_liouvillian(spec, stroke, bath, contact, 50.0), 1e4)
            out = evolve(gen, random_density_matrix(rng, 4))
            pops = np.diag(out).real
            energies = np.diag(gen.hamiltonian).real
            gibbs = np.exp(-energies / temp)
            gibbs = gibbs / gibbs.sum()
            assert np.max(np.abs(pops - gibbs)) <= 1e-6

    def test_dressed_diagonal_closure(self, rng):
        spec = CoupledSystemSpec(omega1_h=3.0, omega1_c=2.0, omega2=1.0, g=0.4)
        gen = global_liouvillian(spec, "cold", BATH_T5, "Q2", 50.0)
        out = evolve(gen, np.diag(random_populations(rng, 4)).astype(complex))
        off = out - np.diag(np.diag(out))
        assert np.max(np.abs(off)) <= 1e-10

    def test_jump_weights_swap_with_contact(self):
        spec = CoupledSystemSpec(omega1_h=3.0, omega1_c=2.0, omega2=1.0, g=0.4)
        g1 = global_liouvillian(spec, "hot", BATH_T5, "Q1", 1.0)
        g2 = global_liouvillian(spec, "hot", BATH_T5, "Q2", 1.0)
        assert np.max(np.abs(g1.generator.matrix - g2.generator.matrix)) > 1e-6

    def test_rejects_bad_contact(self):
        spec = CoupledSystemSpec(omega1_h=2.0, omega1_c=1.5, omega2=1.0, g=0.1)
        with pytest.raises(ValueError):
            global_liouvillian(spec, "hot", BATH_T5, "Q3", 1.0)


class TestEvolve:
    def test_zero_duration_is_identity(self, rng):
        gen = local_liouvillian(LEVELS, "cold", BATH_T5, 0.0)
        rho = random_density_matrix(rng, 2)
        assert np.allclose(evolve(gen, rho), rho, atol=1e-14)

    def test_semigroup_property(self, rng):
        spec = CoupledSystemSpec(omega1_h=3.55, omega1_c=2.5, omega2=1.0, g=0.55)
        full = global_liouvillian(spec, "hot", BathSpec(temperature=15.0), "Q1", 50.0)
        half = with_duration(full, 25.0)
        rho = random_density_matrix(rng, 4)
        once = evolve(full, rho)
        twice = evolve(half, evolve(half, rho))
        assert np.max(np.abs(once - twice)) <= 1e-9

    def test_dimension_mismatch(self):
        gen = local_liouvillian(LEVELS, "cold", BATH_T5, 1.0)
        with pytest.raises(ValueError):
            evolve(gen, np.eye(4) / 4.0)

    def test_positivity_battery(self, rng):
        # Complete-positivity proxy across random stroke generators and states.
        specs = [
            CoupledSystemSpec(
                omega1_h=0.5 + 4 * rng.random(),
                omega1_c=0.5 + 3 * rng.random(),
                omega2=0.5 + rng.random(),
                g=rng.random(),
            )
            for _ in range(10)
        ]
        checked = 0
        for spec in specs:
            for contact in ("Q1", "Q2"):
                gen = global_liouvillian(
                    spec, "hot", BathSpec(temperature=1.0 + 20 * rng.random()),
                    contact, 10 * rng.random(),
                )
                for _ in range(5):
                    out = evolve(gen, random_density_matrix(rng, 4))
                    eigs = np.linalg.eigvalsh((out + out.conj().T) / 2)
                    assert eigs.min() >= -1e-8
                    assert abs(np.trace(out).real - 1.0) <= 1e-9
                    checked += 1
        assert checked == 100

    def test_propagator_preserves_hermiticity(self, rng):
        gen = local_liouvillian(LEVELS, "hot", BathSpec(temperature=15.0), 50.0)
        out = evolve(gen, random_density_matrix(rng, 2))
        assert np.max(np.abs(out - out.conj().T)) <= 1e-9


class TestDurationHandling:
    def test_with_duration_rebuilds(self):
        gen = local_liouvillian(LEVELS, "cold", BATH_T5, 1.0)
        longer = with_duration(gen, 2.0)
        assert longer.duration == 2.0
        assert np.max(np.abs(longer.propagator - gen.propagator)) > 1e-6
        assert longer.generator is gen.generator

    def test_rejects_negative_duration(self):
        with pytest.raises(ValueError):
            local_liouvillian(LEVELS, "cold", BATH_T5, -1.0)
