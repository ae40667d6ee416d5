import math

import numpy as np
import pytest

from qotto.baths import BathSpec
from qotto.cycle import (
    CycleConfig,
    DegenerateLedgerError,
    MachineKind,
    NonConvergenceError,
    StrokeLedger,
    classify,
    ground_state,
    is_converged,
    iterate_to_limit,
    metrics,
    run_cycle,
)
from qotto.hamiltonians import CoupledSystemSpec, SingleQubitLevels

LEVELS = SingleQubitLevels(omega_h=2.0, omega_c=1.0)
HOT = BathSpec(temperature=15.0)
COLD = BathSpec(temperature=5.0)


def single_config(**kw) -> CycleConfig:
    args = dict(medium=LEVELS, hot_bath=HOT, cold_bath=COLD)
    args.update(kw)
    return CycleConfig(**args)


def two_level_cycle_oracle(p0: float, t: float = 50.0):
    """Closed-form single-cycle ledger for the paper-regime parameters.

    Pure-math reimplementation (rates, relaxation, ledger) independent of the
    package internals.
    """
    def gamma(w):
        return 2 * math.pi * 0.005 * w * math.exp(-w / 1000.0)

    def n_bar(w, temp):
        return 1.0 / math.expm1(w / temp)

    def relax(p_start, w, temp):
        total = gamma(w) * (1 + 2 * n_bar(w, temp))
        p_ss = n_bar(w, temp) / (1 + 2 * n_bar(w, temp))
        return p_ss + (p_start - p_ss) * math.exp(-total * t)

    p_h = relax(p0, 2.0, 15.0)
    p_c = relax(p_h, 1.0, 5.0)
    q_h = 2.0 * (p_h - p0)
    w_1 = -p_h  # tr[rho(t_h) (H_c - H_h)] = (1 - 2) p_h
    q_c = 1.0 * (p_c - p_h)
    w_2 = p_c
    return p_c, StrokeLedger(q_h=q_h, q_c=q_c, w_1=w_1, w_2=w_2)


class TestClassify:
    @pytest.mark.parametrize(
        "entries,expected",
        [
            ((1.0, -0.5, -0.6, 0.1), MachineKind.ENGINE),
            ((-0.2, 0.5, -0.1, 0.4), MachineKind.COOLER),
            ((0.3, -0.5, 0.1, 0.1), MachineKind.HEATER),
            ((1.0, 0.5, -0.6, 0.1), MachineKind.INDETERMINATE),
        ],
    )
    def test_sign_table(self, entries, expected):
        assert classify(StrokeLedger(*entries)) is expected

    def test_trichotomy(self, rng):
        # Every ledger with nonzero entries maps to exactly one kind, and that
        # kind agrees with the sign predicates evaluated directly.
        for _ in range(300):
            led = StrokeLedger(*(rng.normal(size=4)))
            if led.min_magnitude <= 1e-14:
                continue
            kind = classify(led)
            w = led.work
            predicates = [
                led.q_h > 0 and led.q_c < 0 and w < 0,
                led.q_h > 0 and led.q_c < 0 and w > 0,
                led.q_h < 0 and led.q_c > 0 and w > 0,
            ]
            assert sum(predicates) <= 1
            expected = {
                0: MachineKind.ENGINE,
                1: MachineKind.HEATER,
                2: MachineKind.COOLER,
            }.get(predicates.index(True) if any(predicates) else -1,
                  MachineKind.INDETERMINATE)
            assert kind is expected


class TestConvergenceRule:
    def test_not_converged_example(self):
        led = StrokeLedger(1.0, -0.6, -0.5, 0.11)
        assert led.delta_e == pytest.approx(0.01)
        assert led.min_magnitude == pytest.approx(0.11)
        assert not is_converged(led)

    def test_exact_conservation_converges(self):
        led = StrokeLedger(1.0, -0.5, -1.0, 0.5)
        assert led.delta_e == 0.0
        assert is_converged(led)


class TestRunCycle:
    def test_matches_two_level_oracle(self):
        rho0 = ground_state(2)
        rho, ledger = run_cycle(single_config(), rho0)
        p_end, expected = two_level_cycle_oracle(0.0)
        assert ledger.q_h == pytest.approx(expected.q_h, abs=1e-10)
        assert ledger.q_c == pytest.approx(expected.q_c, abs=1e-10)
        assert ledger.w_1 == pytest.approx(expected.w_1, abs=1e-10)
        assert ledger.w_2 == pytest.approx(expected.w_2, abs=1e-10)
        assert rho[1, 1].real == pytest.approx(p_end, abs=1e-10)

    def test_zero_duration_gives_zero_ledger(self):
        rho, ledger = run_cycle(single_config(t_h=0.0, t_c=0.0), ground_state(2))
        assert ledger.entries() == (0.0, 0.0, 0.0, 0.0)
        assert np.allclose(rho, ground_state(2))

    def test_equilibrium_gives_zero_ledger(self):
        # Same gap, same temperature, thermal start: nothing moves.
        levels = SingleQubitLevels(omega_h=1.0, omega_c=1.0)
        bath = BathSpec(temperature=5.0)
        config = CycleConfig(medium=levels, hot_bath=bath, cold_bath=bath)
        p = 1.0 / (math.exp(0.2) + 1.0)
        gibbs = np.diag([1.0 - p, p]).astype(complex)
        _, ledger = run_cycle(config, gibbs)
        assert ledger.min_magnitude <= 1e-12
        assert ledger.delta_e <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            run_cycle(single_config(), ground_state(4))

    def test_coupled_cycle_runs(self):
        spec = CoupledSystemSpec(omega1_h=3.55, omega1_c=2.5, omega2=1.0, g=0.55)
        config = CycleConfig(
            medium=spec, hot_bath=HOT, cold_bath=COLD, contacts=("Q1", "Q2")
        )
        rho, ledger = run_cycle(config, ground_state(4))
        assert abs(np.trace(rho).real - 1.0) <= 1e-9
        off = rho - np.diag(np.diag(rho))
        assert np.max(np.abs(off)) <= 1e-10
        assert ledger.q_h > 0

    def test_contacts_required_for_coupled(self):
        spec = CoupledSystemSpec(omega1_h=2.0, omega1_c=1.5, omega2=1.0, g=0.3)
        with pytest.raises(ValueError):
            CycleConfig(medium=spec, hot_bath=HOT, cold_bath=COLD)


class TestIterateToLimit:
    def test_paper_regime_engine(self):
        result = iterate_to_limit(single_config())
        assert result.converged
        assert result.kind is MachineKind.ENGINE
        assert result.iterations <= 5
        assert is_converged(result.ledger)
        # Limit-cycle efficiency identity, within the stop-rule tolerance.
        assert result.metrics.efficiency == pytest.approx(0.5, rel=1e-2)
        assert abs(np.trace(result.state).real - 1.0) <= 1e-9

    def test_non_convergence_reported(self):
        with pytest.raises(NonConvergenceError) as err:
            iterate_to_limit(single_config(max_iterations=1))
        result = err.value.result
        assert result.iterations == 1
        assert not result.converged
        assert result.ledger.q_h != 0.0

    def test_degenerate_ledger_reported(self):
        levels = SingleQubitLevels(omega_h=1.0, omega_c=1.0)
        bath = BathSpec(temperature=5.0)
        config = CycleConfig(medium=levels, hot_bath=bath, cold_bath=bath)
        with pytest.raises(DegenerateLedgerError) as err:
            iterate_to_limit(config)
        assert err.value.result.ledger.min_magnitude < 1e-14

    def test_defect_decreases_monotonically(self):
        # Slow thermalization gives a long transient; the first-law defect
        # must shrink every cycle until the stop rule fires.
        config = single_config(
            hot_bath=BathSpec(temperature=15.0, kappa=0.0005),
            cold_bath=BathSpec(temperature=5.0, kappa=0.0005),
            t_h=5.0,
            t_c=5.0,
        )
        rho = ground_state(2)
        defects = []
        for _ in range(40):
            rho, ledger = run_cycle(config, rho)
            defects.append(ledger.delta_e)
            if is_converged(ledger):
                break
        assert len(defects) > 3
        assert all(a >= b for a, b in zip(defects, defects[1:]))

    def test_converged_ledger_satisfies_stop_rule_bound(self):
        result = iterate_to_limit(single_config())
        led = result.ledger
        assert led.delta_e <= 1e-2 * led.min_magnitude


class TestMetrics:
    def test_power_example(self):
        led = StrokeLedger(1.0, -0.4, -0.3, -0.2)
        met = metrics(led, single_config())
        assert met.power == pytest.approx(0.005)
        assert met.efficiency == pytest.approx(0.5 / 1.0)

    def test_reference_efficiencies(self):
        config = single_config(hot_bath=BathSpec(temperature=20.0))
        met = metrics(StrokeLedger(1.0, -0.4, -0.3, -0.2), config)
        assert met.eta_otto == pytest.approx(0.5)      # 1 - 1/2
        assert met.eta_carnot == pytest.approx(0.75)   # 1 - 1/4
        assert met.eta_ca == pytest.approx(0.5)        # 1 - 1/sqrt(4)

    def test_coupled_otto_reference(self):
        spec = CoupledSystemSpec(omega1_h=3.05, omega1_c=2.0, omega2=1.0, g=0.55)
        config = CycleConfig(
            medium=spec, hot_bath=HOT, cold_bath=COLD, contacts=("Q1", "Q2")
        )
        met = metrics(StrokeLedger(1.0, -0.4, -0.3, -0.2), config)
        assert met.eta_otto == pytest.approx(0.34426229508196721, rel=1e-14)

    def test_heater_and_cooler_figures(self):
        heater = StrokeLedger(0.3, -0.5, 0.1, 0.1)
        met = metrics(heater, single_config())
        assert met.hcop == pytest.approx(0.5 / 0.2)
        assert met.efficiency is None and met.ccop is None
        cooler = StrokeLedger(-0.2, 0.5, -0.1, 0.4)
        met = metrics(cooler, single_config())
        assert met.ccop == pytest.approx(0.5 / 0.3)

    def test_zero_time_power_is_none(self):
        met = metrics(StrokeLedger(1.0, -0.4, -0.3, -0.2), single_config(t_h=0.0, t_c=0.0))
        assert met.power is None
