import math

import pytest

from qotto.baths import (
    BathSpec,
    bose_einstein,
    damping_rate,
    ohmic_spectral_density,
    spectral_response,
)

# Frozen closed-form values, evaluated independently at 30-digit precision.
BOSE_1_T5 = 4.5166555661269948
BOSE_5_T5 = 0.58197670686932642
J_1 = 0.004995002499166875
J_2 = 0.0099800199866733307
GAMMA_1 = 0.031384526312090623
G_PLUS_1 = 0.17313762176985386
G_MINUS_1 = 0.14175309545776324

BATH_T5 = BathSpec(temperature=5.0, kappa=0.005, cutoff=1000.0)


class TestBathSpec:
    def test_defaults(self):
        bath = BathSpec(temperature=5.0)
        assert bath.kappa == 0.005 and bath.cutoff == 1000.0 and bath.ohmicity == 1.0

    @pytest.mark.parametrize("bad", [
        dict(temperature=0.0), dict(temperature=-1.0),
        dict(temperature=5.0, kappa=0.0), dict(temperature=5.0, cutoff=-2.0),
    ])
    def test_validation(self, bad):
        with pytest.raises(ValueError):
            BathSpec(**bad)


class TestBoseEinstein:
    def test_frozen_values(self):
        assert bose_einstein(1.0, BATH_T5) == pytest.approx(BOSE_1_T5, rel=1e-14)
        assert bose_einstein(5.0, BATH_T5) == pytest.approx(BOSE_5_T5, rel=1e-14)

    def test_frozen_bath_limit(self):
        cold = BathSpec(temperature=1e-3)
        assert bose_einstein(1.0, cold) < 1e-300

    def test_rejects_nonpositive_frequency(self):
        for omega in (0.0, -1.0):
            with pytest.raises(ValueError):
                bose_einstein(omega, BATH_T5)


class TestOhmicSpectralDensity:
    def test_frozen_values(self):
        assert ohmic_spectral_density(1.0, BATH_T5) == pytest.approx(J_1, rel=1e-14)
        assert ohmic_spectral_density(2.0, BATH_T5) == pytest.approx(J_2, rel=1e-14)

    def test_vanishes_at_zero(self):
        assert ohmic_spectral_density(1e-12, BATH_T5) < 1e-13

    def test_general_exponent(self):
        bath = BathSpec(temperature=5.0, kappa=0.005, cutoff=10.0, ohmicity=2.0)
        expected = 0.005 * 3.0**2 / 10.0 ** (1.0 - 2.0) * math.exp(-0.3)
        assert ohmic_spectral_density(3.0, bath) == pytest.approx(expected, rel=1e-14)

    def test_rejects_nonpositive_frequency(self):
        with pytest.raises(ValueError):
            ohmic_spectral_density(0.0, BATH_T5)


class TestDampingRate:
    def test_zero_branch(self):
        assert damping_rate(-1.0, BATH_T5) == 0.0
        assert damping_rate(0.0, BATH_T5) == 0.0

    def test_frozen_value(self):
        assert damping_rate(1.0, BATH_T5) == pytest.approx(GAMMA_1, rel=1e-14)

    def test_continuous_at_zero(self):
        assert damping_rate(1e-12, BATH_T5) <= 1e-12


class TestSpectralResponse:
    def test_frozen_values(self):
        assert spectral_response(1.0, BATH_T5) == pytest.approx(G_PLUS_1, rel=1e-14)
        assert spectral_response(-1.0, BATH_T5) == pytest.approx(G_MINUS_1, rel=1e-14)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            spectral_response(0.0, BATH_T5)

    def test_detailed_balance(self, rng):
        # G(-w) = G(w) exp(-w/T) for every positive frequency and bath.
        for _ in range(200):
            omega = 10.0 ** rng.uniform(-2, 1.3)
            bath = BathSpec(
                temperature=10.0 ** rng.uniform(-0.5, 1.5),
                kappa=10.0 ** rng.uniform(-3, -1),
                cutoff=10.0 ** rng.uniform(1, 3),
            )
            lhs = spectral_response(-omega, bath)
            rhs = spectral_response(omega, bath) * math.exp(-omega / bath.temperature)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_absorption_monotone_in_temperature(self):
        omega = 1.3
        values = [
            spectral_response(-omega, BathSpec(temperature=t)) for t in (2.0, 5.0, 8.0, 20.0)
        ]
        assert all(a < b for a, b in zip(values, values[1:]))
