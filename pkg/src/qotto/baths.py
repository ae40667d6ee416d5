"""Thermal-reservoir rate functions.

A bath is bosonic, Ohmic (exponent ``s``, exponential cutoff) and is
characterized by its temperature (k_B = 1 throughout), a dimensionless
transition rate ``kappa`` and the cutoff frequency.  The spectral response
``G`` is the transition rate entering the dissipators: emission
``gamma(w) (1 + n(w))`` at positive frequency, absorption
``gamma(|w|) n(|w|)`` at negative frequency, which satisfies the detailed
balance identity G(-w) = G(w) exp(-w/T).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BathSpec:
    """One reservoir: temperature, transition rate, cutoff, Ohmicity exponent."""

    temperature: float
    kappa: float = 0.005
    cutoff: float = 1000.0
    ohmicity: float = 1.0

    def __post_init__(self) -> None:
        if self.temperature <= 0:
            raise ValueError(f"bath temperature must be positive, got {self.temperature}")
        if self.kappa <= 0:
            raise ValueError(f"bath kappa must be positive, got {self.kappa}")
        if self.cutoff <= 0:
            raise ValueError(f"bath cutoff must be positive, got {self.cutoff}")


def bose_einstein(omega: float, bath: BathSpec) -> float:
    """Mean occupation 1/(exp(omega/T) - 1) at omega > 0."""
    if omega <= 0:
        raise ValueError(
            f"occupation is defined for positive frequency, got {omega}; "
            "negative frequencies are handled by spectral_response"
        )
    x = omega / bath.temperature
    if x > 700.0:  # exp would overflow; the occupation underflows to zero
        return 0.0
    return 1.0 / math.expm1(x)


def ohmic_spectral_density(omega: float, bath: BathSpec) -> float:
    """J(w) = kappa w^s / w_ct^(1-s) exp(-w/w_ct) at omega > 0."""
    if omega <= 0:
        raise ValueError(f"spectral density is defined for positive frequency, got {omega}")
    s = bath.ohmicity
    return bath.kappa * omega**s / bath.cutoff ** (1.0 - s) * math.exp(-omega / bath.cutoff)


def damping_rate(omega: float, bath: BathSpec) -> float:
    """Energy damping rate: 2 pi J(w) for w > 0, exactly 0 for w <= 0."""
    if omega <= 0:
        return 0.0
    return 2.0 * math.pi * ohmic_spectral_density(omega, bath)


def spectral_response(omega: float, bath: BathSpec) -> float:
    """Bath-induced transition rate at the (signed) transition frequency.

    Positive omega: emission into the bath, gamma(w)(1 + n(w)).
    Negative omega: absorption from the bath, gamma(|w|) n(|w|).
    """
    if omega == 0:
        raise ValueError("no bath response at zero transition frequency")
    if omega > 0:
        return damping_rate(omega, bath) * (1.0 + bose_einstein(omega, bath))
    return damping_rate(-omega, bath) * bose_einstein(-omega, bath)
