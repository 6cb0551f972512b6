"""Physical constants (SI, CODATA via scipy) and a few derived helpers."""

import math

from scipy.constants import c, e, epsilon_0, hbar, k as k_B, mu_0
from scipy.constants import fine_structure as alpha_fs

__all__ = [
    "c", "e", "epsilon_0", "hbar", "k_B", "mu_0", "alpha_fs", "EV",
    "matsubara_frequency", "thermal_wavelength", "characteristic_frequency",
]

EV = e  # joules per electronvolt


def matsubara_frequency(n, temperature):
    """xi_n = 2 pi n k_B T / hbar in rad/s."""
    return 2.0 * math.pi * n * k_B * temperature / hbar


def thermal_wavelength(temperature):
    """hbar c / (k_B T) in metres (about 7.6 um at 300 K)."""
    return hbar * c / (k_B * temperature)


def characteristic_frequency(d):
    """omega_c = c / (2 d)."""
    return c / (2.0 * d)
