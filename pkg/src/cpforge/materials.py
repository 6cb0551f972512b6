"""Dielectric and conductivity response on the imaginary frequency axis.

All quantities are SI. Frequencies are angular (rad/s); the Fermi level of
graphene is given in eV and converted to joules on construction.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

from scipy.integrate import quad

from .constants import EV, c, e, hbar, k_B
from .errors import QuadratureFailure

log = logging.getLogger(__name__)

__all__ = [
    "DrudeMetal", "GOLD", "GrapheneSheet", "INFINITE_PERMITTIVITY",
    "permittivity_drude", "substrate_permittivity", "fermi_dirac",
    "sigma_drude", "sigma_interband", "sigma_total", "drude_model_valid",
]


@dataclass(frozen=True)
class DrudeMetal:
    """Drude metal, eps(i xi) = 1 + omega_p^2 / (xi (xi + gamma))."""

    omega_p: float
    gamma_damping: float

    def __post_init__(self):
        if not self.omega_p > 0:
            raise ValueError(f"omega_p must be > 0, got {self.omega_p}")
        if not self.gamma_damping > 0:
            raise ValueError(f"gamma_damping must be > 0, got {self.gamma_damping}")

    @property
    def skin_depth(self) -> float:
        """High-frequency (minimal) skin depth c / omega_p."""
        return c / self.omega_p


GOLD = DrudeMetal(omega_p=1.4e16, gamma_damping=3e13)


class _InfinitePermittivity:
    """Marker for the divergent static permittivity of a conductor."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE_PERMITTIVITY"

    def __reduce__(self):
        return (_InfinitePermittivity, ())


INFINITE_PERMITTIVITY = _InfinitePermittivity()

Permittivity = Union[float, _InfinitePermittivity]


def permittivity_drude(metal: DrudeMetal, xi: float) -> Permittivity:
    """Drude permittivity at imaginary frequency ``i xi``.

    At ``xi == 0`` the permittivity diverges and the
    :data:`INFINITE_PERMITTIVITY` marker is returned instead of a number;
    the same happens when ``xi`` is so small that the value overflows.
    """
    if xi < 0:
        raise ValueError(f"xi must be >= 0, got {xi}")
    if xi == 0:
        return INFINITE_PERMITTIVITY
    eps = 1.0 + metal.omega_p**2 / (xi * (xi + metal.gamma_damping))
    return eps if math.isfinite(eps) else INFINITE_PERMITTIVITY


@dataclass(frozen=True)
class GrapheneSheet:
    """A single graphene sheet, optionally on a substrate.

    ``fermi_level`` is in eV; ``fermi_energy`` holds the same value in joules.
    ``substrate`` is a :class:`DrudeMetal`, a constant permittivity, or
    ``None`` for suspended graphene.
    """

    fermi_level: float = 0.0
    relaxation_time: float = 1e-12
    temperature: float = 300.0
    substrate: Union[DrudeMetal, float, None] = None
    fermi_energy: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.fermi_level < 0:
            raise ValueError(f"fermi_level must be >= 0 eV, got {self.fermi_level}")
        if not self.relaxation_time > 0:
            raise ValueError(f"relaxation_time must be > 0 s, got {self.relaxation_time}")
        if not self.temperature > 0:
            raise ValueError(f"temperature must be > 0 K, got {self.temperature}")
        if isinstance(self.substrate, (int, float)) and self.substrate < 1:
            raise ValueError(f"substrate permittivity must be >= 1, got {self.substrate}")
        object.__setattr__(self, "fermi_energy", self.fermi_level * EV)

    @property
    def suspended(self) -> bool:
        return self.substrate is None


def substrate_permittivity(sheet: GrapheneSheet, xi: float) -> Permittivity:
    if sheet.substrate is None:
        return 1.0
    if isinstance(sheet.substrate, DrudeMetal):
        return permittivity_drude(sheet.substrate, xi)
    return float(sheet.substrate)


def fermi_dirac(omega: float, sheet: GrapheneSheet) -> float:
    """Occupation f0 = 1 / (exp((hbar omega - E_F)/k_B T) + 1) of a state at hbar*omega."""
    x = (hbar * omega - sheet.fermi_energy) / (k_B * sheet.temperature)
    if x > 0:
        q = math.exp(-x)
        return q / (1.0 + q)
    return 1.0 / (math.exp(x) + 1.0)


def _log_2cosh(x: float) -> float:
    x = abs(x)
    return x + math.log1p(math.exp(-2.0 * x))


def drude_model_valid(sheet: GrapheneSheet, xi: float) -> bool:
    """The conductivity model only holds above 1/tau; callers may flag, not reject."""
    return xi * sheet.relaxation_time > 1.0


def sigma_drude(sheet: GrapheneSheet, xi: float) -> float:
    """Intraband (Drude-like) sheet conductivity at ``i xi`` in siemens."""
    if xi < 0:
        raise ValueError(f"xi must be >= 0, got {xi}")
    kT = k_B * sheet.temperature
    weight = 2.0 * e**2 * kT / (math.pi * hbar**2) * _log_2cosh(sheet.fermi_energy / (2.0 * kT))
    return weight / (xi + 1.0 / sheet.relaxation_time)


def _occupation_difference(a: float, b: float) -> float:
    # f0(-eps) - f0(eps) = sinh(a) / (cosh(a) + cosh(b)), a = hbar eps/kT, b = E_F/kT
    b = abs(b)
    m = max(a, b)
    ea, ema = math.exp(a - m), math.exp(-a - m)
    return (ea - ema) / (ea + ema + math.exp(b - m) + math.exp(-b - m))


@lru_cache(maxsize=1 << 16)
def _interband_integral(fermi_energy: float, temperature: float, xi: float) -> float:
    kT = k_B * temperature
    b = fermi_energy / kT
    scale = hbar * xi / (2.0 * kT)

    # eps = (xi/2) tan(theta) turns d eps / (xi^2 + 4 eps^2) into d theta / (2 xi)
    def integrand(theta):
        return _occupation_difference(scale * math.tan(theta), b)

    points = None
    if fermi_energy > 0:
        # the blocking step at eps = E_F/hbar is only ~kT wide; bracket it so quad cannot miss it
        theta_f = math.atan(2.0 * fermi_energy / (hbar * xi))
        width = 2.0 * kT / (hbar * xi) * math.cos(theta_f) ** 2
        candidates = [theta_f + s * m * width for m in (3.0, 10.0, 40.0) for s in (-1.0, 1.0)]
        points = sorted(p for p in [theta_f, *candidates] if 0.0 < p < 0.5 * math.pi)
    value, abserr = quad(integrand, 0.0, 0.5 * math.pi, points=points,
                         epsabs=0.0, epsrel=1e-10, limit=500)
    if abserr > 1e-8 * abs(value):
        raise QuadratureFailure(
            f"interband integral at xi={xi:.4e} rad/s: relative error {abserr / abs(value):.2e}"
        )
    return value


def sigma_interband(sheet: GrapheneSheet, xi: float) -> float:
    """Interband sheet conductivity at ``i xi`` in siemens; tends to e^2/(4 hbar)."""
    if xi < 0:
        raise ValueError(f"xi must be >= 0, got {xi}")
    if xi == 0:
        return 0.0
    integral = _interband_integral(sheet.fermi_energy, sheet.temperature, float(xi))
    return e**2 / (2.0 * math.pi * hbar) * integral


def sigma_total(sheet: GrapheneSheet, xi: float) -> float:
    if not drude_model_valid(sheet, xi):
        log.debug("sigma evaluated below 1/tau (xi=%.3e rad/s)", xi)
    return sigma_drude(sheet, xi) + sigma_interband(sheet, xi)
