"""Per-frequency kernels f(xi) (energy) and f~(xi) (force) of the Casimir-Polder interaction.

Both kernels are linear in the particle polarizability::

    f(xi)  = a_t * E_t + a_z * E_z        a_t = (alpha_x + alpha_y)/2
    f~(xi) = a_t * F_t + a_z * F_z

where the four components depend only on the interface, ``xi`` and ``d``.
They are computed in the variable ``t = 2 d gamma0`` (``gamma0 = sqrt(xi^2/c^2 + kappa^2)``),
in which every integrand carries the weight ``exp(-t)``::

    E_t = 1/(2 (2d)^3) int exp(-t) (u^2 r_s - t^2 r_p) dt
    E_z = -1/(2 (2d)^3) int exp(-t) (t^2 - u^2) r_p dt
    F_t = 1/(2d)^4     int t exp(-t) (u^2 r_s - t^2 r_p) dt
    F_z = -1/(2d)^4    int t exp(-t) (t^2 - u^2) r_p dt

with ``u = 2 d xi / c`` the lower limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple, Optional

import numpy as np

from ._quadrature import QuadResult, gauss_kronrod
from .constants import c, characteristic_frequency
from .particle import PolarizabilityTensor
from .reflection import IdealMetal, InterfaceModel, reflect

__all__ = [
    "KernelRequest", "KernelComponents", "kernel_quadrature", "interface_components",
    "ideal_metal_components", "energy_kernel", "force_kernel",
    "ideal_metal_energy_kernel", "ideal_metal_force_kernel", "T_SPAN",
]

T_SPAN = 45.0  # e^-45 ~ 3e-20 of the peak is discarded


@dataclass(frozen=True)
class KernelRequest:
    xi: float
    d: float
    interface: InterfaceModel
    alpha: PolarizabilityTensor
    matsubara_index: Optional[int] = None

    def __post_init__(self):
        if not self.d > 0:
            raise ValueError(f"distance must be positive, got {self.d}")
        if self.xi < 0:
            raise ValueError(f"xi must be >= 0, got {self.xi}")

    @property
    def omega_c(self) -> float:
        return characteristic_frequency(self.d)


class KernelComponents(NamedTuple):
    energy_t: float
    energy_z: float
    force_t: float
    force_z: float
    rel_error: float = 0.0

    def energy(self, alpha: PolarizabilityTensor) -> float:
        return alpha.transverse * self.energy_t + alpha.alpha_z * self.energy_z

    def force(self, alpha: PolarizabilityTensor) -> float:
        return alpha.transverse * self.force_t + alpha.alpha_z * self.force_z


def kernel_quadrature(integrand: Callable[[np.ndarray, np.ndarray], np.ndarray], xi: float, d: float,
                      rtol: float = 1e-10, t_span: float = T_SPAN) -> QuadResult:
    """Integrate ``integrand(t, kappa) * exp(-(t - u))`` over ``t`` in ``[u, max(u, 1) + t_span]``.

    ``integrand`` receives the node array ``t`` and the matching in-plane
    wavevectors ``kappa`` (1/m) and returns an array whose last axis runs over nodes.
    The ``exp(-u)`` factor is left to the caller to avoid underflow at large ``u``.
    """
    u = 2.0 * d * xi / c
    t_max = max(u, 1.0) + t_span
    offsets = [0.0, 0.25, 1.0, 2.5, 5.0, 10.0, 20.0, 30.0, t_max - u]

    def weighted(t):
        kappa = np.sqrt(np.maximum(t * t - u * u, 0.0)) / (2.0 * d)
        return integrand(t, kappa) * np.exp(-(t - u))

    return gauss_kronrod(weighted, [u + o for o in offsets], rtol=rtol)


def ideal_metal_components(xi: float, d: float) -> KernelComponents:
    """Closed-form components for r_s = -1, r_p = 1."""
    u = xi / characteristic_frequency(d)
    damp = math.exp(-u)
    p1 = u + 1.0
    p2 = u * u + 2.0 * u + 2.0
    p3 = u**3 + 3.0 * u * u + 6.0 * u + 6.0
    e_pref = damp / (2.0 * (2.0 * d) ** 3)
    f_pref = damp / (2.0 * d) ** 4
    return KernelComponents(
        energy_t=-e_pref * (u * u + p2),
        energy_z=-e_pref * (2.0 * u + 2.0),
        force_t=-f_pref * (u * u * p1 + p3),
        force_z=-f_pref * (2.0 * u * u + 6.0 * u + 6.0),
    )


@lru_cache(maxsize=1 << 15)
def interface_components(interface: InterfaceModel, xi: float, d: float,
                         matsubara_index: Optional[int] = None, rtol: float = 1e-10,
                         closed_form: bool = True) -> KernelComponents:
    """The four polarizability-independent kernel components for one (interface, xi, d).

    For an ideal metal the closed form is returned unless ``closed_form`` is False,
    in which case the generic quadrature runs with (r_s, r_p) = (-1, 1).
    """
    if not d > 0:
        raise ValueError(f"distance must be positive, got {d}")
    if isinstance(interface, IdealMetal) and closed_form:
        return ideal_metal_components(xi, d)
    u = 2.0 * d * xi / c

    def integrand(t, kappa):
        r_s, r_p = reflect(interface, xi, kappa, matsubara_index)
        lateral = u * u * r_s - t * t * r_p
        normal = -(t * t - u * u) * r_p
        return np.stack([lateral, normal, t * lateral, t * normal])

    res = kernel_quadrature(integrand, xi, d, rtol=rtol)
    damp = math.exp(-u)
    e_pref = damp / (2.0 * (2.0 * d) ** 3)
    f_pref = damp / (2.0 * d) ** 4
    e_t, e_z, f_t, f_z = res.value
    return KernelComponents(e_pref * e_t, e_pref * e_z, f_pref * f_t, f_pref * f_z,
                            res.error / res.resabs if res.resabs else 0.0)


def energy_kernel(req: KernelRequest, rtol: float = 1e-10) -> float:
    """f(xi), dimensionless."""
    comp = interface_components(req.interface, float(req.xi), float(req.d), req.matsubara_index, rtol)
    return comp.energy(req.alpha)


def force_kernel(req: KernelRequest, rtol: float = 1e-10) -> float:
    """f~(xi) in 1/m."""
    comp = interface_components(req.interface, float(req.xi), float(req.d), req.matsubara_index, rtol)
    return comp.force(req.alpha)


def ideal_metal_energy_kernel(alpha: float, xi: float, d: float) -> float:
    """Isotropic particle above an ideal metal: -alpha e^-u (u^2 + 2u + 2) / (2d)^3."""
    u = xi / characteristic_frequency(d)
    return -alpha * math.exp(-u) * (u * u + 2.0 * u + 2.0) / (2.0 * d) ** 3


def ideal_metal_force_kernel(alpha: float, xi: float, d: float) -> float:
    """Isotropic particle above an ideal metal: -2 alpha e^-u (u^3 + 3u^2 + 6u + 6) / (2d)^4."""
    u = xi / characteristic_frequency(d)
    return -2.0 * alpha * math.exp(-u) * (u**3 + 3.0 * u * u + 6.0 * u + 6.0) / (2.0 * d) ** 4
