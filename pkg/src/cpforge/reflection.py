"""Reflection coefficients (r_s, r_p) on the imaginary frequency axis.

Every function accepts ``kappa`` as a scalar or an array and broadcasts.
Sign convention: an ideal metal has ``r_s = -1`` and ``r_p = +1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

import numpy as np

from .constants import alpha_fs, c, epsilon_0, hbar, k_B, matsubara_frequency, mu_0
from .errors import MissingIndex, QuadratureFailure, UnsupportedLimit
from .materials import (
    GOLD, INFINITE_PERMITTIVITY, DrudeMetal, GrapheneSheet,
    permittivity_drude, sigma_total, substrate_permittivity,
)

__all__ = [
    "IdealMetal", "DrudeHalfSpace", "LocalGraphene", "NonlocalGraphene", "InterfaceModel",
    "ReflectionPair", "AxialWavevectors", "axial_wavevectors", "reflect", "fresnel_halfspace",
    "reflect_graphene_local", "polarization_tensor", "polarization_tensor_00",
    "polarization_tensor_tr", "reflect_graphene_nonlocal", "FERMI_VELOCITY",
]

FERMI_VELOCITY = 8.73723e5  # m/s


@dataclass(frozen=True)
class IdealMetal:
    pass


@dataclass(frozen=True)
class DrudeHalfSpace:
    metal: DrudeMetal = GOLD


@dataclass(frozen=True)
class LocalGraphene:
    sheet: GrapheneSheet = field(default_factory=GrapheneSheet)


@dataclass(frozen=True)
class NonlocalGraphene:
    """Undoped, gapless, suspended graphene described by its polarization tensor."""

    temperature: float = 300.0
    fermi_velocity: float = FERMI_VELOCITY

    def __post_init__(self):
        if not self.temperature > 0:
            raise ValueError(f"temperature must be > 0 K, got {self.temperature}")
        if not 0 < self.fermi_velocity < c:
            raise ValueError(f"fermi_velocity must lie in (0, c), got {self.fermi_velocity}")


InterfaceModel = Union[IdealMetal, DrudeHalfSpace, LocalGraphene, NonlocalGraphene]


class ReflectionPair(NamedTuple):
    r_s: np.ndarray
    r_p: np.ndarray


class AxialWavevectors(NamedTuple):
    gamma0_tilde: np.ndarray
    gamma_tilde: np.ndarray


def axial_wavevectors(eps, xi, kappa) -> AxialWavevectors:
    kappa = np.asarray(kappa, dtype=float)
    k0sq = (xi / c) ** 2
    return AxialWavevectors(np.sqrt(k0sq + kappa**2), np.sqrt(eps * k0sq + kappa**2))


def _pair(r_s, r_p, kappa) -> ReflectionPair:
    shape = np.shape(kappa)
    return ReflectionPair(np.broadcast_to(np.asarray(r_s, dtype=float), shape).copy(),
                          np.broadcast_to(np.asarray(r_p, dtype=float), shape).copy())


def fresnel_halfspace(eps, xi, kappa) -> ReflectionPair:
    """Fresnel coefficients of a vacuum/half-space interface with permittivity ``eps``."""
    if eps is INFINITE_PERMITTIVITY:
        return _pair(-1.0, 1.0, kappa)
    g0, g = axial_wavevectors(eps, xi, kappa)
    return ReflectionPair((g0 - g) / (g0 + g), (g0 * eps - g) / (g0 * eps + g))


def reflect_graphene_local(sheet: GrapheneSheet, xi: float, kappa, sigma: Optional[float] = None
                           ) -> ReflectionPair:
    """Graphene sheet on a substrate (vacuum if suspended), local conductivity model.

    ``sigma`` overrides the computed sheet conductivity.
    """
    if not xi > 0:
        raise ValueError("reflect_graphene_local needs xi > 0; use reflect() for the static term")
    if sigma is None:
        sigma = sigma_total(sheet, xi)
    eps = substrate_permittivity(sheet, xi)
    g0, g = axial_wavevectors(eps, xi, kappa)
    if math.isinf(sigma):
        return _pair(-1.0, 1.0, kappa)
    ms = mu_0 * sigma * xi
    sp = sigma * g * g0 / (epsilon_0 * xi)
    return ReflectionPair((g0 - g - ms) / (g0 + g + ms), (g0 * eps - g + sp) / (g0 * eps + g + sp))


# --- nonlocal polarization tensor of undoped graphene ---------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_THETA_CUT = 50.0  # thermal integrands carry exp(-theta); beyond this they are below 1e-21


def _composite(n, f, xi_c, lam, upper, panels):
    """Thermal x-integrals for each kappa row, using x = u^2 on u in [0, upper]."""
    s_nodes = (np.arange(panels)[:, None] + 0.5 * (_GL_NODES[None, :] + 1.0)).ravel() / panels
    s_wts = np.tile(_GL_WEIGHTS, panels) / (2.0 * panels)
    u = upper[:, None] * s_nodes[None, :]
    w = upper[:, None] * s_wts[None, :] * 2.0 * u  # dx = 2u du
    x = u * u
    root = u * np.sqrt(1.0 - x)  # sqrt(x (1 - x))
    theta = lam * f[:, None] * root
    phase = 2.0 * math.pi * n * x
    cs, sn = np.cos(phase), np.sin(phase)
    q = np.exp(-theta)
    big_l = 1.0 + 2.0 * cs * q + q * q  # = 2 exp(-theta) (cosh theta + cos)
    sin_ratio = 2.0 * sn * q / big_l  # sin / (cosh theta + cos)
    cos_ratio = 2.0 * (cs * q + q * q) / big_l  # (cos + exp(-theta)) / (cosh theta + cos)
    log_term = np.log1p(2.0 * cs * q + q * q) / lam
    odd = (1.0 - 2.0 * x) * sin_ratio
    i00 = log_term - 0.5 * xi_c * odd + xi_c**2 * root / f[:, None] * cos_ratio
    itr = xi_c * odd - root * ((f * f + xi_c**2) / f)[:, None] * cos_ratio
    # integrands are symmetric about x = 1/2
    return 2.0 * np.sum(w * i00, axis=1), 2.0 * np.sum(w * itr, axis=1)


def polarization_tensor(n: int, kappa, temperature: float, fermi_velocity: float = FERMI_VELOCITY,
                        rtol: float = 1e-10, max_panels: int = 4096):
    """Return ``(Pi_00, Pi_tr)`` at Matsubara index ``n`` (units of hbar / m).

    The thermal x-integrals are evaluated by composite Gauss-Legendre quadrature
    in ``u = sqrt(x)`` over the range where ``exp(-theta_T)`` is non-negligible;
    the panel count is doubled until both components agree to ``rtol``.
    """
    if n < 0:
        raise ValueError(f"Matsubara index must be >= 0, got {n}")
    kappa = np.asarray(kappa, dtype=float)
    scalar = kappa.ndim == 0
    kappa = np.atleast_1d(kappa)
    if n == 0 and np.any(kappa == 0):
        raise UnsupportedLimit("polarization tensor undefined at (n, kappa) = (0, 0)")
    xi_c = matsubara_frequency(n, temperature) / c
    lam = hbar * c / (k_B * temperature)
    vr = fermi_velocity / c
    f = np.sqrt((vr * kappa) ** 2 + xi_c**2)

    upper = np.minimum(math.sqrt(0.5), math.sqrt(2.0) * _THETA_CUT / (lam * f))
    half_periods = 4.0 * n * float(np.max(upper)) ** 2
    panels = max(4, int(math.ceil(half_periods)) + 2)

    pa = math.pi * alpha_fs * hbar
    zero_t00 = pa * kappa**2 / f
    zero_ttr = pa / f * (f * f + xi_c**2)
    pref00 = 8.0 * alpha_fs * hbar / vr**2
    preftr = 8.0 * alpha_fs * hbar
    # cancellation inside the integrand limits attainable absolute accuracy
    floor00 = 1e-14 * pref00 * (1.0 / lam + xi_c + xi_c**2 / f)
    floortr = 1e-14 * preftr * (xi_c + f + xi_c**2 / f)

    i00, itr = _composite(n, f, xi_c, lam, upper, panels)
    while True:
        panels *= 2
        if panels > max_panels:
            raise QuadratureFailure(
                f"polarization tensor x-integral did not converge (n={n}, {panels // 2} panels)"
            )
        j00, jtr = _composite(n, f, xi_c, lam, upper, panels)
        p00 = zero_t00 + pref00 * j00
        ptr = p00 + zero_ttr + preftr * jtr
        err00 = pref00 * np.abs(j00 - i00)
        errtr = err00 + preftr * np.abs(jtr - itr)
        if np.all(err00 <= rtol * np.abs(p00) + floor00) and np.all(errtr <= rtol * np.abs(ptr) + floortr):
            break
        i00, itr = j00, jtr
    if scalar:
        return float(p00[0]), float(ptr[0])
    return p00, ptr


def polarization_tensor_00(n, kappa, temperature, fermi_velocity=FERMI_VELOCITY):
    return polarization_tensor(n, kappa, temperature, fermi_velocity)[0]


def polarization_tensor_tr(n, kappa, temperature, fermi_velocity=FERMI_VELOCITY):
    return polarization_tensor(n, kappa, temperature, fermi_velocity)[1]


def _nonlocal_from_tensor(xi, kappa, p00, ptr) -> ReflectionPair:
    kappa = np.asarray(kappa, dtype=float)
    g0 = np.sqrt((xi / c) ** 2 + kappa**2)
    k2 = kappa**2
    r_p = g0 * p00 / (2.0 * hbar * k2 + g0 * p00)
    num = k2 * ptr - g0**2 * p00
    r_s = -num / (2.0 * hbar * k2 * g0 + num)
    return ReflectionPair(r_s, r_p)


def reflect_graphene_nonlocal(n: int, kappa, temperature: float,
                              fermi_velocity: float = FERMI_VELOCITY) -> ReflectionPair:
    p00, ptr = polarization_tensor(n, kappa, temperature, fermi_velocity)
    xi = matsubara_frequency(n, temperature)
    return _nonlocal_from_tensor(xi, kappa, p00, ptr)


# --- dispatcher ---------------------------------------------------------------------

def reflect(model: InterfaceModel, xi: float, kappa, matsubara_index: Optional[int] = None
            ) -> ReflectionPair:
    """Reflection coefficients of ``model`` at imaginary frequency ``xi`` and in-plane ``kappa``.

    The static term (``xi == 0``) of Drude and local-graphene interfaces uses the
    analytic limits ``r_s = 0``, ``r_p = 1``.
    """
    if xi < 0 or np.any(np.asarray(kappa) < 0):
        raise ValueError("xi and kappa must be non-negative")
    if xi == 0 and np.any(np.asarray(kappa) == 0):
        raise UnsupportedLimit("reflection coefficients undefined at (xi, kappa) = (0, 0)")

    if isinstance(model, IdealMetal):
        return _pair(-1.0, 1.0, kappa)
    if isinstance(model, DrudeHalfSpace):
        if xi == 0:
            return _pair(0.0, 1.0, kappa)
        return fresnel_halfspace(permittivity_drude(model.metal, xi), xi, kappa)
    if isinstance(model, LocalGraphene):
        if xi == 0:
            return _pair(0.0, 1.0, kappa)
        return reflect_graphene_local(model.sheet, xi, kappa)
    if isinstance(model, NonlocalGraphene):
        if matsubara_index is None:
            raise MissingIndex("the nonlocal graphene model needs the Matsubara index n")
        expected = matsubara_frequency(matsubara_index, model.temperature)
        if abs(xi - expected) > 1e-9 * max(expected, 1.0):
            raise ValueError(
                f"xi={xi:.6e} is not the Matsubara frequency n={matsubara_index} "
                f"at the model temperature {model.temperature} K"
            )
        return reflect_graphene_nonlocal(matsubara_index, kappa, model.temperature,
                                         model.fermi_velocity)
    raise TypeError(f"unknown interface model {model!r}")
