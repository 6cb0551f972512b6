"""Casimir-Polder energy and force: Matsubara sums (T > 0) and frequency integrals (T = 0)."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from ._quadrature import gauss_kronrod
from .constants import c, characteristic_frequency, hbar, k_B, matsubara_frequency, thermal_wavelength
from .errors import TruncationFailure
from .kernel import interface_components
from .particle import ParticleLike, polarizability_of
from .reflection import InterfaceModel, LocalGraphene, NonlocalGraphene

__all__ = [
    "MatsubaraGrid", "CPResult", "cp_energy", "cp_force", "cp_interaction",
    "cp_energy_T0", "cp_force_T0", "normalize", "min_terms",
]

DEFAULT_REL_TOL = 1e-8
DEFAULT_MAX_TERMS = 10**6
_CONSECUTIVE = 3


@dataclass(frozen=True)
class MatsubaraGrid:
    temperature: float

    def __post_init__(self):
        if not self.temperature > 0:
            raise ValueError(f"temperature must be positive, got {self.temperature}")

    def xi(self, n: int) -> float:
        return matsubara_frequency(n, self.temperature)

    @staticmethod
    def weight(n: int) -> float:
        return 0.5 if n == 0 else 1.0

    @property
    def thermal_wavelength(self) -> float:
        return thermal_wavelength(self.temperature)


@dataclass(frozen=True)
class CPResult:
    """Energy [J] and force [N] (negative = attractive) with convergence diagnostics.

    ``tail_bound`` bounds the truncated force tail, ``energy_tail_bound`` the
    energy tail; ``quadrature_error`` is the worst relative kernel error estimate.
    """

    energy: float
    force: float
    terms_used: int
    tail_bound: float
    energy_tail_bound: float
    quadrature_error: float
    temperature: Optional[float] = None
    distance: Optional[float] = None


def min_terms(d: float, temperature: float) -> int:
    """Five e-folds of the exp(-xi_n / omega_c) envelope."""
    return math.ceil(5.0 * hbar * c / (4.0 * math.pi * d * k_B * temperature))


def _geometric_tail(last: float, previous: float, n: int) -> float:
    last, previous = abs(last), abs(previous)
    if previous > 0 and last < previous:
        q = last / previous
        return last * q / (1.0 - q)
    return last * (n + 1)


def _check_interface_temperature(interface, temperature):
    if isinstance(interface, NonlocalGraphene) and interface.temperature != temperature:
        raise ValueError(
            "the nonlocal graphene model is tied to its own Matsubara grid; "
            f"model T={interface.temperature} K differs from summation T={temperature} K"
        )


def cp_interaction(temperature: float, d: float, particle: ParticleLike, interface: InterfaceModel,
                   *, rel_tol: float = DEFAULT_REL_TOL, max_terms: int = DEFAULT_MAX_TERMS,
                   quad_rtol: float = 1e-10, workers: Optional[int] = None,
                   min_n: Optional[int] = None) -> CPResult:
    """Thermal CP energy and force as primed Matsubara sums of the kernels.

    Terms are added in increasing ``n`` until ``n`` exceeds :func:`min_terms`
    and three consecutive terms of both the energy and the force sum are below
    ``rel_tol`` times the partial sum. Kernels may be evaluated by a thread
    pool; the reduction order is fixed, so results do not depend on ``workers``.
    """
    grid = MatsubaraGrid(temperature)
    if not d > 0:
        raise ValueError(f"distance must be positive, got {d}")
    _check_interface_temperature(interface, temperature)
    prefactor = k_B * temperature / (2.0 * math.pi)
    n_min = min_terms(d, temperature) if min_n is None else min_n

    def term(n):
        xi = grid.xi(n)
        comp = interface_components(interface, xi, float(d), n, quad_rtol)
        alpha = polarizability_of(particle, xi)
        w = grid.weight(n) * prefactor
        return w * comp.energy(alpha), w * comp.force(alpha), comp.rel_error

    batch = 1 if not workers or workers <= 1 else 4 * workers
    pool = ThreadPoolExecutor(workers) if batch > 1 else None
    energy = force = 0.0
    e_prev = f_prev = 0.0
    e_last = f_last = 0.0
    quiet = 0
    qerr = 0.0
    n = 0
    try:
        while True:
            stop = min(n + batch, max_terms)
            if n >= stop:
                raise TruncationFailure(
                    f"Matsubara sum not converged after {max_terms} terms (d={d:.3e} m, T={temperature} K)"
                )
            indices = range(n, stop)
            results = pool.map(term, indices) if pool else map(term, indices)
            for k, (e_n, f_n, err) in zip(indices, results):
                energy += e_n
                force += f_n
                qerr = max(qerr, err)
                e_prev, f_prev, e_last, f_last = e_last, f_last, e_n, f_n
                small = abs(e_n) < rel_tol * abs(energy) and abs(f_n) < rel_tol * abs(force)
                quiet = quiet + 1 if small else 0
                if quiet >= _CONSECUTIVE and k > n_min:
                    return CPResult(
                        energy=energy, force=force, terms_used=k + 1,
                        tail_bound=_geometric_tail(f_last, f_prev, k),
                        energy_tail_bound=_geometric_tail(e_last, e_prev, k),
                        quadrature_error=qerr, temperature=temperature, distance=d,
                    )
            n = stop
    finally:
        if pool:
            pool.shutdown()


def cp_energy(temperature, d, particle, interface, **kwargs) -> CPResult:
    """Thermal CP energy; the returned result also carries the force."""
    return cp_interaction(temperature, d, particle, interface, **kwargs)


def cp_force(temperature, d, particle, interface, **kwargs) -> CPResult:
    """Thermal CP force; the returned result also carries the energy."""
    return cp_interaction(temperature, d, particle, interface, **kwargs)


_U_EDGES = (0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0)


def cp_energy_T0(d: float, particle: ParticleLike, interface: InterfaceModel, *,
                 material_temperature: Optional[float] = None,
                 quad_rtol: float = 1e-10, rel_tol: float = DEFAULT_REL_TOL) -> CPResult:
    """Zero-temperature CP energy and force as integrals over imaginary frequency.

    The field fluctuations are taken at T = 0, but graphene's conductivity still
    depends on temperature (its intraband weight degenerates at T = 0), so
    graphene interfaces need an explicit ``material_temperature``; it replaces
    the sheet's own value. Metals ignore it.
    """
    if not d > 0:
        raise ValueError(f"distance must be positive, got {d}")
    if isinstance(interface, NonlocalGraphene):
        raise ValueError("the nonlocal graphene model is only defined on a Matsubara grid")
    if isinstance(interface, LocalGraphene):
        if material_temperature is None:
            raise ValueError("graphene needs an explicit material_temperature on the T = 0 path")
        interface = LocalGraphene(replace(interface.sheet, temperature=float(material_temperature)))
    omega_c = characteristic_frequency(d)
    errors = []

    def kernels(u_nodes):
        out = np.empty((2, len(u_nodes)))
        for i, u in enumerate(u_nodes):
            xi = float(u) * omega_c
            comp = interface_components(interface, xi, float(d), None, quad_rtol)
            alpha = polarizability_of(particle, xi)
            out[0, i] = comp.energy(alpha)
            out[1, i] = comp.force(alpha)
            errors.append(comp.rel_error)
        return out

    res = gauss_kronrod(kernels, _U_EDGES, rtol=rel_tol)
    scale = hbar * omega_c / (4.0 * math.pi**2)
    energy, force = scale * res.value
    # |f(u)| <= |f_IM(u)| ~ u^3 e^-u beyond the cut
    u_max = _U_EDGES[-1]
    tail = abs(force) * u_max**3 * math.exp(-u_max)
    qerr = max(res.error / res.resabs if res.resabs else 0.0, max(errors, default=0.0))
    return CPResult(energy=float(energy), force=float(force), terms_used=res.panels * 21,
                    tail_bound=tail, energy_tail_bound=abs(energy) * u_max**3 * math.exp(-u_max),
                    quadrature_error=qerr, temperature=0.0, distance=d)


cp_force_T0 = cp_energy_T0


def normalize(numerator: CPResult, reference: CPResult, quantity: str = "force") -> float:
    """Ratio of two results computed for the same particle, temperature and distance."""
    if quantity not in ("force", "energy"):
        raise ValueError("quantity must be 'force' or 'energy'")
    ref = getattr(reference, quantity)
    if ref == 0:
        raise ZeroDivisionError(f"reference {quantity} is zero")
    return getattr(numerator, quantity) / ref
