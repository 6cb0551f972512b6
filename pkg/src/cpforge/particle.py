"""Dipole polarizabilities of spherical and spheroidal particles at imaginary frequency.

Polarizabilities are in m^3 (the dipole is p = epsilon_0 * alpha * E).
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple, Union

from .materials import GOLD, INFINITE_PERMITTIVITY, DrudeMetal, permittivity_drude

__all__ = [
    "Orientation", "Spheroid", "PolarizabilityTensor", "DepolarizationFactors",
    "SkinDepthWarning", "depolarization_factors", "eccentricity_squared",
    "polarizability_spheroid", "polarizability_sphere", "clausius_mossotti",
    "equal_volume_sphere", "spheroid_with_volume", "polarizability_of",
]

_NEAR_SPHERE = 1e-6


class SkinDepthWarning(UserWarning):
    """The particle is larger than the skin depth, so the dipole model is questionable."""


class Orientation(str, enum.Enum):
    AXIS_ALONG_Z = "z"  # rotational axis normal to the interface
    AXIS_ALONG_X = "x"  # rotational axis parallel to the interface


@dataclass(frozen=True)
class Spheroid:
    """Spheroid with semi-axis ``R_a`` along its rotational axis and ``R_b`` across it."""

    R_a: float
    R_b: float
    orientation: Orientation = Orientation.AXIS_ALONG_Z
    material: DrudeMetal = GOLD

    def __post_init__(self):
        if not (self.R_a > 0 and self.R_b > 0):
            raise ValueError(f"semi-axes must be positive, got R_a={self.R_a}, R_b={self.R_b}")
        object.__setattr__(self, "orientation", Orientation(self.orientation))

    @classmethod
    def sphere(cls, radius: float, material: DrudeMetal = GOLD) -> "Spheroid":
        return cls(radius, radius, Orientation.AXIS_ALONG_Z, material)

    @property
    def is_sphere(self) -> bool:
        return self.R_a == self.R_b

    @property
    def aspect_ratio(self) -> float:
        """R_b / R_a; below 1 is prolate, above 1 oblate."""
        return self.R_b / self.R_a

    @property
    def volume(self) -> float:
        return 4.0 * math.pi / 3.0 * self.R_a * self.R_b**2


class PolarizabilityTensor(NamedTuple):
    alpha_x: float
    alpha_y: float
    alpha_z: float

    @property
    def transverse(self) -> float:
        """(alpha_x + alpha_y) / 2, the in-plane average seen by the interface."""
        return 0.5 * (self.alpha_x + self.alpha_y)


class DepolarizationFactors(NamedTuple):
    L_x: float
    L_y: float
    L_z: float


def eccentricity_squared(R_a: float, R_b: float) -> float:
    """e^2 = 1 - (R_b/R_a)^2 for prolate and (R_b/R_a)^2 - 1 for oblate spheroids."""
    q2 = (R_b / R_a) ** 2
    return 1.0 - q2 if R_a > R_b else q2 - 1.0


def depolarization_factors(R_a: float, R_b: float) -> DepolarizationFactors:
    """Body-frame depolarization factors, ``L_z`` along the rotational axis."""
    if not (R_a > 0 and R_b > 0):
        raise ValueError("semi-axes must be positive")
    q2 = (R_b / R_a) ** 2
    prolate = R_a > R_b
    e2 = 1.0 - q2 if prolate else q2 - 1.0
    if e2 < _NEAR_SPHERE:
        # both closed forms are 0/0 at the sphere
        sign = -1.0 if prolate else 1.0
        L_z = 1.0 / 3.0 + sign * 2.0 / 15.0 * e2 - 2.0 / 35.0 * e2 * e2
    elif prolate:
        e = math.sqrt(e2)
        L_z = q2 / e2 * (math.atanh(e) / e - 1.0)  # q2 == 1 - e^2
    else:
        e = math.sqrt(e2)
        L_z = q2 / e2 * (1.0 - math.atan(e) / e)  # q2 == 1 + e^2
    L_x = 0.5 * (1.0 - L_z)
    return DepolarizationFactors(L_x, L_x, L_z)


def _axis_polarizability(volume_factor, eps, L):
    if eps is INFINITE_PERMITTIVITY:
        return volume_factor / L
    return volume_factor * (eps - 1.0) / (1.0 + (eps - 1.0) * L)


def polarizability_spheroid(spheroid: Spheroid, xi: float) -> PolarizabilityTensor:
    """Lab-frame diagonal polarizability of a spheroid at ``i xi``."""
    eps = permittivity_drude(spheroid.material, xi)
    L = depolarization_factors(spheroid.R_a, spheroid.R_b)
    vf = 4.0 * math.pi / 3.0 * spheroid.R_a * spheroid.R_b**2
    along = _axis_polarizability(vf, eps, L.L_z)
    across = _axis_polarizability(vf, eps, L.L_x)
    if spheroid.orientation is Orientation.AXIS_ALONG_Z:
        return PolarizabilityTensor(across, across, along)
    return PolarizabilityTensor(along, across, across)


def clausius_mossotti(radius: float, eps) -> float:
    """4 pi R^3 (eps - 1)/(eps + 2); the infinite-permittivity marker gives 4 pi R^3."""
    if eps is INFINITE_PERMITTIVITY:
        return 4.0 * math.pi * radius**3
    return 4.0 * math.pi * radius**3 * (eps - 1.0) / (eps + 2.0)


def polarizability_sphere(radius: float, material: DrudeMetal, xi: float) -> float:
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    if radius > material.skin_depth:
        warnings.warn(
            f"radius {radius:.3g} m exceeds the skin depth {material.skin_depth:.3g} m; "
            "the quasi-static polarizability is outside its range of validity",
            SkinDepthWarning, stacklevel=2,
        )
    return clausius_mossotti(radius, permittivity_drude(material, xi))


def equal_volume_sphere(spheroid: Spheroid) -> float:
    return (spheroid.R_a * spheroid.R_b**2) ** (1.0 / 3.0)


def spheroid_with_volume(aspect_ratio: float, volume_radius: float,
                         orientation=Orientation.AXIS_ALONG_Z, material: DrudeMetal = GOLD) -> Spheroid:
    """Spheroid with R_b/R_a = ``aspect_ratio`` and the volume of a sphere of ``volume_radius``."""
    R_a = volume_radius * aspect_ratio ** (-2.0 / 3.0)
    return Spheroid(R_a, aspect_ratio * R_a, Orientation(orientation), material)


ParticleLike = Union[Spheroid, Callable[[float], PolarizabilityTensor]]


def polarizability_of(particle: ParticleLike, xi: float) -> PolarizabilityTensor:
    """Polarizability tensor of a :class:`Spheroid` or of any ``xi -> tensor`` callable."""
    if isinstance(particle, Spheroid):
        return polarizability_spheroid(particle, xi)
    return PolarizabilityTensor(*particle(xi))
