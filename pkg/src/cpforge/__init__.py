"""Casimir-Polder forces between metallic nanoparticles and planar interfaces."""

from .errors import CPForgeError, MissingIndex, QuadratureFailure, TruncationFailure, UnsupportedLimit
from .materials import GOLD, DrudeMetal, GrapheneSheet, sigma_drude, sigma_interband, sigma_total
from .particle import Orientation, PolarizabilityTensor, Spheroid, spheroid_with_volume
from .reflection import DrudeHalfSpace, IdealMetal, LocalGraphene, NonlocalGraphene, reflect
from .summation import CPResult, cp_energy, cp_energy_T0, cp_force, cp_force_T0, cp_interaction, normalize

__all__ = [
    "CPForgeError", "MissingIndex", "QuadratureFailure", "TruncationFailure", "UnsupportedLimit",
    "GOLD", "DrudeMetal", "GrapheneSheet", "sigma_drude", "sigma_interband", "sigma_total",
    "Orientation", "PolarizabilityTensor", "Spheroid", "spheroid_with_volume",
    "DrudeHalfSpace", "IdealMetal", "LocalGraphene", "NonlocalGraphene", "reflect",
    "CPResult", "cp_energy", "cp_energy_T0", "cp_force", "cp_force_T0", "cp_interaction", "normalize",
]

__version__ = "0.1.0"
