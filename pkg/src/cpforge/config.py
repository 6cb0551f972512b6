"""Parsing of interface/particle spec strings and of declarative sweep configs.

Spec strings look like ``graphene:ef=0.5,tau=1e-12`` or ``spheroid:ratio=0.1,r=10e-9,axis=x``.
A sweep config is an INI file::

    [sweep]
    variable = distance        # distance | aspect_ratio | fermi_level
    min = 100e-9
    max = 10e-6
    count = 16
    spacing = log              # log | linear
    label = gold

    [scenario]
    temperature = 300
    distance = 100e-9          # used unless distance is swept
    reference = ideal_metal    # ideal_metal | gold_half_space | none

    [particle]
    aspect_ratio = 1           # R_b / R_a
    volume_radius = 10e-9
    orientation = z            # z (axis normal) | x (axis parallel)

    [interface]
    model = graphene           # ideal | gold | drude | graphene | nonlocal
    fermi_level = 0.0
"""

from __future__ import annotations

import configparser
from pathlib import Path
from typing import Dict, Optional, Tuple

from .materials import GOLD, DrudeMetal, GrapheneSheet
from .particle import Orientation, Spheroid, spheroid_with_volume
from .reflection import FERMI_VELOCITY, DrudeHalfSpace, IdealMetal, LocalGraphene, NonlocalGraphene
from .sweep import Reference, Scenario, Spacing, SweepSpec, SweepVariable

__all__ = ["parse_spec", "parse_interface", "parse_particle", "load_config", "parse_config"]


def parse_spec(text: str) -> Tuple[str, Dict[str, str]]:
    """Split ``name:key=value,key=value`` into the name and a dict of raw values."""
    name, _, rest = text.strip().partition(":")
    params = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"malformed parameter {item!r} in {text!r} (expected key=value)")
        params[key.strip().lower()] = value.strip()
    return name.strip().lower(), params


def _material(value: Optional[str], omega_p=None, gamma=None) -> DrudeMetal:
    if omega_p is not None or gamma is not None:
        return DrudeMetal(float(omega_p or GOLD.omega_p), float(gamma or GOLD.gamma_damping))
    if value in (None, "", "gold", "au"):
        return GOLD
    raise ValueError(f"unknown material {value!r}")


def _substrate(value: Optional[str]):
    if value in (None, "", "none", "suspended"):
        return None
    if value in ("gold", "au"):
        return GOLD
    return float(value)


def parse_interface(text: str, temperature: float = 300.0):
    """Build an interface model; graphene inherits ``temperature`` unless ``t=`` is given."""
    name, p = parse_spec(text)
    if name in ("ideal", "ideal_metal", "im"):
        return IdealMetal()
    if name in ("gold", "au", "drude"):
        return DrudeHalfSpace(_material("gold", p.get("omega_p"), p.get("gamma")))
    t = float(p.get("t", temperature))
    if name in ("graphene", "local"):
        sheet = GrapheneSheet(
            fermi_level=float(p.get("ef", p.get("fermi_level", 0.0))),
            relaxation_time=float(p.get("tau", 1e-12)),
            temperature=t,
            substrate=_substrate(p.get("substrate")),
        )
        return LocalGraphene(sheet)
    if name in ("nonlocal", "graphene-nonlocal", "nonlocal_graphene"):
        return NonlocalGraphene(temperature=t, fermi_velocity=float(p.get("vf", FERMI_VELOCITY)))
    raise ValueError(f"unknown interface {name!r}")


def parse_particle(text: str) -> Spheroid:
    name, p = parse_spec(text)
    material = _material(p.get("material"), p.get("omega_p"), p.get("gamma"))
    orientation = Orientation(p.get("axis", "z"))
    if name == "sphere":
        return Spheroid.sphere(float(p.get("r", 10e-9)), material)
    if name == "spheroid":
        if "ratio" in p:
            return spheroid_with_volume(float(p["ratio"]), float(p.get("r", 10e-9)), orientation, material)
        return Spheroid(float(p["ra"]), float(p["rb"]), orientation, material)
    raise ValueError(f"unknown particle {name!r}")


_INTERFACE_KEYS = {"fermi_level": "ef", "relaxation_time": "tau", "temperature": "t", "fermi_velocity": "vf"}


def parse_config(parser: configparser.ConfigParser) -> SweepSpec:
    sw = parser["sweep"]
    sc = parser["scenario"] if parser.has_section("scenario") else {}
    pa = parser["particle"] if parser.has_section("particle") else {}
    it = parser["interface"] if parser.has_section("interface") else {}

    temperature = float(sc.get("temperature", 300.0))
    model = it.get("model", "ideal")
    params = [f"{_INTERFACE_KEYS.get(k, k)}={v}" for k, v in it.items() if k != "model"]
    interface = parse_interface(model + (":" + ",".join(params) if params else ""), temperature)

    scenario = Scenario(
        interface=interface,
        temperature=temperature,
        distance=float(sc.get("distance", 100e-9)),
        aspect_ratio=float(pa.get("aspect_ratio", 1.0)),
        volume_radius=float(pa.get("volume_radius", 10e-9)),
        orientation=Orientation(pa.get("orientation", "z")),
        material=_material(pa.get("material"), pa.get("omega_p"), pa.get("gamma")),
        reference=Reference(sc.get("reference", "ideal_metal")),
    )
    return SweepSpec(
        variable=SweepVariable(sw.get("variable", "distance")),
        start=float(sw["min"]),
        stop=float(sw["max"]),
        count=int(sw.get("count", 16)),
        spacing=Spacing(sw.get("spacing", "log")),
        scenario=scenario,
        label=sw.get("label", "sweep"),
    )


def load_config(path) -> SweepSpec:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    path = Path(path)
    if not parser.read(path):
        raise FileNotFoundError(f"config file not found: {path}")
    return parse_config(parser)
