"""Built-in sweeps that reproduce the published figures.

Axis ranges that the figures do not state explicitly are reconstructions:
distance curves for the isotropic particle span 100 nm to 10 um, the
spheroid distance curves 20 nm to 10 um, and aspect-ratio curves 0.1 to 10.
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from .constants import matsubara_frequency
from .materials import GrapheneSheet, sigma_drude, sigma_interband
from .reflection import DrudeHalfSpace, LocalGraphene, NonlocalGraphene
from .sweep import (
    Reference, ResultRow, Scenario, SolverOptions, Spacing, SweepSpec, SweepVariable,
    emit_csv, emit_plotdata, run_sweep,
)

log = logging.getLogger(__name__)

T_ROOM = 300.0
SHAPES = {"prolate": 0.1, "sphere": 1.0, "oblate": 10.0}


def _distance(label, scenario, start=100e-9, stop=10e-6, count=16) -> SweepSpec:
    return SweepSpec(SweepVariable.DISTANCE, start, stop, count, Spacing.LOG, scenario, label)


def _graphene(ef: float) -> LocalGraphene:
    return LocalGraphene(GrapheneSheet(fermi_level=ef, temperature=T_ROOM))


def fig3() -> List[SweepSpec]:
    return [_distance("gold", Scenario(interface=DrudeHalfSpace(), temperature=T_ROOM))]


def _fig4(reference: Reference) -> List[SweepSpec]:
    return [
        _distance(f"ef{ef:g}", Scenario(interface=_graphene(ef), temperature=T_ROOM, reference=reference))
        for ef in (0.0, 0.5, 1.0)
    ]


def _spheroid_distance(ef: float, nonlocal_too: bool) -> List[SweepSpec]:
    interfaces = [("local", _graphene(ef))]
    if nonlocal_too:
        interfaces.append(("nonlocal", NonlocalGraphene(temperature=T_ROOM)))
    specs = []
    for tag, iface in interfaces:
        for axis in ("x", "z"):
            for shape, ratio in SHAPES.items():
                sc = Scenario(interface=iface, temperature=T_ROOM, aspect_ratio=ratio, orientation=axis)
                specs.append(_distance(f"{tag}-{shape}-{axis}", sc, start=20e-9))
    return specs


def aspect() -> List[SweepSpec]:
    specs = []
    for d, dtag in ((100e-9, "100nm"), (1e-6, "1um")):
        for ef in (0.0, 1.0):
            for axis in ("x", "z"):
                sc = Scenario(interface=_graphene(ef), temperature=T_ROOM, distance=d, orientation=axis)
                specs.append(SweepSpec(SweepVariable.ASPECT_RATIO, 0.1, 10.0, 17, Spacing.LOG, sc,
                                       f"d{dtag}-ef{ef:g}-{axis}"))
    return specs


SWEEP_PRESETS: Dict[str, Tuple[str, Callable[[], List[SweepSpec]]]] = {
    "fig3": ("Au sphere over a Au half-space, normalized to an ideal metal", fig3),
    "fig4-top": ("Au sphere over suspended graphene, E_F = 0, 0.5, 1 eV, ideal-metal reference",
                 lambda: _fig4(Reference.IDEAL_METAL)),
    "fig4-bottom": ("Au sphere over suspended graphene, E_F = 0, 0.5, 1 eV, Au half-space reference",
                    lambda: _fig4(Reference.GOLD_HALF_SPACE)),
    "fig5": ("prolate/sphere/oblate Au particles over pristine graphene, local and nonlocal",
             lambda: _spheroid_distance(0.0, nonlocal_too=True)),
    "fig6": ("prolate/sphere/oblate Au particles over graphene with E_F = 1 eV",
             lambda: _spheroid_distance(1.0, nonlocal_too=False)),
    "aspect": ("force ratio against aspect ratio at d = 100 nm and 1 um", aspect),
}

PRESETS = ["fig2", *SWEEP_PRESETS]


def conductivity_table(fermi_level: float = 0.5, temperature: float = T_ROOM, n_max: int = 30):
    """Rows (n, xi_n, sigma_D, sigma_I, sigma) for the first ``n_max`` Matsubara terms."""
    sheet = GrapheneSheet(fermi_level=fermi_level, temperature=temperature)
    rows = []
    for n in range(1, n_max + 1):
        xi = matsubara_frequency(n, temperature)
        s_d, s_i = sigma_drude(sheet, xi), sigma_interband(sheet, xi)
        rows.append((n, xi, s_d, s_i, s_d + s_i))
    return rows


def write_fig2(out_dir: Path) -> List[Path]:
    rows = conductivity_table()
    csv_path = out_dir / "fig2.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "xi_rad_s", "sigma_D_S", "sigma_I_S", "sigma_S"])
        for n, *vals in rows:
            writer.writerow([n, *(format(v, ".17g") for v in vals)])
    dat_path = out_dir / "fig2.dat"
    with dat_path.open("w") as fh:
        fh.write("# n sigma sigma_D sigma_I\n")
        for n, _, s_d, s_i, s in rows:
            fh.write(f"{n} {s:.17g} {s_d:.17g} {s_i:.17g}\n")
    return [csv_path, dat_path]


def run_preset(name: str, out_dir, options: SolverOptions = SolverOptions(),
               workers: Optional[int] = None) -> Tuple[List[Path], List[ResultRow]]:
    """Run a preset, writing ``<name>_<curve>.csv`` and ``.dat`` files; return paths and failed rows."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if name == "fig2":
        return write_fig2(out_dir), []
    if name not in SWEEP_PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    paths, failed = [], []
    for spec in SWEEP_PRESETS[name][1]():
        log.info("%s: curve %s", name, spec.label)
        rows = run_sweep(spec, options, workers)
        failed.extend(r for r in rows if not r.ok)
        stem = f"{name}_{spec.label}"
        paths.append(emit_csv(rows, out_dir / f"{stem}.csv"))
        paths.append(emit_plotdata(rows, out_dir / f"{stem}.dat"))
    return paths, failed
