"""Parameter sweeps over distance, aspect ratio or Fermi level, with CSV/plot-data output."""

from __future__ import annotations

import csv
import enum
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from .errors import CPForgeError
from .materials import GOLD, DrudeMetal
from .particle import Orientation, spheroid_with_volume
from .reflection import DrudeHalfSpace, IdealMetal, InterfaceModel, LocalGraphene
from .summation import DEFAULT_MAX_TERMS, DEFAULT_REL_TOL, cp_interaction

log = logging.getLogger(__name__)

CSV_HEADER = ["sweep_var", "value", "force_N", "ref_force_N", "ratio", "energy_J", "terms", "tail_bound"]


class SweepVariable(str, enum.Enum):
    DISTANCE = "distance"
    ASPECT_RATIO = "aspect_ratio"
    FERMI_LEVEL = "fermi_level"


class Spacing(str, enum.Enum):
    LINEAR = "linear"
    LOG = "log"


class Reference(str, enum.Enum):
    IDEAL_METAL = "ideal_metal"
    GOLD_HALF_SPACE = "gold_half_space"
    NONE = "none"


@dataclass(frozen=True)
class Scenario:
    """Everything that is held fixed during a sweep."""

    interface: InterfaceModel = field(default_factory=IdealMetal)
    temperature: float = 300.0
    distance: float = 100e-9
    aspect_ratio: float = 1.0
    volume_radius: float = 10e-9
    orientation: Orientation = Orientation.AXIS_ALONG_Z
    material: DrudeMetal = GOLD
    reference: Reference = Reference.IDEAL_METAL

    def particle(self):
        return spheroid_with_volume(self.aspect_ratio, self.volume_radius, self.orientation, self.material)

    def reference_interface(self) -> Optional[InterfaceModel]:
        if self.reference is Reference.IDEAL_METAL:
            return IdealMetal()
        if self.reference is Reference.GOLD_HALF_SPACE:
            return DrudeHalfSpace(GOLD)
        return None


@dataclass(frozen=True)
class SweepSpec:
    variable: SweepVariable
    start: float
    stop: float
    count: int
    spacing: Spacing = Spacing.LOG
    scenario: Scenario = field(default_factory=Scenario)
    label: str = "sweep"

    def __post_init__(self):
        object.__setattr__(self, "variable", SweepVariable(self.variable))
        object.__setattr__(self, "spacing", Spacing(self.spacing))
        if not self.start < self.stop:
            raise ValueError(f"sweep range must satisfy min < max, got {self.start} >= {self.stop}")
        if self.count < 2:
            raise ValueError(f"sweep count must be >= 2, got {self.count}")
        if self.spacing is Spacing.LOG and self.start <= 0:
            raise ValueError("log spacing needs a positive lower bound")
        if self.variable is SweepVariable.FERMI_LEVEL and not isinstance(self.scenario.interface, LocalGraphene):
            raise ValueError("a Fermi-level sweep needs a local graphene interface")

    def values(self) -> np.ndarray:
        if self.spacing is Spacing.LOG:
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    def scenario_at(self, value: float) -> Scenario:
        sc = self.scenario
        if self.variable is SweepVariable.DISTANCE:
            return replace(sc, distance=float(value))
        if self.variable is SweepVariable.ASPECT_RATIO:
            return replace(sc, aspect_ratio=float(value))
        sheet = replace(sc.interface.sheet, fermi_level=float(value))
        return replace(sc, interface=LocalGraphene(sheet))


@dataclass
class ResultRow:
    sweep_var: str
    value: float
    force: Optional[float] = None
    ref_force: Optional[float] = None
    ratio: Optional[float] = None
    energy: Optional[float] = None
    terms: Optional[int] = None
    tail_bound: Optional[float] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class SolverOptions:
    rel_tol: float = DEFAULT_REL_TOL
    max_terms: int = DEFAULT_MAX_TERMS


def evaluate(scenario: Scenario, sweep_var: str, value: float,
             options: SolverOptions = SolverOptions()) -> ResultRow:
    """One row: force and energy of the scenario plus its normalization, if any."""
    row = ResultRow(sweep_var, float(value))
    try:
        particle = scenario.particle()
        kw = dict(rel_tol=options.rel_tol, max_terms=options.max_terms)
        res = cp_interaction(scenario.temperature, scenario.distance, particle, scenario.interface, **kw)
        row.force, row.energy = res.force, res.energy
        row.terms, row.tail_bound = res.terms_used, res.tail_bound
        ref_iface = scenario.reference_interface()
        if ref_iface is not None:
            ref = cp_interaction(scenario.temperature, scenario.distance, particle, ref_iface, **kw)
            row.ref_force = ref.force
            row.ratio = res.force / ref.force
    except (CPForgeError, ValueError, ArithmeticError) as exc:
        log.error("row %s=%g failed: %s", sweep_var, value, exc)
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def _evaluate_packed(args):
    return evaluate(*args)


def run_sweep(spec: SweepSpec, options: SolverOptions = SolverOptions(),
              workers: Optional[int] = None) -> List[ResultRow]:
    """Evaluate every sweep point; rows come back in sweep order whatever ``workers`` is."""
    jobs = [(spec.scenario_at(v), spec.variable.value, float(v), options) for v in spec.values()]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(jobs) == 1:
        return [_evaluate_packed(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(_evaluate_packed, jobs))


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def emit_csv(rows: Sequence[ResultRow], path) -> Path:
    if not rows:
        raise ValueError("no rows to write")
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for r in rows:
                writer.writerow([r.sweep_var, _fmt(r.value), _fmt(r.force), _fmt(r.ref_force),
                                 _fmt(r.ratio), _fmt(r.energy), _fmt(r.terms), _fmt(r.tail_bound)])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc
    return path


def emit_plotdata(rows: Sequence[ResultRow], path) -> Path:
    """Two whitespace-separated columns: sweep value and ratio (force if no reference)."""
    if not rows:
        raise ValueError("no rows to write")
    path = Path(path)
    try:
        with path.open("w") as fh:
            fh.write(f"# {rows[0].sweep_var} ratio\n")
            for r in rows:
                if not r.ok:
                    continue
                y = r.ratio if r.ratio is not None else r.force
                fh.write(f"{_fmt(r.value)} {_fmt(y)}\n")
    except OSError as exc:
        raise OSError(f"cannot write plot data to {path}: {exc}") from exc
    return path


def read_csv(path) -> List[ResultRow]:
    def num(s, cast=float):
        return cast(s) if s != "" else None

    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        return [
            ResultRow(rec["sweep_var"], float(rec["value"]), num(rec["force_N"]), num(rec["ref_force_N"]),
                      num(rec["ratio"]), num(rec["energy_J"]), num(rec["terms"], int), num(rec["tail_bound"]))
            for rec in reader
        ]
