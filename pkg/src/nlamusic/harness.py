"""Monte-Carlo sweeps comparing array layouts of identical length.

Every (geometry, SNR, trial) cell draws snapshots from a generator keyed by
``(master_seed, geometry index, snr index, trial index)``, so results do not
depend on how cells are scheduled across workers.
"""
from __future__ import annotations

import csv
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from .geometry import ArrayGeometry, nonuniform_progressive, uniform_linear
from .perturbation import delta_theta
from .rmse import RMSE_MODES, rmse
from .signal import SourceScenario, generate_snapshots, sample_covariance, trial_rng
from .subspace import (PeakDeficitError, eigendecompose_hermitian, estimate_doa,
                       music_spectrum, noise_subspace, sector_grid)

log = logging.getLogger(__name__)

CSV_HEADER = ["geometry", "scheme", "M", "array_length_hw", "snr_db", "rmse_sim_deg",
              "rmse_theory_deg", "mode", "trials", "excluded"]

DEFAULT_GROWTH = 1.3


@dataclass(frozen=True)
class GeometrySpec:
    """Serializable description of a linear array.

    ``array_length_half_wavelengths`` is the first-to-last sensor distance in
    units of lambda/2. Uniform arrays require ``M - 1`` half-wavelengths.
    """

    scheme: str
    M: int
    array_length_half_wavelengths: float
    growth: float = 1.0

    def build(self) -> ArrayGeometry:
        if self.scheme == "uniform":
            hw = self.array_length_half_wavelengths
            if hw != int(hw):
                raise ValueError(f"uniform array length must be a whole number of half-wavelengths, got {hw}")
            return uniform_linear(self.M, int(hw))
        return nonuniform_progressive(self.M, 0.5 * self.array_length_half_wavelengths,
                                      self.scheme, self.growth)

    @property
    def name(self) -> str:
        if self.scheme == "uniform":
            return f"uniform-M{self.M}"
        return f"{self.scheme}{self.growth:g}-M{self.M}"


@dataclass
class ExperimentConfig:
    geometries: list
    theta_true_deg: float = 60.0
    snr_db_list: list = field(default_factory=lambda: [-5.0, 0.0, 5.0, 10.0])
    snapshots: int = 200
    trials: int = 100
    resolution_deg: float = 0.01
    master_seed: int = 0
    rmse_mode: str = "both"
    workers: int = 1

    def __post_init__(self):
        self.geometries = [g if isinstance(g, GeometrySpec) else GeometrySpec(**g)
                           for g in self.geometries]
        self.snr_db_list = [float(s) for s in self.snr_db_list]

    def validate(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.snapshots < 1:
            raise ValueError(f"snapshots must be >= 1, got {self.snapshots}")
        if not self.resolution_deg > 0:
            raise ValueError(f"resolution_deg must be positive, got {self.resolution_deg}")
        if not 0 < self.theta_true_deg < 180:
            raise ValueError(f"theta_true_deg must lie strictly inside (0, 180), got {self.theta_true_deg}")
        if self.rmse_mode not in RMSE_MODES + ("both",):
            raise ValueError(f"rmse_mode must be paper, standard or both, got {self.rmse_mode!r}")
        geoms = [g.build() for g in self.geometries]
        for i in range(1, len(geoms)):
            if geoms[i].array_length != geoms[0].array_length:
                raise ValueError(
                    "geometries in one experiment must share the array length: "
                    f"{self.geometries[0].name} spans {geoms[0].array_length_hw:g} half-wavelengths, "
                    f"{self.geometries[i].name} spans {geoms[i].array_length_hw:g}"
                )
        return geoms

    @property
    def modes(self):
        return RMSE_MODES if self.rmse_mode == "both" else (self.rmse_mode,)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["geometries"] = [asdict(g) for g in self.geometries]
        return d


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return ExperimentConfig.from_dict(json.load(fh))


@dataclass
class CellResult:
    """Per-trial outcomes for one (geometry, SNR) pair; angles in radians.

    ``estimates`` and ``deltas`` hold NaN for trials that failed.
    """

    spec: GeometrySpec
    snr_db: float
    estimates: np.ndarray
    deltas: np.ndarray
    theta_true: float

    @property
    def excluded_mask(self) -> np.ndarray:
        return ~(np.isfinite(self.estimates) & np.isfinite(self.deltas))

    @property
    def excluded(self) -> int:
        return int(self.excluded_mask.sum())

    @property
    def included(self) -> int:
        return int(self.estimates.size - self.excluded)

    def sim_errors(self) -> np.ndarray:
        keep = ~self.excluded_mask
        return self.estimates[keep] - self.theta_true

    def theory_errors(self) -> np.ndarray:
        return self.deltas[~self.excluded_mask]

    def rmse_sim(self, mode="paper") -> float:
        e = self.sim_errors()
        return rmse(e, mode) if e.size else math.nan

    def rmse_theory(self, mode="paper") -> float:
        e = self.theory_errors()
        return rmse(e, mode) if e.size else math.nan


@dataclass
class TrialResults:
    config: ExperimentConfig
    cells: list

    def cell(self, name: str, snr_db: float) -> CellResult:
        for c in self.cells:
            if c.spec.name == name and c.snr_db == snr_db:
                return c
        raise KeyError((name, snr_db))

    def rows(self):
        for c in self.cells:
            for mode in self.config.modes:
                yield {
                    "geometry": c.spec.name,
                    "scheme": c.spec.scheme,
                    "M": c.spec.M,
                    "array_length_hw": c.spec.array_length_half_wavelengths,
                    "snr_db": c.snr_db,
                    "rmse_sim_deg": math.degrees(c.rmse_sim(mode)),
                    "rmse_theory_deg": math.degrees(c.rmse_theory(mode)),
                    "mode": mode,
                    "trials": c.estimates.size,
                    "excluded": c.excluded,
                }


def run_trial(geom: ArrayGeometry, scen: SourceScenario, rng, grid):
    """Simulated MUSIC estimate and closed-form perturbation for one snapshot draw.

    Returns ``(estimate, delta)`` in radians; either is NaN when the trial
    has a peak deficit or a degenerate second derivative.
    """
    x = generate_snapshots(geom, scen, rng)
    Vn = noise_subspace(eigendecompose_hermitian(sample_covariance(x)), scen.D)
    theta = scen.doas[0]
    try:
        est = float(estimate_doa(music_spectrum(geom, Vn, grid, scen.wavelength), scen.D)[0])
    except PeakDeficitError:
        est = math.nan
    rep = delta_theta(geom, theta, Vn, scen.wavelength)
    return est, (math.nan if rep.degenerate else rep.delta_theta)


def _run_cell(args):
    gi, si, spec, snr_db, cfg = args
    geom = spec.build()
    theta = math.radians(cfg.theta_true_deg)
    grid = sector_grid(cfg.resolution_deg)
    scen = SourceScenario((theta,), snr_db, cfg.snapshots)
    est = np.empty(cfg.trials)
    dth = np.empty(cfg.trials)
    for t in range(cfg.trials):
        est[t], dth[t] = run_trial(geom, scen, trial_rng(cfg.master_seed, gi, si, t), grid)
    return CellResult(spec, snr_db, est, dth, theta)


def run_experiment(config: ExperimentConfig) -> TrialResults:
    config.validate()
    jobs = [(gi, si, spec, snr, config)
            for gi, spec in enumerate(config.geometries)
            for si, snr in enumerate(config.snr_db_list)]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            cells = list(pool.map(_run_cell, jobs))
    else:
        cells = []
        for job in jobs:
            cells.append(_run_cell(job))
            log.info("finished %s at %g dB", job[2].name, job[3])
    for c in cells:
        if c.excluded:
            log.warning("%s at %g dB: %d of %d trials excluded",
                        c.spec.name, c.snr_db, c.excluded, c.estimates.size)
    return TrialResults(config, cells)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def write_csv(results: TrialResults, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in results.rows():
        w.writerow([_fmt(row[k]) for k in CSV_HEADER])


def emit_csv(results: TrialResults, path) -> Path:
    """Write one row per (geometry, SNR, RMSE mode); angles in degrees."""
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            write_csv(results, fh)
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc.strerror or exc}") from exc
    return path


def read_csv(path) -> list:
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def emit_spectrum(geom: ArrayGeometry, scen: SourceScenario, path,
                  resolution_deg: float = 0.01, rng=None) -> Path:
    """Dump ``angle_deg value`` rows of the MUSIC spectrum for one snapshot draw."""
    path = Path(path)
    start, stop, step = sector_grid(resolution_deg)
    x = generate_snapshots(geom, scen, rng)
    Vn = noise_subspace(eigendecompose_hermitian(sample_covariance(x)), scen.D)
    spec = music_spectrum(geom, Vn, (start, stop, step), scen.wavelength)
    i0 = round(math.degrees(start) / resolution_deg)
    lines = [f"{(i0 + k) * resolution_deg:.10g} {v:.10e}" for k, v in enumerate(spec.values)]
    try:
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write spectrum to {path}: {exc.strerror or exc}") from exc
    return path


def summary_table(results: TrialResults, mode: str = "paper") -> str:
    """Human-readable table of simulated vs. closed-form RMSE (degrees)."""
    lines = [f"{'geometry':<18}{'snr_db':>8}{'sim':>12}{'theory':>12}{'sim/theory':>12}"]
    for c in results.cells:
        s, t = math.degrees(c.rmse_sim(mode)), math.degrees(c.rmse_theory(mode))
        lines.append(f"{c.spec.name:<18}{c.snr_db:>8g}{s:>12.4g}{t:>12.4g}{s / t if t else math.nan:>12.3f}")
    return "\n".join(lines)


def length10_config(**overrides) -> ExperimentConfig:
    """Sensor counts and source angle of the 10 half-wavelength comparison."""
    g = overrides.pop("growth", DEFAULT_GROWTH)
    cfg = dict(
        geometries=[GeometrySpec("uniform", 11, 10),
                    GeometrySpec("geometric", 8, 10, g),
                    GeometrySpec("geometric", 5, 10, g)],
        theta_true_deg=60.0,
    )
    cfg.update(overrides)
    return ExperimentConfig(**cfg)


def length11_config(**overrides) -> ExperimentConfig:
    """Sensor counts and source angle of the 11 half-wavelength comparison."""
    g = overrides.pop("growth", DEFAULT_GROWTH)
    cfg = dict(
        geometries=[GeometrySpec("uniform", 12, 11),
                    GeometrySpec("geometric", 9, 11, g),
                    GeometrySpec("geometric", 6, 11, g)],
        theta_true_deg=50.0,
    )
    cfg.update(overrides)
    return ExperimentConfig(**cfg)
