"""Narrowband snapshot model and covariance estimates.

Snapshots follow ``x(t) = A s(t) + n(t)`` with unit-power, uncorrelated,
circular complex Gaussian sources and spatially white noise of power
``10**(-snr_db/10)`` per sensor.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ArrayGeometry, steering_vector


@dataclass(frozen=True)
class SourceScenario:
    """Far-field sources seen by the array.

    ``snr_db`` is the per-source power over the per-sensor noise power;
    ``float('inf')`` disables noise.
    """

    doas: tuple
    snr_db: float = 0.0
    snapshots: int = 200
    wavelength: float = 1.0
    seed: int = 0

    def __post_init__(self):
        doas = tuple(float(t) for t in np.atleast_1d(self.doas))
        object.__setattr__(self, "doas", doas)
        if len(doas) < 1:
            raise ValueError("at least one source is required")
        if any(not 0 < t < np.pi for t in doas):
            raise ValueError("source directions must lie strictly inside (0, pi)")
        if len(set(doas)) != len(doas):
            raise ValueError("source directions must be distinct")
        if int(self.snapshots) < 1:
            raise ValueError(f"snapshots must be >= 1, got {self.snapshots}")
        if not self.wavelength > 0:
            raise ValueError("wavelength must be positive")
        if np.isnan(self.snr_db) or self.snr_db == -np.inf:
            raise ValueError(f"snr_db must be finite or +inf, got {self.snr_db}")

    @property
    def D(self) -> int:
        return len(self.doas)

    @property
    def noise_power(self) -> float:
        return float(10.0 ** (-self.snr_db / 10.0))

    def check_against(self, geom: ArrayGeometry):
        if self.D >= geom.M:
            raise ValueError(f"need fewer sources than sensors: D={self.D}, M={geom.M}")


def trial_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Independent generator for one trial, derived from the master seed and an index path."""
    ss = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def _cgauss(rng, shape, power=1.0):
    scale = np.sqrt(power / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def generate_snapshots(geom: ArrayGeometry, scen: SourceScenario,
                       rng: np.random.Generator | None = None) -> np.ndarray:
    """M x N block of array snapshots, one column per time sample.

    Randomness comes from ``rng`` when given, otherwise from ``scen.seed``.
    """
    scen.check_against(geom)
    if rng is None:
        rng = trial_rng(scen.seed)
    N = int(scen.snapshots)
    A = steering_vector(geom, np.asarray(scen.doas), scen.wavelength)
    s = _cgauss(rng, (scen.D, N))
    x = A @ s
    if np.isfinite(scen.snr_db):
        x = x + _cgauss(rng, (geom.M, N), scen.noise_power)
    return x


def sample_covariance(x: np.ndarray) -> np.ndarray:
    """``(1/N) sum_t x(t) x(t)^H``, symmetrised to be exactly Hermitian."""
    x = np.asarray(x)
    if x.ndim == 1:
        x = x[:, None]
    N = x.shape[1]
    if N < 1:
        raise ValueError("need at least one snapshot")
    R = x @ x.conj().T / N
    return 0.5 * (R + R.conj().T)


def analytic_covariance(geom: ArrayGeometry, scen: SourceScenario) -> np.ndarray:
    """Exact covariance ``A A^H + sigma^2 I`` for unit-power uncorrelated sources."""
    scen.check_against(geom)
    A = steering_vector(geom, np.asarray(scen.doas), scen.wavelength)
    R = A @ A.conj().T
    if np.isfinite(scen.snr_db):
        R = R + scen.noise_power * np.eye(geom.M)
    return 0.5 * (R + R.conj().T)


def write_snapshots_csv(x: np.ndarray, path) -> None:
    """Dump snapshots as CSV: one row per sensor, columns ``re, im`` per snapshot."""
    x = np.asarray(x)
    out = np.empty((x.shape[0], 2 * x.shape[1]))
    out[:, 0::2] = x.real
    out[:, 1::2] = x.imag
    header = ",".join(f"re{t},im{t}" for t in range(x.shape[1]))
    np.savetxt(path, out, delimiter=",", header=header, comments="", fmt="%.17g")


def read_snapshots_csv(path) -> np.ndarray:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return data[:, 0::2] + 1j * data[:, 1::2]
