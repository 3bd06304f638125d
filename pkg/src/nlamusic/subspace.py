"""Covariance eigenstructure, MUSIC spectrum and grid peak search."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import ArrayGeometry, steering_vector

DENOM_FLOOR = 1e-30


class PeakDeficitError(ValueError):
    """Raised when the spectrum has fewer peaks than requested sources."""

    def __init__(self, found, wanted):
        self.found = found
        self.wanted = wanted
        super().__init__(
            f"spectrum has {found} peak(s) but {wanted} source(s) were requested "
            f"({wanted - found} missing)"
        )


@dataclass(frozen=True)
class SubspaceDecomposition:
    """Eigenpairs of a covariance matrix sorted by decreasing eigenvalue."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def M(self) -> int:
        return self.eigenvalues.shape[0]

    def noise_subspace(self, D: int) -> np.ndarray:
        return noise_subspace(self, D)

    def signal_subspace(self, D: int) -> np.ndarray:
        _check_D(D, self.M)
        return self.eigenvectors[:, :D]


@dataclass(frozen=True)
class SpectrumGrid:
    """MUSIC pseudo-spectrum sampled on a regular angle grid (radians)."""

    start: float
    stop: float
    step: float
    values: np.ndarray

    @property
    def angles(self) -> np.ndarray:
        return angle_grid(self.start, self.stop, self.step)

    def __len__(self):
        return len(self.values)


def grid_size(start, stop, step) -> int:
    if not step > 0:
        raise ValueError(f"grid step must be positive, got {step}")
    # tolerate (stop - start)/step landing a hair below an integer
    return int(np.floor((stop - start) / step + 1e-9)) + 1


def angle_grid(start, stop, step) -> np.ndarray:
    return start + step * np.arange(grid_size(start, stop, step))


def sector_grid(resolution_deg: float = 0.01, sector_deg=(0.0, 180.0)):
    """``(start, stop, step)`` in radians for a grid that excludes the sector ends.

    Grid points sit on integer multiples of the resolution so round angles
    such as 60 degrees are represented.
    """
    lo, hi = sector_deg
    res = float(resolution_deg)
    if not res > 0:
        raise ValueError(f"resolution must be positive, got {resolution_deg}")
    i0 = int(np.floor(lo / res + 1e-9)) + 1
    i1 = int(np.ceil(hi / res - 1e-9)) - 1
    if i1 < i0:
        raise ValueError("sector is narrower than one grid step")
    return np.deg2rad(i0 * res), np.deg2rad(i1 * res), np.deg2rad(res)


def eigendecompose_hermitian(R: np.ndarray) -> SubspaceDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""
    R = np.asarray(R)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {R.shape}")
    if not np.all(np.isfinite(R)):
        raise ValueError("covariance matrix has non-finite entries")
    w, V = np.linalg.eigh(R)
    order = np.argsort(w)[::-1]
    return SubspaceDecomposition(w[order], V[:, order])


def _check_D(D, M):
    if not 1 <= D < M:
        raise ValueError(f"source count must satisfy 1 <= D < M={M}, got D={D}")


def noise_subspace(dec: SubspaceDecomposition, D: int) -> np.ndarray:
    """Eigenvectors D+1..M (the M-D smallest eigenvalues)."""
    _check_D(D, dec.M)
    return dec.eigenvectors[:, D:]


def null_spectrum(geom: ArrayGeometry, theta, Vn: np.ndarray, wavelength: float = 1.0):
    """``a^H(theta) Vn Vn^H a(theta)``; vectorised over an array of angles."""
    a = steering_vector(geom, theta, wavelength)
    P = Vn @ Vn.conj().T
    if a.ndim == 1:
        return max(float(np.real(a.conj() @ P @ a)), 0.0)
    f = np.real(np.einsum("mk,mn,nk->k", a.conj(), P, a))
    return np.maximum(f, 0.0)


@lru_cache(maxsize=32)
def _grid_steering(geom, start, stop, step, wavelength):
    A = steering_vector(geom, angle_grid(start, stop, step), wavelength)
    A.setflags(write=False)
    return A


def music_spectrum(geom: ArrayGeometry, Vn: np.ndarray, grid=None,
                   wavelength: float = 1.0) -> SpectrumGrid:
    """MUSIC pseudo-spectrum ``1 / (a^H Vn Vn^H a)`` over a grid.

    ``grid`` is ``(start, stop, step)`` in radians; default is the open
    sector (0, 180) degrees at 0.01 degree resolution.
    """
    start, stop, step = sector_grid() if grid is None else grid
    A = _grid_steering(geom, float(start), float(stop), float(step), float(wavelength))
    proj = Vn.conj().T @ A
    denom = np.sum(proj.real ** 2 + proj.imag ** 2, axis=0)
    values = 1.0 / np.maximum(denom, DENOM_FLOOR)
    return SpectrumGrid(float(start), float(stop), float(step), values)


def find_peaks(values: np.ndarray) -> np.ndarray:
    """Indices of strict local maxima.

    An endpoint counts as a half-peak only if the spectrum also has an interior
    valley; a monotone spectrum therefore has no peaks.
    """
    v = np.asarray(values)
    if v.size < 3:
        return np.array([], dtype=int)
    inner = np.flatnonzero((v[1:-1] > v[:-2]) & (v[1:-1] > v[2:])) + 1
    has_valley = np.any((v[1:-1] < v[:-2]) & (v[1:-1] < v[2:]))
    ends = []
    if has_valley:
        if v[0] > v[1]:
            ends.append(0)
        if v[-1] > v[-2]:
            ends.append(v.size - 1)
    return np.sort(np.concatenate([inner, np.asarray(ends, dtype=int)]))


def estimate_doa(spectrum: SpectrumGrid, D: int) -> np.ndarray:
    """Angles (radians, ascending) of the D largest spectrum peaks."""
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    peaks = find_peaks(spectrum.values)
    if peaks.size < D:
        raise PeakDeficitError(int(peaks.size), D)
    # largest value first, ties to the smaller angle (lower index)
    order = np.lexsort((peaks, -spectrum.values[peaks]))
    chosen = np.sort(peaks[order[:D]])
    return spectrum.start + spectrum.step * chosen
