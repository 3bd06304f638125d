"""First-order DOA perturbation from an estimated noise subspace.

Given a noise subspace ``Vn`` (exact or estimated) the null spectrum is
``f(theta) = a^H Vn Vn^H a``. Its first two angular derivatives ``f1``, ``f2``
give the displacement of the spectrum minimum as ``-2 f1 / f2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ArrayGeometry, steering_derivative, steering_vector
from .signal import SourceScenario, generate_snapshots, sample_covariance, trial_rng
from .rmse import rmse
from .subspace import eigendecompose_hermitian, noise_subspace

DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class PerturbationReport:
    theta: float
    f1: float
    f2: float
    delta_theta: float | None
    degenerate: bool = False


def _terms(geom, theta, Vn, wavelength):
    a = steering_vector(geom, theta, wavelength)
    da = steering_derivative(geom, theta, wavelength, order=1)
    d2a = steering_derivative(geom, theta, wavelength, order=2)
    # projector applied through Vn keeps the cost at O(M (M-D))
    pa = Vn.conj().T @ a
    pda = Vn.conj().T @ da
    pd2a = Vn.conj().T @ d2a
    return pa, pda, pd2a


def f1(geom: ArrayGeometry, theta: float, Vn: np.ndarray, wavelength: float = 1.0) -> float:
    """First derivative of the null spectrum, ``2 Re{a^H Vn Vn^H a'}``."""
    pa, pda, _ = _terms(geom, theta, Vn, wavelength)
    return float(2.0 * np.real(np.vdot(pa, pda)))


def f2(geom: ArrayGeometry, theta: float, Vn: np.ndarray, wavelength: float = 1.0) -> float:
    """Second derivative of the null spectrum, ``2 (T2 + Re T3)``.

    ``T2 = a'^H Vn Vn^H a'`` and ``T3 = a^H Vn Vn^H a''``.
    """
    pa, pda, pd2a = _terms(geom, theta, Vn, wavelength)
    T2 = np.real(np.vdot(pda, pda))
    T3 = np.vdot(pa, pd2a)
    return float(2.0 * (T2 + np.real(T3)))


def f2_three_term(geom, theta, Vn, wavelength=1.0) -> float:
    """``T1 + 2 T2 + T3`` with each term formed explicitly (T1 uses a''^H)."""
    a = steering_vector(geom, theta, wavelength)
    da = steering_derivative(geom, theta, wavelength, order=1)
    d2a = steering_derivative(geom, theta, wavelength, order=2)
    P = Vn @ Vn.conj().T
    T1 = d2a.conj() @ P @ a
    T2 = da.conj() @ P @ da
    T3 = a.conj() @ P @ d2a
    total = T1 + 2 * T2 + T3
    return float(np.real(total))


def delta_theta_expanded(geom, theta, Vn, wavelength=1.0) -> float:
    """Closed-form displacement written out as one ratio.

    ``-2 Re{a^H P a'} / (a'^H P a' + Re{a^H P a''})`` with ``P = Vn Vn^H``.
    """
    a = steering_vector(geom, theta, wavelength)
    da = steering_derivative(geom, theta, wavelength, order=1)
    d2a = steering_derivative(geom, theta, wavelength, order=2)
    P = Vn @ Vn.conj().T
    num = -2.0 * np.real(a.conj() @ P @ da)
    den = np.real(da.conj() @ P @ da) + np.real(a.conj() @ P @ d2a)
    return float(num / den)


def delta_theta(geom: ArrayGeometry, theta: float, Vn: np.ndarray,
                wavelength: float = 1.0) -> PerturbationReport:
    g1 = f1(geom, theta, Vn, wavelength)
    g2 = f2(geom, theta, Vn, wavelength)
    if abs(g2) <= DEGENERATE_TOL * (1.0 + abs(g1)):
        return PerturbationReport(theta, g1, g2, None, degenerate=True)
    return PerturbationReport(theta, g1, g2, -2.0 * g1 / g2)


@dataclass(frozen=True)
class TheoryRMSE:
    """Aggregate of per-trial perturbations (radians)."""

    deltas: np.ndarray
    excluded: int

    @property
    def paper(self) -> float:
        return rmse(self.deltas, "paper") if self.deltas.size else float("nan")

    @property
    def standard(self) -> float:
        return rmse(self.deltas, "standard") if self.deltas.size else float("nan")


def trial_perturbation(geom: ArrayGeometry, scen: SourceScenario, rng) -> PerturbationReport:
    """One Monte-Carlo draw: estimate Vn from snapshots, evaluate at the true angle."""
    x = generate_snapshots(geom, scen, rng)
    Vn = noise_subspace(eigendecompose_hermitian(sample_covariance(x)), scen.D)
    return delta_theta(geom, scen.doas[0], Vn, scen.wavelength)


def theoretical_rmse(geom: ArrayGeometry, scen: SourceScenario, trials: int,
                     master_seed: int | None = None) -> TheoryRMSE:
    """RMSE of the closed-form perturbation over ``trials`` snapshot draws.

    Each trial uses its own generator derived from ``master_seed`` (default
    ``scen.seed``). Only the first source direction is evaluated; degenerate
    trials are excluded and counted.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    seed = scen.seed if master_seed is None else master_seed
    deltas, excluded = [], 0
    for t in range(trials):
        rep = trial_perturbation(geom, scen, trial_rng(seed, t))
        if rep.degenerate:
            excluded += 1
        else:
            deltas.append(rep.delta_theta)
    return TheoryRMSE(np.asarray(deltas, dtype=float), excluded)
