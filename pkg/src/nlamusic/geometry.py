"""Linear array layouts and steering vectors.

Sensor coordinates are stored in wavelength units. A linear array lies on
the x-axis with its first sensor at the origin, so the phase of sensor ``m``
towards direction ``theta`` is ``2*pi/wavelength * (p_m cos(theta) + q_m sin(theta))``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SCHEMES = ("uniform", "arithmetic", "geometric")

_LENGTH_TOL = 1e-12


@dataclass(frozen=True)
class ArrayGeometry:
    """Immutable planar sensor layout.

    Attributes:
        positions: Tuple of ``(p, q)`` sensor coordinates in wavelengths.
        scheme: One of ``uniform``, ``arithmetic`` or ``geometric``.
        growth: Progression parameter of the spacing scheme (1 for uniform).
    """

    positions: tuple
    scheme: str = "uniform"
    growth: float = 1.0

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 2:
            raise ValueError("positions must be a sequence of (p, q) pairs")
        if pos.shape[0] < 2:
            raise ValueError(f"an array needs at least 2 sensors, got {pos.shape[0]}")
        if not np.all(np.isfinite(pos)):
            raise ValueError("sensor positions must be finite")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}; expected one of {SCHEMES}")
        # normalise to a hashable tuple-of-tuples so geometries can key caches
        object.__setattr__(self, "positions", tuple((float(p), float(q)) for p, q in pos))

    @property
    def M(self) -> int:
        return len(self.positions)

    @property
    def p(self) -> np.ndarray:
        return np.array([pq[0] for pq in self.positions])

    @property
    def q(self) -> np.ndarray:
        return np.array([pq[1] for pq in self.positions])

    @property
    def spacings(self) -> np.ndarray:
        """Consecutive sensor spacings along the x-axis."""
        return np.diff(self.p)

    @property
    def array_length(self) -> float:
        """Distance between the first and the last sensor, in wavelengths."""
        p = self.p
        return float(p[-1] - p[0])

    @property
    def array_length_hw(self) -> float:
        """Array length expressed in half-wavelengths."""
        return 2.0 * self.array_length

    @property
    def name(self) -> str:
        if self.scheme == "uniform":
            return f"uniform-M{self.M}"
        return f"{self.scheme}{self.growth:g}-M{self.M}"

    @classmethod
    def linear(cls, p, scheme="uniform", growth=1.0) -> "ArrayGeometry":
        p = np.asarray(p, dtype=float)
        return cls(tuple(zip(p, np.zeros_like(p))), scheme=scheme, growth=growth)


def uniform_linear(M: int, half_wavelength_spacings: int | None = None) -> ArrayGeometry:
    """Uniform linear array with half-wavelength spacing.

    For a uniform array the length is tied to the sensor count, so
    ``half_wavelength_spacings`` must equal ``M - 1`` when given.
    """
    M = int(M)
    if M < 2:
        raise ValueError(f"M must be >= 2, got {M}")
    if half_wavelength_spacings is None:
        half_wavelength_spacings = M - 1
    if half_wavelength_spacings != M - 1:
        raise ValueError(
            f"a uniform half-wavelength array with M={M} sensors spans {M - 1} "
            f"half-wavelengths, not {half_wavelength_spacings}"
        )
    return ArrayGeometry.linear(0.5 * np.arange(M), scheme="uniform", growth=1.0)


def progressive_spacings(n: int, scheme: str, growth: float) -> np.ndarray:
    """Unnormalised spacing progression of ``n`` gaps starting at 1."""
    k = np.arange(n)
    if scheme == "geometric":
        return growth ** k
    if scheme == "arithmetic":
        if n == 1:
            return np.ones(1)
        # growth is the ratio of the last spacing to the first
        return 1.0 + (growth - 1.0) * k / (n - 1)
    raise ValueError(f"scheme must be 'arithmetic' or 'geometric', got {scheme!r}")


def nonuniform_progressive(M: int, array_length: float, scheme: str = "geometric",
                           growth: float = 1.3) -> ArrayGeometry:
    """Linear array whose spacings grow progressively along the array.

    The ``M - 1`` spacings follow an arithmetic or geometric progression and
    are rescaled so that they sum to ``array_length`` (in wavelengths).
    ``growth`` is the common ratio for ``geometric`` and the last/first spacing
    ratio for ``arithmetic``; ``growth == 1`` gives uniform spacing.
    """
    M = int(M)
    if M < 2:
        raise ValueError(f"M must be >= 2, got {M}")
    if not array_length > 0:
        raise ValueError(f"array_length must be positive, got {array_length}")
    if not growth >= 1:
        raise ValueError(f"growth must be >= 1 so spacings never decrease, got {growth}")
    d = progressive_spacings(M - 1, scheme, float(growth))
    d = d * (array_length / d.sum())
    p = np.concatenate(([0.0], np.cumsum(d)))
    # pin the last sensor so the length is exact rather than a rounded cumsum
    p[-1] = array_length
    return ArrayGeometry.linear(p, scheme=scheme, growth=float(growth))


def _check_angles(theta):
    theta = np.asarray(theta, dtype=float)
    if np.any(theta <= 0) or np.any(theta >= np.pi):
        raise ValueError("angles must lie strictly inside (0, pi)")
    return theta


def _phase_terms(geom, theta, wavelength):
    if not wavelength > 0:
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    k = 2 * np.pi / wavelength
    p = geom.p[:, None]
    q = geom.q[:, None]
    c = np.cos(theta)[None, :]
    s = np.sin(theta)[None, :]
    phase = k * (p * c + q * s)
    dphase = k * (-p * s + q * c)
    d2phase = k * (-p * c - q * s)
    return phase, dphase, d2phase


def steering_vector(geom: ArrayGeometry, theta, wavelength: float = 1.0) -> np.ndarray:
    """Array response towards ``theta`` (radians).

    A scalar ``theta`` gives a length-``M`` vector; an array of ``K`` angles
    gives an ``M x K`` steering matrix.
    """
    th = _check_angles(theta)
    phase, _, _ = _phase_terms(geom, np.atleast_1d(th), wavelength)
    a = np.exp(1j * phase)
    return a[:, 0] if th.ndim == 0 else a


def steering_derivative(geom: ArrayGeometry, theta, wavelength: float = 1.0,
                        order: int = 1) -> np.ndarray:
    """First or second derivative of the steering vector with respect to theta."""
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    th = _check_angles(theta)
    phase, dphase, d2phase = _phase_terms(geom, np.atleast_1d(th), wavelength)
    a = np.exp(1j * phase)
    if order == 1:
        out = 1j * dphase * a
    else:
        out = (1j * d2phase + (1j * dphase) ** 2) * a
    return out[:, 0] if th.ndim == 0 else out
