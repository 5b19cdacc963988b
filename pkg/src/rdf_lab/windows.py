"""Smooth frequency windows.

* ``BumpWindow``: base window with ``supp phi_hat = [delta, 1 - delta]``.
* ``scale_to_interval``: the window affinely moved onto ``[a, b]``.
* ``DyadicUnity``: Littlewood-Paley resolution of unity
  ``phi_j_hat(xi) = base(2^-j xi) - base(2^(1-j) xi)``.
* ``phi_moment_zero``: the functional ``int_{-inf}^0 exp(2 pi i t) phi(t) dt``
  deciding non-degeneracy of the window.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import InvalidArgument, NumericalInconsistency, OutOfBandError
from .grid import GridSpec, inverse_array
from .quadrature import adaptive_simpson, gauss_legendre_nodes, romberg_uniform

MIN_RESOLVED_BINS = 8


def standard_bump(u) -> np.ndarray:
    """``exp(1 - 1/(1 - u^2))`` on ``|u| < 1``, zero elsewhere; peak value 1."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - ui * ui))
    return out


_STEP_NODES = 64


@lru_cache(maxsize=1)
def _bump_mass() -> float:
    z, w = gauss_legendre_nodes(-1.0, 1.0, 2 * _STEP_NODES)
    return float(w @ standard_bump(z))


def smooth_step(t) -> np.ndarray:
    """Normalised running integral of the standard bump, mapped to ``[0, 1]``.

    Zero for ``t <= 0``, one for ``t >= 1``, C-infinity in between and
    antisymmetric about ``t = 1/2``.  The shorter side is always integrated
    so that ``step(t) + step(1 - t) == 1`` up to one rounding.
    """
    t = np.asarray(t, dtype=float)
    out = np.where(t >= 1.0, 1.0, 0.0)
    mid = (t > 0.0) & (t < 1.0)
    if mid.any():
        tm = t[mid]
        short = np.minimum(tm, 1.0 - tm)
        # integrate the bump over [-1, 2*short - 1] with a per-point GL rule
        z, w = np.polynomial.legendre.leggauss(_STEP_NODES)
        upper = 2.0 * short - 1.0
        half = 0.5 * (upper + 1.0)
        nodes = -1.0 + np.multiply.outer(half, z + 1.0)
        part = (standard_bump(nodes) @ w) * half / _bump_mass()
        # the midpoint is exactly 1/2 by symmetry; pin it instead of trusting quadrature
        out[mid] = np.where(tm < 0.5, part, np.where(tm == 0.5, 0.5, 1.0 - part))
    return out


@dataclass(frozen=True)
class FreqInterval:
    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
            raise InvalidArgument(f"interval needs a < b, got [{self.a}, {self.b}]")
        if a < 0.0 < b:
            raise InvalidArgument(f"0 lies inside ({a}, {b})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class IntervalFamily:
    intervals: tuple[FreqInterval, ...]
    label: str = ""

    def __post_init__(self):
        ivs = tuple(
            iv if isinstance(iv, FreqInterval) else FreqInterval(*iv) for iv in self.intervals
        )
        object.__setattr__(self, "intervals", ivs)
        order = sorted(ivs, key=lambda iv: iv.a)
        for left, right in zip(order, order[1:]):
            if right.a < left.b:
                raise InvalidArgument(
                    f"intervals [{left.a}, {left.b}] and [{right.a}, {right.b}] overlap"
                )

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[float, float]], label: str = "") -> "IntervalFamily":
        return cls(tuple(FreqInterval(a, b) for a, b in pairs), label)


@dataclass(frozen=True)
class BumpWindow:
    """Base window: ``phi_hat(xi) = bump((xi - 1/2) / (1/2 - delta))``."""

    delta: float = 0.125

    def __post_init__(self):
        if not (0.0 < self.delta < 0.5):
            raise InvalidArgument(f"delta must lie in (0, 1/2), got {self.delta}")
        object.__setattr__(self, "delta", float(self.delta))

    @property
    def half_width(self) -> float:
        return 0.5 - self.delta

    def profile(self, xi) -> np.ndarray:
        return standard_bump((np.asarray(xi, dtype=float) - 0.5) / self.half_width)


def make_base_window(delta: float = 0.125) -> BumpWindow:
    return BumpWindow(delta)


def interval_multiplier(w: BumpWindow, a: float, b: float, freqs: np.ndarray) -> np.ndarray:
    """``phi_hat((xi - a) / (b - a))`` sampled at ``freqs``, no validation."""
    return w.profile((freqs - a) / (b - a))


def scale_to_interval(
    w: BumpWindow, interval: FreqInterval, grid: GridSpec, warn: bool = True
) -> np.ndarray:
    """Sample the window moved onto ``interval`` at the grid frequencies."""
    ny = grid.nyquist
    if interval.a < -ny or interval.b > ny:
        raise OutOfBandError(
            f"interval [{interval.a}, {interval.b}] leaves the band [{-ny}, {ny})"
        )
    if warn and interval.length * grid.period < MIN_RESOLVED_BINS:
        warnings.warn(
            f"interval [{interval.a}, {interval.b}] spans fewer than "
            f"{MIN_RESOLVED_BINS} frequency bins",
            stacklevel=2,
        )
    return interval_multiplier(w, interval.a, interval.b, grid.freqs)


@dataclass(frozen=True)
class DyadicUnity:
    """Dyadic resolution of unity bound to a grid, levels ``j_min..j_max``.

    ``base`` equals one on ``[-plateau, plateau]`` and vanishes outside
    ``[-2, 2]``.
    """

    grid: GridSpec
    plateau: float
    j_min: int
    j_max: int

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(range(self.j_min, self.j_max + 1))

    @property
    def covered_band(self) -> tuple[float, float]:
        """``|xi|`` range on which the truncated sum is asserted to equal one."""
        return 2.0**self.j_min, 2.0 ** (self.j_max - 1)

    def base(self, xi) -> np.ndarray:
        r = np.abs(np.asarray(xi, dtype=float))
        return 1.0 - smooth_step((r - self.plateau) / (2.0 - self.plateau))

    def level(self, j: int, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        return self.base(xi * 2.0**-j) - self.base(xi * 2.0 ** (1 - j))

    @cached_property
    def multipliers(self) -> np.ndarray:
        """Sampled ``phi_j_hat`` on the grid, one row per level."""
        m = np.stack([self.level(j, self.grid.freqs) for j in self.levels])
        m.flags.writeable = False
        return m

    def multiplier(self, j: int) -> np.ndarray:
        if not self.j_min <= j <= self.j_max:
            raise InvalidArgument(f"level {j} outside [{self.j_min}, {self.j_max}]")
        return self.multipliers[j - self.j_min]


def make_dyadic_unity(grid: GridSpec, plateau: float = 1.0) -> DyadicUnity:
    if plateau not in (1.0, 1.5):
        raise InvalidArgument(f"plateau must be 1 or 3/2, got {plateau}")
    # lowest level reaches below the first non-zero bin, highest level's
    # support [2^(j-1), 2^(j+1)] stays inside the Nyquist band
    j_min = math.floor(math.log2(grid.df))
    j_max = math.floor(math.log2(grid.nyquist)) - 1
    if j_max - j_min + 1 < 3:
        raise InvalidArgument(
            f"grid {grid} hosts only {j_max - j_min + 1} dyadic levels; need at least 3"
        )
    return DyadicUnity(grid, float(plateau), j_min, j_max)


# --- non-degeneracy functional ------------------------------------------------

MOMENT_RTOL = 1e-6
_QUAD_TOL = 1e-10


def _moment_frequency_route(w) -> complex:
    d = w.delta

    def integrand(xi):
        return w.profile(xi - 1.0) / (2j * np.pi * xi)

    return complex(adaptive_simpson(integrand, 1.0 + d, 2.0 - d, tol=_QUAD_TOL))


def dense_kernel(w, samples_per_unit: int = 256):
    """Time-domain window ``phi`` on a dense grid wide enough for its tails.

    The compactly supported bump transform decays like
    ``exp(-sqrt(2 pi (1/2 - delta) |t|))``; the period is chosen so that the
    tail beyond ``L/2`` is below ``1e-14``.
    """
    tail = 170.0 / (0.5 - w.delta)
    period = 2.0 ** math.ceil(math.log2(2.0 * tail))
    grid = GridSpec(int(period * samples_per_unit), period)
    return grid, inverse_array(grid, w.profile(grid.freqs).astype(complex))


def _moment_time_route(w) -> complex:
    grid, phi = dense_kernel(w)
    half = grid.n_samples // 2
    t = grid.x[: half + 1]
    vals = np.exp(2j * np.pi * t) * phi[: half + 1]
    return complex(romberg_uniform(vals, grid.dx))


def _phi_moment(w) -> complex:
    freq = _moment_frequency_route(w)
    time = _moment_time_route(w)
    scale = max(abs(freq), abs(time))
    if abs(freq - time) > MOMENT_RTOL * scale + 1e-13:
        raise NumericalInconsistency(
            f"Phi(0) routes disagree: frequency {freq!r} vs time {time!r}"
        )
    return freq


@lru_cache(maxsize=16)
def _phi_moment_cached(w: BumpWindow) -> complex:
    return _phi_moment(w)


def phi_moment_zero(w) -> complex:
    """``int_{-inf}^0 exp(2 pi i t) phi(t) dt`` via two independent quadratures.

    The frequency form ``(1/2 pi i) int_1^2 phi_hat(xi - 1) / xi dxi`` is
    integrated by adaptive Simpson; the time form integrates the densely
    sampled kernel by Romberg extrapolation.  Raises
    ``NumericalInconsistency`` when they differ by more than ``1e-6``
    relative.
    """
    if isinstance(w, BumpWindow):
        return _phi_moment_cached(w)
    return _phi_moment(w)


def is_nondegenerate(w, tol: float = 1e-8) -> bool:
    if not tol > 0:
        raise InvalidArgument(f"tol must be positive, got {tol}")
    return abs(phi_moment_zero(w)) > tol


def phi_primitive(w, y) -> np.ndarray:
    """``Phi(y) = int_{-inf}^y exp(2 pi i t) phi(t) dt`` at arbitrary points.

    Gauss-Legendre quadrature of the frequency form
    ``int phi_hat(xi - 1) exp(2 pi i xi y) / (2 pi i xi) dxi``.
    """
    y = np.asarray(y, dtype=float)
    d = w.delta
    ymax = float(np.max(np.abs(y))) if y.size else 0.0
    n = 256 + int(math.ceil(8.0 * ymax))
    xi, wt = gauss_legendre_nodes(1.0 + d, 2.0 - d, n)
    weights = wt * w.profile(xi - 1.0) / (2j * np.pi * xi)
    return np.exp(2j * np.pi * np.multiply.outer(y, xi)) @ weights


@lru_cache(maxsize=16)
def kernel_l1_norm(w: BumpWindow) -> float:
    grid, phi = dense_kernel(w)
    return float(grid.dx * np.sum(np.abs(phi)))


def vanishing_scan(w, k: int, n_points: int = 10_000) -> float:
    """``sup_t phi_hat(1 - t) ((1 - t)/t)^k`` over a log-spaced scan of ``(0, 1)``."""
    t = np.logspace(-8, 0, n_points, endpoint=False)
    return float(np.max(w.profile(1.0 - t) * ((1.0 - t) / t) ** k))
