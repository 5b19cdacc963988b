"""Uniform periodic grids standing in for the real line.

A function on R is modelled by its samples on an L-periodic grid
``x_n = -L/2 + n*dx``.  The forward transform carries the ``dx`` factor so
that ``coeffs[k]`` approximates the continuous Fourier transform
``f_hat(xi_k) = int f(x) exp(-2 pi i xi_k x) dx`` and Plancherel holds in
the form ``sum |f|^2 dx = sum |coeffs|^2 / L``.

Spectra are stored in centred order: index ``i`` holds frequency
``(i - N/2) / L``, so the Nyquist bin sits at the negative end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import GridMismatch, InvalidArgument


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    n_samples: int
    period: float

    def __post_init__(self):
        if isinstance(self.n_samples, bool) or int(self.n_samples) != self.n_samples:
            raise InvalidArgument(f"n_samples must be an integer, got {self.n_samples!r}")
        object.__setattr__(self, "n_samples", int(self.n_samples))
        if not _is_power_of_two(self.n_samples) or self.n_samples < 8:
            raise InvalidArgument(
                f"n_samples must be a power of two >= 8, got {self.n_samples}"
            )
        if not (np.isfinite(self.period) and self.period > 0):
            raise InvalidArgument(f"period must be positive, got {self.period!r}")
        object.__setattr__(self, "period", float(self.period))

    @property
    def dx(self) -> float:
        return self.period / self.n_samples

    @property
    def df(self) -> float:
        return 1.0 / self.period

    @property
    def nyquist(self) -> float:
        """Magnitude of the most negative representable frequency."""
        return self.n_samples / (2.0 * self.period)

    @cached_property
    def x(self) -> np.ndarray:
        x = -self.period / 2 + np.arange(self.n_samples) * self.dx
        x.flags.writeable = False
        return x

    @cached_property
    def bins(self) -> np.ndarray:
        """Integer frequency indices ``k`` in centred order."""
        k = np.arange(self.n_samples) - self.n_samples // 2
        k.flags.writeable = False
        return k

    @cached_property
    def freqs(self) -> np.ndarray:
        xi = self.bins / self.period
        xi.flags.writeable = False
        return xi

    @cached_property
    def _phase(self) -> np.ndarray:
        # (-1)^k in FFT order, compensating for x_0 = -L/2
        k = np.fft.fftfreq(self.n_samples, 1.0 / self.n_samples).astype(np.int64)
        ph = np.where(k % 2 == 0, 1.0, -1.0)
        ph.flags.writeable = False
        return ph

    def bin_of(self, xi: float) -> int:
        """Centred array index of frequency ``xi``; it must lie on the grid."""
        k = xi * self.period
        kr = round(k)
        if abs(k - kr) > 1e-9 * max(1.0, abs(k)):
            raise InvalidArgument(f"frequency {xi} is not on the grid (step {self.df})")
        if not (-self.n_samples // 2 <= kr < self.n_samples // 2):
            raise InvalidArgument(f"frequency {xi} outside the representable band")
        return int(kr) + self.n_samples // 2


def make_grid(n_samples: int, period: float) -> GridSpec:
    return GridSpec(n_samples, period)


def _check_samples(grid: GridSpec, values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=complex)
    if arr.shape != (grid.n_samples,):
        raise InvalidArgument(
            f"{name} length {arr.shape} does not match grid ({grid.n_samples},)"
        )
    if not np.all(np.isfinite(arr)):
        raise InvalidArgument(f"{name} contains non-finite entries")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Signal:
    grid: GridSpec
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "samples", _check_samples(self.grid, self.samples, "samples"))

    def __add__(self, other: "Signal") -> "Signal":
        require_same_grid(self.grid, other.grid)
        return Signal(self.grid, self.samples + other.samples)

    def __mul__(self, scalar) -> "Signal":
        return Signal(self.grid, self.samples * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class Spectrum:
    grid: GridSpec
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _check_samples(self.grid, self.coeffs, "coeffs"))


def require_same_grid(a: GridSpec, b: GridSpec) -> None:
    if a != b:
        raise GridMismatch(f"grid mismatch: {a} vs {b}")


# Array-level transforms.  They act along the last axis so that stacks of
# signals (one row per collection member) go through a single FFT call.

def forward_array(grid: GridSpec, samples: np.ndarray) -> np.ndarray:
    spec = np.fft.fft(samples, axis=-1) * (grid._phase * grid.dx)
    return np.fft.fftshift(spec, axes=-1)


def inverse_array(grid: GridSpec, coeffs: np.ndarray) -> np.ndarray:
    spec = np.fft.ifftshift(coeffs, axes=-1) * grid._phase
    return np.fft.ifft(spec, axis=-1) / grid.dx


def forward_transform(f: Signal) -> Spectrum:
    return Spectrum(f.grid, forward_array(f.grid, f.samples))


def inverse_transform(F: Spectrum) -> Signal:
    return Signal(F.grid, inverse_array(F.grid, F.coeffs))


def shift_bins(coeffs: np.ndarray, shift: int) -> np.ndarray:
    """Move spectral content up by ``shift`` bins (down if negative).

    This is multiplication by ``exp(2 pi i shift x / L)`` on the torus,
    realised as an exact index permutation.
    """
    return np.roll(coeffs, shift, axis=-1)


def modulate(f: Signal, a: float) -> Signal:
    """Multiply ``f`` by ``exp(2 pi i a x)`` for an on-grid frequency ``a``."""
    shift = f.grid.bin_of(a) - f.grid.n_samples // 2
    return inverse_transform(Spectrum(f.grid, shift_bins(forward_transform(f).coeffs, shift)))


def evaluate_spectrum(F: Spectrum, xs) -> np.ndarray:
    """Evaluate the band-limited torus function with spectrum ``F`` at arbitrary points.

    Exact trigonometric interpolation; only non-zero bins are summed.
    """
    xs = np.asarray(xs, dtype=float)
    nz = np.flatnonzero(F.coeffs)
    if nz.size == 0:
        return np.zeros(xs.shape, dtype=complex)
    xi = F.grid.freqs[nz]
    out = np.exp(2j * np.pi * np.multiply.outer(xs, xi)) @ F.coeffs[nz]
    return out / F.grid.period


def lp_norm(f: Signal, p: float) -> float:
    return lp_norm_array(f.grid, f.samples, p)


def lp_norm_array(grid: GridSpec, values: np.ndarray, p: float) -> float:
    if not p >= 1:
        raise InvalidArgument(f"p must lie in [1, inf], got {p}")
    mag = np.abs(values)
    if np.isinf(p):
        return float(mag.max()) if mag.size else 0.0
    return float((grid.dx * np.sum(mag**p)) ** (1.0 / p))
