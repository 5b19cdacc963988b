"""Sharp (oscillatory) maximal functions on a dyadic sliding interval set."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import InvalidArgument, UnsupportedDegree
from .grid import GridSpec, Signal, lp_norm_array
from .operators import as_member_array

IRLS_ITERATIONS = 8
IRLS_RTOL = 1e-8
MAX_DEGREE = 2


@dataclass(frozen=True)
class MaximalParams:
    """``i``: polynomials of degree < i are factored out; ``s``: size weight; ``p``: mean exponent."""

    i: int
    s: float
    p: float

    def __post_init__(self):
        if int(self.i) != self.i or self.i < 0:
            raise InvalidArgument(f"i must be a non-negative integer, got {self.i}")
        if not (0.0 <= self.s <= self.i):
            raise InvalidArgument(f"s must lie in [0, i] = [0, {self.i}], got {self.s}")
        if not (1.0 <= self.p < math.inf):
            raise InvalidArgument(f"p must lie in [1, inf), got {self.p}")


@dataclass(frozen=True)
class DyadicIntervalSet:
    """Windows of ``2^k`` samples (``k >= 2``) starting at multiples of ``2^(k-1)``.

    No window wraps around the period, so every sample is covered by one
    window (at the edges) or two windows at each scale.
    """

    grid: GridSpec
    min_log2: int = 2
    max_log2: int | None = None

    @cached_property
    def widths(self) -> tuple[int, ...]:
        top = int(math.log2(self.grid.n_samples))
        if self.max_log2 is not None:
            top = min(top, self.max_log2)
        return tuple(2**k for k in range(self.min_log2, top + 1))

    def starts(self, width: int) -> np.ndarray:
        return np.arange(0, self.grid.n_samples - width + 1, width // 2)

    def __len__(self) -> int:
        return sum(self.starts(w).size for w in self.widths)

    def coverage(self, width: int) -> np.ndarray:
        """Number of windows of the given width containing each sample."""
        count = np.zeros(self.grid.n_samples, dtype=int)
        for st in self.starts(width):
            count[st : st + width] += 1
        return count


def _check_degree(i: int) -> None:
    if i > MAX_DEGREE:
        raise UnsupportedDegree(f"polynomial spaces with i > {MAX_DEGREE} are not supported")
    if i < 0:
        raise InvalidArgument(f"i must be non-negative, got {i}")


def _weighted_fit(x: np.ndarray, t: np.ndarray, weights: np.ndarray | None, i: int) -> np.ndarray:
    """Residual of the (weighted) least-squares fit by polynomials of degree < i.

    ``x`` has shape ``(..., K, w)``; ``weights`` has shape ``(K, w)`` and is
    shared by the leading member axes.
    """
    if i == 0:
        return x
    if weights is None:
        c0 = x.mean(axis=-1, keepdims=True)
        if i == 1:
            return x - c0
        c1 = (x @ t)[..., None] / float(t @ t)
        return x - c0 - c1 * t
    s0 = weights.sum(axis=-1)
    b0 = np.sum(weights * x, axis=-1)
    if i == 1:
        return x - (b0 / s0)[..., None]
    s1 = weights @ t
    s2 = weights @ (t * t)
    b1 = np.sum(weights * t * x, axis=-1)
    det = s0 * s2 - s1 * s1
    c0 = (s2 * b0 - s1 * b1) / det
    c1 = (s0 * b1 - s1 * b0) / det
    return x - c0[..., None] - c1[..., None] * t


def _pmean(mag: np.ndarray, p: float) -> np.ndarray:
    if p == 2:
        return np.sqrt(np.mean(mag * mag, axis=-1))
    return np.mean(mag**p, axis=-1) ** (1.0 / p)


def window_residuals(x: np.ndarray, i: int, p: float) -> tuple[np.ndarray, np.ndarray]:
    """Best ``P_i`` residual of every window in a batch.

    ``x`` has shape ``(M, K, w)``: ``M`` members, ``K`` windows of ``w``
    samples.  Returns ``(value, magnitude)`` where ``value[k]`` is the
    normalised p-mean of the l2 residual length in window ``k`` and
    ``magnitude`` is the pointwise residual length ``(K, w)``.  Exact for
    ``p = 2``; otherwise 8 reweighted least-squares sweeps starting from the
    ``p = 2`` fit, keeping the best iterate per window.
    """
    _check_degree(i)
    w = x.shape[-1]
    t = np.arange(w) - (w - 1) / 2.0
    res = _weighted_fit(x, t, None, i)
    mag = np.sqrt(np.sum(res.real**2 + res.imag**2, axis=0))
    best = _pmean(mag, p)
    if p == 2 or i == 0:
        return best, mag
    best_mag = mag
    for _ in range(IRLS_ITERATIONS):
        floor = 1e-12 * (mag.max(axis=-1, keepdims=True) + 1e-300)
        weights = np.maximum(mag, floor) ** (p - 2.0)
        res = _weighted_fit(x, t, weights, i)
        mag = np.sqrt(np.sum(res.real**2 + res.imag**2, axis=0))
        val = _pmean(mag, p)
        better = val < best
        gain = np.max(np.where(better, (best - val) / np.maximum(best, 1e-300), 0.0))
        best = np.where(better, val, best)
        best_mag = np.where(better[:, None], mag, best_mag)
        if gain < IRLS_RTOL:
            break
    return best, best_mag


def best_poly_residual(values, xs, i: int, p: float) -> float:
    """``inf_P (mean |h - P|^p)^(1/p)`` over polynomials of degree < i.

    ``values`` is ``(n,)`` for scalar data or ``(n, M)`` for vector data
    (l2 length of the componentwise residual).  ``xs`` are the sample
    positions, which need not be uniform.
    """
    _check_degree(i)
    if not p >= 1:
        raise InvalidArgument(f"p must be >= 1, got {p}")
    h = np.asarray(values)
    h = h.reshape(h.shape[0], -1).astype(complex)
    xs = np.asarray(xs, dtype=float)
    if xs.shape != (h.shape[0],):
        raise InvalidArgument("xs must align with values")
    if i == 0:
        mag = np.linalg.norm(h, axis=1)
        return float(_pmean(mag, p))
    t = xs - xs.mean()
    design = np.stack([t**d for d in range(i)], axis=1)

    def fit(weights):
        sw = np.sqrt(weights)[:, None]
        coef, *_ = np.linalg.lstsq(design * sw, h * sw, rcond=None)
        return np.linalg.norm(h - design @ coef, axis=1)

    mag = fit(np.ones_like(t))
    best = float(_pmean(mag, p))
    if p == 2:
        return best
    for _ in range(IRLS_ITERATIONS):
        weights = np.maximum(mag, 1e-12 * (mag.max() + 1e-300)) ** (p - 2.0)
        mag = fit(weights)
        val = float(_pmean(mag, p))
        if val < best:
            gain = (best - val) / max(best, 1e-300)
            best = val
            if gain < IRLS_RTOL:
                break
        else:
            break
    return best


def _spread_to_samples(values: np.ndarray, width: int, n: int) -> np.ndarray:
    """Per-sample maximum over the windows (half-step ``width/2``) covering it."""
    h = width // 2
    padded = np.concatenate([[-np.inf], values, [-np.inf]])
    per_half = np.maximum(padded[:-1], padded[1:])
    return np.repeat(per_half, h)[:n]


def windows_view(members: np.ndarray, width: int) -> np.ndarray:
    """``(M, K, width)`` view of all half-step windows of the given width."""
    return sliding_window_view(members, width, axis=-1)[:, :: width // 2, :]


def sharp_maximal(f, mp: MaximalParams, ds: DyadicIntervalSet | None = None) -> Signal:
    grid, members = as_member_array(f)
    if ds is None:
        ds = DyadicIntervalSet(grid)
    elif ds.grid != grid:
        raise InvalidArgument("interval set and signal live on different grids")
    n = grid.n_samples
    out = np.zeros(n)
    for width in ds.widths:
        vals, _ = window_residuals(windows_view(members, width), mp.i, mp.p)
        if mp.s:
            vals = vals * (width * grid.dx) ** (-mp.s)
        out = np.maximum(out, _spread_to_samples(vals, width, n))
    return Signal(grid, out)


def csp_norm(f, s: float, p: float, ds: DyadicIntervalSet | None = None) -> float:
    """``||M^{s,p}_{[s]+1} f||_{L^p}``; for ``p = inf`` the sup of ``M^{s,2}_{[s]+1} f``."""
    if not s > 0:
        raise InvalidArgument(f"s must be positive, got {s}")
    i = math.floor(s) + 1
    _check_degree(i)
    if math.isinf(p):
        mf = sharp_maximal(f, MaximalParams(i, s, 2.0), ds)
        return float(np.max(mf.samples.real))
    mf = sharp_maximal(f, MaximalParams(i, s, p), ds)
    return lp_norm_array(mf.grid, mf.samples.real, p)
