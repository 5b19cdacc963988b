"""Blow-up of the plain operator on the intervals ``[1 + 2^m, 1 + 2^(m+1)]``.

The test function is ``f0 = [exp(2 pi i x) 1_{x >= 0}] * phi_0`` with a
plateau-3/2 resolution of unity, approximated on a torus by replacing the
half-line with ``[0, L/2)``.  Its torus Fourier coefficients are known in
closed form, so ``f0`` and every ``g_m = f0 * varphi_m`` are built directly
in the frequency domain.

A single grid cannot resolve interval lengths from ``1/2`` down to
``2^-32``, so each member lives on its own grid of period ``K 2^-m``
(``K`` bins per interval), expressed in the frame demodulated by the carrier
``exp(2 pi i x)``.  Members are then evaluated by exact trigonometric
interpolation at common points ``|x| <= L/8``.  Because ``g_m(x)`` depends
on ``2^m x`` only, the wrap-around error of each frame is the same for all
``m`` and is controlled by ``K``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateWindow
from ..grid import GridSpec, Spectrum, evaluate_spectrum, inverse_array
from ..maximal import DyadicIntervalSet
from ..norms import bmo_l2_norm
from ..operators import SignalCollection
from ..windows import (
    BumpWindow,
    DyadicUnity,
    is_nondegenerate,
    kernel_l1_norm,
    make_dyadic_unity,
    phi_moment_zero,
    scale_to_interval,
    FreqInterval,
)
from .common import Check, Report, Table, check_ge, check_le
from .config import ExperimentConfig

PLATEAU = 1.5
SAMPLES_PER_BIN = 8
MIN_MOMENT_BINS = 16
WINDOW_SAMPLES = 1024


def half_line_coefficients(xi: np.ndarray, period: float, carrier: float = 0.0) -> np.ndarray:
    """Torus coefficients of ``exp(2 pi i carrier x) 1_[0, L/2)(x)`` at frequencies ``xi``."""
    nu = np.asarray(xi, dtype=float) - carrier
    out = np.empty(nu.shape, dtype=complex)
    zero = np.abs(nu) * period < 1e-9
    nz = ~zero
    out[nz] = (1.0 - np.exp(-1j * np.pi * nu[nz] * period)) / (2j * np.pi * nu[nz])
    out[zero] = period / 2.0
    return out


def fit_slope(ms, values) -> tuple[float, float]:
    """Least-squares slope of ``log value`` against ``log M`` and the RMS residual."""
    lx, ly = np.log(np.asarray(ms, float)), np.log(np.asarray(values, float))
    coef = np.polyfit(lx, ly, 1)
    resid = ly - np.polyval(coef, lx)
    return float(coef[0]), float(np.sqrt(np.mean(resid**2)))


def fit_points(ms) -> list[int]:
    """Requested family sizes plus rounded geometric midpoints of neighbours."""
    ms = sorted(set(int(m) for m in ms))
    pts = set(ms)
    for a, b in zip(ms, ms[1:]):
        pts.add(int(round(math.sqrt(a * b))))
    return sorted(pts)


@dataclass(frozen=True)
class MemberFrame:
    """Member ``m`` on its own grid in the carrier-demodulated frame.

    ``spectrum`` holds the coefficients of ``exp(-2 pi i x) g_m(x)``; the
    interval sits on bins ``[bins, 2 bins]`` of ``grid``.
    """

    m: int
    grid: GridSpec
    spectrum: np.ndarray
    bins: int

    @property
    def unity(self) -> DyadicUnity:
        return DyadicUnity(self.grid, PLATEAU, -1, 1)

    def plain_block(self, j: int | None) -> np.ndarray:
        """Demodulated spectrum of ``g_m * phi_j`` (all of ``g_m`` when ``j`` is None)."""
        if j is None:
            return self.spectrum
        return self.spectrum * self.unity.level(j, 1.0 + self.grid.freqs)

    def rotated(self) -> np.ndarray:
        """Spectrum of ``exp(-2 pi i a_m x) g_m(x)``: the demodulated one moved down ``bins``."""
        return np.roll(self.spectrum, -self.bins)

    def rotated_block(self, j: int) -> np.ndarray:
        return self.rotated() * self.unity.level(j, self.grid.freqs)

    def evaluate(self, coeffs: np.ndarray, xs: np.ndarray, carrier: float = 0.0) -> np.ndarray:
        vals = evaluate_spectrum(Spectrum(self.grid, coeffs), xs)
        return vals * np.exp(2j * np.pi * carrier * xs) if carrier else vals


def member_frame(w: BumpWindow, m: int, bins: int) -> MemberFrame:
    scale = 2.0**m
    grid = GridSpec(SAMPLES_PER_BIN * bins, bins / scale)
    zeta = grid.freqs
    u = DyadicUnity(grid, PLATEAU, -1, 1)
    spec = (
        half_line_coefficients(zeta, grid.period)
        * u.level(0, 1.0 + zeta)
        * w.profile((zeta - scale) / scale)
    )
    return MemberFrame(m, grid, spec, bins)


def window_grid(cfg: ExperimentConfig) -> GridSpec:
    """Evaluation points ``|x| <= L/8`` of the main torus, as a grid for interval sets."""
    return GridSpec(WINDOW_SAMPLES, cfg.counterexample_period / 4.0)


def _require_nondegenerate(w) -> complex:
    if not is_nondegenerate(w):
        raise DegenerateWindow(
            f"window {w!r} has vanishing moment Phi(0) = {phi_moment_zero(w)!r}; "
            "the blow-up construction needs a non-degenerate window"
        )
    return phi_moment_zero(w)


def main_grid_moments(cfg: ExperimentConfig, w: BumpWindow) -> dict[int, complex]:
    """``g_m^0(0)`` on the main torus for every ``m`` with ``2^(m+1) <= 1/2``
    whose interval spans at least ``MIN_MOMENT_BINS`` bins."""
    grid = GridSpec(cfg.counterexample_n, cfg.counterexample_period)
    u = make_dyadic_unity(grid, PLATEAU)
    phi0 = u.multiplier(0)
    f0 = half_line_coefficients(grid.freqs, grid.period, carrier=1.0) * phi0
    out = {}
    m = -2
    while 2.0**m * grid.period >= MIN_MOMENT_BINS:
        iv = FreqInterval(1.0 + 2.0**m, 1.0 + 2.0 ** (m + 1))
        mult = scale_to_interval(w, iv, grid, warn=False)
        out[m] = complex(np.sum(f0 * mult * phi0) / grid.period)
        m -= 1
    return out


def _frames(cfg: ExperimentConfig, w, count: int) -> list[MemberFrame]:
    return [member_frame(w, -k, cfg.member_bins) for k in range(1, count + 1)]


def _moment_checks(cfg, w, frames, phi0) -> tuple[list[Check], list[tuple]]:
    tol = cfg.tol("moment_match")
    rows = []
    worst_frame = 0.0
    for fr in frames:
        if fr.m > -2:
            continue
        val = complex(fr.evaluate(fr.plain_block(0), np.zeros(1))[0])
        err = abs(val - phi0) / abs(phi0)
        worst_frame = max(worst_frame, err)
        rows.append(("frame", fr.m, val.real, val.imag, err))
    worst_main = 0.0
    for m, val in main_grid_moments(cfg, w).items():
        err = abs(val - phi0) / abs(phi0)
        worst_main = max(worst_main, err)
        rows.append(("main", m, val.real, val.imag, err))
    checks = [
        check_le("g_m^0(0) vs Phi(0), member frames", worst_frame, tol),
        check_le("g_m^0(0) vs Phi(0), main grid", worst_main, tol),
    ]
    return checks, rows


def _sq(v: np.ndarray) -> np.ndarray:
    return v.real**2 + v.imag**2


def _f0_besov(cfg: ExperimentConfig, xs: np.ndarray, s: float, q: float) -> tuple[float, float]:
    """``(||f0||_{B^s_{inf,q}}, ||f0||_{B^s_{inf,inf}})`` with sups over ``xs``."""
    grid = GridSpec(cfg.counterexample_n, cfg.counterexample_period)
    u = make_dyadic_unity(grid, PLATEAU)
    f0 = half_line_coefficients(grid.freqs, grid.period, carrier=1.0) * u.multiplier(0)
    sups = []
    for j in (-1, 0, 1):
        blk = evaluate_spectrum(Spectrum(grid, f0 * u.multiplier(j)), xs)
        sups.append(2.0 ** (j * s) * float(np.max(np.abs(blk))))
    sups = np.array(sups)
    lq = float(np.max(sups)) if math.isinf(q) else float(np.sum(sups**q) ** (1.0 / q))
    return lq, float(np.max(sups))


def run_counterexample_besov(cfg: ExperimentConfig, window=None) -> Report:
    """Plain-operator growth in ``B^s_{inf,q}`` and the bounded rotated companion."""
    w = window if window is not None else BumpWindow(cfg.delta)
    phi0 = _require_nondegenerate(w)
    s, q = cfg.counterexample_s, cfg.counterexample_q
    ms = fit_points(cfg.counterexample_M)
    frames = _frames(cfg, w, max(ms))
    xs = window_grid(cfg).x

    checks, moment_rows = _moment_checks(cfg, w, frames, phi0)

    # per-member squared block magnitudes at the window points
    plain = {j: np.stack([_sq(fr.evaluate(fr.plain_block(j), xs)) for fr in frames]) for j in (-1, 0, 1)}
    rot_levels = range(-max(ms) - 6, 2)
    rot = {}
    for j in rot_levels:
        rows = []
        for fr in frames:
            blk = fr.rotated_block(j)
            rows.append(_sq(fr.evaluate(blk, xs)) if np.any(blk) else np.zeros(xs.size))
        rot[j] = np.cumsum(np.stack(rows), axis=0)
    plain_cum = {j: np.cumsum(v, axis=0) for j, v in plain.items()}

    f0_bq, f0_binf = _f0_besov(cfg, xs, s, q)
    block0, norm_seq, comp = [], [], []
    for M in ms:
        sups = {j: float(np.sqrt(plain_cum[j][M - 1].max())) for j in plain_cum}
        block0.append(sups[0])
        weighted = np.array([2.0 ** (j * s) * v for j, v in sups.items()])
        val = float(weighted.max()) if math.isinf(q) else float(np.sum(weighted**q) ** (1.0 / q))
        norm_seq.append(val / f0_bq)
        rsup = max(2.0 ** (j * s) * float(np.sqrt(rot[j][M - 1].max())) for j in rot_levels)
        comp.append(rsup / f0_binf)

    slope, resid = fit_slope(ms, block0)
    center, width = cfg.tol("slope_center"), cfg.tol("slope_tol")
    checks.append(
        Check("l2 block slope vs M", slope, width, bool(abs(slope - center) <= width),
              f"target {center:g} +- {width:g}, {len(ms)} points")
    )
    first, last = ms.index(min(cfg.counterexample_M)), ms.index(max(cfg.counterexample_M))
    checks.append(check_le("rotated companion last/first", comp[last] / comp[first], cfg.tol("growth")))

    return BlowupReport(
        "counterexample_besov",
        checks=checks,
        tables={
            "sequence": Table(
                ("M", "block0_sup_l2", "besov_ratio", "rotated_holder_ratio"),
                tuple(zip(ms, block0, norm_seq, comp)),
            ),
            "moments": Table(("route", "m", "re", "im", "rel_err"), tuple(moment_rows)),
        },
        data={
            "sequence": [[M, v] for M, v in zip(ms, block0)],
            "besov_sequence": [[M, v] for M, v in zip(ms, norm_seq)],
            "slope": slope,
            "slope_residual": resid,
            "companion": [[M, v] for M, v in zip(ms, comp)],
            "phi_moment_zero": phi0,
        },
        meta=_meta(cfg, s=s, q=q),
    )


def run_counterexample_bmo(cfg: ExperimentConfig, window=None) -> Report:
    """Degree-1 BMO(l2) growth of ``{g_m}`` and the bounded rotated companion."""
    w = window if window is not None else BumpWindow(cfg.delta)
    phi0 = _require_nondegenerate(w)
    ms = fit_points(cfg.counterexample_M)
    frames = _frames(cfg, w, max(ms))
    wg = window_grid(cfg)
    xs = wg.x
    checks, moment_rows = _moment_checks(cfg, w, frames, phi0)

    plain = np.stack([fr.evaluate(fr.plain_block(None), xs, carrier=1.0) for fr in frames])
    rotated = np.stack([fr.evaluate(fr.rotated(), xs) for fr in frames])
    ds = DyadicIntervalSet(wg)
    seq, comp = [], []
    for M in ms:
        seq.append(bmo_l2_norm(SignalCollection(wg, plain[:M]), ds, degree=1))
        comp.append(bmo_l2_norm(SignalCollection(wg, rotated[:M]), ds, degree=1))

    # |g_m| = |demodulated member|; the full frame grid covers every x of its torus
    sup_g = max(float(np.max(np.abs(inverse_array(fr.grid, fr.spectrum)))) for fr in frames)
    l1 = kernel_l1_norm(w) if isinstance(w, BumpWindow) else float("nan")
    slope, resid = fit_slope(ms, seq)
    first, last = ms.index(min(cfg.counterexample_M)), ms.index(max(cfg.counterexample_M))
    increasing = bool(np.all(np.diff(seq) > 0))
    checks += [
        check_le("max |g_m| / ||phi||_1", sup_g / l1, 1.0 + cfg.tol("uniform_bound_slack")),
        check_ge("plain BMO last/first", seq[last] / seq[first], cfg.tol("bmo_growth")),
        Check("plain BMO strictly increasing", float(increasing), 1.0, increasing),
        check_le("rotated companion last/first", comp[last] / comp[first], cfg.tol("growth")),
    ]
    return BlowupReport(
        "counterexample_bmo",
        checks=checks,
        tables={
            "sequence": Table(("M", "bmo_plain", "bmo_rotated"), tuple(zip(ms, seq, comp))),
            "moments": Table(("route", "m", "re", "im", "rel_err"), tuple(moment_rows)),
        },
        data={
            "sequence": [[M, v] for M, v in zip(ms, seq)],
            "slope": slope,
            "slope_residual": resid,
            "companion": [[M, v] for M, v in zip(ms, comp)],
            "max_abs_member": sup_g,
            "kernel_l1_norm": l1,
        },
        meta=_meta(cfg),
    )


def _meta(cfg: ExperimentConfig, **extra) -> dict:
    return {
        "delta": cfg.delta,
        "M": list(cfg.counterexample_M),
        "fit_points": fit_points(cfg.counterexample_M),
        "main_grid": [cfg.counterexample_n, cfg.counterexample_period],
        "member_bins": cfg.member_bins,
        "window_half_width": cfg.counterexample_period / 8.0,
        **extra,
    }


@dataclass
class BlowupReport(Report):
    """Norm sequence versus family size, its log-log slope and the rotated companion."""

    @property
    def sequence(self) -> list[tuple[int, float]]:
        return [tuple(p) for p in self.data["sequence"]]

    @property
    def companion(self) -> list[tuple[int, float]]:
        return [tuple(p) for p in self.data["companion"]]

    @property
    def slope(self) -> float:
        return self.data["slope"]
