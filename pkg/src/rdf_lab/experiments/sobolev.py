"""Homogeneous Sobolev bounds for the rotated operator.

Two independent routes compute ``||{g_m^(k)}||_{L2(l2)}^2``: a frequency-side
sum over the bins of each interval with the shifted weight
``|2 pi (xi - e_m)|^(2k)`` (``e_m`` the anchor endpoint), and a time-side
route that rolls the spectra, applies ``(2 pi i xi)^k`` and integrates
``|.|^2`` over the grid.
"""

from __future__ import annotations

import math

import numpy as np

from ..grid import GridSpec, inverse_array
from ..operators import family_multipliers, rdf_spectra, rotation_shifts
from ..windows import BumpWindow, IntervalFamily, make_dyadic_unity, vanishing_scan
from .common import Check, Report, Table, check_le, ordered_map, random_family, random_spectrum, rng_for
from .config import ExperimentConfig

_SOBOLEV_KEY = 301
ORDERS = (0, 1, 2)
SCAN_ORDERS = (1, 2, 3)
ANCHORS = ("left", "right")


def derivative_energy(grid: GridSpec, spectra: np.ndarray, k: int) -> float:
    """``sum_m ||d^k/dx^k member_m||_2^2`` computed in the time domain."""
    spectra = np.atleast_2d(spectra)
    deriv = inverse_array(grid, spectra * (2j * np.pi * grid.freqs) ** k)
    return float(grid.dx * np.sum(deriv.real**2 + deriv.imag**2))


def shifted_spectral_energy(
    grid: GridSpec,
    spec: np.ndarray,
    fam: IntervalFamily,
    w: BumpWindow,
    k: int,
    anchor: str = "left",
) -> float:
    """``sum_m int_{I_m} |f_hat|^2 |phi_m_hat|^2 |2 pi (xi - e_m)|^(2k) dxi`` as a bin sum."""
    total = 0.0
    for iv in fam:
        lo, hi = grid.bin_of(iv.a), grid.bin_of(iv.b)
        idx = np.arange(lo, hi + 1)
        xi = grid.freqs[idx]
        end = iv.a if anchor == "left" else iv.b
        win = w.profile((xi - iv.a) / iv.length)
        total += float(
            np.sum(np.abs(spec[idx]) ** 2 * win**2 * (2.0 * np.pi * np.abs(xi - end)) ** (2 * k))
        )
    return total / grid.period


def lemma_bound(w: BumpWindow, k: int) -> float:
    """Ratio bound ``sqrt(max(1, C_k))`` with ``C_k`` the squared vanishing scan."""
    if k == 0:
        return 1.0
    return math.sqrt(max(1.0, vanishing_scan(w, k) ** 2))


def _trial(args):
    cfg, M, t = args
    grid = cfg.grid
    u = make_dyadic_unity(grid, 1.0)
    w = BumpWindow(cfg.delta)
    rng = rng_for(cfg.seed, _SOBOLEV_KEY, M, t)
    spec = random_spectrum(rng, grid, u)
    fam = random_family(rng, grid, M, u.covered_band)
    mult = family_multipliers(fam, w, grid, warn=False)
    out = {}
    for anchor in ANCHORS:
        rolled = rdf_spectra(spec, mult, rotation_shifts(fam, grid, anchor))
        for k in ORDERS:
            lhs_time = derivative_energy(grid, rolled, k)
            lhs_freq = shifted_spectral_energy(grid, spec, fam, w, k, anchor)
            den = derivative_energy(grid, spec, k)
            out[(anchor, k)] = (
                math.sqrt(lhs_time / den),
                abs(lhs_time - lhs_freq) / max(lhs_time, lhs_freq),
            )
    return out


def positive_family_violations(cfg: ExperimentConfig, trials: int = 20, per_sign: int = 16) -> int:
    """Bins where ``|xi - a_m| > |xi|`` for families inside ``xi >= 0``; expected zero."""
    grid = cfg.grid
    u = make_dyadic_unity(grid, 1.0)
    bad = 0
    for t in range(trials):
        rng = rng_for(cfg.seed, _SOBOLEV_KEY, 0, t)
        fam = random_family(rng, grid, per_sign, u.covered_band, signs=(1,))
        for iv in fam:
            xi = grid.freqs[grid.bin_of(iv.a) : grid.bin_of(iv.b) + 1]
            bad += int(np.sum(np.abs(xi - iv.a) > np.abs(xi)))
    return bad


def run_sobolev_lemma_check(cfg: ExperimentConfig) -> Report:
    w = BumpWindow(cfg.delta)
    sizes = list(cfg.family_sizes)
    tasks = [(cfg, M, t) for M in sizes for t in range(cfg.trials)]
    results = ordered_map(_trial, tasks, cfg.workers)

    rmax, worst_match = {}, 0.0
    for (_, M, _), res in zip(tasks, results):
        for (anchor, k), (ratio, dev) in res.items():
            key = (anchor, k, M)
            rmax[key] = max(rmax.get(key, 0.0), ratio)
            if k > 0:
                worst_match = max(worst_match, dev)

    scans = {k: vanishing_scan(w, k) for k in SCAN_ORDERS}
    checks: list[Check] = [
        check_le("spectral vs time-side derivative energy", worst_match, cfg.tol("sobolev_match"))
    ]
    for k, v in scans.items():
        checks.append(Check(f"vanishing scan k={k} finite", v, math.inf, bool(math.isfinite(v))))
    top = sizes[-1]
    growth = {}
    for anchor in ANCHORS:
        for k in ORDERS:
            bound = lemma_bound(w, k)
            worst = max(rmax[(anchor, k, M)] for M in sizes)
            checks.append(check_le(f"ratio k={k} {anchor} <= bound", worst, bound * (1 + 1e-9)))
            if k > 0 and top // 2 in sizes and top % 2 == 0:
                g = rmax[(anchor, k, top)] / rmax[(anchor, k, top // 2)]
                growth[f"{anchor}|{k}"] = g
                checks.append(check_le(f"growth k={k} {anchor} M={top // 2}->{top}", g, cfg.tol("growth")))
    violations = positive_family_violations(cfg)
    checks.append(check_le("|xi - a_m| <= |xi| violations on xi >= 0 families", violations, 0))

    rows = tuple(
        (anchor, k, M, rmax[(anchor, k, M)], lemma_bound(w, k))
        for anchor in ANCHORS
        for k in ORDERS
        for M in sizes
    )
    return Report(
        "sobolev",
        checks=checks,
        tables={"ratios": Table(("anchor", "k", "M", "ratio_max", "bound"), rows)},
        data={
            "scan": {str(k): v for k, v in scans.items()},
            "max_relative_mismatch": worst_match,
            "growth": growth,
        },
        meta={"seed": cfg.seed, "delta": cfg.delta, "trials": cfg.trials, "family_sizes": sizes},
    )
