"""Uniform-boundedness sweeps of the plain and rotated operators over space grids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..grid import GridSpec, inverse_array
from ..norms import SpaceParams, norm_from_levels
from ..operators import family_multipliers, l2_over_members, rdf_spectra, rotation_shifts
from ..windows import BumpWindow, DyadicUnity, make_dyadic_unity
from .common import Report, Table, check_le, ordered_map, random_family, random_spectrum, rng_for
from .config import ExperimentConfig
from .regions import PLAIN, ROTATED, ops_for

_SWEEP_KEY = 201


def spectra_level_magnitudes(grid: GridSpec, spectra: np.ndarray, u: DyadicUnity) -> np.ndarray:
    """Level magnitudes ``(J, N)`` from member spectra ``(M, N)`` without a forward FFT."""
    out = np.zeros((len(u.levels), grid.n_samples))
    support = np.any(spectra != 0, axis=0)
    for row, mult in enumerate(u.multipliers):
        if np.any(support & (mult != 0)):
            out[row] = l2_over_members(inverse_array(grid, spectra * mult))
    return out


@dataclass
class SweepResult(Report):
    """Ratios ``||op f||_{X*} / ||f||_X`` keyed by ``(space, op, M)``; raw values per trial."""

    def ratio_max(self, space: str, op: str, M: int) -> float:
        return self.data["ratio_max"][f"{space}|{op}|{M}"]

    def stable(self, space: str, op: str) -> bool:
        return self.data["stable"][f"{space}|{op}"]


def _trial(args):
    cfg, plan, M, t = args
    grid = cfg.grid
    u = make_dyadic_unity(grid, 1.0)
    w = BumpWindow(cfg.delta)
    rng = rng_for(cfg.seed, _SWEEP_KEY, M, t)
    spec = random_spectrum(rng, grid, u)
    fam = random_family(rng, grid, M, u.covered_band)
    mult = family_multipliers(fam, w, grid, warn=False)
    base = spectra_level_magnitudes(grid, spec[None, :], u)
    mags = {}
    ops = {op for _, op in plan}
    if PLAIN in ops:
        mags[PLAIN] = spectra_level_magnitudes(grid, rdf_spectra(spec, mult), u)
    if ROTATED in ops:
        shifts = rotation_shifts(fam, grid, "left")
        mags[ROTATED] = spectra_level_magnitudes(grid, rdf_spectra(spec, mult, shifts), u)
    out = []
    for sp, op in plan:
        den = norm_from_levels(grid, base, sp, u)
        out.append(norm_from_levels(grid, mags[op], sp, u) / den)
    return out


def run_rdf_bound_sweep(cfg: ExperimentConfig) -> SweepResult:
    """Max-over-trials norm ratios for every space, covered operator and family size.

    A (space, op) pair is stable when the max ratio at the largest family size
    exceeds the one at half that size by at most the ``growth`` tolerance.
    """
    spaces: list[SpaceParams] = cfg.space_params()
    plan = [(sp, op) for sp in spaces for op in ops_for(sp, cfg.op)]
    tasks = [(cfg, plan, M, t) for M in cfg.family_sizes for t in range(cfg.trials)]
    results = ordered_map(_trial, tasks, cfg.workers)
    ratios = {}
    for (_, _, M, t), vals in zip(tasks, results):
        for (sp, op), v in zip(plan, vals):
            ratios.setdefault((str(sp), op, M), []).append(v)

    sizes = list(cfg.family_sizes)
    top = sizes[-1]
    threshold = cfg.tol("growth")
    rmax = {k: max(v) for k, v in ratios.items()}
    stable, growth, checks = {}, {}, []
    for sp, op in plan:
        key = (str(sp), op)
        if top % 2 == 0 and top // 2 in sizes:
            g = rmax[(*key, top)] / rmax[(*key, top // 2)]
            growth[key] = g
            stable[key] = bool(g <= threshold)
            checks.append(check_le(f"{sp} {op} growth M={top // 2}->{top}", g, threshold))
        else:
            growth[key] = float("nan")
            stable[key] = False
            checks.append(check_le(f"{sp} {op} growth (no M/2 for M={top})", float("inf"), threshold))

    rows = tuple(
        (str(sp), op, M, rmax[(str(sp), op, M)], "true" if stable[(str(sp), op)] else "false")
        for sp, op in plan
        for M in sizes
    )
    u = make_dyadic_unity(cfg.grid, 1.0)
    return SweepResult(
        "sweep",
        checks=checks,
        tables={"sweep": Table(("space", "op", "M", "ratio_max", "stable"), rows)},
        data={
            "ratio_max": {f"{s}|{o}|{M}": v for (s, o, M), v in rmax.items()},
            "ratios": {f"{s}|{o}|{M}": v for (s, o, M), v in ratios.items()},
            "growth": {f"{s}|{o}": v for (s, o), v in growth.items()},
            "stable": {f"{s}|{o}": v for (s, o), v in stable.items()},
        },
        meta={
            "seed": cfg.seed,
            "delta": cfg.delta,
            "j_range": [u.j_min, u.j_max],
            "trials": cfg.trials,
            "family_sizes": sizes,
        },
    )
