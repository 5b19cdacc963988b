"""Empirical pointwise sharp-maximal estimate for the rotated operator."""

from __future__ import annotations

import numpy as np

from ..grid import GridSpec, inverse_array
from ..maximal import MaximalParams, sharp_maximal
from ..operators import SignalCollection, family_multipliers, rdf_spectra, rotation_shifts
from ..grid import Signal
from ..windows import BumpWindow, IntervalFamily, make_dyadic_unity
from .common import Report, Table, check_le, ordered_map, random_family, random_spectrum, rng_for
from .config import ExperimentConfig

_POINTWISE_KEY = 401
EXPONENTS = (2.0, 4.0)
SMOOTHNESS = (0.0, 0.5)
EPS_REL = 1e-9


def central_half(grid: GridSpec) -> slice:
    n = grid.n_samples
    return slice(n // 4, 3 * n // 4)


def max_ratio(mf_op: np.ndarray, mf: np.ndarray, region: slice) -> float | None:
    """``max M(S~f) / max(M f, eps)`` on ``region``; ``None`` when ``M f`` vanishes there."""
    num, den = mf_op[region], mf[region]
    scale = float(den.max())
    if scale <= 0.0:
        return None
    return float(np.max(num / np.maximum(den, EPS_REL * scale)))


def refine(fam: IntervalFamily, grid: GridSpec) -> IntervalFamily:
    """Split the widest interval at its middle bin."""
    pairs = [(iv.a, iv.b) for iv in fam]
    k = max(range(len(pairs)), key=lambda i: pairs[i][1] - pairs[i][0])
    a, b = pairs[k]
    lo, hi = grid.bin_of(a), grid.bin_of(b)
    if hi - lo < 2:
        return fam
    mid = float(grid.freqs[(lo + hi) // 2])
    pairs[k : k + 1] = [(a, mid), (mid, b)]
    return IntervalFamily.from_pairs(pairs, label=f"{fam.label}-refined")


def rotated_collection(grid: GridSpec, spec: np.ndarray, fam: IntervalFamily, w: BumpWindow):
    mult = family_multipliers(fam, w, grid, warn=False)
    rolled = rdf_spectra(spec, mult, rotation_shifts(fam, grid, "left"))
    return SignalCollection(grid, inverse_array(grid, rolled))


def _trial(args):
    cfg, t = args
    grid = cfg.grid
    u = make_dyadic_unity(grid, 1.0)
    w = BumpWindow(cfg.delta)
    rng = rng_for(cfg.seed, _POINTWISE_KEY, t)
    spec = random_spectrum(rng, grid, u)
    fam = random_family(rng, grid, cfg.pointwise_family_size, u.covered_band)
    f = Signal(grid, inverse_array(grid, spec))
    ops = {
        "base": rotated_collection(grid, spec, fam, w),
        "refined": rotated_collection(grid, spec, refine(fam, grid), w),
    }
    region = central_half(grid)
    out = {}
    for p in EXPONENTS:
        for s in SMOOTHNESS:
            mp = MaximalParams(1, s, p)
            mf = sharp_maximal(f, mp).samples.real
            for name, coll in ops.items():
                out[(p, s, name)] = max_ratio(sharp_maximal(coll, mp).samples.real, mf, region)
    return out


def run_pointwise_estimate_check(cfg: ExperimentConfig) -> Report:
    """Per-trial maxima of the ratio field; uniform when max <= spread * median."""
    tasks = [(cfg, t) for t in range(cfg.trials)]
    results = ordered_map(_trial, tasks, cfg.workers)
    spread = cfg.tol("pointwise_spread")
    checks, rows, data = [], [], {}
    for p in EXPONENTS:
        for s in SMOOTHNESS:
            base = [r[(p, s, "base")] for r in results]
            refined = [r[(p, s, "refined")] for r in results]
            kept = [b for b in base if b is not None]
            if not kept:
                checks.append(check_le(f"p={p:g} s={s:g}: no usable trials", np.inf, spread))
                continue
            med = float(np.median(kept))
            top = float(np.max(kept))
            checks.append(check_le(f"p={p:g} s={s:g} max/median trial max", top / med, spread))
            pair = [
                max(r / b, b / r) for b, r in zip(base, refined) if b is not None and r is not None
            ]
            checks.append(
                check_le(f"p={p:g} s={s:g} refinement pairing", max(pair), spread)
            )
            data[f"p={p:g},s={s:g}"] = {"max": top, "median": med, "per_trial": base}
            for t, (b, r) in enumerate(zip(base, refined)):
                rows.append((p, s, t, b if b is not None else float("nan"),
                             r if r is not None else float("nan")))
    return Report(
        "pointwise",
        checks=checks,
        tables={"trials": Table(("p", "s", "trial", "max_ratio", "max_ratio_refined"), tuple(rows))},
        data=data,
        meta={"seed": cfg.seed, "delta": cfg.delta, "trials": cfg.trials,
              "family_size": cfg.pointwise_family_size, "i": 1},
    )
