"""Exact identities: Parseval over sharp partitions, resolution of unity,
rotation invariance of the square function, L2 contraction and transform roundtrip."""

from __future__ import annotations

import numpy as np

from ..grid import GridSpec, Signal, forward_array, inverse_array
from ..operators import (
    _sharp_partition_energy,
    family_multipliers,
    l2_over_members,
    rdf_spectra,
    rotation_shifts,
)
from ..windows import BumpWindow, make_dyadic_unity
from .common import Report, Table, check_le, random_family, random_spectrum, rng_for
from .config import ExperimentConfig

_PARSEVAL_KEY = 101
_ROTATION_KEY = 102
_CONTRACTION_KEY = 103
_ROUNDTRIP_KEY = 104

MAX_CUTS = 64


def _random_edges(rng: np.random.Generator, n: int) -> np.ndarray:
    cuts = rng.choice(np.arange(1, n), size=int(rng.integers(1, MAX_CUTS + 1)), replace=False)
    return np.concatenate([[0], np.sort(cuts), [n]])


def _rel_dev(lhs: float, rhs: float) -> float:
    if lhs == 0.0 and rhs == 0.0:
        return 0.0
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))


def run_parseval_check(cfg: ExperimentConfig) -> Report:
    """``||f||_2^2 = sum_I ||M_I f||_2^2`` for random sharp partitions of the grid band."""
    grid = GridSpec(cfg.parseval_n, cfg.period)
    n = grid.n_samples
    rows = []
    zero = Signal(grid, np.zeros(n))
    lhs, rhs = _sharp_partition_energy(zero, [0, n])
    rows.append(("zero", 1, lhs, rhs, _rel_dev(lhs, rhs)))
    for t in range(cfg.parseval_partitions):
        rng = rng_for(cfg.seed, _PARSEVAL_KEY, t)
        f = Signal(grid, rng.standard_normal(n) + 1j * rng.standard_normal(n))
        edges = [0, n] if t == 0 else _random_edges(rng, n)
        lhs, rhs = _sharp_partition_energy(f, edges)
        rows.append((f"trial{t}", len(edges) - 1, lhs, rhs, _rel_dev(lhs, rhs)))
    worst = max(r[-1] for r in rows)
    return Report(
        "parseval",
        checks=[check_le("max relative deviation", worst, cfg.tol("parseval"))],
        tables={"partitions": Table(("case", "pieces", "lhs", "rhs", "rel_dev"), tuple(rows))},
        data={"worst_deviation": worst, "partitions": cfg.parseval_partitions, "n": n},
    )


def unity_checks(grid: GridSpec, plateau: float) -> dict[str, float]:
    """Deviations of the dyadic resolution of unity from its defining identities.

    ``sum``: max ``|sum_j phi_j_hat - 1|`` on the covered annulus.
    ``support``: max ``|phi_j_hat|`` at bins outside ``[2^(j-1), 2^(j+1)]``.
    ``plateau``: max ``|phi_0_hat - 1|`` on ``1 <= |xi| <= 3/2`` (plateau 3/2 only).
    """
    u = make_dyadic_unity(grid, plateau)
    xi = grid.freqs
    r = np.abs(xi)
    lo, hi = u.covered_band
    total = u.multipliers.sum(axis=0)
    inside = (r >= lo) & (r <= hi)
    out = {"sum": float(np.max(np.abs(total[inside] - 1.0)))}
    leak = 0.0
    for j, row in zip(u.levels, u.multipliers):
        outside = (r < 2.0 ** (j - 1)) | (r > 2.0 ** (j + 1))
        leak = max(leak, float(np.max(np.abs(row[outside]), initial=0.0)))
    out["support"] = leak
    if plateau == 1.5 and u.j_min <= 0 <= u.j_max:
        flat = (r >= 1.0) & (r <= 1.5)
        out["plateau"] = float(np.max(np.abs(u.multiplier(0)[flat] - 1.0), initial=0.0))
    return out


def _pair(cfg: ExperimentConfig, key: int, t: int, per_sign: int):
    grid = cfg.grid
    u = make_dyadic_unity(grid, 1.0)
    rng = rng_for(cfg.seed, key, t)
    spec = random_spectrum(rng, grid, u)
    fam = random_family(rng, grid, per_sign, u.covered_band)
    return grid, spec, fam


def rotation_deviation(cfg: ExperimentConfig, trials: int = 20, per_sign: int = 8) -> float:
    """Max relative pointwise gap between ``|S f|_l2`` and ``|S~ f|_l2`` (both anchors)."""
    w = BumpWindow(cfg.delta)
    worst = 0.0
    for t in range(trials):
        grid, spec, fam = _pair(cfg, _ROTATION_KEY, t, per_sign)
        mult = family_multipliers(fam, w, grid, warn=False)
        plain = l2_over_members(inverse_array(grid, rdf_spectra(spec, mult)))
        scale = float(plain.max())
        for anchor in ("left", "right"):
            shifts = rotation_shifts(fam, grid, anchor)
            rot = l2_over_members(inverse_array(grid, rdf_spectra(spec, mult, shifts)))
            worst = max(worst, float(np.max(np.abs(rot - plain))) / scale)
    return worst


def contraction_excess(cfg: ExperimentConfig, trials: int = 100, per_sign: int = 8) -> float:
    """Max of ``(||G f||_2 - ||f||_2) / ||f||_2`` over random pairs; non-positive when contractive."""
    w = BumpWindow(cfg.delta)
    worst = -np.inf
    for t in range(trials):
        grid, spec, fam = _pair(cfg, _CONTRACTION_KEY, t, per_sign)
        mult = family_multipliers(fam, w, grid, warn=False)
        g = l2_over_members(inverse_array(grid, rdf_spectra(spec, mult)))
        f = inverse_array(grid, spec)
        nf = np.sqrt(grid.dx * np.sum(np.abs(f) ** 2))
        ng = np.sqrt(grid.dx * np.sum(g**2))
        worst = max(worst, float((ng - nf) / nf))
    return worst


def roundtrip_error(cfg: ExperimentConfig, trials: int = 5) -> float:
    grid = cfg.grid
    worst = 0.0
    for t in range(trials):
        rng = rng_for(cfg.seed, _ROUNDTRIP_KEY, t)
        f = rng.standard_normal(grid.n_samples) + 1j * rng.standard_normal(grid.n_samples)
        back = inverse_array(grid, forward_array(grid, f))
        worst = max(worst, float(np.max(np.abs(back - f)) / np.max(np.abs(f))))
    return worst


def run_identity_checks(cfg: ExperimentConfig) -> Report:
    grid = cfg.grid
    checks = []
    data = {}
    for plateau in (1.0, 1.5):
        dev = unity_checks(grid, plateau)
        data[f"unity_plateau_{plateau:g}"] = dev
        checks.append(check_le(f"unity sum (plateau {plateau:g})", dev["sum"], cfg.tol("unity")))
        checks.append(check_le(f"support leak (plateau {plateau:g})", dev["support"], 0.0))
        if "plateau" in dev:
            checks.append(check_le("phi_0 plateau on [1, 3/2]", dev["plateau"], 0.0))
    rot = rotation_deviation(cfg)
    con = contraction_excess(cfg)
    rt = roundtrip_error(cfg)
    data.update({"rotation_deviation": rot, "contraction_excess": con, "roundtrip_error": rt})
    checks.append(check_le("rotation magnitude invariance", rot, cfg.tol("rotation")))
    checks.append(check_le("L2 contraction excess", con, cfg.tol("contraction_slack")))
    checks.append(check_le("transform roundtrip", rt, 1e-12))
    return Report("identities", checks=checks, data=data)
