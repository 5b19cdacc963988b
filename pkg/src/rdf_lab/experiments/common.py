"""Seeded random inputs, ordered parallel map and report containers."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from ..errors import InvalidArgument
from ..grid import GridSpec
from ..windows import DyadicUnity, IntervalFamily

THREADS_ENV = "RDF_LAB_THREADS"


# --- determinism --------------------------------------------------------------

def rng_for(seed: int, *keys: int) -> np.random.Generator:
    """Independent generator for one task; identical keys give identical streams."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, keys)]))


def resolve_workers(requested: int | None = None) -> int:
    """Worker count: the request (or CPU count), capped by ``RDF_LAB_THREADS``."""
    n = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise InvalidArgument(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    return max(1, int(n))


def ordered_map(fn: Callable, items: Iterable, workers: int | None = None) -> list:
    """``list(map(fn, items))`` on a thread pool; output order follows input order."""
    items = list(items)
    n = resolve_workers(workers)
    if n == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# --- random inputs ------------------------------------------------------------

def band_taper(u: DyadicUnity, xi: np.ndarray) -> np.ndarray:
    """Smooth weight summing inner dyadic levels; vanishes outside ``covered_band``."""
    inner = range(u.j_min + 1, u.j_max - 1)
    if len(inner) == 0:
        raise InvalidArgument("dyadic unity has too few levels for a band taper")
    return sum(u.level(j, xi) for j in inner)


def random_spectrum(
    rng: np.random.Generator, grid: GridSpec, u: DyadicUnity, decay: float = 1.0
) -> np.ndarray:
    """Complex Gaussian coefficients times ``(1 + |xi|)^-decay`` times a band taper.

    The result vanishes at frequency 0 and outside the covered dyadic band.
    """
    xi = grid.freqs
    amp = band_taper(u, xi) * (1.0 + np.abs(xi)) ** (-decay)
    noise = rng.standard_normal(grid.n_samples) + 1j * rng.standard_normal(grid.n_samples)
    spec = noise * amp
    spec[grid.n_samples // 2] = 0.0
    return spec


def random_family(
    rng: np.random.Generator,
    grid: GridSpec,
    per_sign: int,
    band: tuple[float, float],
    signs: Sequence[int] = (1, -1),
) -> IntervalFamily:
    """``per_sign`` disjoint on-grid intervals inside ``band`` for each sign.

    ``2 * per_sign`` distinct breakpoints are drawn from the bins of
    ``[lo, hi]`` and consecutive ones are paired; negative intervals are the
    mirror images of an independent draw.
    """
    lo_bin = math.ceil(band[0] * grid.period - 1e-9)
    hi_bin = math.floor(band[1] * grid.period + 1e-9)
    avail = np.arange(max(lo_bin, 0), hi_bin + 1)
    if avail.size < 2 * per_sign:
        raise InvalidArgument(
            f"band {band} holds {avail.size} bins, need {2 * per_sign} breakpoints"
        )
    pairs = []
    for sign in signs:
        bps = np.sort(rng.choice(avail, size=2 * per_sign, replace=False))
        for lo, hi in zip(bps[::2], bps[1::2]):
            a, b = lo / grid.period, hi / grid.period
            pairs.append((a, b) if sign > 0 else (-b, -a))
    pairs = [(a, b) for a, b in pairs if not (a < 0.0 < b)]
    pairs.sort()
    return IntervalFamily.from_pairs(pairs, label=f"random-{per_sign}")


# --- reports ------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    value: float
    threshold: float
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": json_number(self.value),
            "threshold": json_number(self.threshold),
            "passed": bool(self.passed),
            "detail": self.detail,
        }


def check_le(name: str, value: float, threshold: float, detail: str = "") -> Check:
    return Check(name, float(value), float(threshold), bool(value <= threshold), detail)


def check_ge(name: str, value: float, threshold: float, detail: str = "") -> Check:
    return Check(name, float(value), float(threshold), bool(value >= threshold), detail)


@dataclass(frozen=True)
class Table:
    header: tuple[str, ...]
    rows: tuple[tuple, ...]


@dataclass
class Report:
    """Outcome of one experiment: checks, CSV-ready tables and free-form data."""

    name: str
    checks: list[Check] = field(default_factory=list)
    tables: dict[str, Table] = field(default_factory=dict)
    data: dict[str, Any] = field(default_factory=dict)
    meta: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "experiment": self.name,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "data": jsonable(self.data),
            "meta": jsonable(self.meta),
            "tables": {
                k: {"header": list(t.header), "rows": jsonable([list(r) for r in t.rows])}
                for k, t in self.tables.items()
            },
        }

    def summary_lines(self) -> list[str]:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok " if c.passed else "BAD"
            lines.append(f"  [{mark}] {c.name}: {c.value:.6g} (threshold {c.threshold:.6g})")
        return lines


def json_number(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
    if isinstance(v, np.integer):
        return int(v)
    return v


def jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [json_number(float(obj.real)), json_number(float(obj.imag))]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return json_number(obj)
