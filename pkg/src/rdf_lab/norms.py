"""Discretised Triebel-Lizorkin, Besov, BMO(l2) and Hoelder norms.

All Besov/Triebel-Lizorkin evaluations reduce to the array of level
magnitudes ``mag[j, x] = |{2^{js} (f_m * phi_j)(x)}_m|_{l2}``; scalar inputs
are one-member collections, so scalar and vector norms share one code path.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument
from .grid import GridSpec, forward_array, inverse_array, lp_norm_array
from .maximal import DyadicIntervalSet, window_residuals, windows_view
from .operators import as_member_array, l2_over_members
from .windows import DyadicUnity

TRIEBEL_LIZORKIN = "triebel_lizorkin"
BESOV = "besov"
_KIND_LETTER = {TRIEBEL_LIZORKIN: "F", BESOV: "B"}


def _fmt_exp(v: float) -> str:
    if math.isinf(v):
        return "inf"
    return f"{v:g}"


def _parse_exp(text: str) -> float:
    text = text.strip().lower()
    if text in ("inf", "infinity", "oo"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise InvalidArgument(f"cannot parse exponent {text!r}") from None


@dataclass(frozen=True)
class SpaceParams:
    p: float
    q: float
    s: float
    kind: str = TRIEBEL_LIZORKIN

    def __post_init__(self):
        p, q, s = float(self.p), float(self.q), float(self.s)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "s", s)
        if self.kind not in (TRIEBEL_LIZORKIN, BESOV):
            raise InvalidArgument(f"unknown space kind {self.kind!r}")
        if not (1.0 <= p <= math.inf):
            raise InvalidArgument(f"p must lie in [1, inf], got {p}")
        if not (q > 0):
            raise InvalidArgument(f"q must lie in (0, inf], got {q}")
        if not math.isfinite(s):
            raise InvalidArgument(f"s must be finite, got {s}")
        if self.kind == TRIEBEL_LIZORKIN:
            if q < 1:
                raise InvalidArgument(f"Triebel-Lizorkin norms need q >= 1, got {q}")
            if math.isinf(p) and not ((q == 2 and s == 0) or (math.isinf(q) and s > 0)):
                raise InvalidArgument(
                    "Triebel-Lizorkin with p = inf is only defined for (q=2, s=0) "
                    f"or (q=inf, s>0); got q={_fmt_exp(q)}, s={s:g}"
                )

    @classmethod
    def parse(cls, text: str) -> "SpaceParams":
        """Parse ``F:<p>:<q>:<s>`` or ``B:<p>:<q>:<s>`` (``inf`` allowed)."""
        parts = text.strip().split(":")
        if len(parts) != 4 or parts[0].upper() not in ("F", "B"):
            raise InvalidArgument(f"space spec must look like F:p:q:s or B:p:q:s, got {text!r}")
        kind = TRIEBEL_LIZORKIN if parts[0].upper() == "F" else BESOV
        return cls(_parse_exp(parts[1]), _parse_exp(parts[2]), _parse_exp(parts[3]), kind)

    def __str__(self) -> str:
        return f"{_KIND_LETTER[self.kind]}:{_fmt_exp(self.p)}:{_fmt_exp(self.q)}:{_fmt_exp(self.s)}"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": _fmt_exp(self.p),
            "q": _fmt_exp(self.q),
            "s": self.s,
            "label": str(self),
        }


@dataclass(frozen=True)
class NormReport:
    value: float
    per_level: tuple[tuple[int, float], ...]
    params: SpaceParams
    truncation: tuple[int, int]

    def to_json(self) -> str:
        return json.dumps(
            {
                "space": self.params.to_dict(),
                "value": self.value,
                "levels": [[j, v] for j, v in self.per_level],
                "j_range": list(self.truncation),
            }
        )


def level_magnitudes(grid: GridSpec, members: np.ndarray, u: DyadicUnity) -> np.ndarray:
    """``|{f_m * phi_j}_m|_{l2}`` for every level, shape ``(J, N)``."""
    if u.grid != grid:
        raise InvalidArgument("dyadic unity is bound to a different grid")
    spectra = forward_array(grid, members)
    out = np.zeros((len(u.levels), grid.n_samples))
    support = np.any(spectra != 0, axis=0)
    for row, mult in enumerate(u.multipliers):
        if not np.any(support & (mult != 0)):
            continue
        out[row] = l2_over_members(inverse_array(grid, spectra * mult))
    return out


def _weights(u: DyadicUnity, s: float) -> np.ndarray:
    return 2.0 ** (s * np.asarray(u.levels, dtype=float))


def _lq(values: np.ndarray, q: float, axis: int = 0) -> np.ndarray:
    if math.isinf(q):
        return np.max(values, axis=axis)
    return np.sum(values**q, axis=axis) ** (1.0 / q)


def tl_from_levels(grid: GridSpec, mags: np.ndarray, sp: SpaceParams, u: DyadicUnity) -> NormReport:
    weighted = mags * _weights(u, sp.s)[:, None]
    value = lp_norm_array(grid, _lq(weighted, sp.q), sp.p)
    per_level = tuple(
        (j, lp_norm_array(grid, weighted[r], sp.p)) for r, j in enumerate(u.levels)
    )
    return NormReport(value, per_level, sp, (u.j_min, u.j_max))


def besov_from_levels(
    grid: GridSpec, mags: np.ndarray, sp: SpaceParams, u: DyadicUnity
) -> NormReport:
    weighted = mags * _weights(u, sp.s)[:, None]
    per = np.array([lp_norm_array(grid, row, sp.p) for row in weighted])
    value = float(_lq(per, sp.q)) if per.size else 0.0
    per_level = tuple((j, float(v)) for j, v in zip(u.levels, per))
    return NormReport(value, per_level, sp, (u.j_min, u.j_max))


def tl_norm(f, sp: SpaceParams, u: DyadicUnity) -> NormReport:
    """Triebel-Lizorkin norm: pointwise l2 over members, l^q over levels, L^p over x.

    ``per_level`` lists the L^p norm of each weighted level; these recombine
    into ``value`` only when ``p == q``.
    """
    if sp.kind != TRIEBEL_LIZORKIN:
        raise InvalidArgument(f"tl_norm expects a Triebel-Lizorkin space, got {sp}")
    grid, members = as_member_array(f)
    return tl_from_levels(grid, level_magnitudes(grid, members, u), sp, u)


def besov_norm(f, sp: SpaceParams, u: DyadicUnity) -> NormReport:
    if sp.kind != BESOV:
        raise InvalidArgument(f"besov_norm expects a Besov space, got {sp}")
    grid, members = as_member_array(f)
    return besov_from_levels(grid, level_magnitudes(grid, members, u), sp, u)


def space_norm(f, sp: SpaceParams, u: DyadicUnity) -> NormReport:
    return tl_norm(f, sp, u) if sp.kind == TRIEBEL_LIZORKIN else besov_norm(f, sp, u)


def norm_from_levels(grid: GridSpec, mags: np.ndarray, sp: SpaceParams, u: DyadicUnity) -> float:
    if sp.kind == TRIEBEL_LIZORKIN:
        return tl_from_levels(grid, mags, sp, u).value
    return besov_from_levels(grid, mags, sp, u).value


def bmo_l2_norm(c, intervals: DyadicIntervalSet, degree: int = 0) -> float:
    """Mean oscillation of an l2-valued collection modulo per-member polynomials.

    For each interval the per-member polynomial of degree <= ``degree`` is
    the least-squares fit; the reported oscillation is the mean l2 length of
    the residual.  For ``degree = 0`` this is the classical mean oscillation
    about the mean.
    """
    grid, members = as_member_array(c)
    if members.shape[0] == 0:
        raise InvalidArgument("empty collection")
    if degree not in (0, 1):
        raise InvalidArgument(f"degree must be 0 or 1, got {degree}")
    if intervals.grid != grid:
        raise InvalidArgument("interval set and collection live on different grids")
    best = 0.0
    for width in intervals.widths:
        _, mag = window_residuals(windows_view(members, width), degree + 1, 2.0)
        best = max(best, float(np.max(mag.mean(axis=-1))))
    return best


def holder_seminorm(f, s: float) -> float:
    """``max |f(x) - f(y)| / |x - y|^s`` over dyadic sample lags up to ``L/4``."""
    if not (0.0 < s < 1.0):
        raise InvalidArgument(f"s must lie in (0, 1), got {s}")
    grid, members = as_member_array(f)
    best = 0.0
    lag = 1
    while lag * grid.dx <= grid.period / 4:
        diff = l2_over_members(members - np.roll(members, -lag, axis=-1))
        best = max(best, float(diff.max()) / (lag * grid.dx) ** s)
        lag *= 2
    return best
