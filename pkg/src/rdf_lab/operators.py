"""Littlewood-Paley blocks and the Rubio de Francia operators.

``rdf_plain`` maps ``f`` to ``{f * phi_m}``, ``rdf_rotated`` additionally
multiplies member ``m`` by ``exp(-2 pi i a_m x)`` and ``rdf_square`` is the
pointwise l2 length of either collection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidArgument
from .grid import (
    GridSpec,
    Signal,
    Spectrum,
    forward_array,
    inverse_array,
    require_same_grid,
    shift_bins,
)
from .windows import BumpWindow, DyadicUnity, IntervalFamily, scale_to_interval


@dataclass(frozen=True, eq=False)
class SignalCollection:
    """Indexed family of signals on one grid; ``members`` has one row per member."""

    grid: GridSpec
    members: np.ndarray = field(repr=False)
    index_labels: tuple = ()

    def __post_init__(self):
        arr = np.asarray(self.members, dtype=complex)
        if arr.ndim != 2 or arr.shape[1] != self.grid.n_samples:
            raise InvalidArgument(
                f"members must have shape (M, {self.grid.n_samples}), got {arr.shape}"
            )
        labels = tuple(self.index_labels) if self.index_labels else tuple(range(arr.shape[0]))
        if len(labels) != arr.shape[0]:
            raise InvalidArgument("index_labels must align with members")
        if len(set(labels)) != len(labels):
            raise InvalidArgument("index_labels must be unique")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "members", arr)
        object.__setattr__(self, "index_labels", labels)

    def __len__(self) -> int:
        return self.members.shape[0]

    def __getitem__(self, i: int) -> Signal:
        return Signal(self.grid, self.members[i])

    @classmethod
    def from_signals(cls, signals: Sequence[Signal], labels=()) -> "SignalCollection":
        if not signals:
            raise InvalidArgument("empty collection")
        grid = signals[0].grid
        for s in signals[1:]:
            require_same_grid(grid, s.grid)
        return cls(grid, np.stack([s.samples for s in signals]), tuple(labels))

    def magnitude(self) -> np.ndarray:
        """Pointwise l2 length over members."""
        return l2_over_members(self.members)


def l2_over_members(arr: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(arr.real**2 + arr.imag**2, axis=0))


def as_member_array(f) -> tuple[GridSpec, np.ndarray]:
    """``(grid, members)`` for a Signal (one row) or a SignalCollection."""
    if isinstance(f, SignalCollection):
        return f.grid, f.members
    if isinstance(f, Signal):
        return f.grid, f.samples[None, :]
    raise InvalidArgument(f"expected Signal or SignalCollection, got {type(f).__name__}")


def band_project(f: Signal, multiplier) -> Signal:
    if isinstance(multiplier, Spectrum):
        require_same_grid(f.grid, multiplier.grid)
        multiplier = multiplier.coeffs
    multiplier = np.asarray(multiplier)
    if multiplier.shape != (f.grid.n_samples,):
        raise InvalidArgument(
            f"multiplier shape {multiplier.shape} does not match grid ({f.grid.n_samples},)"
        )
    spec = forward_array(f.grid, f.samples) * multiplier
    return Signal(f.grid, inverse_array(f.grid, spec))


def lp_blocks(f: Signal, u: DyadicUnity) -> SignalCollection:
    require_same_grid(f.grid, u.grid)
    spec = forward_array(f.grid, f.samples)
    blocks = inverse_array(f.grid, spec[None, :] * u.multipliers)
    return SignalCollection(f.grid, blocks, u.levels)


def family_multipliers(
    fam: IntervalFamily, w: BumpWindow, grid: GridSpec, warn: bool = True
) -> np.ndarray:
    if len(fam) == 0:
        raise InvalidArgument("interval family is empty")
    return np.stack([scale_to_interval(w, iv, grid, warn=warn) for iv in fam])


def rotation_shifts(fam: IntervalFamily, grid: GridSpec, anchor: str = "left") -> np.ndarray:
    """Bin shifts that move each interval's anchor endpoint to frequency 0."""
    if anchor not in ("left", "right"):
        raise InvalidArgument(f"anchor must be 'left' or 'right', got {anchor!r}")
    mid = grid.n_samples // 2
    shifts = []
    for iv in fam:
        end = iv.a if anchor == "left" else iv.b
        try:
            shifts.append(grid.bin_of(end) - mid)
        except InvalidArgument as exc:
            raise InvalidArgument(
                f"rotation needs on-grid endpoints; {end} is not on the grid"
            ) from exc
    return np.asarray(shifts, dtype=int)


def rdf_spectra(
    spec: np.ndarray,
    multipliers: np.ndarray,
    shifts: np.ndarray | None = None,
) -> np.ndarray:
    """Member spectra ``F * phi_m_hat``, each moved down by ``shifts[m]`` bins if given."""
    out = spec[None, :] * multipliers
    if shifts is not None:
        for m, s in enumerate(shifts):
            out[m] = shift_bins(out[m], -int(s))
    return out


def rdf_plain(f: Signal, fam: IntervalFamily, w: BumpWindow) -> SignalCollection:
    mult = family_multipliers(fam, w, f.grid)
    spec = forward_array(f.grid, f.samples)
    members = inverse_array(f.grid, rdf_spectra(spec, mult))
    return SignalCollection(f.grid, members, tuple(range(len(fam))))


def rdf_rotated(
    f: Signal, fam: IntervalFamily, w: BumpWindow, anchor: str = "left"
) -> SignalCollection:
    """Rotated operator; ``anchor='right'`` shifts by ``b_m`` instead of ``a_m``."""
    shifts = rotation_shifts(fam, f.grid, anchor)
    mult = family_multipliers(fam, w, f.grid)
    spec = forward_array(f.grid, f.samples)
    members = inverse_array(f.grid, rdf_spectra(spec, mult, shifts))
    return SignalCollection(f.grid, members, tuple(range(len(fam))))


def rdf_square(f: Signal, fam: IntervalFamily, w: BumpWindow) -> Signal:
    return Signal(f.grid, rdf_plain(f, fam, w).magnitude())


def _sharp_partition_energy(f: Signal, edges: Sequence[int]) -> tuple[float, float]:
    """``(||f||_2^2, sum_I ||M_I f||_2^2)`` for sharp projectors on bin ranges.

    ``edges`` are increasing centred-array indices starting at 0 and ending
    at ``N``; interval ``i`` covers ``[edges[i], edges[i+1])``.  The
    projections are formed in the time domain.
    """
    grid = f.grid
    edges = np.asarray(edges, dtype=int)
    if edges[0] != 0 or edges[-1] != grid.n_samples or np.any(np.diff(edges) <= 0):
        raise InvalidArgument("edges must increase strictly from 0 to N")
    spec = forward_array(grid, f.samples)
    idx = np.arange(grid.n_samples)
    which = np.searchsorted(edges, idx, side="right") - 1
    masks = (which[None, :] == np.arange(edges.size - 1)[:, None]).astype(float)
    parts = inverse_array(grid, spec[None, :] * masks)
    lhs = grid.dx * float(np.sum(np.abs(f.samples) ** 2))
    rhs = grid.dx * float(np.sum(np.abs(parts) ** 2))
    return lhs, rhs
