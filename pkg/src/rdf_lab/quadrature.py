"""Small quadrature toolkit used for window functionals."""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-10, max_depth: int = 40):
    """Integrate a vectorised ``f`` over ``[a, b]`` by adaptive Simpson.

    Panels are refined breadth-first so each pass evaluates ``f`` on one
    array.  The local acceptance test is ``|S2 - S1| <= 15 tol_i`` with the
    tolerance halved on every split; accepted panels contribute the
    Richardson-corrected value.  ``f`` may be complex valued.
    """
    if b == a:
        return 0.0
    lo = np.array([a], dtype=float)
    hi = np.array([b], dtype=float)
    flo = np.atleast_1d(f(lo))
    fhi = np.atleast_1d(f(hi))
    mid = 0.5 * (lo + hi)
    fmid = np.atleast_1d(f(mid))
    whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
    tols = np.array([tol])
    total = 0.0
    for depth in range(max_depth + 1):
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        vals = np.atleast_1d(f(np.concatenate([lm, rm])))
        flm, frm = vals[: lo.size], vals[lo.size:]
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        err = left + right - whole
        done = np.abs(err) <= 15.0 * tols
        if depth == max_depth:
            done[:] = True
        total = total + np.sum((left + right + err / 15.0)[done])
        keep = ~done
        if not keep.any():
            break
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        flo, fmid, fhi = flo[keep], fmid[keep], fhi[keep]
        flm, frm = flm[keep], frm[keep]
        left, right = left[keep], right[keep]
        half = tols[keep] / 2.0
        lo, mid, hi, flo, fmid, fhi, whole, tols = (
            np.concatenate([lo, mid]),
            np.concatenate([lm[keep], rm[keep]]),
            np.concatenate([mid, hi]),
            np.concatenate([flo, fmid]),
            np.concatenate([flm, frm]),
            np.concatenate([fmid, fhi]),
            np.concatenate([left, right]),
            np.concatenate([half, half]),
        )
    return total


def romberg_uniform(values: np.ndarray, h: float, levels: int = 6):
    """Romberg extrapolation of trapezoid sums on uniformly spaced samples.

    ``values`` must hold ``2**r + 1`` samples with ``r >= levels``.  The
    trapezoid rule is evaluated on strides ``2**levels, ..., 1`` and the
    Euler-Maclaurin error series is eliminated by Richardson steps.
    """
    values = np.asarray(values)
    n = values.size - 1
    if n <= 0 or n & (n - 1):
        raise ValueError("romberg_uniform needs 2**r + 1 samples")
    levels = min(levels, n.bit_length() - 1)
    traps = []
    for r in range(levels, -1, -1):
        step = 2**r
        v = values[::step]
        traps.append(h * step * (v.sum() - 0.5 * (v[0] + v[-1])))
    table = [traps]
    for k in range(1, len(traps)):
        prev = table[-1]
        fac = 4.0**k
        table.append([(fac * prev[i + 1] - prev[i]) / (fac - 1.0) for i in range(len(prev) - 1)])
    return table[-1][0]


@lru_cache(maxsize=32)
def _leggauss(n: int):
    return np.polynomial.legendre.leggauss(n)


def gauss_legendre_nodes(a: float, b: float, n: int):
    """Nodes and weights of the ``n``-point Gauss-Legendre rule on ``[a, b]``."""
    z, w = _leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (z + 1.0), half * w
