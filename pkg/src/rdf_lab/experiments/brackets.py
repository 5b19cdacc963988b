"""Empirical equivalence constants between the discretised function norms."""

from __future__ import annotations

import numpy as np

from ..grid import Signal, inverse_array, lp_norm
from ..maximal import csp_norm
from ..norms import BESOV, TRIEBEL_LIZORKIN, SpaceParams, besov_norm, holder_seminorm, tl_norm
from ..windows import make_dyadic_unity
from .common import Report, Table, check_ge, check_le, ordered_map, random_spectrum, rng_for
from .config import ExperimentConfig

_BRACKET_KEY = 501
PP_CASES = ((2.0, 0.0), (4.0, 0.0), (4.0, 0.5), (3.0, 1.0))
CSP_CASES = ((2.0, 0.5), (4.0, 0.5))
HOLDER_S = 0.5


def _signal(cfg: ExperimentConfig, t: int) -> Signal:
    grid = cfg.grid
    u = make_dyadic_unity(grid, 1.0)
    rng = rng_for(cfg.seed, _BRACKET_KEY, t)
    decay = float(rng.uniform(0.5, 2.0))
    return Signal(grid, inverse_array(grid, random_spectrum(rng, grid, u, decay=decay)))


def _trial(args):
    cfg, t = args
    f = _signal(cfg, t)
    u = make_dyadic_unity(f.grid, 1.0)
    out = {}
    for p, s in PP_CASES:
        a = tl_norm(f, SpaceParams(p, p, s, TRIEBEL_LIZORKIN), u).value
        b = besov_norm(f, SpaceParams(p, p, s, BESOV), u).value
        out[("pp", p, s)] = abs(a - b) / b
    f22 = tl_norm(f, SpaceParams(2, 2, 0, TRIEBEL_LIZORKIN), u).value
    out[("l2",)] = (f22 / lp_norm(f, 2.0)) ** 2
    for p, s in CSP_CASES:
        tl = tl_norm(f, SpaceParams(p, np.inf, s, TRIEBEL_LIZORKIN), u).value
        out[("csp", p, s)] = tl / csp_norm(f, s, p)
    binf = besov_norm(f, SpaceParams(np.inf, np.inf, HOLDER_S, BESOV), u).value
    holder = holder_seminorm(f, HOLDER_S)
    out[("holder", HOLDER_S)] = binf / holder
    out[("csp_holder", HOLDER_S)] = csp_norm(f, HOLDER_S, np.inf) / holder
    return out


def run_equivalence_brackets(cfg: ExperimentConfig) -> Report:
    """Ratio brackets ``[min, max]`` over ``cfg.trials`` signals for each norm pair."""
    results = ordered_map(_trial, [(cfg, t) for t in range(cfg.trials)], cfg.workers)
    keys = list(results[0])
    vals = {k: np.array([r[k] for r in results]) for k in keys}
    checks, rows, data = [], [], {}
    width_tol = cfg.tol("bracket_width")
    for k, v in vals.items():
        name = ":".join(f"{x:g}" if isinstance(x, float) else str(x) for x in k)
        lo, hi = float(v.min()), float(v.max())
        data[name] = {"min": lo, "max": hi, "values": v}
        rows.append((name, lo, hi, hi / lo if k[0] != "pp" else float("nan")))
        if k[0] == "pp":
            checks.append(check_le(f"F_pp vs B_pp ({name}) rel diff", hi, cfg.tol("pp_identity")))
        elif k[0] == "l2":
            checks.append(check_le("F^0_22 / L2 squared ratio upper", hi, 1.0 + 1e-12))
            checks.append(check_ge("F^0_22 / L2 squared ratio lower", lo, 0.5))
        else:
            checks.append(check_le(f"bracket width {name}", hi / lo, width_tol))
    return Report(
        "brackets",
        checks=checks,
        tables={"brackets": Table(("pair", "min", "max", "width"), tuple(rows))},
        data=data,
        meta={"seed": cfg.seed, "trials": cfg.trials, "delta": cfg.delta},
    )
