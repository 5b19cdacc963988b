"""Seeded numerical experiments with pass/fail checks and serialisable reports."""

from .brackets import run_equivalence_brackets
from .common import Check, Report, Table, ordered_map, random_family, random_spectrum, rng_for
from .config import (
    DEFAULT_SPACES,
    DEFAULT_TOLERANCES,
    ExperimentConfig,
    config_from_dict,
    default_config,
    load_config,
)
from .counterexample import BlowupReport, run_counterexample_besov, run_counterexample_bmo
from .pointwise import run_pointwise_estimate_check
from .regions import admissible_ops, in_region, ops_for, require_region
from .sobolev import run_sobolev_lemma_check
from .sweep import SweepResult, run_rdf_bound_sweep
from .verify import run_identity_checks, run_parseval_check

__all__ = [
    "BlowupReport",
    "Check",
    "DEFAULT_SPACES",
    "DEFAULT_TOLERANCES",
    "ExperimentConfig",
    "Report",
    "SweepResult",
    "Table",
    "admissible_ops",
    "config_from_dict",
    "default_config",
    "in_region",
    "load_config",
    "ops_for",
    "ordered_map",
    "random_family",
    "random_spectrum",
    "require_region",
    "rng_for",
    "run_counterexample_besov",
    "run_counterexample_bmo",
    "run_equivalence_brackets",
    "run_identity_checks",
    "run_parseval_check",
    "run_pointwise_estimate_check",
    "run_rdf_bound_sweep",
    "run_sobolev_lemma_check",
]
