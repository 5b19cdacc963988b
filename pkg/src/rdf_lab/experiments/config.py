"""Experiment configuration: defaults, validation, canonical hashing."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from ..errors import ConfigError, InvalidArgument
from ..grid import GridSpec
from ..norms import SpaceParams

DEFAULT_SPACES = ("F:4:2:0", "F:4:inf:0.5", "F:4:4:0.5", "B:4:1:0.5", "B:2:inf:1")

DEFAULT_TOLERANCES = {
    "growth": 1.25,
    "slope_center": 0.5,
    "slope_tol": 0.1,
    "parseval": 1e-10,
    "unity": 1e-12,
    "rotation": 1e-12,
    "contraction_slack": 1e-12,
    "moment_match": 0.02,
    "uniform_bound_slack": 0.02,
    "bmo_growth": 2.0,
    "pointwise_spread": 3.0,
    "sobolev_match": 1e-8,
    "bracket_width": 10.0,
    "pp_identity": 1e-10,
}


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    n: int = 4096
    period: float = 64.0
    delta: float = 0.125
    trials: int = 20
    family_sizes: tuple[int, ...] = (8, 16, 32, 64)
    spaces: tuple[str, ...] = DEFAULT_SPACES
    op: str = "auto"
    parseval_n: int = 1024
    parseval_partitions: int = 50
    pointwise_family_size: int = 8
    counterexample_M: tuple[int, ...] = (4, 8, 16, 32)
    counterexample_n: int = 65536
    counterexample_period: float = 256.0
    counterexample_s: float = 0.5
    counterexample_q: float = 2.0
    member_bins: int = 64
    workers: int | None = None
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def __post_init__(self):
        problems = []

        def bad(key, why):
            problems.append(f"{key}: {why}")

        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or self.seed < 0:
            bad("seed", "must be a non-negative integer")
        for key, grid_keys in (
            ("n/period", (self.n, self.period)),
            ("parseval_n", (self.parseval_n, 1.0)),
            ("counterexample_n/period", (self.counterexample_n, self.counterexample_period)),
        ):
            try:
                GridSpec(*grid_keys)
            except InvalidArgument as exc:
                bad(key, str(exc))
        if not (isinstance(self.delta, (int, float)) and 0.0 < self.delta < 0.5):
            bad("delta", f"must lie in (0, 1/2), got {self.delta!r}")
        for key in ("trials", "parseval_partitions", "pointwise_family_size", "member_bins"):
            v = getattr(self, key)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                bad(key, "must be a positive integer")
        for key in ("family_sizes", "counterexample_M"):
            v = getattr(self, key)
            if not v or any(not isinstance(m, int) or m < 1 for m in v):
                bad(key, "must be a non-empty list of positive integers")
            elif list(v) != sorted(set(v)):
                bad(key, "must be strictly increasing")
        for text in self.spaces:
            try:
                SpaceParams.parse(text)
            except InvalidArgument as exc:
                bad("spaces", str(exc))
        if self.op not in ("auto", "plain", "rotated"):
            bad("op", "must be 'auto', 'plain' or 'rotated'")
        if self.workers is not None and (not isinstance(self.workers, int) or self.workers < 1):
            bad("workers", "must be a positive integer or null")
        if not isinstance(self.counterexample_s, (int, float)) or self.counterexample_s < 0:
            bad("counterexample_s", "must be >= 0")
        if not isinstance(self.counterexample_q, (int, float)) or not self.counterexample_q > 0:
            bad("counterexample_q", "must be > 0")
        if isinstance(self.tolerances, dict):
            unknown = sorted(set(self.tolerances) - set(DEFAULT_TOLERANCES))
            if unknown:
                bad("tolerances", f"unknown keys {unknown}")
            for k, v in self.tolerances.items():
                if not isinstance(v, (int, float)) or not v > 0:
                    bad(f"tolerances.{k}", "must be a positive number")
        else:
            bad("tolerances", "must be an object")
        if problems:
            raise ConfigError("invalid configuration: " + "; ".join(problems))

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.n, self.period)

    def tol(self, key: str) -> float:
        return float(self.tolerances.get(key, DEFAULT_TOLERANCES[key]))

    def space_params(self) -> list[SpaceParams]:
        return [SpaceParams.parse(t) for t in self.spaces]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["family_sizes"] = list(self.family_sizes)
        out["spaces"] = list(self.spaces)
        out["counterexample_M"] = list(self.counterexample_M)
        out["tolerances"] = {**DEFAULT_TOLERANCES, **self.tolerances}
        return out

    def canonical_bytes(self) -> bytes:
        """Canonical JSON of every result-affecting field (the worker count is excluded)."""
        data = self.to_dict()
        data.pop("workers")
        return json.dumps(data, sort_keys=True, separators=(",", ":")).encode()

    def hash(self) -> str:
        return hashlib.sha256(self.canonical_bytes()).hexdigest()

    def replace(self, **changes) -> "ExperimentConfig":
        data = self.to_dict()
        data.update({k: v for k, v in changes.items() if v is not None})
        return config_from_dict(data)


_TUPLE_KEYS = ("family_sizes", "spaces", "counterexample_M")
_FLOAT_KEYS = ("period", "delta", "counterexample_period", "counterexample_s", "counterexample_q")


def config_from_dict(data: dict) -> ExperimentConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {unknown}")
    kwargs = dict(data)
    for key in _TUPLE_KEYS:
        if key in kwargs:
            if not isinstance(kwargs[key], (list, tuple)):
                raise ConfigError(f"{key}: must be a list")
            kwargs[key] = tuple(kwargs[key])
    for key in _FLOAT_KEYS:
        if key in kwargs and isinstance(kwargs[key], int) and not isinstance(kwargs[key], bool):
            kwargs[key] = float(kwargs[key])
    if "tolerances" in kwargs:
        if not isinstance(kwargs["tolerances"], dict):
            raise ConfigError("tolerances: must be an object")
        kwargs["tolerances"] = {**DEFAULT_TOLERANCES, **kwargs["tolerances"]}
    return ExperimentConfig(**kwargs)


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return config_from_dict(data)


def default_config() -> ExperimentConfig:
    return ExperimentConfig()


def is_inf(v: float) -> bool:
    return isinstance(v, float) and math.isinf(v)
