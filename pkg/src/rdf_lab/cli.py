"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on a
configuration or usage error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import ConfigError, RdfLabError
from .experiments import (
    ExperimentConfig,
    default_config,
    load_config,
    run_counterexample_besov,
    run_counterexample_bmo,
    run_equivalence_brackets,
    run_identity_checks,
    run_parseval_check,
    run_pointwise_estimate_check,
    run_rdf_bound_sweep,
    run_sobolev_lemma_check,
)
from .io import write_json, write_report

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


@dataclass
class RunManifest:
    command: str
    config_hash: str
    version: str
    timestamp: str
    outputs: list[str] = field(default_factory=list)
    passed: bool = True

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config_hash": self.config_hash,
            "version": self.version,
            "timestamp": self.timestamp,
            "outputs": list(self.outputs),
            "passed": self.passed,
        }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int)
    p.add_argument("--n", type=int, help="samples per grid (power of two)")
    p.add_argument("--period", type=float, help="grid period L")
    p.add_argument("--delta", type=float, help="window gap delta in (0, 1/2)")
    p.add_argument("--trials", type=int)
    p.add_argument("--M", type=_int_list, help="comma-separated family sizes")
    p.add_argument("--config", type=Path, help="JSON configuration file")
    p.add_argument("--out", type=Path, default=Path("runs"), help="output directory")
    p.add_argument("--workers", type=int, help="worker threads (capped by RDF_LAB_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rdf-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _common(sub.add_parser("verify", help="Parseval, resolution of unity, rotation, contraction"))
    sw = sub.add_parser("sweep", help="uniform-boundedness sweep over spaces")
    _common(sw)
    sw.add_argument("--space", action="append", help="F:p:q:s or B:p:q:s (repeatable)")
    sw.add_argument("--op", choices=("auto", "plain", "rotated"))
    _common(sub.add_parser("sobolev", help="homogeneous Sobolev bound for the rotated operator"))
    _common(sub.add_parser("pointwise", help="pointwise sharp-maximal estimate"))
    ce = sub.add_parser("counterexample", help="blow-up of the plain operator")
    ce.add_argument("kind", choices=("besov", "bmo"))
    _common(ce)
    _common(sub.add_parser("brackets", help="equivalence brackets between norms"))
    _common(sub.add_parser("report", help="run every experiment"))
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else default_config()
    changes = {
        "seed": args.seed,
        "n": args.n,
        "period": args.period,
        "delta": args.delta,
        "trials": args.trials,
        "workers": args.workers,
    }
    if args.M is not None:
        if args.command == "counterexample":
            changes["counterexample_M"] = args.M
        elif args.command == "pointwise":
            if len(args.M) != 1:
                raise ConfigError("pointwise takes a single family size via --M")
            changes["pointwise_family_size"] = args.M[0]
        else:
            changes["family_sizes"] = args.M
    if getattr(args, "space", None):
        changes["spaces"] = [s for item in args.space for s in item.split(",") if s]
    if getattr(args, "op", None):
        changes["op"] = args.op
    return cfg.replace(**changes)


def _experiments(args, cfg: ExperimentConfig) -> list:
    cmd = args.command
    if cmd == "verify":
        return [lambda: run_parseval_check(cfg), lambda: run_identity_checks(cfg)]
    if cmd == "sweep":
        return [lambda: run_rdf_bound_sweep(cfg)]
    if cmd == "sobolev":
        return [lambda: run_sobolev_lemma_check(cfg)]
    if cmd == "pointwise":
        return [lambda: run_pointwise_estimate_check(cfg)]
    if cmd == "brackets":
        return [lambda: run_equivalence_brackets(cfg)]
    if cmd == "counterexample":
        fn = run_counterexample_besov if args.kind == "besov" else run_counterexample_bmo
        return [lambda: fn(cfg)]
    return [
        lambda: run_parseval_check(cfg),
        lambda: run_identity_checks(cfg),
        lambda: run_rdf_bound_sweep(cfg),
        lambda: run_sobolev_lemma_check(cfg),
        lambda: run_pointwise_estimate_check(cfg),
        lambda: run_counterexample_besov(cfg),
        lambda: run_counterexample_bmo(cfg),
        lambda: run_equivalence_brackets(cfg),
    ]


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        cfg = config_from_args(args)
    except RdfLabError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    command = args.command if args.command != "counterexample" else f"counterexample {args.kind}"
    manifest = RunManifest(
        command=command,
        config_hash=cfg.hash(),
        version=__version__,
        timestamp=_dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    )
    out = Path(args.out)
    try:
        for job in _experiments(args, cfg):
            report = job()
            manifest.outputs += [str(p) for p in write_report(report, out)]
            manifest.passed &= report.passed
            for line in report.summary_lines():
                print(line)
            if "slope" in report.data:
                print(f"  slope {report.data['slope']:.4f} "
                      f"(residual {report.data['slope_residual']:.2e})")
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RdfLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL

    write_json(out / "config.json", cfg.to_dict())
    write_json(out / f"manifest_{command.replace(' ', '_')}.json", manifest.to_dict())
    print(f"config hash {manifest.config_hash}")
    return EXIT_OK if manifest.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
