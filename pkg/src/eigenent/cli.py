"""Command-line entry point: seeded experiment runs persisted to CSV.

Exit codes: 0 success, 1 bound/quadrature violation, 2 configuration error,
3 backend (eigensolver or quadrature machinery) failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .eigensolve import BackendError
from .experiments import (ConfigError, ExperimentConfig, run_bounds,
                          run_figure1, run_modelm, run_page, run_quadcheck,
                          write_table)
from .theory import QuadratureError

EXPERIMENTS = ("figure1", "bounds", "modelm", "page", "quadcheck")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="JSON config file")
    parser.add_argument("--seed", type=int, help="master RNG seed (64-bit)")
    parser.add_argument("--out", metavar="DIR", help="output directory (default ./results)")
    parser.add_argument("--threads", type=int, help="parallel sector solves")
    parser.add_argument("--n-list", metavar="N,N,...", help="comma-separated chain sizes")
    parser.add_argument("--g", type=float, help="transverse field")
    parser.add_argument("--h", type=float, help="longitudinal field")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eigenent",
        description="average eigenstate entanglement experiments for chaotic spin chains",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        p = sub.add_parser(name, help=f"run the {name} experiment")
        _add_common(p)
        if name == "figure1":
            p.add_argument("--m-list", metavar="M,M,...", help="subsystem sizes")
        if name == "bounds":
            p.add_argument("--m-list", metavar="M,M,...", help="subsystem sizes")
            p.add_argument("--disorder-w", type=float, help="disorder half-width on h")
            p.add_argument("--disorder-seeds", metavar="S,S,...",
                           help="comma-separated disorder seeds")
        if name == "modelm":
            p.add_argument("--samples", type=int, help="samples per sector")
        if name == "page":
            p.add_argument("--trials", type=int, help="Monte Carlo trials per grid point")
    return parser


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise ConfigError(f"{flag} expects comma-separated integers: {exc}") from exc


def _build_config(args: argparse.Namespace) -> ExperimentConfig:
    data: dict = {"experiment": args.command}
    if args.config:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        file_cfg = ExperimentConfig.from_json(text)
        if file_cfg.experiment != args.command:
            raise ConfigError(
                f"config is for experiment '{file_cfg.experiment}', "
                f"but '{args.command}' was requested")
        data = file_cfg.to_dict()
    overrides = {
        "seed": args.seed,
        "out_dir": args.out,
        "threads": args.threads,
        "g": args.g,
        "h": args.h,
    }
    if args.n_list is not None:
        overrides["n_list"] = _parse_int_list(args.n_list, "--n-list")
    if getattr(args, "m_list", None) is not None:
        overrides["m_list"] = _parse_int_list(args.m_list, "--m-list")
    if getattr(args, "disorder_w", None) is not None:
        overrides["disorder_w"] = args.disorder_w
    if getattr(args, "disorder_seeds", None) is not None:
        overrides["disorder_seeds"] = _parse_int_list(args.disorder_seeds,
                                                      "--disorder-seeds")
    if getattr(args, "samples", None) is not None:
        overrides["samples_per_sector"] = args.samples
    if getattr(args, "trials", None) is not None:
        overrides["trials"] = args.trials
    data.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig.from_dict(data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _build_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    violations: list[str] = []
    try:
        if cfg.experiment == "figure1":
            table = run_figure1(cfg)
        elif cfg.experiment == "bounds":
            table, violations = run_bounds(cfg)
        elif cfg.experiment == "modelm":
            table = run_modelm(cfg)
        elif cfg.experiment == "page":
            table = run_page(cfg)
        else:
            table, violations = run_quadcheck(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (BackendError, QuadratureError, np.linalg.LinAlgError) as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    path = write_table(table, cfg.out_dir or "results")
    print(f"{cfg.experiment}: {len(table.rows)} rows -> {path}")
    for line in violations:
        print(f"VIOLATION: {line}", file=sys.stderr)
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
