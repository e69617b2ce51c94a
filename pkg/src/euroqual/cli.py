"""Command-line front end.

Modes:

* ``simulate``        one simulation under the configured policy;
* ``counterfactual``  paired simulations, actual vs rank-swapped;
* ``sensitivity``     one simulation per rating-scale value (optionally
  after a rank swap);
* ``policy-compare``  all three path policies, optionally paired with a
  rank swap.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from . import report as rpt
from .engine import (
    CounterfactualResult,
    ProbabilityReport,
    run_counterfactual,
    run_simulation,
)
from .teams import (
    DEFAULT_HOME_ADVANTAGE,
    DEFAULT_ITERATIONS,
    DEFAULT_MASTER_SEED,
    DEFAULT_RATING_SCALE,
    PATH_POLICIES,
    SimConfig,
    TeamSet,
    apply_counterfactual,
    default_team_set,
    load_team_table,
)

MODES = ("simulate", "counterfactual", "sensitivity", "policy-compare")


@dataclass(frozen=True)
class RunSpec:
    """Fully validated description of one CLI invocation."""

    mode: str
    config: SimConfig
    teams_path: Path | None
    out_dir: Path
    swap: tuple[str, int] | None
    scale_values: tuple[float, ...] | None
    emit_figure_data: bool
    workers: int | None


def _parse_swap(text: str) -> tuple[str, int]:
    name, sep, rank_text = text.rpartition(":")
    if not sep or not name:
        raise argparse.ArgumentTypeError("swap must look like NAME:RANK, e.g. Lithuania:40")
    try:
        rank = int(rank_text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"swap rank must be an integer, got {rank_text!r}")
    if not 1 <= rank <= 55:
        raise argparse.ArgumentTypeError("swap rank must be in 1..55")
    return name, rank


def _parse_scale_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"could not parse scale list {text!r}")
    if not values or any(v <= 0 for v in values):
        raise argparse.ArgumentTypeError("scale values must be positive numbers")
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="euroqual",
        description="Monte Carlo simulator of the Euro 2020 qualification pipeline.",
    )
    parser.add_argument("--teams", metavar="PATH", help="team file (default: bundled dataset)")
    parser.add_argument("--mode", choices=MODES, default="simulate")
    parser.add_argument("--iterations", type=int, default=DEFAULT_ITERATIONS, metavar="N")
    parser.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED, metavar="N")
    parser.add_argument(
        "--scale-s", type=float, default=DEFAULT_RATING_SCALE, metavar="X",
        help="rating-scale parameter of the win-expectancy curve",
    )
    parser.add_argument(
        "--home-advantage", type=float, default=DEFAULT_HOME_ADVANTAGE, metavar="X"
    )
    parser.add_argument("--policy", choices=PATH_POLICIES, default="regular")
    parser.add_argument(
        "--swap", type=_parse_swap, metavar="NAME:RANK",
        help="rank swap for counterfactual runs, e.g. Lithuania:40",
    )
    parser.add_argument(
        "--s-values", type=_parse_scale_list, metavar="LIST",
        help="comma-separated rating-scale values for sensitivity mode",
    )
    parser.add_argument("--out", default="euroqual_results", metavar="DIR")
    parser.add_argument("--emit-figure-data", action="store_true")
    parser.add_argument("--workers", type=int, default=None, metavar="N")
    return parser


def parse_args(argv: list[str] | None = None) -> RunSpec:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.iterations < 1:
        parser.error("--iterations must be at least 1")
    if args.scale_s <= 0:
        parser.error("--scale-s must be positive")
    if args.home_advantage < 0:
        parser.error("--home-advantage must be non-negative")
    if args.mode == "simulate" and args.swap is not None:
        parser.error("--swap requires --mode counterfactual (or sensitivity/policy-compare)")
    if args.mode == "counterfactual" and args.swap is None:
        parser.error("--mode counterfactual requires --swap NAME:RANK")
    if args.mode == "sensitivity" and args.s_values is None:
        parser.error("--mode sensitivity requires --s-values")
    if args.mode != "sensitivity" and args.s_values is not None:
        parser.error("--s-values only applies to --mode sensitivity")
    teams_path = Path(args.teams) if args.teams else None
    if teams_path is not None and not teams_path.exists():
        parser.error(f"team file not found: {teams_path}")

    config = SimConfig(
        rating_scale=args.scale_s,
        home_advantage=args.home_advantage,
        iterations=args.iterations,
        master_seed=args.seed,
        path_policy=args.policy,
    )
    return RunSpec(
        mode=args.mode,
        config=config,
        teams_path=teams_path,
        out_dir=Path(args.out),
        swap=args.swap,
        scale_values=args.s_values,
        emit_figure_data=args.emit_figure_data,
        workers=args.workers,
    )


def _resolve_swap(teams: TeamSet, swap: tuple[str, int]) -> tuple[int, int]:
    name, rank = swap
    return teams.by_name(name).id, rank


def _emit_report(
    report: ProbabilityReport, out_dir: Path, prefix: str, figures: bool
) -> list[Path]:
    written = [
        rpt.write_team_table(report, out_dir / f"{prefix}team_probabilities.csv"),
        rpt.write_summary(report, out_dir / f"{prefix}summary.json"),
    ]
    if figures:
        written.append(rpt.write_total_scatter(report, out_dir / f"{prefix}fig_total_vs_elo.csv"))
        written.append(
            rpt.write_decomposition(report, out_dir / f"{prefix}fig_decomposed_vs_elo.csv")
        )
    return written


def _emit_counterfactual(
    result: CounterfactualResult, out_dir: Path, prefix: str, figures: bool
) -> list[Path]:
    written = _emit_report(result.actual, out_dir, f"{prefix}actual_", figures)
    written += _emit_report(result.hypothetical, out_dir, f"{prefix}hypothetical_", figures)
    if figures:
        written.append(
            rpt.write_counterfactual_bars(result, out_dir / f"{prefix}counterfactual_bars.csv")
        )
    subject = result.actual.teams[result.subject_id]
    s = result.subject_summary()
    label = prefix.rstrip("_") or "counterfactual"
    print(
        f"{label}: {subject.name} rank {subject.uefa_rank} -> {result.target_rank}: "
        f"total {s['actual_total']:.6f} -> {s['hypothetical_total']:.6f}"
    )
    return written


def run(spec: RunSpec) -> list[Path]:
    """Execute a validated run and write its outputs."""
    teams = load_team_table(spec.teams_path) if spec.teams_path else default_team_set()
    spec.out_dir.mkdir(parents=True, exist_ok=True)
    figures = spec.emit_figure_data
    written: list[Path] = []

    if spec.mode == "simulate":
        report = run_simulation(teams, spec.config, workers=spec.workers)
        written += _emit_report(report, spec.out_dir, "", figures)
    elif spec.mode == "counterfactual":
        subject, rank = _resolve_swap(teams, spec.swap)
        result = run_counterfactual(teams, spec.config, subject, rank, workers=spec.workers)
        written += _emit_counterfactual(result, spec.out_dir, "", figures)
    elif spec.mode == "sensitivity":
        base_teams = teams
        if spec.swap is not None:
            subject, rank = _resolve_swap(teams, spec.swap)
            base_teams = apply_counterfactual(teams, subject, rank)
        for scale in spec.scale_values:
            cfg = replace(spec.config, rating_scale=scale)
            report = run_simulation(base_teams, cfg, workers=spec.workers)
            written += _emit_report(report, spec.out_dir, f"s{scale:g}_", figures)
    else:  # policy-compare
        for policy in PATH_POLICIES:
            cfg = replace(spec.config, path_policy=policy)
            if spec.swap is not None:
                subject, rank = _resolve_swap(teams, spec.swap)
                result = run_counterfactual(teams, cfg, subject, rank, workers=spec.workers)
                written += _emit_counterfactual(result, spec.out_dir, f"{policy}_", figures)
            else:
                report = run_simulation(teams, cfg, workers=spec.workers)
                written += _emit_report(report, spec.out_dir, f"{policy}_", figures)

    for path in written:
        print(f"wrote {path}")
    return written


def main(argv: list[str] | None = None) -> int:
    try:
        spec = parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors itself
        return int(exc.code or 0)
    try:
        run(spec)
    except (ValueError, KeyError, AssertionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
