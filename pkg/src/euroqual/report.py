"""Report emission: per-team probability tables, machine-readable run
summaries with exact counts, and figure-ready data files.

Probabilities are printed with six decimal places; the summary JSON also
carries the raw integer counts so nothing is lost to rounding.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .engine import CounterfactualResult, ProbabilityReport


def _fmt(p: float) -> str:
    return f"{p:.6f}"


def write_team_table(report: ProbabilityReport, path: str | Path) -> Path:
    """Per-team table ordered by initial rank."""
    path = Path(path)
    teams = sorted(report.teams, key=lambda t: t.uefa_rank)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["team", "league", "uefa_rank", "elo", "p_direct", "p_playoff", "p_total", "stderr_total"]
        )
        stderr = report.stderr_total()
        for t in teams:
            writer.writerow(
                [
                    t.name,
                    str(t.league),
                    t.uefa_rank,
                    f"{t.elo:g}",
                    _fmt(report.p_direct[t.id]),
                    _fmt(report.p_playoff[t.id]),
                    _fmt(report.p_total[t.id]),
                    _fmt(float(stderr[t.id])),
                ]
            )
    return path


def write_summary(report: ProbabilityReport, path: str | Path) -> Path:
    """JSON summary: config echo plus exact per-channel integer counts."""
    path = Path(path)
    cfg = report.config
    payload = {
        "iterations": report.iterations,
        "master_seed": cfg.master_seed,
        "config": {
            "rating_scale": cfg.rating_scale,
            "home_advantage": cfg.home_advantage,
            "path_policy": cfg.path_policy,
        },
        "relaxed_path_events": report.relaxed_path_events,
        "teams": [
            {
                "name": t.name,
                "uefa_rank": t.uefa_rank,
                "elo": t.elo,
                "direct_count": int(report.direct_counts[t.id]),
                "playoff_count": int(report.playoff_counts[t.id]),
            }
            for t in sorted(report.teams, key=lambda t: t.uefa_rank)
        ],
    }
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def read_summary(path: str | Path) -> dict:
    """Parse a summary file back; counts return as integer arrays keyed by name."""
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    payload["direct_counts"] = {t["name"]: t["direct_count"] for t in payload["teams"]}
    payload["playoff_counts"] = {t["name"]: t["playoff_count"] for t in payload["teams"]}
    return payload


def write_total_scatter(report: ProbabilityReport, path: str | Path) -> Path:
    """Figure data: overall qualification probability against Elo, by league."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["team", "league", "elo", "p_total"])
        for t in sorted(report.teams, key=lambda t: t.uefa_rank):
            writer.writerow([t.name, str(t.league), f"{t.elo:g}", _fmt(report.p_total[t.id])])
    return path


def write_decomposition(report: ProbabilityReport, path: str | Path) -> Path:
    """Figure data: direct and play-off channels against Elo, by league."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["team", "league", "elo", "p_direct", "p_playoff"])
        for t in sorted(report.teams, key=lambda t: t.uefa_rank):
            writer.writerow(
                [
                    t.name,
                    str(t.league),
                    f"{t.elo:g}",
                    _fmt(report.p_direct[t.id]),
                    _fmt(report.p_playoff[t.id]),
                ]
            )
    return path


def write_counterfactual_bars(result: CounterfactualResult, path: str | Path) -> Path:
    """Figure data: stacked-bar values for the subject under both scenarios."""
    path = Path(path)
    summary = result.subject_summary()
    subject = result.actual.teams[result.subject_id]
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["subject", "scenario", "channel", "probability"])
        writer.writerow([subject.name, "actual", "direct", _fmt(summary["actual_direct"])])
        writer.writerow([subject.name, "actual", "playoff", _fmt(summary["actual_playoff"])])
        writer.writerow(
            [subject.name, "hypothetical", "direct", _fmt(summary["hypothetical_direct"])]
        )
        writer.writerow(
            [subject.name, "hypothetical", "playoff", _fmt(summary["hypothetical_playoff"])]
        )
    return path


def verify_report_roundtrip(report: ProbabilityReport, summary_path: str | Path) -> None:
    """Assert that a written summary reproduces the in-memory counts."""
    payload = read_summary(summary_path)
    for t in report.teams:
        if payload["direct_counts"][t.name] != int(report.direct_counts[t.id]):
            raise AssertionError(f"direct count mismatch for {t.name}")
        if payload["playoff_counts"][t.name] != int(report.playoff_counts[t.id]):
            raise AssertionError(f"playoff count mismatch for {t.name}")
    if payload["iterations"] != report.iterations:
        raise AssertionError("iteration count mismatch")
