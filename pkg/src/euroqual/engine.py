"""Season iteration, Monte Carlo aggregation, and experiment drivers.

Iteration ``k`` of a run always draws from the substream
``(master_seed, k)``, so tallies are exact integer counts that do not
depend on how iterations are sliced across worker processes.

Two interchangeable season implementations exist:

* :func:`run_iteration` calls the compiled kernel (the production path);
* :func:`run_iteration_reference` composes the pure-Python stage
  operations.

Both consume the identical variate stream and must produce identical
outcomes for any seed; the test suite enforces this bit for bit.
"""

from __future__ import annotations

import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import _kernel
from .nations_league import (
    allocate_leagues,
    draw_nl_groups,
    league_ranking,
    overall_ranking,
    play_group,
    rank_group,
)
from .playoffs import form_paths, play_path, select_playoff_teams
from .qualifiers import draw_q_groups, form_pots, play_qualifiers
from .rng import RandomStream, StreamPool, derive_master_seed, make_stream
from .teams import LeagueTier, NUM_TEAMS, SimConfig, TeamSet, apply_counterfactual


@dataclass(frozen=True)
class IterationOutcome:
    """The 24 qualifiers of one simulated season."""

    direct: frozenset[int]
    playoff: frozenset[int]

    def __post_init__(self) -> None:
        if len(self.direct) != 20 or len(self.playoff) != 4:
            raise ValueError("an outcome holds 20 direct and 4 play-off qualifiers")
        if self.direct & self.playoff:
            raise ValueError("direct and play-off qualifiers must be disjoint")


@dataclass(frozen=True)
class ProbabilityReport:
    """Exact qualification tallies for one simulation run.

    Counts are indexed by team id; probabilities are materialised on
    access so the integer identities stay checkable.
    """

    teams: TeamSet
    config: SimConfig
    iterations: int
    direct_counts: np.ndarray
    playoff_counts: np.ndarray
    relaxed_path_events: int = 0

    @property
    def p_direct(self) -> np.ndarray:
        return self.direct_counts / self.iterations

    @property
    def p_playoff(self) -> np.ndarray:
        return self.playoff_counts / self.iterations

    @property
    def p_total(self) -> np.ndarray:
        return (self.direct_counts + self.playoff_counts) / self.iterations

    def stderr_total(self) -> np.ndarray:
        p = self.p_total
        return np.sqrt(p * (1.0 - p) / self.iterations)

    def of(self, name: str) -> tuple[float, float, float]:
        """(p_direct, p_playoff, p_total) for a team by name."""
        tid = self.teams.by_name(name).id
        return (
            float(self.p_direct[tid]),
            float(self.p_playoff[tid]),
            float(self.p_total[tid]),
        )

    def check_conservation(self) -> None:
        """Every iteration yields exactly 24 qualifiers; the tallies must
        reflect that as an integer identity."""
        total = int(self.direct_counts.sum() + self.playoff_counts.sum())
        if total != 24 * self.iterations:
            raise AssertionError(
                f"tally conservation violated: {total} != {24 * self.iterations}"
            )


def run_iteration(teams: TeamSet, cfg: SimConfig, rng: RandomStream) -> IterationOutcome:
    """Simulate one season with the compiled kernel."""
    elo = teams.elo_by_rank()
    direct_mask = np.empty(NUM_TEAMS, dtype=np.int64)
    playoff_mask = np.empty(NUM_TEAMS, dtype=np.int64)
    _kernel.simulate_season(
        elo,
        cfg.rating_scale,
        cfg.home_advantage,
        _kernel.POLICY_CODES[cfg.path_policy],
        rng,
        direct_mask,
        playoff_mask,
    )
    ids = teams.ids_by_rank()
    return IterationOutcome(
        direct=frozenset(int(t) for t in ids[direct_mask == 1]),
        playoff=frozenset(int(t) for t in ids[playoff_mask == 1]),
    )


def run_iteration_reference(
    teams: TeamSet, cfg: SimConfig, rng: RandomStream
) -> IterationOutcome:
    """Simulate one season by composing the stage operations directly."""
    leagues = allocate_leagues(teams)
    groups = {tier: draw_nl_groups(leagues[tier], rng) for tier in LeagueTier}
    standings = {}
    for tier in LeagueTier:
        tier_standings = []
        for group in groups[tier]:
            records = play_group(group.members, teams, cfg, rng)
            tier_standings.append(
                rank_group(group.members, records, rng, group.league_tier, group.group_index)
            )
        standings[tier] = tier_standings
    rankings = {tier: league_ranking(tier, standings[tier], rng) for tier in LeagueTier}
    overall = overall_ranking(rankings)
    pots = form_pots(overall)
    qgroups = draw_q_groups(pots, rng)
    _, direct = play_qualifiers(qgroups, teams, cfg, rng)
    entrants = select_playoff_teams(overall, rankings, direct, rng)
    paths = form_paths(entrants, cfg.path_policy, rng)
    winners = [play_path(path, teams, cfg, rng).winner for path in paths]
    return IterationOutcome(direct=frozenset(direct), playoff=frozenset(winners))


def _simulate_range(
    elo: np.ndarray,
    scale: float,
    home_adv: float,
    policy: int,
    master_seed: int,
    start: int,
    stop: int,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Tally seasons ``start <= k < stop``; each uses substream k."""
    direct_counts = np.zeros(NUM_TEAMS, dtype=np.int64)
    playoff_counts = np.zeros(NUM_TEAMS, dtype=np.int64)
    direct_mask = np.empty(NUM_TEAMS, dtype=np.int64)
    playoff_mask = np.empty(NUM_TEAMS, dtype=np.int64)
    relaxed = 0
    pool = StreamPool(master_seed)
    simulate = _kernel.simulate_season
    for k in range(start, stop):
        relaxed += simulate(
            elo, scale, home_adv, policy, pool.stream(k), direct_mask, playoff_mask
        )
        direct_counts += direct_mask
        playoff_counts += playoff_mask
    return direct_counts, playoff_counts, relaxed


def run_simulation(
    teams: TeamSet, cfg: SimConfig, workers: int | None = None
) -> ProbabilityReport:
    """Run ``cfg.iterations`` seasons and tally exact qualification counts.

    The result is bit-identical for any worker count because iteration k's
    stream depends only on ``(master_seed, k)`` and tallies merge by
    integer addition.
    """
    elo = teams.elo_by_rank()
    policy = _kernel.POLICY_CODES[cfg.path_policy]
    n = cfg.iterations
    if workers is None:
        workers = min(os.cpu_count() or 1, n)
    workers = max(1, min(workers, n))

    args = (elo, cfg.rating_scale, cfg.home_advantage, policy, cfg.master_seed)
    if workers == 1:
        direct_counts, playoff_counts, relaxed = _simulate_range(*args, 0, n)
    else:
        # Warm the JIT cache before forking so children reuse the compile.
        _simulate_range(*args, 0, 1)
        bounds = np.linspace(0, n, workers + 1, dtype=np.int64)
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            futures = [
                pool.submit(_simulate_range, *args, int(bounds[w]), int(bounds[w + 1]))
                for w in range(workers)
            ]
            results = [f.result() for f in futures]
        direct_counts = sum(r[0] for r in results)
        playoff_counts = sum(r[1] for r in results)
        relaxed = sum(r[2] for r in results)

    # Tallies are in rank space; map them back onto team ids.
    ids = teams.ids_by_rank()
    direct_by_id = np.zeros(NUM_TEAMS, dtype=np.int64)
    playoff_by_id = np.zeros(NUM_TEAMS, dtype=np.int64)
    direct_by_id[ids] = direct_counts
    playoff_by_id[ids] = playoff_counts

    report = ProbabilityReport(
        teams=teams,
        config=cfg,
        iterations=n,
        direct_counts=direct_by_id,
        playoff_counts=playoff_by_id,
        relaxed_path_events=int(relaxed),
    )
    report.check_conservation()
    return report


@dataclass(frozen=True)
class CounterfactualResult:
    """Paired reports: the season as ranked, and with the subject's rank
    swapped with the holder of the target rank."""

    subject_id: int
    target_rank: int
    actual: ProbabilityReport
    hypothetical: ProbabilityReport

    def subject_summary(self) -> dict[str, float]:
        name = self.actual.teams[self.subject_id].name
        a_direct, a_playoff, a_total = self.actual.of(name)
        h_direct, h_playoff, h_total = self.hypothetical.of(name)
        return {
            "actual_direct": a_direct,
            "actual_playoff": a_playoff,
            "actual_total": a_total,
            "hypothetical_direct": h_direct,
            "hypothetical_playoff": h_playoff,
            "hypothetical_total": h_total,
        }


def run_counterfactual(
    teams: TeamSet,
    cfg: SimConfig,
    subject_id: int | None = None,
    target_rank: int | None = None,
    workers: int | None = None,
) -> CounterfactualResult:
    """Simulate the actual and rank-swapped scenarios independently.

    Each scenario derives its own master seed, so the pair behaves like two
    unrelated simulations rather than a common-random-numbers experiment.
    """
    if subject_id is None or target_rank is None:
        if cfg.counterfactual is None:
            raise ValueError("no counterfactual subject configured")
        subject_id, target_rank = cfg.counterfactual
    swapped = apply_counterfactual(teams, subject_id, target_rank)
    actual_cfg = replace(
        cfg, counterfactual=None, master_seed=derive_master_seed(cfg.master_seed, 0)
    )
    hypo_cfg = replace(
        cfg, counterfactual=None, master_seed=derive_master_seed(cfg.master_seed, 1)
    )
    return CounterfactualResult(
        subject_id=subject_id,
        target_rank=target_rank,
        actual=run_simulation(teams, actual_cfg, workers=workers),
        hypothetical=run_simulation(swapped, hypo_cfg, workers=workers),
    )


def run_sensitivity(
    teams: TeamSet,
    cfg: SimConfig,
    scale_values: list[float],
    workers: int | None = None,
) -> list[ProbabilityReport]:
    """One full simulation per rating-scale value, all else fixed."""
    if any(s <= 0 for s in scale_values):
        raise ValueError("rating-scale values must be positive")
    return [
        run_simulation(teams, replace(cfg, rating_scale=float(s)), workers=workers)
        for s in scale_values
    ]


__all__ = [
    "CounterfactualResult",
    "IterationOutcome",
    "ProbabilityReport",
    "make_stream",
    "run_counterfactual",
    "run_iteration",
    "run_iteration_reference",
    "run_sensitivity",
    "run_simulation",
]
