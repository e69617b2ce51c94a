"""Teams, league tiers, and simulation configuration.

The only exogenous inputs of the whole simulation are each team's initial
coefficient rank (1-55, drives every draw and seeding step) and its Elo
rating (drives match outcomes).  Everything downstream is derived.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from enum import IntEnum
from importlib import resources
from pathlib import Path

import numpy as np

NUM_TEAMS = 55
DEFAULT_ITERATIONS = 1_000_000
DEFAULT_MASTER_SEED = 20200612
DEFAULT_RATING_SCALE = 400.0
DEFAULT_HOME_ADVANTAGE = 100.0

PATH_POLICIES = ("regular", "random", "seeded")


class LeagueTier(IntEnum):
    """Strength tiers A-D; lower value = higher-ranked league."""

    A = 0
    B = 1
    C = 2
    D = 3

    def __str__(self) -> str:
        return self.name


# Rank bands per tier: A = 1-12, B = 13-24, C = 25-39, D = 40-55.
LEAGUE_RANK_RANGES: dict[LeagueTier, range] = {
    LeagueTier.A: range(1, 13),
    LeagueTier.B: range(13, 25),
    LeagueTier.C: range(25, 40),
    LeagueTier.D: range(40, 56),
}

LEAGUE_SIZES: dict[LeagueTier, int] = {t: len(r) for t, r in LEAGUE_RANK_RANGES.items()}


def league_of_rank(uefa_rank: int) -> LeagueTier:
    for tier, ranks in LEAGUE_RANK_RANGES.items():
        if uefa_rank in ranks:
            return tier
    raise ValueError(f"uefa_rank {uefa_rank} outside 1..{NUM_TEAMS}")


@dataclass(frozen=True)
class Team:
    """One national team; ``id`` is a dense index fixed at construction."""

    id: int
    name: str
    uefa_rank: int
    elo: float

    @property
    def league(self) -> LeagueTier:
        return league_of_rank(self.uefa_rank)


@dataclass(frozen=True)
class MatchRecord:
    """A decided match; the model admits no draws."""

    home: int
    away: int
    winner: int

    def __post_init__(self) -> None:
        if self.home == self.away:
            raise ValueError("a team cannot play itself")
        if self.winner not in (self.home, self.away):
            raise ValueError("winner must be one of the two sides")


@dataclass(frozen=True)
class SimConfig:
    """Global knobs for one simulation run."""

    rating_scale: float = DEFAULT_RATING_SCALE
    home_advantage: float = DEFAULT_HOME_ADVANTAGE
    iterations: int = DEFAULT_ITERATIONS
    master_seed: int = DEFAULT_MASTER_SEED
    path_policy: str = "regular"
    counterfactual: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.rating_scale <= 0:
            raise ValueError("rating_scale must be positive")
        if self.home_advantage < 0:
            raise ValueError("home_advantage must be non-negative")
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")
        if self.path_policy not in PATH_POLICIES:
            raise ValueError(f"path_policy must be one of {PATH_POLICIES}")
        if self.counterfactual is not None:
            _, target = self.counterfactual
            if not 1 <= target <= NUM_TEAMS:
                raise ValueError("counterfactual target rank must be in 1..55")


class TeamSet:
    """Immutable collection of the 55 teams, addressable by id, rank, or name."""

    def __init__(self, teams: tuple[Team, ...]):
        if len(teams) != NUM_TEAMS:
            raise ValueError(f"expected {NUM_TEAMS} teams, got {len(teams)}")
        if [t.id for t in teams] != list(range(NUM_TEAMS)):
            raise ValueError("team ids must be dense 0..54 in order")
        ranks = sorted(t.uefa_rank for t in teams)
        if ranks != list(range(1, NUM_TEAMS + 1)):
            raise ValueError("uefa_rank values must be a permutation of 1..55")
        self._teams = teams
        self._by_rank = {t.uefa_rank: t for t in teams}
        self._by_name = {t.name: t for t in teams}

    def __iter__(self):
        return iter(self._teams)

    def __len__(self) -> int:
        return NUM_TEAMS

    def __getitem__(self, team_id: int) -> Team:
        return self._teams[team_id]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TeamSet) and self._teams == other._teams

    def by_rank(self, uefa_rank: int) -> Team:
        return self._by_rank[uefa_rank]

    def by_name(self, name: str) -> Team:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown team name: {name!r}") from None

    def elo_by_rank(self) -> np.ndarray:
        """Elo ratings indexed by rank position (index r = rank r+1).

        This is the entire team-side input of the season kernel.
        """
        arr = np.empty(NUM_TEAMS, dtype=np.float64)
        for t in self._teams:
            arr[t.uefa_rank - 1] = t.elo
        return arr

    def ids_by_rank(self) -> np.ndarray:
        """Team ids indexed by rank position, for mapping tallies back."""
        arr = np.empty(NUM_TEAMS, dtype=np.int64)
        for t in self._teams:
            arr[t.uefa_rank - 1] = t.id
        return arr


def build_team_set(records: list[tuple[str, int, float]]) -> TeamSet:
    """Validate raw (name, uefa_rank, elo) records and assign dense ids.

    Ids are assigned in ascending uefa_rank order so that, before any
    counterfactual swap, id == rank - 1.
    """
    if len(records) != NUM_TEAMS:
        raise ValueError(f"expected {NUM_TEAMS} teams, got {len(records)}")
    seen: dict[int, str] = {}
    for name, rank, elo in records:
        if not 1 <= rank <= NUM_TEAMS:
            raise ValueError(f"{name}: uefa_rank {rank} outside 1..{NUM_TEAMS}")
        if rank in seen:
            raise ValueError(f"duplicate uefa_rank {rank}: {seen[rank]!r} and {name!r}")
        if elo <= 0:
            raise ValueError(f"{name}: elo must be positive, got {elo}")
        seen[rank] = name
    ordered = sorted(records, key=lambda r: r[1])
    teams = tuple(
        Team(id=i, name=name, uefa_rank=rank, elo=float(elo))
        for i, (name, rank, elo) in enumerate(ordered)
    )
    return TeamSet(teams)


def apply_counterfactual(teams: TeamSet, subject_id: int, target_rank: int) -> TeamSet:
    """Swap the subject's rank with the current holder of ``target_rank``.

    A pairwise swap is the minimal perturbation: every other team keeps its
    rank, and all Elo ratings stay untouched.  Applying the same swap twice
    restores the original set.
    """
    if not 1 <= target_rank <= NUM_TEAMS:
        raise ValueError("target_rank must be in 1..55")
    subject = teams[subject_id]
    occupant = teams.by_rank(target_rank)
    if occupant.id == subject.id:
        return teams
    swapped = []
    for t in teams:
        if t.id == subject.id:
            swapped.append(replace(t, uefa_rank=target_rank))
        elif t.id == occupant.id:
            swapped.append(replace(t, uefa_rank=subject.uefa_rank))
        else:
            swapped.append(t)
    return TeamSet(tuple(swapped))


def load_team_table(path: str | Path) -> TeamSet:
    """Read a team file: comma-separated, header ``name,uefa_rank,elo``."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ["name", "uefa_rank", "elo"]:
            raise ValueError(f"{path}: expected header 'name,uefa_rank,elo'")
        records = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 columns, got {len(row)}")
            name = row[0].strip()
            try:
                rank = int(row[1])
                elo = float(row[2])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            records.append((name, rank, elo))
    return build_team_set(records)


def default_team_set() -> TeamSet:
    """The reference 55-team dataset shipped with the package."""
    ref = resources.files("euroqual.data").joinpath("euro2020_teams.csv")
    with resources.as_file(ref) as path:
        return load_team_table(path)
