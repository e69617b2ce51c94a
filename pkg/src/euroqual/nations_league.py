"""The Nations League season: league allocation, group draws, double
round-robin play, group and league rankings, and the overall 1-55 ranking
that seeds everything afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matches import sample_match
from .rng import RandomStream, shuffle_ints
from .teams import (
    LEAGUE_RANK_RANGES,
    LeagueTier,
    MatchRecord,
    NUM_TEAMS,
    SimConfig,
    TeamSet,
)

NUM_GROUPS_PER_LEAGUE = 4

# Pot sizes within each league; pots are cut from the league members in
# rank order.  Leagues of 12 have three pots, the rest four.
LEAGUE_POT_SIZES: dict[LeagueTier, tuple[int, ...]] = {
    LeagueTier.A: (4, 4, 4),
    LeagueTier.B: (4, 4, 4),
    LeagueTier.C: (4, 4, 4, 3),
    LeagueTier.D: (4, 4, 4, 4),
}


@dataclass(frozen=True)
class League:
    tier: LeagueTier
    members: tuple[int, ...]  # team ids, ascending uefa_rank


@dataclass(frozen=True)
class NLGroup:
    league_tier: LeagueTier
    group_index: int  # 1-4
    members: tuple[int, ...]  # team ids in pot order (ascending rank)


@dataclass(frozen=True)
class StageStanding:
    """Final ordering of one group: (team id, wins) by position 1..n.

    Carries the group's match records because league-level comparisons in
    the 15-team league discard results against fourth-placed teams.
    """

    placements: tuple[tuple[int, int], ...]
    records: tuple[MatchRecord, ...]
    league_tier: LeagueTier | None = None
    group_index: int | None = None

    @property
    def teams_in_order(self) -> tuple[int, ...]:
        return tuple(team for team, _ in self.placements)


@dataclass(frozen=True)
class LeagueRanking:
    """League-internal 1..n ordering: (team id, position, group-winner flag)."""

    tier: LeagueTier
    entries: tuple[tuple[int, int, bool], ...]

    @property
    def teams_in_order(self) -> tuple[int, ...]:
        return tuple(team for team, _, _ in self.entries)

    def group_winners(self) -> tuple[int, ...]:
        return tuple(team for team, _, gw in self.entries if gw)


@dataclass(frozen=True)
class OverallRanking:
    """Overall positions 1-55; index i holds the team at position i+1."""

    positions: tuple[int, ...]

    def position_of(self, team_id: int) -> int:
        return self.positions.index(team_id) + 1


def allocate_leagues(teams: TeamSet) -> dict[LeagueTier, League]:
    """Partition the 55 teams into the four fixed rank bands."""
    leagues = {}
    for tier, ranks in LEAGUE_RANK_RANGES.items():
        members = tuple(teams.by_rank(r).id for r in ranks)
        leagues[tier] = League(tier=tier, members=members)
    return leagues


def draw_nl_groups(league: League, rng: RandomStream) -> list[NLGroup]:
    """Assign each seeding pot across the four groups uniformly at random.

    Pot members are taken in rank order and placed on a freshly shuffled
    list of group slots, so with a three-team pot exactly one group (uniform
    over the four) ends up short.
    """
    pot_sizes = LEAGUE_POT_SIZES[league.tier]
    if sum(pot_sizes) != len(league.members):
        raise ValueError(f"league {league.tier} has {len(league.members)} members")
    group_members: list[list[int]] = [[] for _ in range(NUM_GROUPS_PER_LEAGUE)]
    offset = 0
    for size in pot_sizes:
        pot = league.members[offset : offset + size]
        offset += size
        slots = list(range(NUM_GROUPS_PER_LEAGUE))
        shuffle_ints(rng, slots)
        for member, slot in zip(pot, slots):
            group_members[slot].append(member)
    return [
        NLGroup(league_tier=league.tier, group_index=g + 1, members=tuple(group_members[g]))
        for g in range(NUM_GROUPS_PER_LEAGUE)
    ]


def play_group(
    members: tuple[int, ...], teams: TeamSet, cfg: SimConfig, rng: RandomStream
) -> list[MatchRecord]:
    """Play a double round robin: every ordered pair once, first side at home.

    Match order is lexicographic over member slots so that a given stream
    always produces the same season.
    """
    n = len(members)
    if n < 2:
        raise ValueError("a group needs at least two teams")
    records = []
    for i in range(n):
        for j in range(n):
            if i != j:
                records.append(sample_match(teams[members[i]], teams[members[j]], cfg, rng))
    return records


def rank_group(
    members: tuple[int, ...],
    records: list[MatchRecord] | tuple[MatchRecord, ...],
    rng: RandomStream,
    league_tier: LeagueTier | None = None,
    group_index: int | None = None,
) -> StageStanding:
    """Order a group by wins, breaking equal-wins blocks uniformly at random.

    Draws one tie key per member (in slot order) regardless of whether any
    tie exists; a fixed draw count keeps the stream aligned with the
    compiled kernel.
    """
    n = len(members)
    expected = n * (n - 1)
    if len(records) != expected:
        raise ValueError(f"expected {expected} records for a group of {n}, got {len(records)}")
    wins = {m: 0 for m in members}
    for rec in records:
        if rec.home not in wins or rec.away not in wins:
            raise ValueError("record references a team outside the group")
        wins[rec.winner] += 1
    keys = {m: rng.random() for m in members}
    ordered = sorted(members, key=lambda m: (-wins[m], keys[m]))
    placements = tuple((m, wins[m]) for m in ordered)
    return StageStanding(
        placements=placements,
        records=tuple(records),
        league_tier=league_tier,
        group_index=group_index,
    )


def _adjusted_wins(standing: StageStanding, team_id: int, exclude_fourth: bool) -> int:
    """Win count for league-level comparison.

    In the 15-team league, matches against the fourth-placed team of the
    own group are discarded so every team is compared over four matches;
    fourth-placed teams themselves have nothing to discard.
    """
    position = standing.teams_in_order.index(team_id)
    raw = standing.placements[position][1]
    if not exclude_fourth or len(standing.placements) < 4:
        return raw
    fourth = standing.teams_in_order[3]
    if team_id == fourth:
        return raw
    discarded = sum(
        1
        for rec in standing.records
        if rec.winner == team_id and fourth in (rec.home, rec.away)
    )
    return raw - discarded


def league_ranking(
    tier: LeagueTier, standings: list[StageStanding], rng: RandomStream
) -> LeagueRanking:
    """Merge four group standings into the league's 1..n ranking.

    Group position dominates; equal positions compare by (adjusted) wins;
    remaining ties break uniformly at random.  Tie keys are drawn for every
    member in (group, position) order, again a fixed draw count.
    """
    if len(standings) != NUM_GROUPS_PER_LEAGUE:
        raise ValueError("a league ranking needs exactly four group standings")
    exclude_fourth = tier is LeagueTier.C
    candidates = []  # (position, -adjusted wins, key, team, is winner)
    for standing in standings:
        for position, (team, _) in enumerate(standing.placements):
            adj = _adjusted_wins(standing, team, exclude_fourth)
            key = rng.random()
            candidates.append((position, -adj, key, team, position == 0))
    candidates.sort(key=lambda c: (c[0], c[1], c[2]))
    entries = tuple(
        (team, rank + 1, is_winner)
        for rank, (_, _, _, team, is_winner) in enumerate(candidates)
    )
    return LeagueRanking(tier=tier, entries=entries)


def overall_ranking(rankings: dict[LeagueTier, LeagueRanking]) -> OverallRanking:
    """Concatenate the four league rankings into positions 1-55."""
    positions: list[int] = []
    for tier in LeagueTier:
        ranking = rankings[tier]
        if ranking.tier is not tier:
            raise ValueError("league rankings out of order")
        positions.extend(ranking.teams_in_order)
    if len(positions) != NUM_TEAMS:
        raise ValueError("overall ranking must cover all 55 teams")
    return OverallRanking(positions=tuple(positions))
