"""Play-off team selection, path formation policies, and the knockout.

Sixteen teams that missed direct qualification contest four paths of four;
each path awards one berth through two semifinals and a final.  Path
composition follows one of three policies:

* ``regular``: each league's quota of four forms its own path, with
  substitution and cascading when a league runs short;
* ``random``: a uniform partition of the sixteen into four paths, with
  the drawn order doubling as the seeding;
* ``seeded``: quartiles of the sixteen act as pots, one per path.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .matches import sample_match
from .nations_league import LeagueRanking, OverallRanking
from .rng import RandomStream, shuffle_ints
from .teams import LeagueTier, MatchRecord, SimConfig, TeamSet, league_of_rank

NUM_ENTRANTS = 16
PATH_SIZE = 4


@dataclass(frozen=True)
class PlayoffEntrant:
    team: int
    source_league: LeagueTier  # league whose quota the team fills
    is_group_winner: bool
    overall_position: int  # 1-55

    @property
    def league(self) -> LeagueTier:
        """The team's own league, recovered from its overall position."""
        return league_of_rank(self.overall_position)


@dataclass(frozen=True)
class PlayoffPath:
    """Four entrants in seed order; the host semifinal is drawn just
    before play.

    The entrant order is the path's seeding: league and quartile paths
    list teams by overall position, while randomly formed paths keep the
    draw order, which is what makes that policy a genuinely blind draw.
    """

    entrants: tuple[PlayoffEntrant, ...]
    host_semifinal: int | None = None

    def __post_init__(self) -> None:
        if len(self.entrants) != PATH_SIZE:
            raise ValueError("a path holds exactly four entrants")


@dataclass(frozen=True)
class PathResult:
    path: PlayoffPath  # with host_semifinal filled in
    records: tuple[MatchRecord, ...]
    winner: int


def _donor_order(tier: LeagueTier) -> list[LeagueTier]:
    """Cascade order for a short quota: down the league ladder first, then
    back up from the lowest-ranked league with teams to spare."""
    below = [t for t in LeagueTier if t > tier]
    above = [t for t in reversed(LeagueTier) if t < tier]
    return below + above


def select_playoff_teams(
    overall: OverallRanking,
    league_rankings: dict[LeagueTier, LeagueRanking],
    direct_qualifiers: list[int],
    rng: RandomStream,
) -> list[PlayoffEntrant]:
    """Fill each league's quota of four from its non-qualified teams.

    League-ranking order puts group winners first, so every available group
    winner claims a slot before any substitute.  A league with fewer than
    four teams left borrows from other leagues in cascade order.  The
    selection itself is deterministic; ``rng`` is part of the stage
    signature but unused.
    """
    del rng
    if len(direct_qualifiers) != 20:
        raise ValueError(f"expected 20 direct qualifiers, got {len(direct_qualifiers)}")
    qualified = set(direct_qualifiers)

    def entrant(team: int, source: LeagueTier) -> PlayoffEntrant:
        own = league_of_rank(overall.position_of(team))
        gw = team in league_rankings[own].group_winners()
        return PlayoffEntrant(
            team=team,
            source_league=source,
            is_group_winner=gw,
            overall_position=overall.position_of(team),
        )

    pools = {
        tier: [t for t in league_rankings[tier].teams_in_order if t not in qualified]
        for tier in LeagueTier
    }
    quotas: dict[LeagueTier, list[PlayoffEntrant]] = {}
    spares: dict[LeagueTier, list[int]] = {}
    for tier in LeagueTier:
        own = pools[tier][:PATH_SIZE]
        quotas[tier] = [entrant(t, tier) for t in own]
        spares[tier] = pools[tier][PATH_SIZE:]

    for tier in LeagueTier:
        need = PATH_SIZE - len(quotas[tier])
        for donor in _donor_order(tier):
            while need > 0 and spares[donor]:
                quotas[tier].append(entrant(spares[donor].pop(0), tier))
                need -= 1
            if need == 0:
                break
        if need > 0:
            raise AssertionError("fewer than 16 teams available for the play-offs")

    entrants = [e for tier in LeagueTier for e in quotas[tier]]
    assert len(entrants) == NUM_ENTRANTS
    return entrants


def _count_blocked_winners(paths: list[list[PlayoffEntrant]]) -> int:
    """Group winners sharing a path with a team from a higher-ranked league."""
    blocked = 0
    for path in paths:
        for e in path:
            if e.is_group_winner and any(o.league < e.league for o in path if o is not e):
                blocked += 1
    return blocked


def _seeded_path(entrants: list[PlayoffEntrant], host: int | None = None) -> PlayoffPath:
    ordered = tuple(sorted(entrants, key=lambda e: e.overall_position))
    return PlayoffPath(entrants=ordered, host_semifinal=host)


def form_paths_regular(
    entrants: list[PlayoffEntrant], rng: RandomStream
) -> list[PlayoffPath]:
    """Each league quota becomes its own path.

    When cascading mixed leagues into a quota, the borrowed entrants are
    spread over the short slots uniformly at random; if the resulting
    arrangement traps a group winner with a higher-league team, pairwise
    swaps of borrowed entrants reduce the number of trapped winners to the
    minimum the slots allow.
    """
    quotas = {tier: [e for e in entrants if e.source_league == tier] for tier in LeagueTier}
    if any(len(q) != PATH_SIZE for q in quotas.values()):
        raise ValueError("entrants must carry four entrants per source league")

    cascaded = [e for e in entrants if e.league != e.source_league]
    if not cascaded:
        return [_seeded_path(quotas[tier]) for tier in LeagueTier]

    cores = {
        tier: [e for e in quotas[tier] if e.league == e.source_league] for tier in LeagueTier
    }
    slots = [e.source_league for e in cascaded]
    order = list(range(len(cascaded)))
    shuffle_ints(rng, order)
    assigned = [cascaded[i] for i in order]

    def build(assignment: list[PlayoffEntrant]) -> list[list[PlayoffEntrant]]:
        filled = {tier: list(cores[tier]) for tier in LeagueTier}
        for slot_tier, e in zip(slots, assignment):
            filled[slot_tier].append(e)
        return [filled[tier] for tier in LeagueTier]

    # Greedy pairwise repair; almost always a no-op because borrowed teams
    # are never group winners and normally come from lower leagues.
    blocked = _count_blocked_winners(build(assigned))
    while blocked > 0:
        best_delta, best_pair = 0, None
        for i in range(len(assigned)):
            for j in range(i + 1, len(assigned)):
                if slots[i] == slots[j]:
                    continue
                assigned[i], assigned[j] = assigned[j], assigned[i]
                delta = _count_blocked_winners(build(assigned)) - blocked
                assigned[i], assigned[j] = assigned[j], assigned[i]
                if delta < best_delta:
                    best_delta, best_pair = delta, (i, j)
        if best_pair is None:
            break
        i, j = best_pair
        assigned[i], assigned[j] = assigned[j], assigned[i]
        blocked += best_delta

    return [_seeded_path(path) for path in build(assigned)]


def form_paths_random(entrants: list[PlayoffEntrant], rng: RandomStream) -> list[PlayoffPath]:
    """Partition the sixteen entrants into four paths uniformly at random.

    The drawn order inside each path is kept as the seeding, so matchups
    and semifinal hosting are random too, not ranking-driven.
    """
    if len(entrants) != NUM_ENTRANTS:
        raise ValueError("path formation needs exactly 16 entrants")
    order = list(range(NUM_ENTRANTS))
    shuffle_ints(rng, order)
    return [
        PlayoffPath(entrants=tuple(entrants[i] for i in order[k : k + PATH_SIZE]))
        for k in range(0, NUM_ENTRANTS, PATH_SIZE)
    ]


def form_paths_seeded(entrants: list[PlayoffEntrant], rng: RandomStream) -> list[PlayoffPath]:
    """Quartiles of the sixteen act as pots; every path draws one per pot."""
    if len(entrants) != NUM_ENTRANTS:
        raise ValueError("path formation needs exactly 16 entrants")
    ordered = sorted(entrants, key=lambda e: e.overall_position)
    paths: list[list[PlayoffEntrant]] = [[] for _ in range(PATH_SIZE)]
    for pot_start in range(0, NUM_ENTRANTS, PATH_SIZE):
        pot = ordered[pot_start : pot_start + PATH_SIZE]
        slots = list(range(PATH_SIZE))
        shuffle_ints(rng, slots)
        for member, slot in zip(pot, slots):
            paths[slot].append(member)
    return [_seeded_path(path) for path in paths]


def form_paths(
    entrants: list[PlayoffEntrant], policy: str, rng: RandomStream
) -> list[PlayoffPath]:
    if policy == "regular":
        return form_paths_regular(entrants, rng)
    if policy == "random":
        return form_paths_random(entrants, rng)
    if policy == "seeded":
        return form_paths_seeded(entrants, rng)
    raise ValueError(f"unknown path policy: {policy!r}")


def play_path(
    path: PlayoffPath, teams: TeamSet, cfg: SimConfig, rng: RandomStream
) -> PathResult:
    """Play one path: host draw, two semifinals, final; returns the winner.

    In the path's seed order, seed 1 hosts seed 4 and seed 2 hosts seed 3;
    the final is hosted by the winner of the semifinal drawn in advance,
    with the full home bonus.  Consumes one host draw plus three match
    variates.
    """
    s1, s2, s3, s4 = (teams[e.team] for e in path.entrants)
    host_semifinal = 1 + int(rng.integers(0, 2))
    sf1 = sample_match(s1, s4, cfg, rng)
    sf2 = sample_match(s2, s3, cfg, rng)
    w1 = teams[sf1.winner]
    w2 = teams[sf2.winner]
    home, away = (w1, w2) if host_semifinal == 1 else (w2, w1)
    final = sample_match(home, away, cfg, rng)
    return PathResult(
        path=replace(path, host_semifinal=host_semifinal),
        records=(sf1, sf2, final),
        winner=final.winner,
    )
