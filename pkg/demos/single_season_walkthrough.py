"""One simulated season, stage by stage.

Follows a single universe through the whole qualification pipeline: the
league-tier season (group draws, double round robins, league rankings, the
overall 1-55 ranking), the ten-group qualifying stage with its twenty direct
berths, and the four play-off paths that award the last four places.
"""

from euroqual import LeagueTier, SimConfig, default_team_set, make_stream
from euroqual.nations_league import (
    allocate_leagues,
    draw_nl_groups,
    league_ranking,
    overall_ranking,
    play_group,
    rank_group,
)
from euroqual.playoffs import form_paths, play_path, select_playoff_teams
from euroqual.qualifiers import draw_q_groups, form_pots, play_qualifiers

teams = default_team_set()
cfg = SimConfig()
rng = make_stream(cfg.master_seed, 0)

name = lambda t: teams[t].name  # noqa: E731

print("=== League-tier season ===")
leagues = allocate_leagues(teams)
groups = {tier: draw_nl_groups(leagues[tier], rng) for tier in LeagueTier}
standings = {}
for tier in LeagueTier:
    tier_standings = []
    for group in groups[tier]:
        records = play_group(group.members, teams, cfg, rng)
        standing = rank_group(group.members, records, rng, tier, group.group_index)
        tier_standings.append(standing)
    standings[tier] = tier_standings

for tier in LeagueTier:
    winners = ", ".join(name(s.teams_in_order[0]) for s in standings[tier])
    print(f"League {tier} group winners: {winners}")

rankings = {tier: league_ranking(tier, standings[tier], rng) for tier in LeagueTier}
overall = overall_ranking(rankings)
print("\nTop of the overall ranking:", ", ".join(name(t) for t in overall.positions[:6]))
print("Positions 40-43 (the 16-team league's winners):",
      ", ".join(name(t) for t in overall.positions[39:43]))

print("\n=== Qualifying group stage ===")
pots = form_pots(overall)
qgroups = draw_q_groups(pots, rng)
q_standings, direct = play_qualifiers(qgroups, teams, cfg, rng)
for group, standing in zip(qgroups, q_standings):
    top_two = standing.teams_in_order[:2]
    print(f"Group {group.label}: {name(top_two[0])} and {name(top_two[1])} qualify")
print(f"\n{len(direct)} direct qualifiers in total")

print("\n=== Play-offs ===")
entrants = select_playoff_teams(overall, rankings, direct, rng)
paths = form_paths(entrants, cfg.path_policy, rng)
for label, path in zip("ABCD", paths):
    listed = ", ".join(
        f"{name(e.team)}{' (GW)' if e.is_group_winner else ''}" for e in path.entrants
    )
    result = play_path(path, teams, cfg, rng)
    print(f"Path {label}: {listed}")
    print(f"  -> berth goes to {name(result.winner)}")

print("\nThat's 24 qualifiers: 20 through the groups, 4 through the play-offs.")
