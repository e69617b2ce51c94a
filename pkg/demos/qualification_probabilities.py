"""Per-team qualification probabilities from a short Monte Carlo run.

Tallies direct and play-off qualification over 20,000 simulated seasons
(bump the iteration count for tighter estimates; a million runs in well
under a minute per worker core) and prints the resulting table grouped by
league tier, which makes the headline anomaly easy to spot: the top of the
bottom tier out-qualifies the bottom of the tier above it.
"""

from euroqual import LeagueTier, SimConfig, default_team_set, run_simulation

teams = default_team_set()
cfg = SimConfig(iterations=20_000)
report = run_simulation(teams, cfg)

print(f"{cfg.iterations} seasons, policy '{cfg.path_policy}', scale {cfg.rating_scale:g}\n")
print(f"{'team':24s} {'league':6s} {'rank':>4s} {'elo':>5s} {'direct':>8s} {'playoff':>8s} {'total':>8s}")
for tier in LeagueTier:
    members = [t for t in teams if t.league is tier]
    for t in sorted(members, key=lambda t: t.uefa_rank):
        d, p, total = report.of(t.name)
        print(
            f"{t.name:24s} {str(tier):6s} {t.uefa_rank:4d} {t.elo:5.0f} "
            f"{d:8.4f} {p:8.4f} {total:8.4f}"
        )
    print()

lith = report.of("Lithuania")[2]
azer = report.of("Azerbaijan")[2]
print(f"Boundary check: Lithuania (39th) {lith:.4f} vs Azerbaijan (40th) {azer:.4f}")
print("One rank lower, a different league tier, and a markedly better outlook.")
