"""A look at the match model.

Every match in the simulator is decided by a single draw against a logistic
win-expectancy curve: a side rated d points higher wins with probability
1 / (1 + 10^(-d / scale)), and playing at home is worth a flat rating bonus.
This script walks the curve and shows what the bonus does to a few real
pairings.
"""

from euroqual import SimConfig, Venue, default_team_set, win_expectancy

cfg = SimConfig()
teams = default_team_set()

print("The logistic curve at scale 400 (neutral venue):")
for d in (0, 50, 100, 200, 400, 800):
    p = win_expectancy(1500 + d, 1500, Venue.NEUTRAL, cfg)
    print(f"  rating edge {d:+4d} -> win probability {p:.3f}")

print()
print("Selected pairings from the bundled dataset:")
pairings = [
    ("Germany", "Croatia"),
    ("Germany", "Bulgaria"),
    ("Netherlands", "Austria"),
    ("Lithuania", "Azerbaijan"),
    ("San Marino", "Germany"),
]
for home, away in pairings:
    h, a = teams.by_name(home), teams.by_name(away)
    neutral = win_expectancy(h.elo, a.elo, Venue.NEUTRAL, cfg)
    at_home = win_expectancy(h.elo, a.elo, Venue.HOME_FIRST_LISTED, cfg)
    print(
        f"  {home:12s} ({h.elo:.0f}) vs {away:12s} ({a.elo:.0f}): "
        f"neutral {neutral:.3f}, at home {at_home:.3f}"
    )

print()
print("A flatter curve makes every match closer to a coin flip:")
for scale in (400, 600, 800, 1200):
    wide = SimConfig(rating_scale=float(scale))
    p = win_expectancy(2109, 1620, Venue.NEUTRAL, wide)
    print(f"  scale {scale:4d}: strongest vs 30th-ranked -> {p:.3f}")
