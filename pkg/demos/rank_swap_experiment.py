"""Counterfactual rank swaps and the three path-formation policies.

Measures what a single position in the pre-season ranking is worth by
swapping a boundary team with its neighbour and re-running the whole
pipeline, then repeats the experiment under the random and seeded play-off
path policies to show how much of the anomaly each one removes.
"""

from dataclasses import replace

from euroqual import SimConfig, default_team_set, run_counterfactual

teams = default_team_set()
base = SimConfig(iterations=50_000)
subject = teams.by_name("Lithuania")

print(f"Swapping {subject.name} from rank {subject.uefa_rank} to rank 40")
print(f"({base.iterations} seasons per scenario)\n")

for policy in ("regular", "random", "seeded"):
    cfg = replace(base, path_policy=policy)
    result = run_counterfactual(teams, cfg, subject.id, 40)
    s = result.subject_summary()
    ratio = s["hypothetical_total"] / s["actual_total"]
    print(f"policy '{policy}':")
    print(
        f"  at rank 39: direct {s['actual_direct']:.4f} + playoff {s['actual_playoff']:.4f}"
        f" = {s['actual_total']:.4f}"
    )
    print(
        f"  at rank 40: direct {s['hypothetical_direct']:.4f} + playoff {s['hypothetical_playoff']:.4f}"
        f" = {s['hypothetical_total']:.4f}"
    )
    print(f"  being ranked one place WORSE multiplies the chance by {ratio:.2f}\n")

print("The guaranteed bottom-tier play-off path drives the regular-policy jump;")
print("random mixing shrinks it, and quartile-seeded paths all but remove it.")
