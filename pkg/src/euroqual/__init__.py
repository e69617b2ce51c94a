"""Monte Carlo simulator of the UEFA Euro 2020 qualification pipeline.

Simulates the full road to the tournament: the 2018-19 Nations League
season, the qualifying group stage, and the qualifying play-offs, under
three play-off path-formation policies.  All randomness flows through
deterministic per-iteration substreams, so every run is reproducible.
"""

from .engine import (
    CounterfactualResult,
    IterationOutcome,
    ProbabilityReport,
    run_counterfactual,
    run_iteration,
    run_iteration_reference,
    run_sensitivity,
    run_simulation,
)
from .matches import Venue, sample_match, win_expectancy
from .rng import make_stream
from .teams import (
    LeagueTier,
    MatchRecord,
    SimConfig,
    Team,
    TeamSet,
    apply_counterfactual,
    build_team_set,
    default_team_set,
    load_team_table,
)

__version__ = "0.1.0"

__all__ = [
    "CounterfactualResult",
    "IterationOutcome",
    "LeagueTier",
    "MatchRecord",
    "ProbabilityReport",
    "SimConfig",
    "Team",
    "TeamSet",
    "Venue",
    "apply_counterfactual",
    "build_team_set",
    "default_team_set",
    "load_team_table",
    "make_stream",
    "run_counterfactual",
    "run_iteration",
    "run_iteration_reference",
    "run_sensitivity",
    "run_simulation",
    "sample_match",
    "win_expectancy",
    "__version__",
]
