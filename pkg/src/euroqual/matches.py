"""Win expectancy and single-match sampling.

A match has exactly two outcomes.  The first-listed side wins with the
logistic probability 1 / (1 + 10^(-d / scale)), where d is the rating
difference plus the home bonus when it plays at home; otherwise the opponent
wins.  One uniform variate decides each match.
"""

from __future__ import annotations

from enum import Enum

from .rng import RandomStream
from .teams import MatchRecord, SimConfig, Team


class Venue(Enum):
    HOME_FIRST_LISTED = "home_first_listed"
    NEUTRAL = "neutral"


def win_expectancy(elo_a: float, elo_b: float, venue: Venue, cfg: SimConfig) -> float:
    """Probability that side a beats side b at the given venue.

    The bonus is added to side a's rating before differencing, so playing
    at home is bit-identical to being rated ``home_advantage`` higher.
    """
    if venue is Venue.HOME_FIRST_LISTED:
        elo_a = elo_a + cfg.home_advantage
    d = elo_a - elo_b
    return 1.0 / (1.0 + 10.0 ** (-d / cfg.rating_scale))


def sample_match(home: Team, away: Team, cfg: SimConfig, rng: RandomStream) -> MatchRecord:
    """Play one match with the first side at home; consumes one variate."""
    if home.id == away.id:
        raise ValueError("a team cannot play itself")
    p_home = win_expectancy(home.elo, away.elo, Venue.HOME_FIRST_LISTED, cfg)
    winner = home.id if rng.random() < p_home else away.id
    return MatchRecord(home=home.id, away=away.id, winner=winner)
