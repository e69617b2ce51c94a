"""The qualifying group stage: seeding pots from the overall ranking, the
ten-group draw, double round-robin play, and the twenty direct qualifiers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .nations_league import OverallRanking, StageStanding, play_group, rank_group
from .rng import RandomStream, shuffle_ints
from .teams import MatchRecord, SimConfig, TeamSet

GROUP_LABELS = tuple("ABCDEFGHIJ")
GROUP_SIZES = (5, 5, 5, 5, 5, 6, 6, 6, 6, 6)

# Pot bands over overall positions (1-based, inclusive).
POT_BANDS: tuple[tuple[str, int, int], ...] = (
    ("unl", 1, 4),
    ("pot1", 5, 10),
    ("pot2", 11, 20),
    ("pot3", 21, 30),
    ("pot4", 31, 40),
    ("pot5", 41, 50),
    ("pot6", 51, 55),
)

# Which groups each pot feeds (group indices 0-9 = labels A-J).  The four
# best teams are confined to the five-team groups A-D; pot 1 fills the
# remaining first slots, pot 6 tops up the six-team groups F-J.
POT_ELIGIBLE_GROUPS: dict[str, tuple[int, ...]] = {
    "unl": (0, 1, 2, 3),
    "pot1": (4, 5, 6, 7, 8, 9),
    "pot2": tuple(range(10)),
    "pot3": tuple(range(10)),
    "pot4": tuple(range(10)),
    "pot5": tuple(range(10)),
    "pot6": (5, 6, 7, 8, 9),
}


@dataclass(frozen=True)
class QualifierPots:
    unl: tuple[int, ...]
    pot1: tuple[int, ...]
    pot2: tuple[int, ...]
    pot3: tuple[int, ...]
    pot4: tuple[int, ...]
    pot5: tuple[int, ...]
    pot6: tuple[int, ...]

    def as_dict(self) -> dict[str, tuple[int, ...]]:
        return {
            "unl": self.unl,
            "pot1": self.pot1,
            "pot2": self.pot2,
            "pot3": self.pot3,
            "pot4": self.pot4,
            "pot5": self.pot5,
            "pot6": self.pot6,
        }


@dataclass(frozen=True)
class QGroup:
    label: str
    members: tuple[int, ...]  # team ids, ascending overall position


def form_pots(overall: OverallRanking) -> QualifierPots:
    """Cut the overall ranking into the seven seeding pots."""
    slices = {}
    for name, lo, hi in POT_BANDS:
        slices[name] = tuple(overall.positions[lo - 1 : hi])
    return QualifierPots(**slices)


def draw_q_groups(pots: QualifierPots, rng: RandomStream) -> list[QGroup]:
    """Assign every pot across its eligible groups uniformly at random.

    Pots are drawn in band order; each draw shuffles the pot's eligible
    group slots and places the pot members (in ranking order) on the first
    slots.  Host/clash/winter/travel restrictions are deliberately absent
    from this model.
    """
    group_members: list[list[int]] = [[] for _ in GROUP_LABELS]
    for name, members in pots.as_dict().items():
        eligible = list(POT_ELIGIBLE_GROUPS[name])
        if len(members) > len(eligible):
            raise ValueError(f"pot {name} has more members than eligible groups")
        shuffle_ints(rng, eligible)
        for member, slot in zip(members, eligible):
            group_members[slot].append(member)
    groups = []
    for idx, label in enumerate(GROUP_LABELS):
        members = group_members[idx]
        if len(members) != GROUP_SIZES[idx]:
            raise ValueError(f"group {label} drew {len(members)} teams")
        groups.append(QGroup(label=label, members=tuple(members)))
    return groups


def play_qualifiers(
    groups: list[QGroup], teams: TeamSet, cfg: SimConfig, rng: RandomStream
) -> tuple[list[StageStanding], list[int]]:
    """Play all ten groups and collect the top two of each.

    Groups are played in label order, each fully played then ranked, so the
    draw schedule is reproducible.
    """
    standings = []
    direct: list[int] = []
    for group in groups:
        records = play_group(group.members, teams, cfg, rng)
        standing = rank_group(group.members, records, rng)
        standings.append(standing)
        direct.extend(standing.teams_in_order[:2])
    return standings, direct
