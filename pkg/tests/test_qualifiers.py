"""Seeding pots, the ten-group draw, and direct qualification."""

import collections

import pytest

from euroqual.nations_league import OverallRanking
from euroqual.qualifiers import (
    GROUP_SIZES,
    draw_q_groups,
    form_pots,
    play_qualifiers,
)
from euroqual.rng import make_stream
from euroqual.teams import SimConfig, default_team_set

CFG = SimConfig()


@pytest.fixture(scope="module")
def teams():
    return default_team_set()


@pytest.fixture(scope="module")
def identity_overall():
    # Overall position i+1 held by team id i: fine for draw mechanics tests.
    return OverallRanking(positions=tuple(range(55)))


class TestFormPots:
    def test_band_examples(self, identity_overall):
        pots = form_pots(identity_overall)
        assert identity_overall.positions[0] in pots.unl  # position 1
        assert identity_overall.positions[39] in pots.pot4  # position 40
        assert identity_overall.positions[54] in pots.pot6  # position 55

    def test_sizes_and_partition(self, identity_overall):
        pots = form_pots(identity_overall)
        sizes = [len(p) for p in pots.as_dict().values()]
        assert sizes == [4, 6, 10, 10, 10, 10, 5]
        everyone = [t for p in pots.as_dict().values() for t in p]
        assert sorted(everyone) == list(range(55))

    def test_deterministic_in_ranking(self, identity_overall):
        assert form_pots(identity_overall) == form_pots(identity_overall)


class TestDrawGroups:
    def test_group_sizes(self, identity_overall):
        pots = form_pots(identity_overall)
        rng = make_stream(20, 0)
        for _ in range(100):
            groups = draw_q_groups(pots, rng)
            assert [len(g.members) for g in groups] == list(GROUP_SIZES)

    def test_top_pot_confined_to_small_groups(self, identity_overall):
        pots = form_pots(identity_overall)
        rng = make_stream(21, 0)
        for _ in range(300):
            groups = draw_q_groups(pots, rng)
            for g in groups:
                if g.label in "EFGHIJ":
                    assert not set(pots.unl) & set(g.members)

    def test_every_draw_partitions_all_teams(self, identity_overall):
        pots = form_pots(identity_overall)
        groups = draw_q_groups(pots, make_stream(22, 0))
        everyone = [t for g in groups for t in g.members]
        assert sorted(everyone) == list(range(55))

    def test_per_group_pot_composition(self, identity_overall):
        # A-D: top pot plus pots 2-5; E: pots 1-5; F-J: pots 1-6.
        pots = form_pots(identity_overall)
        by_pot = pots.as_dict()
        expected = {}
        for label in "ABCD":
            expected[label] = ["unl", "pot2", "pot3", "pot4", "pot5"]
        expected["E"] = ["pot1", "pot2", "pot3", "pot4", "pot5"]
        for label in "FGHIJ":
            expected[label] = ["pot1", "pot2", "pot3", "pot4", "pot5", "pot6"]
        rng = make_stream(26, 0)
        for _ in range(200):
            for g in draw_q_groups(pots, rng):
                members = set(g.members)
                composition = [
                    name for name, pot in by_pot.items() if members & set(pot)
                ]
                assert composition == expected[g.label]
                assert all(
                    len(members & set(by_pot[name])) == 1 for name in composition
                )

    def test_pot2_assignment_uniform(self, identity_overall):
        # A fixed pot-2 team lands in each of the ten groups equally often.
        pots = form_pots(identity_overall)
        fixed = pots.pot2[0]
        rng = make_stream(23, 0)
        n = 100_000
        hits = collections.Counter()
        for _ in range(n):
            groups = draw_q_groups(pots, rng)
            for g in groups:
                if fixed in g.members:
                    hits[g.label] += 1
                    break
        assert len(hits) == 10
        for label, count in hits.items():
            assert count / n == pytest.approx(0.1, abs=0.01)


class TestPlayQualifiers:
    def test_twenty_distinct_direct_qualifiers(self, teams, identity_overall):
        pots = form_pots(identity_overall)
        for k in range(30):
            rng = make_stream(24, k)
            groups = draw_q_groups(pots, rng)
            standings, direct = play_qualifiers(groups, teams, CFG, rng)
            assert len(direct) == 20
            assert len(set(direct)) == 20
            # Two per group, drawn from that group's members.
            for g, standing in zip(groups, standings):
                top_two = standing.teams_in_order[:2]
                assert set(top_two) <= set(g.members)
                assert len([t for t in direct if t in g.members]) == 2

    def test_match_count_is_250(self, teams, identity_overall):
        pots = form_pots(identity_overall)
        rng = make_stream(25, 0)
        groups = draw_q_groups(pots, rng)
        standings, _ = play_qualifiers(groups, teams, CFG, rng)
        total = sum(len(s.records) for s in standings)
        assert total == 250
        five = [len(s.records) for g, s in zip(groups, standings) if len(g.members) == 5]
        assert five == [20] * 5
