"""League allocation, group draws, round-robin play, and rankings."""

import collections
import itertools

import pytest

from euroqual.nations_league import (
    LEAGUE_POT_SIZES,
    League,
    NLGroup,
    StageStanding,
    allocate_leagues,
    draw_nl_groups,
    league_ranking,
    overall_ranking,
    play_group,
    rank_group,
)
from euroqual.rng import make_stream
from euroqual.teams import LeagueTier, MatchRecord, SimConfig, default_team_set

CFG = SimConfig()


@pytest.fixture(scope="module")
def teams():
    return default_team_set()


@pytest.fixture(scope="module")
def leagues(teams):
    return allocate_leagues(teams)


def records_with_winners(members, winners_by_pair):
    """Build a double round robin where each unordered pair's winner is fixed."""
    records = []
    for i, j in itertools.permutations(range(len(members)), 2):
        a, b = members[i], members[j]
        records.append(MatchRecord(home=a, away=b, winner=winners_by_pair[frozenset((a, b))]))
    return records


class TestAllocateLeagues:
    def test_band_examples(self, teams, leagues):
        assert teams.by_rank(12).id in leagues[LeagueTier.A].members  # Netherlands
        assert teams.by_rank(25).id in leagues[LeagueTier.C].members  # Hungary
        assert teams.by_rank(40).id in leagues[LeagueTier.D].members  # Azerbaijan

    def test_sizes_and_contiguity(self, teams, leagues):
        sizes = {t: len(l.members) for t, l in leagues.items()}
        assert sizes == {
            LeagueTier.A: 12,
            LeagueTier.B: 12,
            LeagueTier.C: 15,
            LeagueTier.D: 16,
        }
        ranks = [teams[m].uefa_rank for m in leagues[LeagueTier.C].members]
        assert ranks == list(range(25, 40))


class TestDrawGroups:
    def test_one_team_per_pot_in_each_group(self, teams, leagues):
        rng = make_stream(1, 0)
        for _ in range(50):
            groups = draw_nl_groups(leagues[LeagueTier.A], rng)
            for pot_lo, pot_hi in ((1, 4), (5, 8), (9, 12)):
                pot_ids = {teams.by_rank(r).id for r in range(pot_lo, pot_hi + 1)}
                for g in groups:
                    assert len(pot_ids & set(g.members)) == 1

    def test_league_c_has_exactly_one_group_of_three(self, leagues):
        rng = make_stream(2, 0)
        for _ in range(200):
            groups = draw_nl_groups(leagues[LeagueTier.C], rng)
            sizes = sorted(len(g.members) for g in groups)
            assert sizes == [3, 4, 4, 4]

    def test_group_sizes_a_b_d(self, leagues):
        rng = make_stream(3, 0)
        for tier, expect in ((LeagueTier.A, [3, 3, 3, 3]), (LeagueTier.D, [4, 4, 4, 4])):
            groups = draw_nl_groups(leagues[tier], rng)
            assert sorted(len(g.members) for g in groups) == expect

    def test_pot1_group_assignment_uniform_league_d(self, teams, leagues):
        # Each (pot-1 team, group) pairing should occur a quarter of the time.
        rng = make_stream(4, 0)
        n = 100_000
        hits = collections.Counter()
        pot1 = [teams.by_rank(r).id for r in range(40, 44)]
        for _ in range(n):
            groups = draw_nl_groups(leagues[LeagueTier.D], rng)
            for g in groups:
                for t in pot1:
                    if t in g.members:
                        hits[(t, g.group_index)] += 1
        assert len(hits) == 16
        for count in hits.values():
            assert count / n == pytest.approx(0.25, abs=0.01)


class TestPlayGroup:
    @pytest.mark.parametrize("n,expected", [(3, 6), (4, 12), (6, 30)])
    def test_match_counts(self, teams, n, expected):
        members = tuple(range(n))
        rng = make_stream(5, n)
        records = play_group(members, teams, CFG, rng)
        assert len(records) == expected

    def test_each_ordered_pair_once_each_team_plays_double(self, teams):
        members = (10, 11, 12, 13)
        records = play_group(members, teams, CFG, make_stream(6, 0))
        pairs = [(r.home, r.away) for r in records]
        assert sorted(pairs) == sorted(itertools.permutations(members, 2))
        appearances = collections.Counter()
        for r in records:
            appearances[r.home] += 1
            appearances[r.away] += 1
        assert all(count == 6 for count in appearances.values())


class TestRankGroup:
    def test_strict_order_is_fixed(self):
        members = (0, 1, 2)
        # 0 beats everyone, 1 beats 2: wins 4, 2, 0.
        winners = {
            frozenset((0, 1)): 0,
            frozenset((0, 2)): 0,
            frozenset((1, 2)): 1,
        }
        records = records_with_winners(members, winners)
        for k in range(20):
            standing = rank_group(members, records, make_stream(7, k))
            assert standing.placements == ((0, 4), (1, 2), (2, 0))

    def test_four_team_strict_order(self):
        members = (0, 1, 2, 3)
        winners = {frozenset((i, j)): min(i, j) for i, j in itertools.combinations(range(4), 2)}
        standing = rank_group(members, records_with_winners(members, winners), make_stream(8, 0))
        assert [w for _, w in standing.placements] == [6, 4, 2, 0]
        assert standing.teams_in_order == (0, 1, 2, 3)

    def test_three_way_tie_resolves_uniformly(self):
        members = (0, 1, 2)
        # A cycle: 0 beats 1, 1 beats 2, 2 beats 0 (both legs): 2 wins each.
        winners = {
            frozenset((0, 1)): 0,
            frozenset((1, 2)): 1,
            frozenset((0, 2)): 2,
        }
        records = records_with_winners(members, winners)
        rng = make_stream(9, 0)
        n = 100_000
        firsts = collections.Counter(
            rank_group(members, records, rng).teams_in_order[0] for _ in range(n)
        )
        for t in members:
            assert firsts[t] / n == pytest.approx(1 / 3, abs=0.01)

    def test_incomplete_records_rejected(self):
        members = (0, 1, 2)
        winners = {
            frozenset((0, 1)): 0,
            frozenset((1, 2)): 1,
            frozenset((0, 2)): 2,
        }
        records = records_with_winners(members, winners)[:-1]
        with pytest.raises(ValueError, match="expected 6 records"):
            rank_group(members, records, make_stream(10, 0))


def standing_from_results(members, winners_by_pair, rng, tier=None, index=None):
    records = records_with_winners(members, winners_by_pair)
    return rank_group(members, records, rng, tier, index)


def sweep_winners(members):
    """Lower-numbered member beats higher-numbered: strict order, no ties."""
    return {
        frozenset((a, b)): min(a, b) for a, b in itertools.combinations(members, 2)
    }


class TestLeagueRanking:
    def build_standings(self, tier, groups_members):
        rng = make_stream(11, 0)
        return [
            standing_from_results(m, sweep_winners(m), rng, tier, i + 1)
            for i, m in enumerate(groups_members)
        ]

    def test_position_major_with_distinct_wins(self):
        # Four 3-team groups; winners all sweep (4 wins), so winner order is
        # random, but every winner precedes every runner-up.
        groups = [(0, 1, 2), (3, 4, 5), (6, 7, 8), (9, 10, 11)]
        standings = self.build_standings(LeagueTier.B, groups)
        ranking = league_ranking(LeagueTier.B, standings, make_stream(12, 0))
        winners = {g[0] for g in groups}
        assert set(ranking.teams_in_order[:4]) == winners
        assert ranking.group_winners() == tuple(sorted(winners, key=ranking.teams_in_order.index))
        positions = {team: pos for team, pos, _ in ranking.entries}
        assert all(positions[g[1]] in range(5, 9) for g in groups)

    def test_league_d_compares_raw_wins(self):
        # Group 1 winner sweeps a 4-group (6 wins); group 2 winner drops one
        # leg and finishes on 5.  No exclusion applies outside the 15-team
        # league, so 6 wins must precede 5 in every resolution.
        g1 = (0, 1, 2, 3)
        g2 = (4, 5, 6, 7)
        per_leg = {
            (4, 5): 4, (5, 4): 5,  # the dropped leg
            (4, 6): 4, (6, 4): 4,
            (4, 7): 4, (7, 4): 4,
            (5, 6): 6, (6, 5): 6,
            (5, 7): 7, (7, 5): 7,
            (6, 7): 6, (7, 6): 7,
        }
        g2_records = [
            MatchRecord(home=h, away=a, winner=w) for (h, a), w in per_leg.items()
        ]
        g3 = (8, 9, 10, 11)
        g4 = (12, 13, 14, 15)
        rng = make_stream(13, 0)
        standings = [
            standing_from_results(g1, sweep_winners(g1), rng, LeagueTier.D, 1),
            rank_group(g2, g2_records, make_stream(13, 1), LeagueTier.D, 2),
            standing_from_results(g3, sweep_winners(g3), rng, LeagueTier.D, 3),
            standing_from_results(g4, sweep_winners(g4), rng, LeagueTier.D, 4),
        ]
        assert standings[1].placements[0] == (4, 5)
        for k in range(30):
            ranking = league_ranking(LeagueTier.D, standings, make_stream(14, k))
            order = ranking.teams_in_order
            assert order.index(0) < order.index(4)

    def test_league_c_exclusion_forces_tie(self):
        # 3-group winner with 4 wins vs 4-group sweeper: 6 raw wins but two
        # of them against its fourth-placed team, so adjusted 4 vs 4.
        three = (0, 1, 2)
        four = (3, 4, 5, 6)
        rest1 = (7, 8, 9, 10)
        rest2 = (11, 12, 13)
        rng = make_stream(15, 0)
        standings = [
            standing_from_results(three, sweep_winners(three), rng, LeagueTier.C, 1),
            standing_from_results(four, sweep_winners(four), rng, LeagueTier.C, 2),
            standing_from_results(rest1, sweep_winners(rest1), rng, LeagueTier.C, 3),
            standing_from_results(rest2, sweep_winners(rest2), rng, LeagueTier.C, 4),
        ]
        n = 40_000
        team0_first = 0
        for k in range(n):
            ranking = league_ranking(LeagueTier.C, standings, make_stream(16, k))
            order = ranking.teams_in_order
            # Both sweepers (0 from the 3-group, 3 from the 4-group) carry
            # adjusted 4; 7 and 11 sweep too, so all four winners tie.
            if order.index(0) < order.index(3):
                team0_first += 1
        assert team0_first / n == pytest.approx(0.5, abs=0.01)

    def test_league_c_adjusted_wins_bounded(self, teams, leagues):
        # Property: every adjusted comparison count stays within 0..4.
        from euroqual.nations_league import _adjusted_wins

        for k in range(60):
            rng = make_stream(17, k)
            groups = draw_nl_groups(leagues[LeagueTier.C], rng)
            for g in groups:
                records = play_group(g.members, teams, CFG, rng)
                standing = rank_group(g.members, records, rng, g.league_tier, g.group_index)
                for team in g.members:
                    adj = _adjusted_wins(standing, team, exclude_fourth=True)
                    assert 0 <= adj <= 4


class TestOverallRanking:
    def run_season_rankings(self, teams, leagues, seed):
        rng = make_stream(18, seed)
        rankings = {}
        for tier in LeagueTier:
            standings = []
            for g in draw_nl_groups(leagues[tier], rng):
                records = play_group(g.members, teams, CFG, rng)
                standings.append(rank_group(g.members, records, rng, tier, g.group_index))
            rankings[tier] = league_ranking(tier, standings, rng)
        return rankings

    def test_block_structure_and_winner_flags(self, teams, leagues):
        for seed in range(25):
            rankings = self.run_season_rankings(teams, leagues, seed)
            overall = overall_ranking(rankings)
            assert sorted(overall.positions) == list(range(55))
            # League blocks: A 1-12, B 13-24, C 25-39, D 40-55.
            for pos_lo, pos_hi, tier in (
                (1, 12, LeagueTier.A),
                (13, 24, LeagueTier.B),
                (25, 39, LeagueTier.C),
                (40, 55, LeagueTier.D),
            ):
                for pos in range(pos_lo, pos_hi + 1):
                    team = teams[overall.positions[pos - 1]]
                    assert team.league is tier
            # Group winners head each block: best D winner sits at 40.
            winners = rankings[LeagueTier.D].group_winners()
            assert set(overall.positions[39:43]) == set(winners)
            b_ranking = rankings[LeagueTier.B].teams_in_order
            assert tuple(overall.positions[16:20]) == b_ranking[4:8]

    def test_match_count_conservation(self, teams, leagues):
        total = 0
        rng = make_stream(19, 0)
        for tier in LeagueTier:
            for g in draw_nl_groups(leagues[tier], rng):
                total += len(play_group(g.members, teams, CFG, rng))
        assert total == 138
