"""Team set construction, rank swaps, and the team-file loader."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from euroqual.teams import (
    LeagueTier,
    NUM_TEAMS,
    SimConfig,
    apply_counterfactual,
    build_team_set,
    default_team_set,
    league_of_rank,
    load_team_table,
)


def synthetic_records(n=NUM_TEAMS):
    return [(f"Team{r:02d}", r, 1000.0 + r) for r in range(1, n + 1)]


class TestBuildTeamSet:
    def test_reference_dataset_anchor_values(self):
        teams = default_team_set()
        germany = teams.by_name("Germany")
        assert germany.uefa_rank == 1 and germany.elo == 2109
        assert teams.by_name("San Marino").elo == 852
        assert teams.by_name("Lithuania").uefa_rank == 39
        assert teams.by_name("Azerbaijan").uefa_rank == 40

    def test_ids_assigned_in_rank_order(self):
        records = list(reversed(synthetic_records()))
        teams = build_team_set(records)
        for i, team in enumerate(teams):
            assert team.id == i
            assert team.uefa_rank == i + 1

    def test_wrong_count_rejected(self):
        with pytest.raises(ValueError, match="expected 55 teams"):
            build_team_set(synthetic_records()[:-1])

    def test_duplicate_rank_names_the_rank(self):
        records = synthetic_records()
        records[10] = ("Imposter", 7, 1500.0)
        with pytest.raises(ValueError, match="rank 7"):
            build_team_set(records)

    def test_nonpositive_elo_rejected(self):
        records = synthetic_records()
        records[3] = ("Zeroed", 4, 0.0)
        with pytest.raises(ValueError, match="Zeroed"):
            build_team_set(records)

    def test_build_is_deterministic(self):
        assert build_team_set(synthetic_records()) == build_team_set(synthetic_records())


class TestLeagueBands:
    def test_band_boundaries(self):
        assert league_of_rank(12) is LeagueTier.A
        assert league_of_rank(13) is LeagueTier.B
        assert league_of_rank(25) is LeagueTier.C
        assert league_of_rank(39) is LeagueTier.C
        assert league_of_rank(40) is LeagueTier.D

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            league_of_rank(56)


class TestCounterfactual:
    def test_lithuania_to_40_swaps_with_azerbaijan(self):
        teams = default_team_set()
        swapped = apply_counterfactual(teams, teams.by_name("Lithuania").id, 40)
        assert swapped.by_name("Lithuania").uefa_rank == 40
        assert swapped.by_name("Azerbaijan").uefa_rank == 39
        assert swapped.by_name("Lithuania").elo == 1406
        assert swapped.by_name("Azerbaijan").elo == 1400
        for t in teams:
            if t.name not in ("Lithuania", "Azerbaijan"):
                assert swapped[t.id].uefa_rank == t.uefa_rank

    def test_netherlands_to_13_swaps_with_austria(self):
        teams = default_team_set()
        swapped = apply_counterfactual(teams, teams.by_name("Netherlands").id, 13)
        assert swapped.by_name("Netherlands").uefa_rank == 13
        assert swapped.by_name("Austria").uefa_rank == 12

    def test_self_swap_is_identity(self):
        teams = default_team_set()
        assert apply_counterfactual(teams, teams.by_name("Germany").id, 1) == teams

    @given(subject=st.integers(0, 54), target=st.integers(1, 55))
    @settings(max_examples=60, deadline=None)
    def test_swap_back_restores_and_preserves(self, subject, target):
        teams = default_team_set()
        original_rank = teams[subject].uefa_rank
        once = apply_counterfactual(teams, subject, target)
        # Undoing the swap (subject back to its original rank) restores the
        # set; repeating the same call is a self-swap and changes nothing.
        assert apply_counterfactual(once, subject, original_rank) == teams
        assert apply_counterfactual(once, subject, target) == once
        assert sorted(t.elo for t in once) == sorted(t.elo for t in teams)
        assert sorted(t.uefa_rank for t in once) == list(range(1, 56))


class TestSimConfig:
    def test_defaults(self):
        cfg = SimConfig()
        assert cfg.rating_scale == 400.0
        assert cfg.home_advantage == 100.0
        assert cfg.iterations == 1_000_000
        assert cfg.path_policy == "regular"

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"rating_scale": 0.0},
            {"home_advantage": -1.0},
            {"iterations": 0},
            {"path_policy": "bracketed"},
            {"counterfactual": (3, 60)},
        ],
    )
    def test_invalid_configs_rejected(self, kwargs):
        with pytest.raises(ValueError):
            SimConfig(**kwargs)


class TestTeamTableLoader:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "teams.csv"
        path.write_text(
            "name,uefa_rank,elo\n"
            + "\n".join(f"Team{r:02d},{r},{1000 + r}" for r in range(1, 56))
            + "\n"
        )
        teams = load_team_table(path)
        assert len(teams) == 55
        assert teams.by_rank(17).name == "Team17"

    def test_missing_header(self, tmp_path):
        path = tmp_path / "teams.csv"
        path.write_text("Germany,1,2109\n")
        with pytest.raises(ValueError, match="header"):
            load_team_table(path)

    def test_malformed_row_reports_line(self, tmp_path):
        path = tmp_path / "teams.csv"
        path.write_text("name,uefa_rank,elo\nGermany,one,2109\n")
        with pytest.raises(ValueError, match="teams.csv:2"):
            load_team_table(path)
