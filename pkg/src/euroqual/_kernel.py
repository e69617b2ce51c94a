"""Compiled per-season kernel.

Replays exactly the draw schedule of the pure-Python stage operations (see
``engine.run_iteration_reference``), consuming the identical variate stream:
the test suite asserts bit-for-bit agreement between the two over many
seeds.  Everything here works in rank space: team ``r`` is the team holding
initial rank ``r + 1``, and ``elo[r]`` is its rating.

Draw schedule per season, in stream order:

1.  league group draws, tiers A-D, one 4-slot shuffle per pot;
2.  league group play (lexicographic ordered pairs, one uniform per match)
    and ranking (one tie key per member), group by group;
3.  league-ranking tie keys, one per member in (group, position) order;
4.  qualifier draw, pots in band order, one shuffle per pot;
5.  qualifier group play and ranking, groups A-J;
6.  play-off path formation draws (policy dependent);
7.  path play: host draw then three matches, paths in order.
"""

from __future__ import annotations

import numpy as np
from numba import njit

POLICY_CODES = {"regular": 0, "random": 1, "seeded": 2}

# League layout over rank space (0-based): A = 0-11, B = 12-23, C = 24-38,
# D = 39-54.  Pot sizes flattened as 4 per tier (0 = unused pot).
_LEAGUE_BASE = np.array([0, 12, 24, 39], dtype=np.int64)
_LEAGUE_SIZE = np.array([12, 12, 15, 16], dtype=np.int64)
_LEAGUE_NPOTS = np.array([3, 3, 4, 4], dtype=np.int64)
_POT_SIZES = np.array(
    [[4, 4, 4, 0], [4, 4, 4, 0], [4, 4, 4, 3], [4, 4, 4, 4]], dtype=np.int64
)

# Qualifier pots over overall positions (0-based, half-open) and the groups
# each pot feeds (groups 0-9 = labels A-J; 0-4 hold five teams, 5-9 six).
_QPOT_LO = np.array([0, 4, 10, 20, 30, 40, 50], dtype=np.int64)
_QPOT_HI = np.array([4, 10, 20, 30, 40, 50, 55], dtype=np.int64)
_QPOT_ELIGIBLE = np.array(
    [
        [0, 1, 2, 3, -1, -1, -1, -1, -1, -1],
        [4, 5, 6, 7, 8, 9, -1, -1, -1, -1],
        [0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
        [0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
        [0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
        [0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
        [5, 6, 7, 8, 9, -1, -1, -1, -1, -1],
    ],
    dtype=np.int64,
)
_QPOT_NELIG = np.array([4, 6, 10, 10, 10, 10, 5], dtype=np.int64)
_QGROUP_SIZE = np.array([5, 5, 5, 5, 5, 6, 6, 6, 6, 6], dtype=np.int64)


@njit(cache=True)
def _shuffle(rng, arr, n):
    # Fisher-Yates over arr[:n]; must stay in lockstep with rng.shuffle_ints.
    for i in range(n - 1, 0, -1):
        j = rng.integers(0, i + 1)
        tmp = arr[i]
        arr[i] = arr[j]
        arr[j] = tmp


@njit(cache=True)
def _win_prob(elo_home, elo_away, scale, home_adv):
    # Bonus added to the home rating first: same operation order as
    # matches.win_expectancy, so both sides round identically.
    d = (elo_home + home_adv) - elo_away
    return 1.0 / (1.0 + 10.0 ** (-d / scale))


@njit(cache=True)
def _tier_of_position(pos):
    # Overall position (0-based) back to the team's own league tier.
    if pos < 12:
        return 0
    if pos < 24:
        return 1
    if pos < 39:
        return 2
    return 3


@njit(cache=True)
def _count_blocked(ent_lg, ent_gw, path_of_ent, n_ent):
    # Group winners sharing a path with a team from a higher-ranked league.
    blocked = 0
    for i in range(n_ent):
        if ent_gw[i] == 0:
            continue
        for j in range(n_ent):
            if j != i and path_of_ent[j] == path_of_ent[i] and ent_lg[j] < ent_lg[i]:
                blocked += 1
                break
    return blocked


@njit(cache=True)
def simulate_season(elo, scale, home_adv, policy, rng, direct_mask, playoff_mask):
    """Simulate one full season; fills the two rank-space qualifier masks.

    Returns the number of group winners left facing a higher-league team
    after path repair (0 in every realistic season).
    """
    for r in range(55):
        direct_mask[r] = 0
        playoff_mask[r] = 0

    # ---- Nations League group draw ----
    nl_members = np.empty((4, 4, 4), dtype=np.int64)
    nl_gsize = np.zeros((4, 4), dtype=np.int64)
    slots = np.empty(10, dtype=np.int64)
    for tier in range(4):
        offset = 0
        for pot in range(_LEAGUE_NPOTS[tier]):
            psize = _POT_SIZES[tier, pot]
            for i in range(4):
                slots[i] = i
            _shuffle(rng, slots, 4)
            for m in range(psize):
                g = slots[m]
                nl_members[tier, g, nl_gsize[tier, g]] = _LEAGUE_BASE[tier] + offset + m
                nl_gsize[tier, g] += 1
            offset += psize

    # ---- Nations League play and group ranking ----
    nl_wins = np.zeros((4, 4, 4), dtype=np.int64)
    nl_winsvs = np.zeros((4, 4, 4, 4), dtype=np.int64)
    nl_order = np.empty((4, 4, 4), dtype=np.int64)
    keys = np.empty(16, dtype=np.float64)
    for tier in range(4):
        for g in range(4):
            n = nl_gsize[tier, g]
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    p = _win_prob(
                        elo[nl_members[tier, g, i]],
                        elo[nl_members[tier, g, j]],
                        scale,
                        home_adv,
                    )
                    if rng.random() < p:
                        nl_wins[tier, g, i] += 1
                        nl_winsvs[tier, g, i, j] += 1
                    else:
                        nl_wins[tier, g, j] += 1
                        nl_winsvs[tier, g, j, i] += 1
            for i in range(n):
                keys[i] = rng.random()
            for i in range(n):
                nl_order[tier, g, i] = i
            for i in range(1, n):
                oi = nl_order[tier, g, i]
                w = nl_wins[tier, g, oi]
                k = keys[oi]
                pos = i - 1
                while pos >= 0:
                    oj = nl_order[tier, g, pos]
                    if nl_wins[tier, g, oj] < w or (
                        nl_wins[tier, g, oj] == w and keys[oj] > k
                    ):
                        nl_order[tier, g, pos + 1] = oj
                        pos -= 1
                    else:
                        break
                nl_order[tier, g, pos + 1] = oi

    # ---- League rankings and overall ranking ----
    ov_order = np.empty(55, dtype=np.int64)
    ovpos = np.empty(55, dtype=np.int64)
    gw_flag = np.zeros(55, dtype=np.int64)
    cand_pos = np.empty(16, dtype=np.int64)
    cand_adj = np.empty(16, dtype=np.int64)
    cand_key = np.empty(16, dtype=np.float64)
    cand_team = np.empty(16, dtype=np.int64)
    cand_order = np.empty(16, dtype=np.int64)
    league_team = np.empty((4, 16), dtype=np.int64)
    op = 0
    for tier in range(4):
        cnt = 0
        for g in range(4):
            n = nl_gsize[tier, g]
            fourth = nl_order[tier, g, 3] if n == 4 else -1
            for posi in range(n):
                slot = nl_order[tier, g, posi]
                adj = nl_wins[tier, g, slot]
                if tier == 2 and n == 4 and posi < 3:
                    # 15-team league: drop results against the group's
                    # fourth-placed team so everyone is compared over four
                    # matches.
                    adj -= nl_winsvs[tier, g, slot, fourth]
                cand_pos[cnt] = posi
                cand_adj[cnt] = adj
                cand_key[cnt] = rng.random()
                cand_team[cnt] = nl_members[tier, g, slot]
                cnt += 1
        for i in range(cnt):
            cand_order[i] = i
        for i in range(1, cnt):
            ci = cand_order[i]
            pos = i - 1
            while pos >= 0:
                cj = cand_order[pos]
                after = False
                if cand_pos[cj] > cand_pos[ci]:
                    after = True
                elif cand_pos[cj] == cand_pos[ci]:
                    if cand_adj[cj] < cand_adj[ci]:
                        after = True
                    elif cand_adj[cj] == cand_adj[ci] and cand_key[cj] > cand_key[ci]:
                        after = True
                if after:
                    cand_order[pos + 1] = cj
                    pos -= 1
                else:
                    break
            cand_order[pos + 1] = ci
        for i in range(cnt):
            c = cand_order[i]
            league_team[tier, i] = cand_team[c]
            if cand_pos[c] == 0:
                gw_flag[cand_team[c]] = 1
            ov_order[op] = cand_team[c]
            ovpos[cand_team[c]] = op
            op += 1

    # ---- Qualifier draw ----
    q_members = np.empty((10, 6), dtype=np.int64)
    q_count = np.zeros(10, dtype=np.int64)
    for b in range(7):
        nelig = _QPOT_NELIG[b]
        for i in range(nelig):
            slots[i] = _QPOT_ELIGIBLE[b, i]
        _shuffle(rng, slots, nelig)
        for m in range(_QPOT_HI[b] - _QPOT_LO[b]):
            g = slots[m]
            q_members[g, q_count[g]] = ov_order[_QPOT_LO[b] + m]
            q_count[g] += 1
    for g in range(10):
        if q_count[g] != _QGROUP_SIZE[g]:
            raise ValueError("qualifier draw produced a malformed group")

    # ---- Qualifier play; top two of each group qualify ----
    q_wins = np.empty(6, dtype=np.int64)
    q_order = np.empty(6, dtype=np.int64)
    for g in range(10):
        n = q_count[g]
        for i in range(n):
            q_wins[i] = 0
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                p = _win_prob(elo[q_members[g, i]], elo[q_members[g, j]], scale, home_adv)
                if rng.random() < p:
                    q_wins[i] += 1
                else:
                    q_wins[j] += 1
        for i in range(n):
            keys[i] = rng.random()
        for i in range(n):
            q_order[i] = i
        for i in range(1, n):
            oi = q_order[i]
            w = q_wins[oi]
            k = keys[oi]
            pos = i - 1
            while pos >= 0:
                oj = q_order[pos]
                if q_wins[oj] < w or (q_wins[oj] == w and keys[oj] > k):
                    q_order[pos + 1] = oj
                    pos -= 1
                else:
                    break
            q_order[pos + 1] = oi
        direct_mask[q_members[g, q_order[0]]] = 1
        direct_mask[q_members[g, q_order[1]]] = 1

    ndirect = 0
    for r in range(55):
        ndirect += direct_mask[r]
    if ndirect != 20:
        raise ValueError("direct qualifier count is not 20")

    # ---- Play-off team selection ----
    ent_team = np.empty(16, dtype=np.int64)
    ent_src = np.empty(16, dtype=np.int64)
    ent_lg = np.empty(16, dtype=np.int64)
    ent_gw = np.empty(16, dtype=np.int64)
    ent_ovp = np.empty(16, dtype=np.int64)
    quota_fill = np.zeros(4, dtype=np.int64)
    spare_head = np.zeros(4, dtype=np.int64)
    spare_cnt = np.zeros(4, dtype=np.int64)
    spare_team = np.empty((4, 16), dtype=np.int64)

    for tier in range(4):
        base = 4 * tier
        for i in range(_LEAGUE_SIZE[tier]):
            t = league_team[tier, i]
            if direct_mask[t] == 1:
                continue
            if quota_fill[tier] < 4:
                idx = base + quota_fill[tier]
                ent_team[idx] = t
                ent_src[idx] = tier
                quota_fill[tier] += 1
            else:
                spare_team[tier, spare_cnt[tier]] = t
                spare_cnt[tier] += 1

    for tier in range(4):
        need = 4 - quota_fill[tier]
        if need == 0:
            continue
        # Donors: lower-ranked leagues first, then back up the ladder.
        for step in range(1, 7):
            donor = tier + step if step <= 3 - tier else tier - (step - (3 - tier))
            if donor < 0 or donor > 3:
                continue
            while need > 0 and spare_head[donor] < spare_cnt[donor]:
                t = spare_team[donor, spare_head[donor]]
                spare_head[donor] += 1
                idx = 4 * tier + quota_fill[tier]
                ent_team[idx] = t
                ent_src[idx] = tier
                quota_fill[tier] += 1
                need -= 1
            if need == 0:
                break
        if need > 0:
            raise ValueError("fewer than 16 teams available for the play-offs")

    for i in range(16):
        ent_ovp[i] = ovpos[ent_team[i]]
        ent_lg[i] = _tier_of_position(ent_ovp[i])
        ent_gw[i] = gw_flag[ent_team[i]]

    # ---- Path formation ----
    path_of_ent = np.empty(16, dtype=np.int64)
    path_members = np.empty((4, 4), dtype=np.int64)
    path_size = np.zeros(4, dtype=np.int64)
    relax = 0
    if policy == 0:
        n_casc = 0
        for i in range(16):
            path_of_ent[i] = ent_src[i]
            if ent_lg[i] != ent_src[i]:
                n_casc += 1
        if n_casc > 0:
            casc_idx = np.empty(16, dtype=np.int64)
            casc_slot = np.empty(16, dtype=np.int64)
            order = np.empty(16, dtype=np.int64)
            c = 0
            for i in range(16):
                if ent_lg[i] != ent_src[i]:
                    casc_idx[c] = i
                    casc_slot[c] = ent_src[i]
                    c += 1
            for i in range(n_casc):
                order[i] = i
            _shuffle(rng, order, n_casc)
            assigned = np.empty(16, dtype=np.int64)
            for i in range(n_casc):
                assigned[i] = casc_idx[order[i]]
            for i in range(n_casc):
                path_of_ent[assigned[i]] = casc_slot[i]
            blocked = _count_blocked(ent_lg, ent_gw, path_of_ent, 16)
            while blocked > 0:
                best_delta = 0
                best_i = -1
                best_j = -1
                for i in range(n_casc):
                    for j in range(i + 1, n_casc):
                        if casc_slot[i] == casc_slot[j]:
                            continue
                        path_of_ent[assigned[i]] = casc_slot[j]
                        path_of_ent[assigned[j]] = casc_slot[i]
                        delta = _count_blocked(ent_lg, ent_gw, path_of_ent, 16) - blocked
                        path_of_ent[assigned[i]] = casc_slot[i]
                        path_of_ent[assigned[j]] = casc_slot[j]
                        if delta < best_delta:
                            best_delta = delta
                            best_i = i
                            best_j = j
                if best_i < 0:
                    break
                tmp = assigned[best_i]
                assigned[best_i] = assigned[best_j]
                assigned[best_j] = tmp
                for i in range(n_casc):
                    path_of_ent[assigned[i]] = casc_slot[i]
                blocked += best_delta
            relax = blocked
    elif policy == 1:
        # Drawn order is the seeding: slot k % 4 of path k // 4.
        order = np.empty(16, dtype=np.int64)
        for i in range(16):
            order[i] = i
        _shuffle(rng, order, 16)
        for k in range(16):
            path_of_ent[order[k]] = k // 4
            path_members[k // 4, k % 4] = order[k]
            path_size[k // 4] += 1
    else:
        by_pos = np.empty(16, dtype=np.int64)
        for i in range(16):
            by_pos[i] = i
        for i in range(1, 16):
            bi = by_pos[i]
            pos = i - 1
            while pos >= 0 and ent_ovp[by_pos[pos]] > ent_ovp[bi]:
                by_pos[pos + 1] = by_pos[pos]
                pos -= 1
            by_pos[pos + 1] = bi
        for pot in range(4):
            for i in range(4):
                slots[i] = i
            _shuffle(rng, slots, 4)
            for m in range(4):
                path_of_ent[by_pos[4 * pot + m]] = slots[m]

    # ---- Path play ----
    if policy != 1:
        # League and quartile paths are seeded by overall position.
        for i in range(16):
            p = path_of_ent[i]
            path_members[p, path_size[p]] = i
            path_size[p] += 1
        for p in range(4):
            for i in range(1, 4):
                mi = path_members[p, i]
                pos = i - 1
                while pos >= 0 and ent_ovp[path_members[p, pos]] > ent_ovp[mi]:
                    path_members[p, pos + 1] = path_members[p, pos]
                    pos -= 1
                path_members[p, pos + 1] = mi
    for p in range(4):
        if path_size[p] != 4:
            raise ValueError("path formation produced a malformed path")

    for p in range(4):
        t1 = ent_team[path_members[p, 0]]
        t2 = ent_team[path_members[p, 1]]
        t3 = ent_team[path_members[p, 2]]
        t4 = ent_team[path_members[p, 3]]
        host_semifinal = 1 + rng.integers(0, 2)
        w1 = t1 if rng.random() < _win_prob(elo[t1], elo[t4], scale, home_adv) else t4
        w2 = t2 if rng.random() < _win_prob(elo[t2], elo[t3], scale, home_adv) else t3
        if host_semifinal == 1:
            home, away = w1, w2
        else:
            home, away = w2, w1
        winner = home if rng.random() < _win_prob(elo[home], elo[away], scale, home_adv) else away
        playoff_mask[winner] = 1

    npo = 0
    for r in range(55):
        npo += playoff_mask[r]
        if playoff_mask[r] == 1 and direct_mask[r] == 1:
            raise ValueError("a play-off winner already qualified directly")
    if npo != 4:
        raise ValueError("play-off winner count is not 4")

    if policy == 0:
        # Under the league-path rule every league keeps at least one berth.
        for tier in range(4):
            found = False
            for r in range(_LEAGUE_BASE[tier], _LEAGUE_BASE[tier] + _LEAGUE_SIZE[tier]):
                if direct_mask[r] == 1 or playoff_mask[r] == 1:
                    found = True
                    break
            if not found:
                raise ValueError("a league ended the season without a qualifier")

    return relax
