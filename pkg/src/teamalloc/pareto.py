"""EF1 + Pareto optimal allocation algorithms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from math import prod

import numpy as np

from .model import Allocation, CapacityError, Instance, ValidationError
from .verifiers import DEFAULT_BUDGET, check_budget, iter_allocation_blocks

DEFAULT_DP_BUDGET = 10**8


# -- two teams: adjusted winner with preference-aware tie-breaking ---------------


@dataclass(frozen=True)
class RatioKey:
    """Sort key ``|v_1(p)| / |v_2(p)|`` compared exactly, then ``tie_class``."""

    numerator: int
    denominator: int
    tie_class: int

    def compare(self, other: "RatioKey") -> int:
        lhs = self.numerator * other.denominator
        rhs = other.numerator * self.denominator
        if lhs != rhs:
            return -1 if lhs < rhs else 1
        return (self.tie_class > other.tie_class) - (self.tie_class < other.tie_class)


def ratio_key(instance: Instance, p: int) -> RatioKey:
    v1, v2 = instance.values[0][p], instance.values[1][p]
    r1, r2 = instance.ranks[p]
    positive = v1 > 0
    if r1 == r2:
        tie_class = 2
    elif (positive and r2 < r1) or (not positive and r1 < r2):
        tie_class = 1
    else:
        tie_class = 3
    return RatioKey(abs(v1), abs(v2), tie_class)


def _team2_envies_beyond_one(instance: Instance, bundles) -> bool:
    row = instance.values[1]
    own = [row[p] for p in bundles[1]]
    other = [row[p] for p in bundles[0]]
    a, b = sum(own), sum(other)
    return not (a >= b or a - min(own + [0]) >= b or a >= b - max(other + [0]))


def alg_adjusted_winner_two_teams(instance: Instance) -> Allocation:
    """EF1, PO and team-PO allocation for two teams with arbitrary-sign values.

    >>> inst = Instance.from_weak_orders([[4, 4, 3, 3, 2, 2, 1, 1]] * 2,
    ...     [[0, 1], [0, 1], [1, 0], [1, 0], [1, 0], [1, 0], [0, 1], [0, 1]])
    >>> alg_adjusted_winner_two_teams(inst).assignment
    (0, 0, 1, 1, 1, 0, 0, 0)
    """
    if instance.num_teams != 2:
        raise ValidationError(f"needs exactly 2 teams, got {instance.num_teams}", "teams")
    v1, v2 = instance.values
    assignment = [0] * instance.num_players
    bundles: list[set[int]] = [set(), set()]
    movable = []
    for p in instance.players:
        if v1[p] == 0 and v2[p] == 0:
            assignment[p] = instance.favorite_teams(p)[0]
        elif v1[p] >= 0 and v2[p] <= 0:
            bundles[0].add(p)
        elif v1[p] <= 0 and v2[p] >= 0:
            bundles[1].add(p)
        elif v1[p] > 0:
            bundles[0].add(p)
            movable.append(p)
        else:
            bundles[1].add(p)
            movable.append(p)
    keys = {p: ratio_key(instance, p) for p in movable}
    movable.sort(key=cmp_to_key(lambda a, b: keys[a].compare(keys[b]) or (a > b) - (a < b)))
    for p in movable:
        if not _team2_envies_beyond_one(instance, bundles):
            break
        if v1[p] > 0:
            bundles[0].remove(p)
            bundles[1].add(p)
        else:
            bundles[1].remove(p)
            bundles[0].add(p)
    assert not _team2_envies_beyond_one(instance, bundles), "adjusted winner ended without EF1"
    for t, bundle in enumerate(bundles):
        for p in bundle:
            assignment[p] = t
    return Allocation(tuple(assignment), 2)


# -- three teams, identical values, single-favourite players ---------------------


def _single_favorite_types(instance: Instance) -> list[int]:
    types = []
    for p in instance.players:
        favs = instance.favorite_teams(p)
        others = {instance.ranks[p][i] for i in instance.teams if i not in favs}
        if len(favs) != 1 or len(others) != 1:
            raise ValidationError(
                f"player {p} must rank one team first and tie the other two", "ranks"
            )
        types.append(favs[0])
    return types


def alg_three_teams_identical(instance: Instance) -> Allocation:
    """EF1 and PO allocation for three teams sharing one nonnegative valuation.

    Every player must favour exactly one team and be indifferent between the
    other two.  The poorest team is served next, preferably with a fan of its
    own; otherwise it takes the remaining type whose fans' own team would
    end up richer.

    >>> inst = Instance.from_favorites([[4, 3, 2, 1]] * 3, [0, 1, 2, 2])
    >>> alg_three_teams_identical(inst).assignment
    (0, 1, 2, 2)
    """
    if instance.num_teams != 3:
        raise ValidationError(f"needs exactly 3 teams, got {instance.num_teams}", "teams")
    if not instance.has_identical_valuations():
        raise ValidationError("teams must share one valuation", "values")
    v = instance.values[0]
    for p, x in enumerate(v):
        if x < 0:
            raise ValidationError(f"player {p} has negative value {x}", "values")
    kind = _single_favorite_types(instance)

    assignment: list[int | None] = [None] * instance.num_players
    utility = [0, 0, 0]
    pool: list[list[int]] = [[], [], []]
    for p in instance.players:
        if v[p] == 0:
            assignment[p] = kind[p]
        else:
            pool[kind[p]].append(p)
    for t in range(3):
        pool[t].sort(key=lambda p: (-v[p], p))  # best player first

    def give(team: int, source: int) -> None:
        p = pool[source].pop(0)
        assignment[p] = team
        utility[team] += v[p]

    while any(pool):
        low = min(utility)
        tied = [t for t in range(3) if utility[t] == low]
        team = next((t for t in tied if pool[t]), tied[0])
        if pool[team]:
            give(team, team)
            continue
        left = [t for t in range(3) if pool[t]]
        if len(left) == 1:
            give(team, left[0])
            continue
        j, k = left
        fj = utility[j] + sum(v[p] for p in pool[j])
        fk = utility[k] + sum(v[p] for p in pool[k])
        give(team, j if fj >= fk else k)
    return Allocation(tuple(assignment), 3)


# -- Nash welfare -----------------------------------------------------------------


def nash_key(utilities) -> tuple[int, int]:
    """(number of teams with nonzero utility, product of those utilities)."""
    nonzero = [u for u in utilities if u != 0]
    return len(nonzero), prod(nonzero)


def _require_nonnegative(instance: Instance) -> None:
    for i in instance.teams:
        for p in instance.players:
            if instance.values[i][p] < 0:
                raise ValidationError(f"team {i} has negative value for player {p}", "values")


def dp_table_size(instance: Instance) -> int:
    vmax = max((x for row in instance.values for x in row), default=0)
    n = instance.num_teams
    return n * (1 + instance.num_players * vmax) ** n


def alg_dp_const_teams(instance: Instance, budget: int = DEFAULT_DP_BUDGET) -> Allocation:
    """EF1 and PO allocation via dynamic programming over team utility vectors.

    Each reachable utility vector after placing players ``0..j`` keeps the
    allocation that is best for the players in reverse index order (player
    ``j``'s rank first).  The final vector with maximum Nash welfare is
    returned (ties: lexicographically greatest vector).

    >>> inst = Instance.from_weak_orders([[3, 3, 2, 2], [1, 1, 0, 0]], [[0, 1]] * 4)
    >>> alg_dp_const_teams(inst).assignment
    (1, 1, 0, 0)
    """
    _require_nonnegative(instance)
    cells = dp_table_size(instance)
    if cells > budget:
        raise CapacityError(f"utility table needs {cells} cells, budget is {budget}")
    n = instance.num_teams
    # utility vector -> (reversed rank sequence, assignment); lower ranks win
    column: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, ...]]] = {
        (0,) * n: ((), ())
    }
    for p in instance.players:
        ranks = instance.ranks[p]
        nxt: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, ...]]] = {}
        for u, (key, assignment) in column.items():
            for i in range(n):
                w = list(u)
                w[i] += instance.values[i][p]
                w = tuple(w)
                cand = ((ranks[i],) + key, assignment + (i,))
                held = nxt.get(w)
                if held is None or cand[0] < held[0]:
                    nxt[w] = cand
        column = nxt
    best = max(column, key=lambda u: (nash_key(u), u))
    return Allocation(column[best][1], n)


def mnw_bruteforce(instance: Instance, budget: int = DEFAULT_BUDGET) -> Allocation:
    """Maximum Nash welfare allocation that is Pareto optimal among MNW allocations.

    Degenerate case: maximise the number of teams with nonzero utility
    first, then the product over those teams.  Among the maximisers the
    first one (lexicographic order) with the least total player rank is
    returned; any such allocation is undominated within the MNW set, since
    a dominating MNW allocation would have equal team utilities and a
    strictly smaller rank sum.
    """
    _require_nonnegative(instance)
    check_budget(instance, budget)
    n, m = instance.num_teams, instance.num_players
    values = np.array(instance.values, dtype=np.int64).reshape(n, m)
    ranks = np.array(instance.ranks, dtype=np.int64).reshape(m, n)
    vmax = int(values.max()) if values.size else 0
    exact_in_int64 = (m * vmax) ** n < 2**63
    best_key = None
    best_row = None
    for _, block in iter_allocation_blocks(n, m):
        utils = np.stack([(block == i) @ values[i] for i in range(n)], axis=1)
        rank_sum = ranks[np.arange(m)[None, :], block].sum(axis=1)
        nonzero = (utils != 0).sum(axis=1)
        rows = np.flatnonzero(nonzero == nonzero.max())
        if exact_in_int64:
            products = np.where(utils[rows] != 0, utils[rows], 1).prod(axis=1)
            rows = rows[products == products.max()]
            rows = rows[rank_sum[rows] == rank_sum[rows].min()][:1]
        for r in rows:
            key = (int(nonzero[r]), prod(int(x) for x in utils[r] if x != 0), -int(rank_sum[r]))
            if best_key is None or key > best_key:
                best_key, best_row = key, tuple(int(t) for t in block[r])
    return Allocation(best_row, n)
