"""Round-robin over slot values, and its double round-robin extension.

``alg_swap_stable_balanced`` gives a balanced, EF[1,1] and swap stable
allocation; ``alg_double_round_robin`` gives an EF1, swap stable and
individually stable one (not necessarily balanced).
"""

from __future__ import annotations

import enum
from typing import Sequence

from .matching import WeightedBipartite, lexicographic_matching, min_cost_perfect_matching
from .model import Allocation, Instance


class SlotOrder(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


def slot_team(q: int, n: int, order: SlotOrder = SlotOrder.FORWARD) -> int:
    """Team owning slot ``q`` (0-based): teams pick in turn, forward or backward.

    >>> [slot_team(q, 3) for q in range(7)]
    [0, 1, 2, 0, 1, 2, 0]
    >>> [slot_team(q, 3, SlotOrder.BACKWARD) for q in range(4)]
    [2, 1, 0, 2]
    """
    t = q % n
    return t if order is SlotOrder.FORWARD else n - 1 - t


def round_robin_matching(
    values: Sequence[Sequence[int]],
    ranks: Sequence[Sequence[int]],
    order: SlotOrder = SlotOrder.FORWARD,
) -> list[int]:
    """Core of the balanced algorithm on raw matrices; returns a team per player.

    ``values[i][p]`` and ``ranks[p][i]`` as in :class:`Instance`.  One slot
    per player; slot ``q`` belongs to ``slot_team(q, n, order)``.
    """
    n = len(values)
    k = len(ranks)
    if k == 0:
        return []
    owner = [slot_team(q, n, order) for q in range(k)]
    weights = [[values[owner[q]][p] for p in range(k)] for q in range(k)]
    profile = lexicographic_matching(WeightedBipartite(weights)).per_vertex_weights
    # keep the edges that are as good for each slot's team as the profile, then
    # pick the matching with the least total rank for the players
    mask = [[weights[q][p] == profile[q] for p in range(k)] for q in range(k)]
    costs = [[ranks[p][owner[q]] for p in range(k)] for q in range(k)]
    best = min_cost_perfect_matching(WeightedBipartite(costs, mask))
    teams = [0] * k
    for q, p in enumerate(best.pairs):
        teams[p] = owner[q]
    return teams


def alg_swap_stable_balanced(instance: Instance, order: SlotOrder = SlotOrder.FORWARD) -> Allocation:
    """Balanced, EF[1,1] and swap stable allocation.

    Teams take turns receiving the *value* of a player (a lexicographically
    maximal slot matching); among the matchings realising those values, the
    one minimising the players' rank sum is returned.

    >>> inst = Instance.from_weak_orders([[1, -1], [1, -1]], [[0, 0], [0, 0]])
    >>> alg_swap_stable_balanced(inst).assignment
    (0, 1)
    """
    teams = round_robin_matching(instance.values, instance.ranks, order)
    return Allocation(tuple(teams), instance.num_teams)


def _with_dummies(instance: Instance, players: list[int]):
    n = instance.num_teams
    extra = (n - 1) * len(players) + n
    values = [[instance.values[i][p] for p in players] + [0] * extra for i in range(n)]
    ranks = [list(instance.ranks[p]) for p in players] + [[1] * n for _ in range(extra)]
    return values, ranks


def alg_double_round_robin(instance: Instance) -> Allocation:
    """EF1, swap stable and individually stable allocation.

    Players some team values nonnegatively go through the balanced
    algorithm in forward team order, the rest in backward order; each phase
    is padded with indifferent zero-value dummies so that every team keeps
    at least one dummy, and dummies are dropped at the end.

    >>> inst = Instance.from_weak_orders([[1, 1], [0, 0]], [[0, 1], [0, 1]])
    >>> alg_double_round_robin(inst).assignment
    (0, 0)
    """
    n, m = instance.num_teams, instance.num_players
    positive = [p for p in range(m) if max(instance.values[i][p] for i in range(n)) >= 0]
    negative = [p for p in range(m) if max(instance.values[i][p] for i in range(n)) < 0]
    assignment = [0] * m
    for players, order in ((positive, SlotOrder.FORWARD), (negative, SlotOrder.BACKWARD)):
        if not players:
            continue
        values, ranks = _with_dummies(instance, players)
        teams = round_robin_matching(values, ranks, order)
        for p, t in zip(players, teams):
            assignment[p] = t
    return Allocation(tuple(assignment), n)
