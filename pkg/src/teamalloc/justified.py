"""EF1 together with justified envy-freeness, for two teams."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterator, Sequence

from .model import Allocation, DomainError, Instance, ValidationError
from .verifiers import is_ef1

NEG_INF = float("-inf")


@dataclass(frozen=True)
class ThresholdProfile:
    """Largest value (and its multiplicity) of a wrong-side fan, per team.

    ``x1`` is the highest team-1 value among players preferring team 1 but
    placed on team 2, ``n1`` how many such players attain it; ``x2``/``n2``
    likewise with the teams exchanged.  ``-inf`` with count 0 means none.
    """

    x1: float
    n1: int
    x2: float
    n2: int


def _require_two_team_nonnegative(instance: Instance) -> None:
    if instance.num_teams != 2:
        raise ValidationError(f"needs exactly 2 teams, got {instance.num_teams}", "teams")
    for i in instance.teams:
        for p in instance.players:
            if instance.values[i][p] < 0:
                raise ValidationError(f"team {i} has negative value for player {p}", "values")


def _side_options(values: Sequence[int], fans: Sequence[int]) -> list[tuple[float, int]]:
    # (x, count) pairs in ascending order; counts beyond the number of fans
    # at value x can never be realised and are left out
    options: list[tuple[float, int]] = [(NEG_INF, 0)]
    for x in sorted(set(values)):
        tied = sum(1 for p in fans if values[p] == x)
        options.extend((x, c) for c in range(1, tied + 1))
    return options


def threshold_profiles(instance: Instance) -> Iterator[ThresholdProfile]:
    """Candidate profiles, ascending in ``(x1, n1, x2, n2)``."""
    v1, v2 = instance.values
    fans1 = [p for p in instance.players if instance.ranks[p][0] < instance.ranks[p][1]]
    fans2 = [p for p in instance.players if instance.ranks[p][1] < instance.ranks[p][0]]
    side2 = _side_options(v2, fans2)
    for x1, n1 in _side_options(v1, fans1):
        for x2, n2 in side2:
            yield ThresholdProfile(x1, n1, x2, n2)


def allocation_for_profile(instance: Instance, profile: ThresholdProfile) -> Allocation | None:
    """The forced allocation consistent with ``profile``, or ``None`` on conflict."""
    v1, v2 = instance.values
    x1, n1, x2, n2 = profile.x1, profile.n1, profile.x2, profile.n2
    assignment: list[int | None] = [None] * instance.num_players
    for p in instance.players:
        forced = set()
        if v1[p] < x1:
            forced.add(1)
        if v2[p] < x2:
            forced.add(0)
        prefers_one = instance.ranks[p][0] < instance.ranks[p][1]
        if prefers_one and v1[p] > x1:
            forced.add(0)
        if not prefers_one and v2[p] > x2:
            forced.add(1)
        if len(forced) > 1:
            return None
        if forced:
            assignment[p] = forced.pop()
    for home, away, count, other_values in ((0, 1, n1, v2), (1, 0, n2, v1)):
        waiting = [
            p for p in instance.players
            if assignment[p] is None and (instance.ranks[p][home] < instance.ranks[p][away])
        ]
        if count > len(waiting):
            return None
        waiting.sort(key=lambda p: (-other_values[p], p))
        for rank, p in enumerate(waiting):
            assignment[p] = away if rank < count else home
    return Allocation(tuple(assignment), 2)


def alg_jef_two_teams_search(instance: Instance) -> Allocation | None:
    """An EF1 and justified EF allocation for two teams, or ``None`` if none exists.

    Requires nonnegative values and strict player preferences.  Every
    feasible threshold profile fixes all but the threshold-valued players;
    those go across in decreasing order of their value to the other team.

    >>> inst = Instance.from_weak_orders([[3, 3, 2, 2], [1, 1, 0, 0]], [[0, 1]] * 4)
    >>> alg_jef_two_teams_search(inst) is None
    True
    """
    _require_two_team_nonnegative(instance)
    for p in instance.players:
        if instance.ranks[p][0] == instance.ranks[p][1]:
            raise ValidationError(f"player {p} is indifferent between the teams", "ranks")
    for profile in threshold_profiles(instance):
        allocation = allocation_for_profile(instance, profile)
        if allocation is not None and is_ef1(instance, allocation).holds:
            return allocation
    return None


@dataclass(frozen=True)
class ValleyPath:
    players: tuple[int, ...]
    prefix_sums: tuple[int, ...]  # prefix_sums[j] = value of the first j players

    @classmethod
    def from_values(cls, players: Sequence[int], values: Sequence[int]) -> "ValleyPath":
        return cls(tuple(players), (0,) + tuple(accumulate(values[p] for p in players)))

    def __len__(self) -> int:
        return len(self.players)


def valley_path(instance: Instance) -> ValleyPath:
    """Team-1 fans by decreasing value, then team-2 fans by increasing value.

    Indifferent players count as team-1 fans; equal values keep index order
    on each side before the team-1 half is reversed.
    """
    v = instance.values[0]
    ones = sorted((p for p in instance.players if instance.ranks[p][0] <= instance.ranks[p][1]),
                  key=lambda p: (v[p], p))
    twos = sorted((p for p in instance.players if instance.ranks[p][0] > instance.ranks[p][1]),
                  key=lambda p: (v[p], p))
    return ValleyPath.from_values(ones[::-1] + twos, v)


def lumpy_tie(path: ValleyPath) -> int:
    """1-based position of the leftmost lumpy tie on the path.

    The leftmost ``j`` with ``v(p_1..p_j) >= v(p_{j+1}..p_t)``.

    >>> lumpy_tie(ValleyPath.from_values([0, 1, 2, 3], [1, 1, 1, 1]))
    2
    >>> lumpy_tie(ValleyPath.from_values([0, 1, 2], [3, 1, 1]))
    1
    """
    if not path.players:
        raise DomainError("a lumpy tie needs a nonempty path")
    s = path.prefix_sums
    total = s[-1]
    for j in range(1, len(path) + 1):
        if s[j] >= total - s[j]:
            assert s[j - 1] <= total - s[j - 1]
            return j
    raise AssertionError("unreachable: the full prefix always dominates the empty suffix")


def alg_cut_and_choose_identical(instance: Instance) -> Allocation:
    """EF1 and justified EF allocation for two teams with one shared valuation.

    >>> inst = Instance.from_weak_orders([[1, 1, 1, 1]] * 2, [[0, 1]] * 4)
    >>> alg_cut_and_choose_identical(inst).assignment
    (1, 1, 0, 0)
    """
    _require_two_team_nonnegative(instance)
    if not instance.has_identical_valuations():
        raise ValidationError("both teams must share one valuation", "values")
    if instance.num_players == 0:
        return Allocation((), 2)
    path = valley_path(instance)
    j = lumpy_tie(path)
    s = path.prefix_sums
    left, pivot, right = path.players[: j - 1], path.players[j - 1], path.players[j:]
    if s[j - 1] >= s[-1] - s[j]:
        bundles = [left, right + (pivot,)]
    else:
        bundles = [left + (pivot,), right]
    return Allocation.from_bundles(bundles, instance.num_players)
