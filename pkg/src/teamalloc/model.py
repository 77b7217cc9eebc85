"""Instances, allocations and player preferences.

Teams are indexed ``0..n-1`` and players ``0..m-1``.  ``values[i][p]`` is
team ``i``'s (integer) value for player ``p`` and ``ranks[p][i]`` is the rank
of team ``i`` for player ``p`` (1 = most preferred, ties share a rank).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

INT64_MAX = 2**63 - 1


class ValidationError(ValueError):
    """Malformed or inconsistent input.  ``field`` names the offending part."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class DomainError(ValueError):
    """An index or argument outside the domain of an operation."""


class CapacityError(RuntimeError):
    """A brute-force or table-based routine would exceed its budget."""


class Preference(enum.Enum):
    BETTER = "better"
    EQUAL = "equal"
    WORSE = "worse"


def canonical_ranks(levels: Sequence[int]) -> tuple[int, ...]:
    """Canonical rank vector for a weak order given by arbitrary numeric levels.

    Lower level means more preferred.  The rank of a team is one plus the
    number of teams strictly preferred to it.

    >>> canonical_ranks([5, 2, 5, 7])
    (2, 1, 2, 4)
    >>> canonical_ranks([1, 1])
    (1, 1)
    """
    return tuple(1 + sum(1 for other in levels if other < lv) for lv in levels)


@dataclass(frozen=True)
class Instance:
    num_teams: int
    values: tuple[tuple[int, ...], ...]
    ranks: tuple[tuple[int, ...], ...]
    player_ids: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(tuple(row) for row in self.values))
        object.__setattr__(self, "ranks", tuple(tuple(row) for row in self.ranks))
        n = self.num_teams
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValidationError("number of teams must be a positive integer", "teams")
        if len(self.values) != n:
            raise ValidationError(f"expected {n} value rows, got {len(self.values)}", "values")
        m = len(self.ranks)
        for i, row in enumerate(self.values):
            if len(row) != m:
                raise ValidationError(f"team {i} has {len(row)} values for {m} players", "values")
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise ValidationError(f"non-integer value {v!r}", "values")
                if abs(v) > INT64_MAX:
                    raise ValidationError(f"value {v} is not 64-bit representable", "values")
        for p, row in enumerate(self.ranks):
            if len(row) != n:
                raise ValidationError(f"player {p} ranks {len(row)} teams, expected {n}", "ranks")
            for r in row:
                if not isinstance(r, int) or isinstance(r, bool) or not 1 <= r <= n:
                    raise ValidationError(f"player {p} has rank {r!r} outside [1, {n}]", "ranks")
            if tuple(row) != canonical_ranks(row):
                raise ValidationError(f"player {p} ranks {list(row)} violate the rank law", "ranks")
        if m and max(abs(v) for row in self.values for v in row) * m > INT64_MAX:
            raise ValidationError("m * max|v| overflows 64-bit sums", "values")
        if not self.player_ids:
            object.__setattr__(self, "player_ids", tuple(f"p{p + 1}" for p in range(m)))
        else:
            object.__setattr__(self, "player_ids", tuple(self.player_ids))
            if len(self.player_ids) != m:
                raise ValidationError("one id per player required", "players")

    @property
    def num_players(self) -> int:
        return len(self.ranks)

    @property
    def teams(self) -> range:
        return range(self.num_teams)

    @property
    def players(self) -> range:
        return range(self.num_players)

    @classmethod
    def from_weak_orders(cls, values, levels, player_ids=()) -> "Instance":
        """Build an instance canonicalising each player's preference levels."""
        return cls(len(values), values, [canonical_ranks(row) for row in levels], player_ids)

    @classmethod
    def from_favorites(cls, values, favorites, player_ids=()) -> "Instance":
        """Each player ranks one team first and is indifferent among the rest."""
        n = len(values)
        ranks = [[1 if i == fav else 2 for i in range(n)] if n > 1 else [1] for fav in favorites]
        return cls(n, values, ranks, player_ids)

    def favorite_teams(self, player: int) -> list[int]:
        return [i for i, r in enumerate(self.ranks[player]) if r == 1]

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for row in self.values for v in row)

    def is_nonpositive(self) -> bool:
        return all(v <= 0 for row in self.values for v in row)

    def has_identical_valuations(self) -> bool:
        return all(row == self.values[0] for row in self.values)


@dataclass(frozen=True)
class Allocation:
    """``assignment[p]`` is the team of player ``p``."""

    assignment: tuple[int, ...]
    num_teams: int
    bundles: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if self.num_teams < 1:
            raise ValidationError("number of teams must be positive", "teams")
        for p, t in enumerate(self.assignment):
            if not isinstance(t, int) or isinstance(t, bool) or not 0 <= t < self.num_teams:
                raise ValidationError(
                    f"player {p} assigned to team {t!r}, expected 0..{self.num_teams - 1}",
                    "assignment",
                )
        groups: list[list[int]] = [[] for _ in range(self.num_teams)]
        for p, t in enumerate(self.assignment):
            groups[t].append(p)
        object.__setattr__(self, "bundles", tuple(tuple(g) for g in groups))

    @classmethod
    def from_bundles(cls, bundles: Sequence[Iterable[int]], num_players: int | None = None) -> "Allocation":
        """Build from an ordered partition ``(A_0, ..., A_{n-1})``.

        >>> Allocation.from_bundles([[1], [0, 2]]).assignment
        (1, 0, 1)
        """
        bundles = [list(b) for b in bundles]
        if num_players is None:
            num_players = sum(len(b) for b in bundles)
        assignment: list[int | None] = [None] * num_players
        for t, bundle in enumerate(bundles):
            for p in bundle:
                if not 0 <= p < num_players or assignment[p] is not None:
                    raise ValidationError(f"player {p} missing or listed twice", "bundles")
                assignment[p] = t
        if any(t is None for t in assignment):
            raise ValidationError("bundles do not cover every player", "bundles")
        return cls(tuple(assignment), len(bundles))

    @property
    def num_players(self) -> int:
        return len(self.assignment)

    def moved(self, player: int, team: int) -> "Allocation":
        a = list(self.assignment)
        a[player] = team
        return Allocation(tuple(a), self.num_teams)

    def swapped(self, p: int, q: int) -> "Allocation":
        a = list(self.assignment)
        a[p], a[q] = a[q], a[p]
        return Allocation(tuple(a), self.num_teams)


def check_compatible(instance: Instance, allocation: Allocation) -> None:
    if allocation.num_teams != instance.num_teams:
        raise DomainError(f"allocation has {allocation.num_teams} teams, instance {instance.num_teams}")
    if allocation.num_players != instance.num_players:
        raise DomainError(f"allocation covers {allocation.num_players} players, instance {instance.num_players}")


def _team_index(instance: Instance, team: int) -> int:
    if not isinstance(team, int) or not 0 <= team < instance.num_teams:
        raise DomainError(f"team index {team!r} out of range 0..{instance.num_teams - 1}")
    return team


def _player_index(instance: Instance, player: int) -> int:
    if not isinstance(player, int) or not 0 <= player < instance.num_players:
        raise DomainError(f"player index {player!r} out of range 0..{instance.num_players - 1}")
    return player


def bundle_value(instance: Instance, team: int, players: Iterable[int]) -> int:
    """Additive value of a set of players for ``team``."""
    row = instance.values[_team_index(instance, team)]
    return sum(row[p] for p in players)


def team_utility(instance: Instance, allocation: Allocation, team: int) -> int:
    """Value of team ``team`` for its own bundle."""
    _team_index(instance, team)
    check_compatible(instance, allocation)
    return bundle_value(instance, team, allocation.bundles[team])


def team_utilities(instance: Instance, allocation: Allocation) -> tuple[int, ...]:
    check_compatible(instance, allocation)
    return tuple(bundle_value(instance, i, allocation.bundles[i]) for i in instance.teams)


def prefers(instance: Instance, player: int, team_a: int, team_b: int) -> Preference:
    """How ``player`` compares ``team_a`` against ``team_b``."""
    row = instance.ranks[_player_index(instance, player)]
    ra, rb = row[_team_index(instance, team_a)], row[_team_index(instance, team_b)]
    if ra < rb:
        return Preference.BETTER
    if ra == rb:
        return Preference.EQUAL
    return Preference.WORSE


# -- serialization -----------------------------------------------------------


def instance_to_dict(instance: Instance) -> dict:
    return {
        "teams": instance.num_teams,
        "players": [
            {
                "id": instance.player_ids[p],
                "values": [instance.values[i][p] for i in instance.teams],
                "ranks": list(instance.ranks[p]),
            }
            for p in instance.players
        ],
    }


def instance_from_dict(doc) -> Instance:
    if not isinstance(doc, dict):
        raise ValidationError("instance document must be a JSON object", "instance")
    if "teams" not in doc:
        raise ValidationError("missing field", "teams")
    n = doc["teams"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError(f"expected a positive integer, got {n!r}", "teams")
    players = doc.get("players")
    if not isinstance(players, list):
        raise ValidationError("expected a list", "players")
    ids, ranks = [], []
    values = [[] for _ in range(n)]
    for p, entry in enumerate(players):
        where = f"players[{p}]"
        if not isinstance(entry, dict):
            raise ValidationError("expected an object", where)
        for key in ("values", "ranks"):
            if not isinstance(entry.get(key), list):
                raise ValidationError("expected a list", f"{where}.{key}")
        if len(entry["values"]) != n:
            raise ValidationError(f"expected {n} entries, got {len(entry['values'])}", f"{where}.values")
        if len(entry["ranks"]) != n:
            raise ValidationError(f"expected {n} entries, got {len(entry['ranks'])}", f"{where}.ranks")
        for i, v in enumerate(entry["values"]):
            values[i].append(v)
        ranks.append(entry["ranks"])
        ids.append(str(entry.get("id", f"p{p + 1}")))
    try:
        return Instance(n, values, ranks, tuple(ids))
    except ValidationError as exc:
        raise ValidationError(str(exc), exc.field) from None


def load_instance(data: bytes | str) -> Instance:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ValidationError(f"malformed JSON ({exc})", "document") from None
    return instance_from_dict(doc)


def save_instance(instance: Instance) -> bytes:
    return json.dumps(instance_to_dict(instance), indent=2).encode("utf-8")


def save_allocation(allocation: Allocation) -> bytes:
    """Allocation JSON; ``teams`` is included so empty trailing teams survive."""
    doc = {"teams": allocation.num_teams, "assignment": list(allocation.assignment)}
    return json.dumps(doc).encode("utf-8")


def load_allocation(data: bytes | str, num_teams: int | None = None) -> Allocation:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ValidationError(f"malformed JSON ({exc})", "document") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("assignment"), list):
        raise ValidationError("expected a list", "assignment")
    n = doc.get("teams", num_teams)
    if n is None:
        raise ValidationError("number of teams unknown; pass num_teams", "teams")
    if num_teams is not None and n != num_teams:
        raise ValidationError(f"document says {n} teams, instance has {num_teams}", "teams")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError(f"expected a positive integer, got {n!r}", "teams")
    return Allocation(tuple(doc["assignment"]), n)
