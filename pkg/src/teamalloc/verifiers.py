"""Fairness and stability predicates with witnesses, plus brute-force oracles.

Every ``is_*`` check returns a :class:`PropertyReport`; a failing report
carries a witness that re-checks as a genuine violation.  Scans run in
lexicographic order so witnesses are reproducible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .model import Allocation, CapacityError, Instance, check_compatible, team_utilities

DEFAULT_BUDGET = 2 * 10**7


class Property(enum.Enum):
    EF1 = "EF1"
    EF11 = "EF11"
    BALANCED = "Balanced"
    SWAP_STABLE = "SwapStable"
    INDIVIDUALLY_STABLE = "IndividuallyStable"
    JUSTIFIED_EF = "JustifiedEF"
    PO = "PO"
    TEAM_PO = "TeamPO"
    PLAYER_PO = "PlayerPO"


class DominanceScope(enum.Enum):
    ALL_PARTIES = "AllParties"
    TEAMS_ONLY = "TeamsOnly"
    PLAYERS_ONLY = "PlayersOnly"


_SCOPE_PROPERTY = {
    DominanceScope.ALL_PARTIES: Property.PO,
    DominanceScope.TEAMS_ONLY: Property.TEAM_PO,
    DominanceScope.PLAYERS_ONLY: Property.PLAYER_PO,
}


@dataclass(frozen=True)
class PropertyReport:
    property: Property
    holds: bool
    witness: dict | None = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a witness is present exactly when the property fails")

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {"property": self.property.value, "holds": self.holds, "witness": self.witness}


# -- envy ----------------------------------------------------------------------


def _envy_terms(instance: Instance, allocation: Allocation, i: int, j: int):
    """(v_i(A_i), min(0, min own), v_i(A_j), max(0, max other))."""
    row = instance.values[i]
    own = [row[p] for p in allocation.bundles[i]]
    other = [row[p] for p in allocation.bundles[j]]
    return sum(own), min(own + [0]), sum(other), max(other + [0])


def envy_up_to_one(instance: Instance, allocation: Allocation, i: int, j: int) -> bool:
    """True if team ``i`` envies ``j`` even after dropping one player from either side."""
    own, worst_own, other, best_other = _envy_terms(instance, allocation, i, j)
    return not (own >= other or own - worst_own >= other or own >= other - best_other)


def _envy_report(instance, allocation, prop, violated) -> PropertyReport:
    check_compatible(instance, allocation)
    for i in instance.teams:
        for j in instance.teams:
            if i != j and violated(*_envy_terms(instance, allocation, i, j)):
                return PropertyReport(prop, False, {"teams": [i, j]})
    return PropertyReport(prop, True)


def is_ef1(instance: Instance, allocation: Allocation) -> PropertyReport:
    """EF1 with one removal from the envying *or* the envied bundle.

    Witness ``{"teams": [i, j]}``: team ``i`` still envies team ``j``.
    """
    return _envy_report(
        instance, allocation, Property.EF1,
        lambda own, lo, other, hi: not (own >= other or own - lo >= other or own >= other - hi),
    )


def is_ef11(instance: Instance, allocation: Allocation) -> PropertyReport:
    """EF[1,1]: up to one removal from each of the two bundles."""
    return _envy_report(
        instance, allocation, Property.EF11,
        lambda own, lo, other, hi: own - lo < other - hi,
    )


def is_balanced(allocation: Allocation) -> PropertyReport:
    sizes = [len(b) for b in allocation.bundles]
    for i, si in enumerate(sizes):
        for j, sj in enumerate(sizes):
            if si - sj > 1:
                return PropertyReport(Property.BALANCED, False, {"teams": [i, j]})
    return PropertyReport(Property.BALANCED, True)


# -- stability -----------------------------------------------------------------


def is_beneficial_swap(instance: Instance, allocation: Allocation, p: int, q: int) -> bool:
    i, j = allocation.assignment[p], allocation.assignment[q]
    if i == j:
        return False
    vi, vj = instance.values[i], instance.values[j]
    rp, rq = instance.ranks[p], instance.ranks[q]
    # gains for: team i, team j, player p, player q (lower rank is better)
    gains = (vi[q] - vi[p], vj[p] - vj[q], rp[i] - rp[j], rq[j] - rq[i])
    return min(gains) >= 0 and max(gains) > 0


def find_beneficial_swap(instance: Instance, allocation: Allocation) -> tuple[int, int] | None:
    """First beneficial swap ``(p, q)``, ``p < q``, or ``None`` if swap stable.

    >>> from teamalloc.fixtures import get_fixture
    >>> fx = get_fixture("swap-breaks-ef1")
    >>> find_beneficial_swap(fx.instance, fx.allocations["initial"])
    (1, 3)
    """
    check_compatible(instance, allocation)
    m = instance.num_players
    for p in range(m):
        for q in range(p + 1, m):
            if is_beneficial_swap(instance, allocation, p, q):
                return (p, q)
    return None


def is_beneficial_deviation(instance: Instance, allocation: Allocation, p: int, j: int) -> bool:
    i = allocation.assignment[p]
    return (
        i != j
        and instance.ranks[p][j] < instance.ranks[p][i]
        and instance.values[i][p] <= 0
        and instance.values[j][p] >= 0
    )


def find_beneficial_deviation(instance: Instance, allocation: Allocation) -> tuple[int, int] | None:
    """First ``(player, team)`` whose move helps the player and hurts no team."""
    check_compatible(instance, allocation)
    for p in instance.players:
        for j in instance.teams:
            if is_beneficial_deviation(instance, allocation, p, j):
                return (p, j)
    return None


def has_justified_envy(instance: Instance, allocation: Allocation, p: int, q: int) -> bool:
    i, j = allocation.assignment[p], allocation.assignment[q]
    return instance.ranks[p][j] < instance.ranks[p][i] and instance.values[j][p] > instance.values[j][q]


def find_justified_envy(instance: Instance, allocation: Allocation) -> tuple[int, int] | None:
    """First ``(p, q)`` where ``p`` has justified envy toward ``q``."""
    check_compatible(instance, allocation)
    for p in instance.players:
        for q in instance.players:
            if has_justified_envy(instance, allocation, p, q):
                return (p, q)
    return None


def is_swap_stable(instance: Instance, allocation: Allocation) -> PropertyReport:
    found = find_beneficial_swap(instance, allocation)
    if found is None:
        return PropertyReport(Property.SWAP_STABLE, True)
    return PropertyReport(Property.SWAP_STABLE, False, {"players": list(found)})


def is_individually_stable(instance: Instance, allocation: Allocation) -> PropertyReport:
    found = find_beneficial_deviation(instance, allocation)
    if found is None:
        return PropertyReport(Property.INDIVIDUALLY_STABLE, True)
    return PropertyReport(Property.INDIVIDUALLY_STABLE, False, {"player": found[0], "team": found[1]})


def is_justified_ef(instance: Instance, allocation: Allocation) -> PropertyReport:
    found = find_justified_envy(instance, allocation)
    if found is None:
        return PropertyReport(Property.JUSTIFIED_EF, True)
    return PropertyReport(Property.JUSTIFIED_EF, False, {"players": list(found)})


# -- Pareto ----------------------------------------------------------------------


def player_ranks(instance: Instance, allocation: Allocation) -> tuple[int, ...]:
    return tuple(instance.ranks[p][t] for p, t in enumerate(allocation.assignment))


def pareto_dominates(
    instance: Instance,
    candidate: Allocation,
    baseline: Allocation,
    scope: DominanceScope = DominanceScope.ALL_PARTIES,
) -> bool:
    """Whether ``candidate`` weakly improves every party in scope and strictly one."""
    check_compatible(instance, candidate)
    check_compatible(instance, baseline)
    gains: list[int] = []
    if scope is not DominanceScope.PLAYERS_ONLY:
        new, old = team_utilities(instance, candidate), team_utilities(instance, baseline)
        gains += [a - b for a, b in zip(new, old)]
    if scope is not DominanceScope.TEAMS_ONLY:
        new, old = player_ranks(instance, candidate), player_ranks(instance, baseline)
        gains += [b - a for a, b in zip(new, old)]
    return bool(gains) and min(gains) >= 0 and max(gains) > 0


# -- exhaustive enumeration -------------------------------------------------------


def check_budget(instance: Instance, budget: int = DEFAULT_BUDGET) -> int:
    total = instance.num_teams ** instance.num_players
    if total > budget:
        raise CapacityError(
            f"{instance.num_teams}^{instance.num_players} = {total} allocations exceed the "
            f"enumeration budget {budget}; reduce the number of players or teams"
        )
    return total


def iter_allocation_blocks(n: int, m: int, chunk: int = 1 << 15) -> Iterator[tuple[int, np.ndarray]]:
    """All ``n**m`` assignments in lexicographic order, as ``(offset, block)`` arrays.

    Player 0 is the most significant digit, so row ``r`` of the whole stream
    is the base-``n`` expansion of ``r``.
    """
    total = n**m
    place = n ** np.arange(m - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield start, (idx[:, None] // place[None, :]) % n


def _block_utilities(values: np.ndarray, block: np.ndarray) -> np.ndarray:
    n = values.shape[0]
    return np.stack([(block == i) @ values[i] for i in range(n)], axis=1)


def _block_ranks(ranks: np.ndarray, block: np.ndarray) -> np.ndarray:
    return ranks[np.arange(block.shape[1])[None, :], block]


def _first_dominating(instance: Instance, baseline: Allocation, scope: DominanceScope, budget: int):
    check_budget(instance, budget)
    n, m = instance.num_teams, instance.num_players
    values = np.array(instance.values, dtype=np.int64).reshape(n, m)
    ranks = np.array(instance.ranks, dtype=np.int64).reshape(m, n)
    base_u = np.array(team_utilities(instance, baseline), dtype=np.int64)
    base_r = np.array(player_ranks(instance, baseline), dtype=np.int64)
    for start, block in iter_allocation_blocks(n, m):
        parts = []
        if scope is not DominanceScope.PLAYERS_ONLY:
            parts.append(_block_utilities(values, block) - base_u[None, :])
        if scope is not DominanceScope.TEAMS_ONLY:
            parts.append(base_r[None, :] - _block_ranks(ranks, block))
        gains = np.concatenate(parts, axis=1)
        if gains.shape[1] == 0:
            return None  # no parties in scope (players-only with no players)
        hits = np.flatnonzero((gains.min(axis=1) >= 0) & (gains.max(axis=1) > 0))
        if hits.size:
            return Allocation(tuple(int(t) for t in block[hits[0]]), n)
    return None


def is_po_bruteforce(
    instance: Instance,
    allocation: Allocation,
    scope: DominanceScope = DominanceScope.ALL_PARTIES,
    budget: int = DEFAULT_BUDGET,
) -> PropertyReport:
    """Pareto optimality by enumerating all ``n**m`` allocations.

    Raises :class:`CapacityError` when ``n**m`` exceeds ``budget``.
    """
    check_compatible(instance, allocation)
    prop = _SCOPE_PROPERTY[scope]
    better = _first_dominating(instance, allocation, scope, budget)
    if better is None:
        return PropertyReport(prop, True)
    return PropertyReport(prop, False, {"allocation": list(better.assignment)})


def block_ef1_mask(values: np.ndarray, block: np.ndarray) -> np.ndarray:
    """Row-wise EF1 verdicts for a block of assignments."""
    n = values.shape[0]
    ok = np.ones(block.shape[0], dtype=bool)
    for i in range(n):
        vi = values[i][None, :]
        mine = block == i
        own = (mine * vi).sum(axis=1)
        worst_own = np.where(mine, vi, 0).min(axis=1, initial=0)
        for j in range(n):
            if i == j:
                continue
            theirs = block == j
            other = (theirs * vi).sum(axis=1)
            best_other = np.where(theirs, vi, 0).max(axis=1, initial=0)
            ok &= (own >= other) | (own - worst_own >= other) | (own >= other - best_other)
    return ok


def block_jef_mask(values: np.ndarray, ranks: np.ndarray, block: np.ndarray) -> np.ndarray:
    """Row-wise justified-envy-freeness verdicts for a block of assignments."""
    m = block.shape[1]
    players = np.arange(m)
    # [row, p, q]: rank p gives q's team, and that team's value for p / for q
    rank_at_q = ranks[players[None, :, None], block[:, None, :]]
    own_rank = ranks[players[None, :], block][:, :, None]
    value_p = values[block[:, None, :], players[None, :, None]]
    value_q = values[block, players[None, :]][:, None, :]
    envy = (rank_at_q < own_rank) & (value_p > value_q)
    return ~envy.reshape(block.shape[0], -1).any(axis=1)


def exists_ef1_jef_bruteforce(instance: Instance, budget: int = DEFAULT_BUDGET) -> Allocation | None:
    """First allocation (lexicographic order) that is EF1 and justified EF, else ``None``."""
    check_budget(instance, budget)
    n, m = instance.num_teams, instance.num_players
    if m == 0:
        return Allocation((), n)
    values = np.array(instance.values, dtype=np.int64)
    ranks = np.array(instance.ranks, dtype=np.int64)
    for _, block in iter_allocation_blocks(n, m, chunk=max(1, (1 << 18) // (m * m))):
        ok = block_ef1_mask(values, block)
        if ok.any():
            ok &= block_jef_mask(values, ranks, block)
        hits = np.flatnonzero(ok)
        if hits.size:
            return Allocation(tuple(int(t) for t in block[hits[0]]), n)
    return None


def all_allocations(instance: Instance, budget: int = DEFAULT_BUDGET) -> Iterator[Allocation]:
    """Plain iterator over every allocation, for small instances and tests."""
    check_budget(instance, budget)
    n = instance.num_teams
    for _, block in iter_allocation_blocks(n, instance.num_players):
        for row in block:
            yield Allocation(tuple(int(t) for t in row), n)


CHECKS = {
    "ef1": lambda inst, alloc, budget: is_ef1(inst, alloc),
    "ef11": lambda inst, alloc, budget: is_ef11(inst, alloc),
    "balanced": lambda inst, alloc, budget: is_balanced(alloc),
    "swap": lambda inst, alloc, budget: is_swap_stable(inst, alloc),
    "is": lambda inst, alloc, budget: is_individually_stable(inst, alloc),
    "jef": lambda inst, alloc, budget: is_justified_ef(inst, alloc),
    "po": lambda inst, alloc, budget: is_po_bruteforce(inst, alloc, DominanceScope.ALL_PARTIES, budget),
    "team-po": lambda inst, alloc, budget: is_po_bruteforce(inst, alloc, DominanceScope.TEAMS_ONLY, budget),
    "player-po": lambda inst, alloc, budget: is_po_bruteforce(inst, alloc, DominanceScope.PLAYERS_ONLY, budget),
}


def check_properties(instance: Instance, allocation: Allocation, names, budget: int = DEFAULT_BUDGET) -> dict[str, PropertyReport]:
    """Run the named checks (keys of :data:`CHECKS`) and return their reports."""
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise ValueError(f"unknown properties {unknown}; choose from {sorted(CHECKS)}")
    return {name: CHECKS[name](instance, allocation, budget) for name in names}
