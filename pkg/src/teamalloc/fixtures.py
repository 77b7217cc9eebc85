"""Small hand-made instances with known facts, used as regression fixtures.

Each fixture bundles an instance, a few named allocations and a table of
facts.  :func:`verify_facts` recomputes every fact from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Allocation, Instance
from .verifiers import (
    DominanceScope,
    all_allocations,
    exists_ef1_jef_bruteforce,
    find_beneficial_deviation,
    find_beneficial_swap,
    find_justified_envy,
    is_balanced,
    is_ef1,
    is_ef11,
    is_po_bruteforce,
    is_beneficial_swap,
    pareto_dominates,
)


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    instance: Instance
    allocations: dict[str, Allocation] = field(default_factory=dict)
    facts: dict[str, object] = field(default_factory=dict)


def _alloc(bundles, m) -> Allocation:
    return Allocation.from_bundles(bundles, m)


def _swap_breaks_ef1() -> Fixture:
    values = [[0] * 6, [0] * 6, [1, 1, 0, 0, 0, 0]]
    inst = Instance.from_favorites(values, [0, 0, 2, 1, 1, 2])
    return Fixture(
        "swap-breaks-ef1",
        "three teams; only team 3 values p1 and p2; a beneficial swap breaks EF1",
        inst,
        {
            "initial": _alloc([[0, 3], [1, 4], [2, 5]], 6),
            "after_swap": _alloc([[0, 1], [3, 4], [2, 5]], 6),
        },
        {
            "initial_is_ef1": True,
            "unique_swap": [1, 3],
            "after_swap_is_swap_stable": True,
            "after_swap_is_ef1": False,
        },
    )


def _po_not_team_po() -> Fixture:
    inst = Instance.from_weak_orders([[1, 1], [1, 0]], [[0, 1], [1, 0]])
    return Fixture(
        "po-not-team-po",
        "PO but not team-PO",
        inst,
        {"split": _alloc([[0], [1]], 2), "together": _alloc([[0, 1], []], 2)},
        {"split_is_po": True, "split_is_team_po": False, "together_team_dominates_split": True},
    )


def _po_not_player_po() -> Fixture:
    inst = Instance.from_weak_orders([[1, 1], [1, 1]], [[0, 1], [0, 1]])
    return Fixture(
        "po-not-player-po",
        "PO but not player-PO",
        inst,
        {"split": _alloc([[0], [1]], 2), "together": _alloc([[0, 1], []], 2)},
        {"split_is_po": True, "split_is_player_po": False, "together_player_dominates_split": True},
    )


def _balanced_no_ef1() -> Fixture:
    inst = Instance.from_weak_orders([[1, -1], [1, -1]], [[0, 0], [0, 0]])
    return Fixture(
        "balanced-no-ef1",
        "identical values 1 and -1: no balanced allocation is EF1",
        inst,
        {"split": _alloc([[0], [1]], 2), "split_reversed": _alloc([[1], [0]], 2)},
        {"balanced_ef1_exists": False, "split_ef1_witness": [1, 0], "split_is_ef11": True},
    )


def _no_balanced_is() -> Fixture:
    inst = Instance.from_weak_orders([[1, 1], [0, 0]], [[0, 1], [0, 1]])
    return Fixture(
        "no-balanced-is",
        "no balanced individually stable allocation",
        inst,
        {"split": _alloc([[0], [1]], 2), "together": _alloc([[0, 1], []], 2)},
        {"individually_stable": [[0, 0]], "split_deviation": [1, 0]},
    )


def _no_ef1_jef() -> Fixture:
    inst = Instance.from_weak_orders([[3, 3, 2, 2], [1, 1, 0, 0]], [[0, 1]] * 4)
    return Fixture(
        "no-ef1-jef",
        "no EF1 and justified EF allocation",
        inst,
        {"probe": _alloc([[0, 2], [1, 3]], 4)},
        {"exists_ef1_jef": False, "probe_justified_envy": [1, 2]},
    )


def _no_ef1_player_po() -> Fixture:
    inst = Instance.from_weak_orders([[1, 1, 1, 1]] * 2, [[0, 1]] * 4)
    return Fixture(
        "no-ef1-player-po",
        "no EF1 and player-PO allocation",
        inst,
        {},
        {"ef1_player_po_exists": False},
    )


def _alternating_dominated() -> Fixture:
    values = [[4, 4, 3, 3, 2, 2, 1, 1]] * 2
    favorites = [0, 0, 1, 1, 1, 1, 0, 0]
    inst = Instance.from_favorites(values, favorites)
    return Fixture(
        "alternating-dominated",
        "eight players, identical values: the alternating split is Pareto dominated",
        inst,
        {
            "alternating": _alloc([[0, 2, 4, 6], [1, 3, 5, 7]], 8),
            "by_preference": _alloc([[0, 1, 6, 7], [2, 3, 4, 5]], 8),
        },
        {"by_preference_dominates_alternating": True, "alternating_is_po": False},
    )


def _jef_not_is() -> Fixture:
    inst = Instance.from_weak_orders([[1], [0]], [[0, 1]])
    return Fixture(
        "jef-not-is",
        "justified EF but not individually stable",
        inst,
        {"away": _alloc([[], [0]], 1)},
        {"away_justified_envy": None, "away_deviation": [0, 0]},
    )


_BUILDERS = {
    "swap-breaks-ef1": _swap_breaks_ef1,
    "po-not-team-po": _po_not_team_po,
    "po-not-player-po": _po_not_player_po,
    "balanced-no-ef1": _balanced_no_ef1,
    "no-balanced-is": _no_balanced_is,
    "no-ef1-jef": _no_ef1_jef,
    "no-ef1-player-po": _no_ef1_player_po,
    "alternating-dominated": _alternating_dominated,
    "jef-not-is": _jef_not_is,
}
FIXTURE_NAMES = tuple(_BUILDERS)


def get_fixture(name: str) -> Fixture:
    """Look up a fixture by id; raises ``KeyError`` for unknown ids."""
    if name not in _BUILDERS:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    return _BUILDERS[name]()


def _all_swaps(inst, alloc):
    m = inst.num_players
    return [[p, q] for p in range(m) for q in range(p + 1, m) if is_beneficial_swap(inst, alloc, p, q)]


def verify_facts(fixture: Fixture) -> dict[str, tuple[object, object]]:
    """Recompute every fact; returns ``{fact: (expected, observed)}``."""
    inst, a = fixture.instance, fixture.allocations
    observed: dict[str, object] = {}
    for fact in fixture.facts:
        if fact == "initial_is_ef1":
            got = is_ef1(inst, a["initial"]).holds
        elif fact == "unique_swap":
            swaps = _all_swaps(inst, a["initial"])
            got = swaps[0] if len(swaps) == 1 else swaps
        elif fact == "after_swap_is_swap_stable":
            got = find_beneficial_swap(inst, a["after_swap"]) is None
        elif fact == "after_swap_is_ef1":
            got = is_ef1(inst, a["after_swap"]).holds
        elif fact == "split_is_po":
            got = is_po_bruteforce(inst, a["split"]).holds
        elif fact == "split_is_team_po":
            got = is_po_bruteforce(inst, a["split"], DominanceScope.TEAMS_ONLY).holds
        elif fact == "split_is_player_po":
            got = is_po_bruteforce(inst, a["split"], DominanceScope.PLAYERS_ONLY).holds
        elif fact == "together_team_dominates_split":
            got = pareto_dominates(inst, a["together"], a["split"], DominanceScope.TEAMS_ONLY)
        elif fact == "together_player_dominates_split":
            got = pareto_dominates(inst, a["together"], a["split"], DominanceScope.PLAYERS_ONLY)
        elif fact == "balanced_ef1_exists":
            got = any(is_balanced(x).holds and is_ef1(inst, x).holds for x in all_allocations(inst))
        elif fact == "split_ef1_witness":
            got = is_ef1(inst, a["split"]).witness["teams"]
        elif fact == "split_is_ef11":
            got = is_ef11(inst, a["split"]).holds
        elif fact == "individually_stable":
            got = [list(x.assignment) for x in all_allocations(inst)
                   if find_beneficial_deviation(inst, x) is None]
        elif fact == "split_deviation":
            got = list(find_beneficial_deviation(inst, a["split"]))
        elif fact == "exists_ef1_jef":
            got = exists_ef1_jef_bruteforce(inst) is not None
        elif fact == "probe_justified_envy":
            got = list(find_justified_envy(inst, a["probe"]))
        elif fact == "ef1_player_po_exists":
            got = any(
                is_ef1(inst, x).holds and is_po_bruteforce(inst, x, DominanceScope.PLAYERS_ONLY).holds
                for x in all_allocations(inst)
            )
        elif fact == "by_preference_dominates_alternating":
            got = pareto_dominates(inst, a["by_preference"], a["alternating"])
        elif fact == "alternating_is_po":
            got = is_po_bruteforce(inst, a["alternating"]).holds
        elif fact == "away_justified_envy":
            got = find_justified_envy(inst, a["away"])
        elif fact == "away_deviation":
            found = find_beneficial_deviation(inst, a["away"])
            got = None if found is None else list(found)
        else:
            raise KeyError(f"no checker for fact {fact!r}")
        observed[fact] = (fixture.facts[fact], got)
    return observed
