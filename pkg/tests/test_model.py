import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import instance_and_assignment, instances
from teamalloc.model import (
    Allocation,
    DomainError,
    Instance,
    Preference,
    ValidationError,
    canonical_ranks,
    instance_from_dict,
    instance_to_dict,
    load_allocation,
    load_instance,
    prefers,
    save_allocation,
    save_instance,
    team_utilities,
    team_utility,
)


def test_rank_law_rejects_gapless_ranks():
    # (1, 2, 2) is fine, (1, 2, 3) with a tie elsewhere is not
    Instance(3, [[0], [0], [0]], [[1, 2, 2]])
    with pytest.raises(ValidationError) as err:
        Instance(3, [[0], [0], [0]], [[1, 3, 3]])
    assert err.value.field == "ranks"
    with pytest.raises(ValidationError):
        Instance(2, [[0], [0]], [[2, 2]])


@pytest.mark.parametrize(
    "kwargs, field",
    [
        (dict(num_teams=0, values=[], ranks=[]), "teams"),
        (dict(num_teams=2, values=[[1]], ranks=[[1, 1]]), "values"),
        (dict(num_teams=2, values=[[1], [1, 2]], ranks=[[1, 1]]), "values"),
        (dict(num_teams=1, values=[[1.5]], ranks=[[1]]), "values"),
        (dict(num_teams=1, values=[[True]], ranks=[[1]]), "values"),
        (dict(num_teams=1, values=[[2**63]], ranks=[[1]]), "values"),
        (dict(num_teams=2, values=[[1], [1]], ranks=[[1]]), "ranks"),
        (dict(num_teams=2, values=[[1], [1]], ranks=[[0, 1]]), "ranks"),
    ],
)
def test_invalid_instances(kwargs, field):
    with pytest.raises(ValidationError) as err:
        Instance(**kwargs)
    assert err.value.field == field


def test_overflow_guard():
    with pytest.raises(ValidationError):
        Instance(1, [[2**62, 2**62]], [[1], [1]])


def test_small_worked_utilities():
    inst = Instance.from_weak_orders([[3, 3, 2, 2], [1, 1, 0, 0]], [[0, 1]] * 4)
    alloc = Allocation((1, 1, 0, 0), 2)
    assert team_utilities(inst, alloc) == (4, 2)
    assert team_utility(inst, alloc, 0) == 4
    with pytest.raises(DomainError):
        team_utility(inst, alloc, 2)
    with pytest.raises(DomainError):
        team_utilities(inst, Allocation((0, 0, 0), 2))


def test_prefers():
    inst = Instance(3, [[0], [0], [0]], [canonical_ranks([0, 1, 1])])
    assert prefers(inst, 0, 0, 1) is Preference.BETTER
    assert prefers(inst, 0, 1, 2) is Preference.EQUAL
    assert prefers(inst, 0, 2, 0) is Preference.WORSE
    with pytest.raises(DomainError):
        prefers(inst, 1, 0, 1)


def test_allocation_bundles_and_moves():
    a = Allocation.from_bundles([[2], [], [0, 1]])
    assert a.assignment == (2, 2, 0)
    assert a.bundles == ((2,), (), (0, 1))
    assert a.moved(2, 1).assignment == (2, 2, 1)
    assert a.swapped(0, 2).assignment == (0, 2, 2)
    with pytest.raises(ValidationError):
        Allocation.from_bundles([[0], [0]])
    with pytest.raises(ValidationError):
        Allocation((0, 3), 2)


def test_allocation_json():
    a = Allocation((0, 0), 3)
    again = load_allocation(save_allocation(a))
    assert again == a and again.num_teams == 3
    assert load_allocation('{"assignment": [1, 0]}', 2).assignment == (1, 0)
    with pytest.raises(ValidationError):
        load_allocation('{"assignment": [1, 0]}')
    with pytest.raises(ValidationError):
        load_allocation('{"teams": 3, "assignment": [1, 0]}', 2)
    with pytest.raises(ValidationError):
        load_allocation("not json")


def test_instance_json_reports_field():
    doc = {"teams": 2, "players": [{"id": "a", "values": [1, 2], "ranks": [1, 2]}]}
    inst = instance_from_dict(doc)
    assert inst.player_ids == ("a",) and inst.values == ((1,), (2,))
    doc["players"][0]["ranks"] = [1, 2, 3]
    with pytest.raises(ValidationError) as err:
        instance_from_dict(doc)
    assert err.value.field == "players[0].ranks"
    with pytest.raises(ValidationError):
        load_instance(b"{")


@given(instances())
def test_instance_round_trip(inst):
    assert load_instance(save_instance(inst)) == inst
    assert json.loads(save_instance(inst)) == instance_to_dict(inst)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=6))
def test_canonical_ranks_idempotent(levels):
    r = canonical_ranks(levels)
    assert canonical_ranks(r) == r
    assert min(r) == 1


@settings(max_examples=60)
@given(instance_and_assignment())
def test_utilities_are_additive(pair):
    inst, assignment = pair
    alloc = Allocation(assignment, inst.num_teams)
    us = team_utilities(inst, alloc)
    for i in inst.teams:
        assert us[i] == sum(inst.values[i][p] for p in alloc.bundles[i])
    assert sum(len(b) for b in alloc.bundles) == inst.num_players
