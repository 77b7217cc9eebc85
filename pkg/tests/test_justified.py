import pytest
from hypothesis import given, settings

import oracles
from conftest import instances
from teamalloc.justified import (
    ThresholdProfile,
    ValleyPath,
    alg_cut_and_choose_identical,
    alg_jef_two_teams_search,
    allocation_for_profile,
    lumpy_tie,
    threshold_profiles,
    valley_path,
)
from teamalloc.model import DomainError, Instance, ValidationError
from teamalloc.verifiers import exists_ef1_jef_bruteforce, is_ef1, is_justified_ef


@settings(max_examples=200, deadline=None)
@given(instances(n=(2, 2), m=(0, 8), values=(0, 4), strict=True))
def test_search_decides_like_enumeration(inst):
    found = alg_jef_two_teams_search(inst)
    truth = exists_ef1_jef_bruteforce(inst)
    assert (found is None) == (truth is None)
    if found is not None:
        assert oracles.ef1(inst.values, found.assignment, 2)
        assert oracles.justified_ef(inst.values, inst.ranks, found.assignment)


@settings(max_examples=200, deadline=None)
@given(instances(n=(2, 2), m=(0, 9), values=(0, 5), identical=True))
def test_cut_and_choose_guarantees(inst):
    a = alg_cut_and_choose_identical(inst).assignment
    assert oracles.ef1(inst.values, a, 2)
    assert oracles.justified_ef(inst.values, inst.ranks, a)


def test_no_ef1_jef_allocation():
    inst = Instance.from_weak_orders([[3, 3, 2, 2], [1, 1, 0, 0]], [[0, 1]] * 4)
    assert alg_jef_two_teams_search(inst) is None
    assert exists_ef1_jef_bruteforce(inst) is None


def test_profiles_ascend_and_skip_impossible_counts():
    inst = Instance.from_weak_orders([[2, 2, 1], [1, 0, 3]], [[0, 1], [0, 1], [1, 0]])
    profiles = list(threshold_profiles(inst))
    keys = [(p.x1, p.n1, p.x2, p.n2) for p in profiles]
    assert keys == sorted(keys)
    # two team-1 fans worth 2, so (2, 3) never appears; one team-2 fan worth 3
    assert (2, 2) in {(p.x1, p.n1) for p in profiles}
    assert (2, 3) not in {(p.x1, p.n1) for p in profiles}
    assert {(p.x2, p.n2) for p in profiles} == {(float("-inf"), 0), (3, 1)}


def test_profile_allocation():
    inst = Instance.from_weak_orders([[2, 2, 1], [1, 0, 3]], [[0, 1], [0, 1], [1, 0]])
    # one of the two value-2 team-1 fans goes across: the one team 2 likes more
    a = allocation_for_profile(inst, ThresholdProfile(2, 1, float("-inf"), 0))
    assert a.assignment == (1, 0, 1)
    assert allocation_for_profile(inst, ThresholdProfile(2, 3, float("-inf"), 0)) is None


def test_search_preconditions():
    with pytest.raises(ValidationError):
        alg_jef_two_teams_search(Instance(2, [[1], [1]], [[1, 1]]))
    with pytest.raises(ValidationError):
        alg_jef_two_teams_search(Instance(2, [[-1], [1]], [[1, 2]]))
    with pytest.raises(ValidationError):
        alg_jef_two_teams_search(Instance(3, [[1]] * 3, [[1, 2, 3]]))
    with pytest.raises(ValidationError):
        alg_cut_and_choose_identical(Instance(2, [[1], [2]], [[1, 2]]))


def test_valley_path_shape():
    inst = Instance.from_weak_orders([[3, 1, 2, 5, 4]] * 2, [[0, 1], [0, 0], [1, 0], [0, 1], [1, 0]])
    path = valley_path(inst)
    # team-1 fans (incl. indifferent) by decreasing value, then team-2 fans increasing
    assert path.players == (3, 0, 1, 2, 4)
    assert path.prefix_sums == (0, 5, 8, 9, 11, 15)


def test_lumpy_tie():
    assert lumpy_tie(ValleyPath.from_values([0], [0])) == 1
    assert lumpy_tie(ValleyPath.from_values([0, 1, 2], [1, 1, 5])) == 3
    with pytest.raises(DomainError):
        lumpy_tie(ValleyPath.from_values([], []))


def test_cut_and_choose_worked_example():
    inst = Instance.from_weak_orders([[1, 1, 1, 1]] * 2, [[0, 1]] * 4)
    a = alg_cut_and_choose_identical(inst)
    assert a.assignment == (1, 1, 0, 0)
    assert is_ef1(inst, a).holds and is_justified_ef(inst, a).holds
    assert alg_cut_and_choose_identical(Instance(2, [[], []], [])).assignment == ()
