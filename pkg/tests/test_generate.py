import pytest
from hypothesis import given
from hypothesis import strategies as st

from teamalloc.generate import GeneratorConfig, XorShift64Star, gen_random_instance, splitmix64
from teamalloc.model import ValidationError


def test_rng_reference_values():
    # frozen outputs so ports in other languages can be checked against them
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    rng = XorShift64Star(1)
    assert [rng.next_u64() for _ in range(2)] == [0x4B46A55DF3611B9B, 0xD7E1F1410E763EF4]


@given(st.integers(0, 2**64 - 1), st.integers(-5, 5), st.integers(0, 10))
def test_randint_in_range(seed, lo, width):
    rng = XorShift64Star(seed)
    assert all(lo <= rng.randint(lo, lo + width) <= lo + width for _ in range(20))


@given(st.integers(0, 10**9))
def test_same_seed_same_instance(seed):
    cfg = GeneratorConfig((1, 4), (0, 8), (-3, 3), "any", "weak", seed)
    assert gen_random_instance(cfg) == gen_random_instance(cfg)


@pytest.mark.parametrize("signs, lo, hi", [("nonneg", 0, 9), ("nonpos", -9, 0), ("binary", 0, 1)])
def test_sign_modes(signs, lo, hi):
    for seed in range(20):
        inst = gen_random_instance(GeneratorConfig(3, 6, (lo, hi), signs, "strict", seed))
        assert all(lo <= v <= hi for row in inst.values for v in row)


def test_identical_and_preference_modes():
    for seed in range(20):
        inst = gen_random_instance(GeneratorConfig(3, 5, (0, 9), "identical", "single-favorite", seed))
        assert inst.has_identical_valuations()
        assert all(sorted(r) == [1, 2, 2] for r in inst.ranks)
        strict = gen_random_instance(GeneratorConfig(3, 5, (0, 9), "any", "strict", seed))
        assert all(sorted(r) == [1, 2, 3] for r in strict.ranks)


def test_ranges_are_respected():
    sizes = {(i.num_teams, i.num_players)
             for i in (gen_random_instance(GeneratorConfig((2, 3), (1, 2), seed=s)) for s in range(60))}
    assert sizes == {(2, 1), (2, 2), (3, 1), (3, 2)}


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=0, m=3),
        dict(n=2, m=(4, 3)),
        dict(n=2, m=3, value_range=(1, 0)),
        dict(n=2, m=3, value_range=(-1, 1), sign_mode="nonneg"),
        dict(n=2, m=3, value_range=(-1, 1), sign_mode="nonpos"),
        dict(n=2, m=3, value_range=(0, 2), sign_mode="binary"),
    ],
)
def test_bad_configs(kwargs):
    with pytest.raises(ValidationError):
        GeneratorConfig(**kwargs)
