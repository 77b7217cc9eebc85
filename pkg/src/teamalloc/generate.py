"""Seeded random instance families.

Randomness comes from :class:`XorShift64Star` (xorshift64*: shifts
``>>12, <<25, >>27`` then a multiply by ``0x2545F4914F6CDD1D`` mod 2**64),
seeded through one SplitMix64 step so that small seeds are spread out.  The generator is
fully specified here, so a seed reproduces the same instance in any
language.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import Instance, ValidationError, canonical_ranks

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """64-bit xorshift* generator.

    >>> a, b = XorShift64Star(42), XorShift64Star(42)
    >>> [a.next_u64() for _ in range(3)] == [b.next_u64() for _ in range(3)]
    True
    """

    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in ``[lo, hi]`` (modulo reduction)."""
        return lo + self.next_u64() % (hi - lo + 1)

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]


class SignMode(enum.Enum):
    ANY = "any"
    NONNEGATIVE = "nonneg"
    NONPOSITIVE = "nonpos"
    BINARY = "binary"
    IDENTICAL = "identical"


class PrefMode(enum.Enum):
    STRICT = "strict"
    WEAK = "weak"
    SINGLE_FAVORITE = "single-favorite"


@dataclass(frozen=True)
class GeneratorConfig:
    """Instance family.  ``n`` and ``m`` may be fixed or inclusive ``(lo, hi)`` ranges."""

    n: int | tuple[int, int]
    m: int | tuple[int, int]
    value_range: tuple[int, int] = (-9, 9)
    sign_mode: SignMode = SignMode.ANY
    pref_mode: PrefMode = PrefMode.STRICT
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "sign_mode", SignMode(self.sign_mode))
        object.__setattr__(self, "pref_mode", PrefMode(self.pref_mode))
        object.__setattr__(self, "value_range", tuple(self.value_range))
        for name in ("n", "m"):
            val = getattr(self, name)
            lo, hi = (val, val) if isinstance(val, int) else tuple(val)
            object.__setattr__(self, name, val if isinstance(val, int) else (lo, hi))
            if lo > hi or lo < (1 if name == "n" else 0):
                raise ValidationError(f"bad range {val!r}", name)
        lo, hi = self.value_range
        if lo > hi:
            raise ValidationError(f"empty value range {lo}..{hi}", "values")
        mode = self.sign_mode
        if mode is SignMode.BINARY and not (0 <= lo and hi <= 1):
            raise ValidationError("binary values need a range inside 0..1", "values")
        if mode is SignMode.NONNEGATIVE and lo < 0:
            raise ValidationError("nonnegative values need lo >= 0", "values")
        if mode is SignMode.NONPOSITIVE and hi > 0:
            raise ValidationError("nonpositive values need hi <= 0", "values")

    def with_seed(self, seed: int) -> "GeneratorConfig":
        return GeneratorConfig(self.n, self.m, self.value_range, self.sign_mode, self.pref_mode, seed)

    def bounds(self, name: str) -> tuple[int, int]:
        val = getattr(self, name)
        return (val, val) if isinstance(val, int) else val


def _rank_vector(rng: XorShift64Star, n: int, mode: PrefMode) -> tuple[int, ...]:
    if mode is PrefMode.STRICT:
        order = list(range(n))
        rng.shuffle(order)
        return canonical_ranks(order)
    if mode is PrefMode.WEAK:
        return canonical_ranks([rng.randint(0, n - 1) for _ in range(n)])
    favorite = rng.randint(0, n - 1)
    return tuple(1 if i == favorite or n == 1 else 2 for i in range(n))


def gen_random_instance(config: GeneratorConfig) -> Instance:
    """Deterministic instance for ``config.seed``.

    Draw order: n, m, then values team by team (one shared row in identical
    mode), then one rank vector per player.
    """
    rng = XorShift64Star(config.seed)
    n = rng.randint(*config.bounds("n"))
    m = rng.randint(*config.bounds("m"))
    lo, hi = config.value_range
    if config.sign_mode is SignMode.IDENTICAL:
        row = [rng.randint(lo, hi) for _ in range(m)]
        values = [list(row) for _ in range(n)]
    else:
        values = [[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)]
    ranks = [_rank_vector(rng, n, config.pref_mode) for _ in range(m)]
    return Instance(n, values, ranks)
