"""Amplitude alphabet and composition arithmetic.

A composition is the vector of occurrence counts of each amplitude level in a
shaped sequence; it identifies one energy shell of the shaping sphere.  All
counting here is exact integer arithmetic (Python ints are arbitrary
precision, which is required once L grows past 32).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


@dataclass(frozen=True)
class AmplitudeAlphabet:
    """Ordered set of positive odd amplitude levels (PAM amplitudes)."""

    levels: tuple[int, ...] = (1, 3, 5, 7)

    def __post_init__(self):
        if len(self.levels) < 2:
            raise ValueError("alphabet needs at least 2 levels")
        if any(a <= 0 or a % 2 == 0 for a in self.levels):
            raise ValueError("levels must be positive odd integers")
        if any(a >= b for a, b in zip(self.levels, self.levels[1:])):
            raise ValueError("levels must be strictly increasing")

    @property
    def size(self) -> int:
        return len(self.levels)

    @property
    def energies(self) -> tuple[int, ...]:
        return tuple(a * a for a in self.levels)

    def index_of(self, level: int) -> int:
        return self.levels.index(level)


@dataclass(frozen=True)
class Composition:
    """Occurrence counts of each alphabet level, one entry per level."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")
        if sum(self.counts) == 0:
            raise ValueError("composition must be non-empty")

    @property
    def length(self) -> int:
        return sum(self.counts)

    def energy(self, alphabet: AmplitudeAlphabet) -> int:
        return sum(c * e for c, e in zip(self.counts, alphabet.energies))


@lru_cache(maxsize=None)
def _factorial(n: int) -> int:
    return math.factorial(n)


def multinomial(comp: Composition) -> int:
    """Number of distinct permutations of the composition, L!/prod(c_k!)."""
    num = _factorial(comp.length)
    for c in comp.counts:
        num //= _factorial(c)
    return num


def sequences_for(comp: Composition) -> int:
    """Largest power of two not exceeding multinomial(comp)."""
    n_perm = multinomial(comp)
    return 1 << (n_perm.bit_length() - 1)


def _iter_count_vectors(n_levels: int, total: int) -> Iterator[tuple[int, ...]]:
    if n_levels == 1:
        yield (total,)
        return
    for c in range(total + 1):
        for rest in _iter_count_vectors(n_levels - 1, total - c):
            yield (c,) + rest


def enumerate_compositions(alphabet: AmplitudeAlphabet, L: int) -> list[Composition]:
    """All compositions of L amplitudes, sorted by (energy asc, counts lex asc)."""
    if L < 1:
        raise ValueError("L must be positive")
    comps = [Composition(c) for c in _iter_count_vectors(alphabet.size, L)]
    comps.sort(key=lambda c: (c.energy(alphabet), c.counts))
    return comps
