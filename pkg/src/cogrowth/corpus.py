"""Reproducible random subgroups for cross-checking the algorithms.

The seed comes from the ``COGROWTH_SEED`` environment variable when no
explicit seed is given, so a failing corpus member can be replayed.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

from .core import CoreGraph, core_of
from .words import Word, alphabet, format_word

SEED_VARIABLE = "COGROWTH_SEED"
DEFAULT_SEED = 20240


def corpus_seed(seed: int | None = None) -> int:
    if seed is not None:
        return seed
    raw = os.environ.get(SEED_VARIABLE)
    if raw is None or not raw.strip():
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SEED_VARIABLE} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class Sample:
    rank: int
    generators: tuple[Word, ...]

    def core(self) -> CoreGraph:
        return core_of(self.rank, self.generators)

    def __str__(self) -> str:
        words = ", ".join(format_word(w, self.rank) for w in self.generators)
        return f"F{self.rank} <{words}>"


def random_reduced_word(rng: random.Random, rank: int, length: int) -> Word:
    letters = alphabet(rank)
    w: list[int] = []
    while len(w) < length:
        x = rng.choice(letters)
        if w and w[-1] == -x:
            continue
        w.append(x)
    return tuple(w)


def random_subgroup(
    rng: random.Random,
    ranks: tuple[int, ...] = (2, 3),
    max_generators: int = 4,
    max_length: int = 6,
) -> Sample:
    rank = rng.choice(ranks)
    count = rng.randint(1, max_generators)
    gens = tuple(
        random_reduced_word(rng, rank, rng.randint(1, max_length)) for _ in range(count)
    )
    return Sample(rank, gens)


def random_corpus(
    size: int = 60,
    seed: int | None = None,
    ranks: tuple[int, ...] = (2, 3),
    max_generators: int = 4,
    max_length: int = 6,
) -> list[Sample]:
    rng = random.Random(corpus_seed(seed))
    return [random_subgroup(rng, ranks, max_generators, max_length) for _ in range(size)]
