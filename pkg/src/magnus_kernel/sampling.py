"""Seeded random words and automorphisms for the randomized checks."""

from __future__ import annotations

import random
from typing import List

from .free_group import (
    Automorphism,
    Word,
    commutator,
    inner,
    magnus_commutator,
    magnus_conjugation,
)


def random_word(rng: random.Random, rank: int, max_len: int, min_len: int = 0) -> Word:
    length = rng.randint(min_len, max_len)
    letters = [rng.choice((1, -1)) * rng.randint(1, rank) for _ in range(length)]
    return Word.from_letters(rank, letters)


def random_commutator_word(rng: random.Random, rank: int, max_len: int = 4, factors: int = 2) -> Word:
    """A product of random commutators, so an element of [F, F]."""
    w = Word.identity(rank)
    for _ in range(rng.randint(1, factors)):
        a = random_word(rng, rank, max_len, 1)
        b = random_word(rng, rank, max_len, 1)
        w = w * commutator(a, b)
    return w


def random_second_derived(rng: random.Random, rank: int, max_len: int = 3) -> Word:
    """A random element of [[F, F], [F, F]]: a product of commutators of [F, F] elements."""
    w = Word.identity(rank)
    while w.is_identity():
        for _ in range(rng.randint(1, 2)):
            u = random_commutator_word(rng, rank, max_len, 2)
            v = random_commutator_word(rng, rank, max_len, 2)
            w = w * commutator(u, v)
    return w


def magnus_generators(rank: int) -> List[Automorphism]:
    gens = []
    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            if j != i:
                gens.append(magnus_conjugation(rank, i, j))
        for j in range(1, rank + 1):
            for l in range(j + 1, rank + 1):
                if i not in (j, l):
                    gens.append(magnus_commutator(rank, i, j, l))
    return gens


def non_ia_example(rank: int) -> Automorphism:
    """x1 -> x1 x2."""
    x1, x2 = Word.generator(rank, 1), Word.generator(rank, 2)
    return Automorphism.from_moves(rank, {1: x1 * x2}, {1: x1 * x2.inverse()}, check=False)


def random_ia(rng: random.Random, rank: int, max_factors: int = 3, word_len: int = 3) -> Automorphism:
    """Product of random Magnus generators, their inverses and inner automorphisms."""
    pool = magnus_generators(rank)
    result = Automorphism.identity(rank)
    for _ in range(rng.randint(1, max_factors)):
        if rng.random() < 0.25:
            f = inner(random_word(rng, rank, word_len, 1))
        else:
            f = rng.choice(pool)
        if rng.random() < 0.5:
            f = f.inverse()
        result = result * f
    return result


def random_automorphism(rng: random.Random, rank: int, max_factors: int = 3) -> Automorphism:
    """Like ``random_ia`` but may include the non-IA map x1 -> x1 x2."""
    result = Automorphism.identity(rank)
    extra = non_ia_example(rank)
    for _ in range(rng.randint(1, max_factors)):
        f = extra if rng.random() < 0.3 else random_ia(rng, rank, 1)
        if rng.random() < 0.5:
            f = f.inverse()
        result = result * f
    return result
