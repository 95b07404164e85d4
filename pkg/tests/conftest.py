"""Shared generators for randomized tests."""
from __future__ import annotations

import random

from fareybundle import ALPHA, BETA, Matrix2, Slope


def random_word_blocks(rng: random.Random, max_length: int = 12) -> tuple[tuple[int, int], ...]:
    """Exponent blocks of a random positive word of bounded letter length."""
    blocks = []
    remaining = rng.randint(2, max_length)
    while remaining >= 2:
        a = rng.randint(1, min(3, remaining - 1))
        b = rng.randint(1, min(3, remaining - a))
        blocks.append((a, b))
        remaining -= a + b
    return tuple(blocks)


def word_matrix(blocks, sign: int = 1) -> Matrix2:
    m = Matrix2.identity()
    for a, b in blocks:
        m = m * Matrix2(1, a, 0, 1) * Matrix2(1, 0, b, 1)
    return Matrix2(*m.entries(), sign=sign)


def random_conjugator(rng: random.Random, steps: int = 3) -> Matrix2:
    m = Matrix2.identity()
    for _ in range(rng.randint(0, steps)):
        gen = rng.choice([ALPHA, BETA, ALPHA.inverse(), BETA.inverse()])
        m = m * gen
    return m


def random_hyperbolic(rng: random.Random, max_length: int = 8,
                      conjugate: bool = True, allow_negative: bool = True) -> Matrix2:
    sign = rng.choice((1, -1)) if allow_negative else 1
    m = word_matrix(random_word_blocks(rng, max_length), sign)
    if conjugate:
        g = random_conjugator(rng)
        m = g * m * g.inverse()
    return m


def bounded_slopes(bound: int) -> list[Slope]:
    import math

    out = []
    for q in range(0, bound + 1):
        for p in range(-bound, bound + 1):
            if (p, q) == (0, 0) or math.gcd(abs(p), abs(q)) != 1:
                continue
            if q == 0 and p != 1:
                continue
            out.append(Slope(p, q))
    return out
