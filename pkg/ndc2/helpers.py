"""Helper functions for enumerating and sampling words and expressions."""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator
from fractions import Fraction
from typing import Any

from .algebra import Expr, Generator, Kind, Word, eta, xi


def differential_alphabet(max_level: int) -> list[Generator]:
    """Return xi and eta at every level up to ``max_level``."""
    return [g for level in range(max_level + 1) for g in (xi(level), eta(level))]


def all_words(max_len: int, max_level: int, min_len: int = 1) -> Iterator[Word]:
    """Yield every derivative-free word with the given length and level bounds."""
    alphabet = differential_alphabet(max_level)
    for length in range(min_len, max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


def random_word(rng: random.Random, max_len: int, max_level: int, min_len: int = 1) -> Word:
    """Return a random derivative-free word."""
    length = rng.randint(min_len, max_len)
    return tuple(
        Generator(rng.choice((Kind.XI, Kind.ETA)), rng.randint(0, max_level))
        for _ in range(length)
    )


def random_scalar(rng: random.Random, ctx: Any, max_degree: int = 2, max_coeff: int = 3) -> Any:
    """Return a random nonzero polynomial in the context's indeterminates."""
    while True:
        value = ctx.zero
        for _ in range(rng.randint(1, 3)):
            term = ctx.from_int(rng.randint(-max_coeff, max_coeff))
            for name in ctx.names:
                term *= ctx[name] ** rng.randint(0, max_degree)
            value += term
        if value:
            return value


def random_expr(
    rng: random.Random,
    ctx: Any,
    max_terms: int = 3,
    max_len: int = 4,
    max_level: int = 3,
) -> Expr:
    """Return a random derivative-free expression with polynomial coefficients."""
    return Expr(
        (random_word(rng, max_len, max_level), random_scalar(rng, ctx))
        for _ in range(rng.randint(1, max_terms))
    )


def random_point(
    rng: random.Random, names: tuple[str, ...], max_value: int = 9
) -> dict[str, Fraction]:
    """Return a random point with nonzero rational coordinates away from 1."""
    point = {}
    for name in names:
        value = Fraction(rng.randint(1, max_value), rng.randint(1, max_value))
        if value == 1:
            value = Fraction(max_value + 1, max_value)
        point[name] = value
    return point


def commutative_key(word: Word) -> Word:
    """Return the letters of ``word`` in a fixed order, forgetting noncommutativity."""
    return tuple(sorted(word))


def commutative_image(e: Expr) -> Expr:
    """Return ``e`` with every word replaced by its sorted letters."""
    return Expr((commutative_key(word), coeff) for word, coeff in e)
