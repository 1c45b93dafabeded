"""Brute-force play-out oracle, independent of the kernel's comparison code.

Positions are nested (left, right) tuples; a sum is a sorted tuple of positions
and the mover wins iff some move leads to a sum the opponent loses.
"""
from __future__ import annotations

import functools
import itertools
import random

from gameseries.kernel import Game


def to_tuple(g: Game):
    return (tuple(sorted(to_tuple(x) for x in g.left)), tuple(sorted(to_tuple(x) for x in g.right)))


def neg(t):
    return (tuple(sorted(neg(x) for x in t[1])), tuple(sorted(neg(x) for x in t[0])))


@functools.lru_cache(maxsize=None)
def mover_wins(parts: tuple, left_moves: bool) -> bool:
    side = 0 if left_moves else 1
    for k, p in enumerate(parts):
        for o in p[side]:
            nxt = tuple(sorted(parts[:k] + (o,) + parts[k + 1:]))
            if not mover_wins(nxt, not left_moves):
                return True
    return False


def outcome(t) -> str:
    lf = mover_wins((t,), True)
    rf = mover_wins((t,), False)
    return {(True, True): "FirstWins", (True, False): "LeftWins",
            (False, True): "RightWins", (False, False): "SecondWins"}[(lf, rf)]


def leq(a, b) -> bool:
    """a <= b iff Left never loses b - a moving second, i.e. Right moving first loses."""
    return not mover_wins(tuple(sorted((b, neg(a)))), False)


def forms_upto_day(d: int) -> list[Game]:
    forms = [Game()]
    for _ in range(d):
        subsets = [c for r in range(len(forms) + 1) for c in itertools.combinations(forms, r)]
        forms = list({Game(l, r) for l in subsets for r in subsets})
    return forms


def random_day3(rng: random.Random, count: int) -> list[Game]:
    base = forms_upto_day(2)
    out = []
    for _ in range(count):
        out.append(Game(rng.sample(base, rng.randint(0, 4)), rng.sample(base, rng.randint(0, 4))))
    return out
