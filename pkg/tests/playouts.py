"""Random playouts used by the termination checks."""
from __future__ import annotations

import random

from gameseries import kernel as K
from gameseries.arena import CompoundState, Series, apply_move, progress_measure
from gameseries.ordinals import ordinal_compare
from gameseries.parsing import parse_series_spec

SPECS = [
    "plain(ones) + neg(ord(w))",
    "plain(stars) + plain(neg(stars))",
    "bullet(ups) + game(-1)",
    "bullet(stars) + game({0|*})",
    "plain(geom_half) + game(-1)",
    "subset(pm_one)",
    "plain(ordpowers) + neg(ord(w^3))",
    "bullet(list([*,{*|*},*], tail=interleave(stars,zeros)))",
    "plain(twos) + nim(w+1)",
]


def lex_less(a: tuple, b: tuple) -> bool:
    if a[0] != b[0]:
        return a[0] < b[0]
    return ordinal_compare(a[1], b[1]) < 0


def random_playout(rng: random.Random, state: CompoundState, max_moves: int = 400) -> int:
    """Play uniformly random legal moves; asserts the progress measure drops each move."""
    for step in range(max_moves):
        comps = list(enumerate(state.components))
        rng.shuffle(comps)
        mv = None
        for c, comp in comps:
            ms = comp.moves(c, state.mover, rng.randint(1, 4))
            if ms:
                mv = rng.choice(ms)
                break
        if mv is None:
            return step
        before = progress_measure(state)
        state = apply_move(state, mv)
        after = progress_measure(state)
        assert lex_less(after, before), f"measure did not drop on {mv}: {before} -> {after}"
    raise AssertionError("playout did not terminate")


def compounds():
    return [parse_series_spec(s) for s in SPECS]
