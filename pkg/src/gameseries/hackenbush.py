"""Single-stack Green-Red-Blue Hackenbush, including dark, greenish-blue and super-red edges."""
from __future__ import annotations

import enum
import functools
from typing import Optional

from . import kernel as K
from .kernel import Game, Player, LEFT, RIGHT
from .ordinals import OMEGA
from .arena import FiniteGame, NimberGame, OrdinalComponent
from .limits import Family, LimitResult, TString, string_limit


class Edge(enum.Enum):
    BLUE = "B"
    RED = "R"
    GREEN = "G"
    DARK_BLUE = "b"
    DARK_RED = "r"
    DARK_GREEN = "g"
    GREENISH_BLUE = "Q"
    SUPER_RED = "S"


E = Edge
_ANYWHERE = {LEFT: {E.BLUE, E.GREEN, E.GREENISH_BLUE}, RIGHT: {E.RED, E.GREEN, E.SUPER_RED}}
_TOP_ONLY = {LEFT: {E.DARK_BLUE, E.DARK_GREEN}, RIGHT: {E.DARK_RED, E.DARK_GREEN, E.GREENISH_BLUE}}
_MIRROR = {E.BLUE: E.RED, E.RED: E.BLUE, E.DARK_BLUE: E.DARK_RED, E.DARK_RED: E.DARK_BLUE,
           E.GREEN: E.GREEN, E.DARK_GREEN: E.DARK_GREEN}

Stack = tuple  # of Edge, bottom first


def parse_stack(text: str) -> Stack:
    try:
        return tuple(Edge(c) for c in text.strip())
    except ValueError:
        bad = next(c for c in text.strip() if c not in {e.value for e in Edge})
        raise ValueError(f"unknown edge letter {bad!r}; use B R G b r g Q S") from None


def show_stack(st: Stack) -> str:
    return "".join(e.value for e in st)


def stack_moves(st: Stack, mover: Player) -> list[tuple[int, Stack]]:
    out = []
    top = len(st) - 1
    for k, e in enumerate(st):
        if e in _ANYWHERE[mover] or (k == top and e in _TOP_ONLY[mover]):
            rest = st[:k]
            if e is E.SUPER_RED:
                rest = (E.GREEN,) * k
            out.append((k, rest))
    return out


@functools.lru_cache(maxsize=None)
def stack_to_game(st: Stack) -> Game:
    st = tuple(st)
    return Game([stack_to_game(r) for _, r in stack_moves(st, LEFT)],
                [stack_to_game(r) for _, r in stack_moves(st, RIGHT)])


def negate_stack(st: Stack) -> Optional[Stack]:
    """Colour-swapped stack; None when a magic edge has no defined mirror."""
    if any(e not in _MIRROR for e in st):
        return None
    return tuple(_MIRROR[e] for e in st)


def grundy(st: Stack) -> Optional[int]:
    return K.grundy(stack_to_game(tuple(st)))


def stack_string_limit(fam: Family) -> tuple[LimitResult, Optional[object]]:
    """String limit over the edge alphabet, plus an arena component when one is available."""
    res = string_limit(fam)
    s: TString = res.string
    if s.is_finite:
        return res, FiniteGame(stack_to_game(parse_stack(s.head)))
    if not s.after and not s.head and len(s.period) == 1:
        e = Edge(s.period)
        if e is E.GREEN:
            return res, NimberGame(OMEGA)
        if e is E.BLUE:
            return res, OrdinalComponent(OMEGA, True)
        if e is E.RED:
            return res, OrdinalComponent(OMEGA, False)
    return res, None
