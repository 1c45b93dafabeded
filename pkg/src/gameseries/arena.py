"""Playable compounds: finite games, ordinals, nimbers and the three series protocols."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Optional, Union

from . import kernel as K
from .kernel import Game, Player, LEFT, RIGHT
from .ordinals import Ordinal, descent_samples, natural_sum, natural_sum_all
from .sequences import (
    OrdinalGame, SequenceSpec, Summand, is_summand_option, negate_summand,
    show_summand, summand_birthday, summand_game, summand_key, summand_options,
)

VARIANTS = ("plain", "bullet", "subset")
SUBSET_UNIVERSE_CAP = 10


class IllegalMove(ValueError):
    pass


class BoundDependent(RuntimeError):
    """Emptiness of the move list could not be certified independently of the bound."""


# ------------------------------------------------------------------ moves

@dataclass(frozen=True)
class OptionMove:
    comp: int
    option: Game

    def __str__(self):
        return f"c{self.comp}:{K.show(self.option)}"


@dataclass(frozen=True)
class OrdinalMove:
    comp: int
    target: Ordinal

    def __str__(self):
        return f"c{self.comp}:to({self.target})"


@dataclass(frozen=True)
class Open:
    comp: int
    n: int
    i: int
    option: Summand

    def __str__(self):
        return f"c{self.comp}:open(n={self.n},i={self.i},{show_summand(self.option)})"


@dataclass(frozen=True)
class PlayWithin:
    comp: int
    i: int
    option: Summand

    def __str__(self):
        return f"c{self.comp}:within(i={self.i},{show_summand(self.option)})"


@dataclass(frozen=True)
class Close:
    comp: int
    m: int
    j: int
    option: Summand

    def __str__(self):
        return f"c{self.comp}:close(m={self.m},j={self.j},{show_summand(self.option)})"


@dataclass(frozen=True)
class SubsetOpen:
    comp: int
    indices: tuple
    i: int
    option: Summand

    def __str__(self):
        idx = ",".join(map(str, self.indices))
        return f"c{self.comp}:sopen(I={{{idx}}},i={self.i},{show_summand(self.option)})"


@dataclass(frozen=True)
class SubsetClose:
    comp: int
    indices: tuple
    j: int
    option: Summand

    def __str__(self):
        idx = ",".join(map(str, self.indices))
        return f"c{self.comp}:sclose(J={{{idx}}},j={self.j},{show_summand(self.option)})"


@dataclass(frozen=True)
class LimitMove:
    comp: int
    n: int
    option: Game

    def __str__(self):
        return f"c{self.comp}:limit(n={self.n},{K.show(self.option)})"


Move = Union[OptionMove, OrdinalMove, Open, PlayWithin, Close, SubsetOpen, SubsetClose, LimitMove]


def with_comp(mv: Move, comp: int) -> Move:
    return replace(mv, comp=comp)


def negate_move(mv: Move) -> Move:
    if isinstance(mv, (OptionMove, LimitMove)):
        return replace(mv, option=K.negate(mv.option))
    if isinstance(mv, OrdinalMove):
        return mv
    return replace(mv, option=negate_summand(mv.option))


# ------------------------------------------------------------- components

@dataclass(frozen=True)
class FiniteGame:
    game: Game
    rank = 0

    def moves(self, c: int, player: Player, bound: int) -> list:
        return [OptionMove(c, o) for o in self.game.options(player)]

    def apply(self, mv, player: Player):
        if not isinstance(mv, OptionMove) or not any(o is mv.option for o in self.game.options(player)):
            raise IllegalMove(f"not an option of {K.show(self.game)} for {player}")
        return FiniteGame(mv.option)

    def empty_is_final(self, player, bound) -> bool:
        return True

    def finite_value(self) -> Optional[Game]:
        return self.game

    def measure(self) -> Ordinal:
        return Ordinal.of(self.game.birthday)

    def negated(self):
        return FiniteGame(K.negate(self.game))

    def key(self):
        return ("g", self.game.uid)

    def __str__(self):
        return f"game({K.show(self.game)})"


@dataclass(frozen=True)
class OrdinalComponent:
    """alpha (positive, Left moves) or -alpha (negative, Right moves)."""

    alpha: Ordinal
    positive: bool = True
    rank = 0

    def _owner(self) -> Player:
        return LEFT if self.positive else RIGHT

    def moves(self, c, player, bound):
        if player is not self._owner() or self.alpha.is_zero():
            return []
        if self.alpha.is_finite():
            return [OrdinalMove(c, Ordinal.of(k)) for k in range(self.alpha.to_int())]
        return [OrdinalMove(c, b) for b in descent_samples(self.alpha, bound)]

    def apply(self, mv, player):
        if not isinstance(mv, OrdinalMove):
            raise IllegalMove("ordinal component takes an ordinal target")
        if player is not self._owner():
            raise IllegalMove(f"{player} has no move on {self}")
        if not mv.target < self.alpha:
            raise IllegalMove(f"target {mv.target} is not below {self.alpha}")
        return OrdinalComponent(mv.target, self.positive)

    def empty_is_final(self, player, bound):
        return True

    def finite_value(self):
        if not self.alpha.is_finite():
            return None
        n = self.alpha.to_int()
        return K.integer(n if self.positive else -n)

    def measure(self):
        return self.alpha

    def negated(self):
        return OrdinalComponent(self.alpha, not self.positive)

    def key(self):
        return ("o", self.alpha, self.positive)

    def __str__(self):
        return ("" if self.positive else "neg(") + f"ord({self.alpha})" + ("" if self.positive else ")")


@dataclass(frozen=True)
class NimberGame:
    alpha: Ordinal
    rank = 0

    def moves(self, c, player, bound):
        if self.alpha.is_finite():
            return [OrdinalMove(c, Ordinal.of(k)) for k in range(self.alpha.to_int())]
        return [OrdinalMove(c, b) for b in descent_samples(self.alpha, bound)]

    def apply(self, mv, player):
        if not isinstance(mv, OrdinalMove) or not mv.target < self.alpha:
            raise IllegalMove(f"nimber move must target an ordinal below {self.alpha}")
        return NimberGame(mv.target)

    def empty_is_final(self, player, bound):
        return True

    def finite_value(self):
        return K.nimber(self.alpha.to_int()) if self.alpha.is_finite() else None

    def measure(self):
        return self.alpha

    def negated(self):
        return self

    def key(self):
        return ("n", self.alpha)

    def __str__(self):
        return f"nim({self.alpha})"


# ------------------------------------------------------------------ series

@dataclass(frozen=True)
class Unopened:
    def key(self):
        return ("U",)


@dataclass(frozen=True)
class HalfOpened:
    owner: Player
    n: Optional[int]          # None for the subset variant
    indices: tuple
    head: tuple

    def key(self):
        return ("H", self.owner.value, self.n, self.indices, tuple(summand_key(x) for x in self.head))


@dataclass(frozen=True)
class Closed:
    indices: tuple
    head: tuple

    @property
    def m(self) -> int:
        return self.indices[-1]

    def key(self):
        return ("C", self.indices, tuple(summand_key(x) for x in self.head))


Phase = Union[Unopened, HalfOpened, Closed]


def _subsets(universe: int):
    items = range(universe)
    for r in range(1, universe + 1):
        yield from itertools.combinations(items, r)


@dataclass(frozen=True, eq=False)
class Series:
    variant: str
    spec: SequenceSpec
    phase: Phase = Unopened()

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")

    def __eq__(self, other):
        return isinstance(other, Series) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def rank(self) -> int:
        return {Unopened: 2, HalfOpened: 1, Closed: 0}[type(self.phase)]

    def entry(self, i: int) -> Summand:
        ph = self.phase
        if isinstance(ph, (HalfOpened, Closed)) and i in ph.indices:
            return ph.head[ph.indices.index(i)]
        return self.spec(i)

    def universe(self, bound: int) -> int:
        return min(bound, SUBSET_UNIVERSE_CAP - 1) + 1

    def moves(self, c: int, player: Player, bound: int) -> list:
        ph = self.phase
        out: list = []
        if isinstance(ph, Unopened):
            if self.variant == "subset":
                for I in _subsets(self.universe(bound)):
                    for i in I:
                        out += [SubsetOpen(c, I, i, o) for o in summand_options(self.spec(i), player, bound)]
            else:
                for n in range(bound + 1):
                    for i in range(n + 1):
                        out += [Open(c, n, i, o) for o in summand_options(self.spec(i), player, bound)]
            return out
        if isinstance(ph, Closed) or player is ph.owner or self.variant == "bullet":
            for i, x in zip(ph.indices, ph.head):
                out += [PlayWithin(c, i, o) for o in summand_options(x, player, bound)]
        if isinstance(ph, HalfOpened) and player is not ph.owner:
            if self.variant == "subset":
                for J in itertools.chain([()], _subsets(self.universe(bound))):
                    for j in sorted(set(ph.indices) | set(J)):
                        out += [SubsetClose(c, J, j, o) for o in summand_options(self.entry(j), player, bound)]
            else:
                for m in range(ph.n, max(ph.n, bound) + 1):
                    for j in range(m + 1):
                        out += [Close(c, m, j, o) for o in summand_options(self.entry(j), player, bound)]
        return out

    def _replace_at(self, indices: tuple, i: int, player: Player, option: Summand) -> tuple:
        if i not in indices:
            raise IllegalMove(f"index {i} is outside the chosen indices")
        head = tuple(self.entry(k) for k in indices)
        pos = indices.index(i)
        if not is_summand_option(head[pos], player, option):
            raise IllegalMove(f"{show_summand(option)} is not a {player} option of summand {i}")
        return head[:pos] + (option,) + head[pos + 1:]

    def apply(self, mv, player: Player) -> "Series":
        ph = self.phase
        v = self.variant
        if isinstance(mv, Open):
            if not isinstance(ph, Unopened) or v == "subset":
                raise IllegalMove("Open needs an unopened plain or bullet series")
            if not 0 <= mv.i <= mv.n:
                raise IllegalMove(f"Open requires i <= n (got i={mv.i}, n={mv.n})")
            idx = tuple(range(mv.n + 1))
            return Series(v, self.spec, HalfOpened(player, mv.n, idx, self._replace_at(idx, mv.i, player, mv.option)))
        if isinstance(mv, SubsetOpen):
            if not isinstance(ph, Unopened) or v != "subset":
                raise IllegalMove("SubsetOpen needs an unopened subset series")
            idx = tuple(sorted(set(mv.indices)))
            if not idx or idx[0] < 0:
                raise IllegalMove("SubsetOpen needs a nonempty set of naturals")
            return Series(v, self.spec, HalfOpened(player, None, idx, self._replace_at(idx, mv.i, player, mv.option)))
        if isinstance(mv, PlayWithin):
            if isinstance(ph, Unopened):
                raise IllegalMove("PlayWithin on an unopened series")
            if isinstance(ph, HalfOpened) and player is not ph.owner and v != "bullet":
                raise IllegalMove("the non-owner's first move on a half-opened series must close it")
            return Series(v, self.spec, replace(ph, head=self._replace_at(ph.indices, mv.i, player, mv.option)))
        if isinstance(mv, Close):
            if not isinstance(ph, HalfOpened) or v == "subset":
                raise IllegalMove("Close needs a half-opened plain or bullet series")
            if player is ph.owner:
                raise IllegalMove("the owner cannot change the index n")
            if mv.m < ph.n:
                raise IllegalMove(f"Close requires m >= n (got m={mv.m}, n={ph.n})")
            if not 0 <= mv.j <= mv.m:
                raise IllegalMove(f"Close requires j <= m (got j={mv.j}, m={mv.m})")
            idx = tuple(range(mv.m + 1))
            return Series(v, self.spec, Closed(idx, self._replace_at(idx, mv.j, player, mv.option)))
        if isinstance(mv, SubsetClose):
            if not isinstance(ph, HalfOpened) or v != "subset":
                raise IllegalMove("SubsetClose needs a half-opened subset series")
            if player is ph.owner:
                raise IllegalMove("the owner cannot choose the second index set")
            if any(j < 0 for j in mv.indices):
                raise IllegalMove("index sets hold naturals")
            idx = tuple(sorted(set(ph.indices) | set(mv.indices)))
            return Series(v, self.spec, Closed(idx, self._replace_at(idx, mv.j, player, mv.option)))
        raise IllegalMove(f"{type(mv).__name__} does not apply to a series")

    def empty_is_final(self, player: Player, bound: int) -> bool:
        ph = self.phase
        if isinstance(ph, Closed):
            return True
        if isinstance(ph, HalfOpened) and player is ph.owner:
            return True
        k = self.spec.no_option_from.get(player)
        if k is None:
            return False
        if isinstance(ph, HalfOpened) and self.variant != "subset":
            return k <= max(ph.n, bound) + 1
        return k <= self.universe(bound)

    def finite_value(self) -> Optional[Game]:
        if not isinstance(self.phase, Closed):
            return None
        parts = [summand_game(x) for x in self.phase.head]
        if any(p is None for p in parts):
            return None
        return K.canonical_sum(parts)

    def head_parts(self) -> tuple:
        return () if isinstance(self.phase, Unopened) else self.phase.head

    def measure(self) -> Ordinal:
        return natural_sum_all(summand_birthday(x) for x in self.head_parts())

    def negated(self) -> "Series":
        ph = self.phase
        spec = self.spec.negated()
        if isinstance(ph, Unopened):
            return Series(self.variant, spec, ph)
        head = tuple(negate_summand(x) for x in ph.head)
        if isinstance(ph, HalfOpened):
            return Series(self.variant, spec, HalfOpened(ph.owner.opponent, ph.n, ph.indices, head))
        return Series(self.variant, spec, Closed(ph.indices, head))

    def key(self):
        return ("s", self.variant, self.spec.name, self.phase.key())

    def __str__(self):
        ph = self.phase
        base = f"{self.variant}({self.spec.name})"
        if isinstance(ph, Unopened):
            return base
        head = ",".join(show_summand(x) for x in ph.head)
        idx = ",".join(map(str, ph.indices))
        if isinstance(ph, HalfOpened):
            return f"{base}[{ph.owner},I={{{idx}}}:{head}]"
        return f"{base}[closed,I={{{idx}}}:{head}]"


# ---------------------------------------------------------------- compound

@dataclass(frozen=True)
class CompoundState:
    components: tuple
    mover: Player = LEFT

    def key(self):
        return (tuple(c.key() for c in self.components), self.mover.value)

    def __str__(self):
        return " + ".join(str(c) for c in self.components) + f" ({self.mover} to move)"


def compound(*components, mover: Player = LEFT) -> CompoundState:
    return CompoundState(tuple(lift(c) for c in components), mover)


def lift(c):
    if isinstance(c, Game):
        return FiniteGame(c)
    if isinstance(c, OrdinalGame):
        return OrdinalComponent(c.alpha, c.positive)
    return c


def legal_moves(s: CompoundState, index_bound: int, player: Optional[Player] = None) -> list:
    p = s.mover if player is None else player
    out = []
    for c, comp in enumerate(s.components):
        out += comp.moves(c, p, index_bound)
    return out


def apply_move(s: CompoundState, mv) -> CompoundState:
    if not 0 <= mv.comp < len(s.components):
        raise IllegalMove(f"no component {mv.comp}")
    comps = list(s.components)
    comps[mv.comp] = comps[mv.comp].apply(mv, s.mover)
    return CompoundState(tuple(comps), s.mover.opponent)


def negate_state(s: CompoundState) -> CompoundState:
    return CompoundState(tuple(c.negated() for c in s.components), s.mover.opponent)


def max_fixed_index(s: CompoundState) -> int:
    out = -1
    for comp in s.components:
        if isinstance(comp, Series) and comp.head_parts():
            out = max(out, max(comp.phase.indices))
    return out


def relative_bound(s: CompoundState, bound: int) -> int:
    """bound indices past everything already fixed (plain/bullet windows, ordinal samples)."""
    return bound + max(max_fixed_index(s), 0)


def terminal_loser(s: CompoundState, index_bound: int) -> Optional[Player]:
    """The mover, when they have no move and that does not depend on the bound."""
    if legal_moves(s, index_bound):
        return None
    for comp in s.components:
        if not comp.empty_is_final(s.mover, index_bound):
            raise BoundDependent(f"bound-dependent emptiness in {comp}")
    return s.mover


def fully_finite(s: CompoundState) -> Optional[Game]:
    """The compound as one canonical finite game, if every component is finite."""
    parts = []
    for comp in s.components:
        v = comp.finite_value()
        if v is None:
            return None
        parts.append(v)
    return K.canonical_sum(parts)


def birthday_measure(s: CompoundState) -> Ordinal:
    total = Ordinal.of(0)
    for comp in s.components:
        if isinstance(comp, Series) and isinstance(comp.phase, Unopened):
            raise ValueError("birthday measure is undefined while a series is unopened")
        if not hasattr(comp, "measure"):
            raise ValueError(f"no birthday measure for {comp}")
        total = natural_sum(total, comp.measure())
    return total


def progress_measure(s: CompoundState) -> tuple:
    """(phase rank, birthday measure over fixed parts); decreases on every move."""
    rank = sum(c.rank for c in s.components)
    total = Ordinal.of(0)
    for comp in s.components:
        if getattr(comp, "rank", 0) == 0 or isinstance(comp, Series):
            total = natural_sum(total, comp.measure())
    return rank, total
