"""Finite partizan game forms.

Forms are hash-consed: building ``{A|B}`` twice returns the same object, so
identity comparison doubles as structural equality and every memo table can
key on ``Game.uid``.
"""
from __future__ import annotations

import enum
import functools
import sys
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_lock = threading.Lock()


class Game:
    __slots__ = ("left", "right", "uid", "birthday", "key", "__weakref__")

    _table: dict = {}
    _counter = 0

    def __new__(cls, left: Iterable["Game"] = (), right: Iterable["Game"] = ()):
        lt = tuple(sorted(set(left), key=_sort_key))
        rt = tuple(sorted(set(right), key=_sort_key))
        ident = (tuple(g.uid for g in lt), tuple(g.uid for g in rt))
        found = cls._table.get(ident)
        if found is not None:
            return found
        with _lock:
            found = cls._table.get(ident)
            if found is not None:
                return found
            g = object.__new__(cls)
            g.left = lt
            g.right = rt
            g.uid = cls._counter
            cls._counter += 1
            g.birthday = 1 + max((o.birthday for o in lt + rt), default=-1)
            g.key = (g.birthday, tuple(o.key for o in lt), tuple(o.key for o in rt))
            cls._table[ident] = g
            return g

    def options(self, player: "Player") -> tuple["Game", ...]:
        return self.left if player is Player.LEFT else self.right

    def __repr__(self) -> str:
        return show(self)

    def __reduce__(self):
        return (Game, (self.left, self.right))


def _sort_key(g: Game):
    return g.key


class Player(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def opponent(self) -> "Player":
        return Player.RIGHT if self is Player.LEFT else Player.LEFT

    def __str__(self) -> str:
        return self.value


LEFT, RIGHT = Player.LEFT, Player.RIGHT


class Outcome(enum.Enum):
    LEFT_WINS = "LeftWins"
    RIGHT_WINS = "RightWins"
    FIRST_WINS = "FirstWins"
    SECOND_WINS = "SecondWins"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_winners(cls, left_starts: Player, right_starts: Player) -> "Outcome":
        if left_starts is LEFT and right_starts is LEFT:
            return cls.LEFT_WINS
        if left_starts is RIGHT and right_starts is RIGHT:
            return cls.RIGHT_WINS
        if left_starts is LEFT:
            return cls.FIRST_WINS
        return cls.SECOND_WINS

    def winner(self, mover: Player) -> Player:
        if self is Outcome.LEFT_WINS:
            return LEFT
        if self is Outcome.RIGHT_WINS:
            return RIGHT
        if self is Outcome.FIRST_WINS:
            return mover
        return mover.opponent


ZERO = Game()
ONE = Game([ZERO])
NEG_ONE = Game([], [ZERO])
STAR = Game([ZERO], [ZERO])
UP = Game([ZERO], [STAR])
DOWN = Game([STAR], [ZERO])


def integer(n: int) -> Game:
    """Canonical integer form: n+1 = {n|}."""
    g = ZERO
    for _ in range(abs(n)):
        g = Game([g]) if n > 0 else Game([], [g])
    return g


_nimbers: list[Game] = [ZERO]


def nimber(k: int) -> Game:
    while len(_nimbers) <= k:
        opts = list(_nimbers)
        _nimbers.append(Game(opts, opts))
    return _nimbers[k]


# ---------------------------------------------------------------- order

_leq_memo: dict[tuple[int, int], bool] = {}


def leq(g: Game, h: Game) -> bool:
    """g <= h: no g^L >= h and no h^R <= g."""
    if g is h:
        return True
    k = (g.uid, h.uid)
    r = _leq_memo.get(k)
    if r is None:
        r = not any(leq(h, gl) for gl in g.left) and not any(leq(hr, g) for hr in h.right)
        _leq_memo[k] = r
    return r


def geq(g: Game, h: Game) -> bool:
    return leq(h, g)


def lt(g: Game, h: Game) -> bool:
    return leq(g, h) and not leq(h, g)


def conway_eq(g: Game, h: Game) -> bool:
    return leq(g, h) and leq(h, g)


def outcome(g: Game) -> Outcome:
    ge0 = leq(ZERO, g)
    le0 = leq(g, ZERO)
    if ge0 and le0:
        return Outcome.SECOND_WINS
    if ge0:
        return Outcome.LEFT_WINS
    if le0:
        return Outcome.RIGHT_WINS
    return Outcome.FIRST_WINS


def wins_moving_first(g: Game, mover: Player) -> bool:
    return outcome(g).winner(mover) is mover


def wins_moving_second(g: Game, player: Player) -> bool:
    """Left wins second iff g >= 0; Right iff g <= 0."""
    return leq(ZERO, g) if player is LEFT else leq(g, ZERO)


# ------------------------------------------------------------ operations

_neg_memo: dict[int, Game] = {}


def negate(g: Game) -> Game:
    r = _neg_memo.get(g.uid)
    if r is None:
        r = Game([negate(x) for x in g.right], [negate(x) for x in g.left])
        _neg_memo[g.uid] = r
    return r


_add_memo: dict[tuple[int, int], Game] = {}


def add(g: Game, h: Game) -> Game:
    if g is ZERO:
        return h
    if h is ZERO:
        return g
    k = (g.uid, h.uid) if g.uid <= h.uid else (h.uid, g.uid)
    r = _add_memo.get(k)
    if r is None:
        r = Game(
            [add(x, h) for x in g.left] + [add(g, x) for x in h.left],
            [add(x, h) for x in g.right] + [add(g, x) for x in h.right],
        )
        _add_memo[k] = r
    return r


def disjunctive_sum(gs: Sequence[Game]) -> Game:
    total = ZERO
    for g in gs:
        total = add(total, g)
    return total


_canon_memo: dict[int, Game] = {}


def canonical_form(g: Game) -> Game:
    r = _canon_memo.get(g.uid)
    if r is not None:
        return r
    left = [canonical_form(x) for x in g.left]
    right = [canonical_form(x) for x in g.right]
    changed = True
    while changed:
        changed = False
        cur = Game(left, right)
        # bypass reversible options
        new_left: list[Game] = []
        for x in left:
            rev = next((xr for xr in x.right if leq(xr, cur)), None)
            if rev is None:
                new_left.append(x)
            else:
                new_left.extend(rev.left)
                changed = True
        new_right: list[Game] = []
        for x in right:
            rev = next((xl for xl in x.left if leq(cur, xl)), None)
            if rev is None:
                new_right.append(x)
            else:
                new_right.extend(rev.right)
                changed = True
        left = _undominated(new_left, keep_max=True)
        right = _undominated(new_right, keep_max=False)
    r = Game(left, right)
    _canon_memo[g.uid] = r
    _canon_memo[r.uid] = r
    return r


def _undominated(opts: list[Game], keep_max: bool) -> list[Game]:
    opts = sorted(set(opts), key=_sort_key)
    kept = []
    for i, x in enumerate(opts):
        dominated = False
        for j, y in enumerate(opts):
            if i == j:
                continue
            better = leq(x, y) if keep_max else leq(y, x)
            if better:
                # equivalent options: keep the first one only
                worse_back = leq(y, x) if keep_max else leq(x, y)
                if not worse_back or j < i:
                    dominated = True
                    break
        if not dominated:
            kept.append(x)
    return kept


def canonical_sum(gs: Iterable[Game]) -> Game:
    """Canonical form of a finite sum, canonicalising after each addition."""
    total = ZERO
    for g in gs:
        total = canonical_form(add(total, canonical_form(g)))
    return total


# ---------------------------------------------------------- classification

def subpositions(g: Game) -> list[Game]:
    seen: dict[int, Game] = {}
    stack = [g]
    while stack:
        x = stack.pop()
        if x.uid in seen:
            continue
        seen[x.uid] = x
        stack.extend(x.left)
        stack.extend(x.right)
    return sorted(seen.values(), key=_sort_key)


_grundy_memo: dict[int, int] = {}


def grundy(g: Game) -> Optional[int]:
    if not is_impartial(g):
        return None
    return _grundy(g)


def _grundy(g: Game) -> int:
    r = _grundy_memo.get(g.uid)
    if r is None:
        seen = {_grundy(x) for x in g.left}
        r = 0
        while r in seen:
            r += 1
        _grundy_memo[g.uid] = r
    return r


def is_impartial(g: Game) -> bool:
    return all(x.left == x.right for x in subpositions(g))


_is_number_memo: dict[int, bool] = {}


def is_number(g: Game) -> bool:
    r = _is_number_memo.get(g.uid)
    if r is None:
        r = all(is_number(x) for x in g.left + g.right) and all(
            lt(xl, xr) for xl in g.left for xr in g.right
        )
        _is_number_memo[g.uid] = r
    return r


@functools.lru_cache(maxsize=None)
def number_form(v: Fraction) -> Game:
    """Canonical form of a dyadic rational."""
    v = Fraction(v)
    if v.denominator == 1:
        return integer(int(v))
    d = v.denominator
    if d & (d - 1):
        raise ValueError(f"{v} is not dyadic")
    step = Fraction(1, d)
    return Game([number_form(v - step)], [number_form(v + step)])


def finite_outcome(parts: Sequence[Game]) -> Outcome:
    """Outcome of a disjunctive sum, summing values directly when all parts are numbers."""
    if all(is_number(p) for p in parts):
        v = sum((number_value(p) for p in parts), Fraction(0))
        if v > 0:
            return Outcome.LEFT_WINS
        if v < 0:
            return Outcome.RIGHT_WINS
        return Outcome.SECOND_WINS
    return outcome(canonical_sum(parts))


def is_dicotic(g: Game) -> bool:
    return all(
        (bool(x.left) and bool(x.right)) or x is ZERO for x in subpositions(g)
    )


@dataclass(frozen=True)
class Classification:
    is_number: bool
    is_impartial: bool
    is_dicotic: bool
    birthday: int
    grundy: Optional[int]


def classify(g: Game) -> Classification:
    return Classification(is_number(g), is_impartial(g), is_dicotic(g), g.birthday, grundy(g))


_numval_memo: dict[int, Optional[Fraction]] = {}


def number_value(g: Game) -> Optional[Fraction]:
    """Dyadic value of a number-valued form, else None."""
    k = g.uid
    if k in _numval_memo:
        return _numval_memo[k]
    c = canonical_form(g)
    val: Optional[Fraction] = None
    lv = [number_value(x) for x in c.left]
    rv = [number_value(x) for x in c.right]
    if None not in lv and None not in rv and len(lv) <= 1 and len(rv) <= 1:
        lo = lv[0] if lv else None
        hi = rv[0] if rv else None
        if lo is None or hi is None or lo < hi:
            val = _simplest_between(lo, hi)
    _numval_memo[k] = val
    _numval_memo[c.uid] = val
    return val


def _simplest_between(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(min(0, _ceil(hi) - 1))
    if hi is None:
        return Fraction(max(0, _floor(lo) + 1))
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -_simplest_between(-hi, -lo)
    # 0 <= lo < hi: smallest integer strictly between, else finest dyadic
    n = _floor(lo) + 1
    if n < hi:
        return Fraction(n)
    denom = 2
    while True:
        k = _floor(lo * denom) + 1
        if Fraction(k, denom) < hi:
            return Fraction(k, denom)
        denom *= 2


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# ---------------------------------------------------------- finite-index sums

def alt_sum(kind: str, gs: Sequence[Game]) -> Game:
    gs = tuple(gs)
    if kind == "conjunctive":
        return _conjunctive(gs)
    if kind == "ordinal":
        return _ordinal_sum(gs)
    if kind == "sequential":
        if not gs:
            raise ValueError("sequential sum needs at least one summand")
        return _sequential_start(gs)
    if kind == "side":
        return _side(gs)
    raise ValueError(f"unknown sum kind {kind!r}")


_conj_memo: dict[tuple, Game] = {}


def _conjunctive(gs: tuple[Game, ...]) -> Game:
    if not gs:
        return ZERO
    k = tuple(g.uid for g in gs)
    r = _conj_memo.get(k)
    if r is None:
        def moves(side):
            out = [()]
            for g in gs:
                out = [prev + (o,) for prev in out for o in side(g)]
                if not out:
                    return []
            return [_conjunctive(t) for t in out]
        r = Game(moves(lambda g: g.left), moves(lambda g: g.right))
        _conj_memo[k] = r
    return r


_ord_memo: dict[tuple, Game] = {}


def _ordinal_sum(gs: tuple[Game, ...]) -> Game:
    k = tuple(g.uid for g in gs)
    r = _ord_memo.get(k)
    if r is None:
        left, right = [], []
        for j, g in enumerate(gs):
            left += [_ordinal_sum(gs[:j] + (o,)) for o in g.left]
            right += [_ordinal_sum(gs[:j] + (o,)) for o in g.right]
        r = Game(left, right)
        _ord_memo[k] = r
    return r


_seq_memo: dict[tuple, Game] = {}


def _sequential_start(gs: tuple[Game, ...]) -> Game:
    left, right = [], []
    for j, g in enumerate(gs):
        left += [_sequential(gs[:j] + (o,)) for o in g.left]
        right += [_sequential(gs[:j] + (o,)) for o in g.right]
    return Game(left, right)


def _sequential(gs: tuple[Game, ...]) -> Game:
    while gs and gs[-1] is ZERO:
        gs = gs[:-1]
    if not gs:
        return ZERO
    k = tuple(g.uid for g in gs)
    r = _seq_memo.get(k)
    if r is None:
        top = gs[-1]
        r = Game(
            [_sequential(gs[:-1] + (o,)) for o in top.left],
            [_sequential(gs[:-1] + (o,)) for o in top.right],
        )
        _seq_memo[k] = r
    return r


_side_memo: dict[tuple, Game] = {}


def _side(gs: tuple[Game, ...]) -> Game:
    # list position = integer index; Left annihilates larger, Right smaller
    k = tuple(g.uid for g in gs)
    r = _side_memo.get(k)
    if r is None:
        left, right = [], []
        for j, g in enumerate(gs):
            left += [_side(gs[:j] + (o,)) for o in g.left]
            right += [_side((o,) + gs[j + 1:]) for o in g.right]
        r = Game(left, right)
        _side_memo[k] = r
    return r


# ---------------------------------------------------------------- printing

def show(g: Game) -> str:
    """Printer whose output parses back to the identical form."""
    from .ordinals import sign_form_value

    v = sign_form_value(g)
    if v is not None:
        return _fmt_fraction(v)
    k = _as_nimber(g)
    if k is not None:
        return "*" if k == 1 else f"*{k}"
    return "{" + ",".join(show(x) for x in g.left) + "|" + ",".join(show(x) for x in g.right) + "}"


def _fmt_fraction(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _as_nimber(g: Game) -> Optional[int]:
    if g.left != g.right:
        return None
    k = len(g.left)
    return k if nimber(k) is g else None
