"""Game sequences (G_i) with the side oracles strategies rely on."""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from . import kernel as K
from .kernel import Game, Player, LEFT, RIGHT
from .ordinals import (
    Ordinal, OMEGA, descent_samples, dyadic_form, omega_power, ordinal_compare,
)

SCAN_LIMIT = 512


class OracleError(RuntimeError):
    """An oracle answer failed its kernel re-check."""


@dataclass(frozen=True)
class OrdinalGame:
    """alpha as a game (positive: Left moves to any beta < alpha), or -alpha."""

    alpha: Ordinal
    positive: bool = True

    def __str__(self) -> str:
        return show_summand(self)


Summand = Union[Game, OrdinalGame]


def summand_options(x: Summand, player: Player, bound: int) -> list[Summand]:
    if isinstance(x, Game):
        return list(x.options(player))
    if (player is LEFT) != x.positive or x.alpha.is_zero():
        return []
    if x.alpha.is_finite():
        targets = [Ordinal.of(k) for k in range(x.alpha.to_int())]
    else:
        targets = descent_samples(x.alpha, bound)
    return [OrdinalGame(b, x.positive) for b in targets]


def is_summand_option(x: Summand, player: Player, o: Summand) -> bool:
    if isinstance(x, Game):
        return isinstance(o, Game) and any(o is y for y in x.options(player))
    return (
        isinstance(o, OrdinalGame)
        and (player is LEFT) == x.positive
        and o.positive == x.positive
        and o.alpha < x.alpha
    )


def summand_game(x: Summand) -> Optional[Game]:
    """Finite form of a summand (finite ordinals become integers), else None."""
    if isinstance(x, Game):
        return x
    if not x.alpha.is_finite():
        return None
    n = x.alpha.to_int()
    return K.integer(n if x.positive else -n)


def negate_summand(x: Summand) -> Summand:
    if isinstance(x, Game):
        return K.negate(x)
    return OrdinalGame(x.alpha, not x.positive) if not x.alpha.is_zero() else x


def summand_key(x: Summand):
    return x.uid if isinstance(x, Game) else ("o", x.alpha, x.positive)


def summand_birthday(x: Summand) -> Ordinal:
    return Ordinal.of(x.birthday) if isinstance(x, Game) else x.alpha


def show_summand(x: Summand) -> str:
    if isinstance(x, Game):
        return K.show(x)
    a = x.alpha
    if a.is_finite():
        n = a.to_int()
        return str(n if x.positive else -n)
    return ("" if x.positive else "-") + f"ord({a})"


def summand_ordinal(x: Summand) -> Optional[Ordinal]:
    """Ordinal value of a positive ordinal summand (Left-only form), else None."""
    if isinstance(x, OrdinalGame):
        return x.alpha if x.positive else None
    v = form_ordinal_value(x)
    return None if v is None else Ordinal.of(v)


@functools.lru_cache(maxsize=None)
def form_ordinal_value(g: Game) -> Optional[int]:
    """n if g is a Left-only form whose options are all ordinals (value max+1)."""
    if g.right:
        return None
    vals = [form_ordinal_value(x) for x in g.left]
    if None in vals:
        return None
    return 1 + max(vals, default=-1)


@dataclass(eq=False)
class SequenceSpec:
    name: str
    generator: Callable[[int], Summand]
    dyadic_values: Optional[Callable[[int], Fraction]] = None
    classical_sum: Optional[Fraction] = None
    tail_abs: Optional[Callable[[int], Fraction]] = None
    ordinal_values: Optional[Callable[[int], Ordinal]] = None
    zero_tail_from: Optional[int] = None
    constant_from: Optional[int] = None
    no_option_from: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)
    _neg: Optional["SequenceSpec"] = field(default=None, repr=False)
    _partials: list = field(default_factory=list, repr=False)

    def __call__(self, i: int) -> Summand:
        if i < 0:
            raise IndexError(i)
        r = self._cache.get(i)
        if r is None:
            r = self.generator(i)
            self._cache[i] = r
        return r

    def __str__(self) -> str:
        return self.name

    # -------------------------------------------------------------- oracles

    def partial_sum(self, m: int) -> Game:
        """Canonical form of G_0 + ... + G_m."""
        while len(self._partials) <= m:
            k = len(self._partials)
            g = summand_game(self(k))
            if g is None:
                raise OracleError(f"{self.name}: summand {k} is not a finite form")
            prev = self._partials[-1] if self._partials else K.ZERO
            self._partials.append(K.canonical_form(K.add(prev, K.canonical_form(g))))
        return self._partials[m]

    def partial_sum_sign_witness(self, n: int, sign: str) -> int:
        """Some m >= n with G_0 + ... + G_m >= 0 (sign '+') or <= 0 (sign '-')."""
        for m in range(n, n + SCAN_LIMIT):
            s = self.partial_sum(m)
            if (K.leq(K.ZERO, s) if sign == "+" else K.leq(s, K.ZERO)):
                return m
        raise OracleError(f"{self.name}: no partial sum with sign {sign} in [{n}, {n + SCAN_LIMIT})")

    def is_zero_at(self, i: int) -> bool:
        g = summand_game(self(i))
        return g is not None and K.outcome(g) is K.Outcome.SECOND_WINS

    def nonzero_index_after(self, n: int) -> int:
        """Least i > n whose summand is not second-winner."""
        if self.zero_tail_from is not None and n + 1 >= self.zero_tail_from:
            raise OracleError(f"{self.name}: only zero summands after {n}")
        for i in range(n + 1, n + 1 + SCAN_LIMIT):
            if not self.is_zero_at(i):
                return i
        raise OracleError(f"{self.name}: no nonzero summand in ({n}, {n + SCAN_LIMIT}]")

    def first_winner_index_after(self, n: int) -> int:
        for i in range(n + 1, n + 1 + SCAN_LIMIT):
            g = summand_game(self(i))
            if g is not None and K.outcome(g) is K.Outcome.FIRST_WINS:
                return i
        raise OracleError(f"{self.name}: no first-winner summand after {n}")

    def negated(self) -> "SequenceSpec":
        if self._neg is None:
            self._neg = negate_spec(self)
        return self._neg


def negate_spec(spec: SequenceSpec) -> SequenceSpec:
    name = spec.name[4:-1] if spec.name.startswith("neg(") and spec.name.endswith(")") else f"neg({spec.name})"
    neg = SequenceSpec(
        name=name,
        generator=lambda i: negate_summand(spec(i)),
        dyadic_values=(lambda i: -spec.dyadic_values(i)) if spec.dyadic_values else None,
        classical_sum=-spec.classical_sum if spec.classical_sum is not None else None,
        tail_abs=spec.tail_abs,
        ordinal_values=None,
        zero_tail_from=spec.zero_tail_from,
        constant_from=spec.constant_from,
        no_option_from={p.opponent: k for p, k in spec.no_option_from.items()},
    )
    neg._neg = spec
    return neg


# ---------------------------------------------------------------- builtins

def const(g: Summand, name: Optional[str] = None) -> SequenceSpec:
    gg = summand_game(g)
    val = K.number_value(gg) if gg is not None else None
    zero = gg is not None and K.outcome(gg) is K.Outcome.SECOND_WINS
    ordv = summand_ordinal(g)
    return SequenceSpec(
        name=name or f"const({show_summand(g)})",
        generator=lambda i: g,
        dyadic_values=(lambda i: val) if val is not None else None,
        classical_sum=Fraction(0) if val == 0 else None,
        tail_abs=(lambda n: Fraction(0)) if val == 0 else None,
        ordinal_values=(lambda i: ordv) if ordv is not None else None,
        zero_tail_from=0 if zero else None,
        constant_from=0,
        no_option_from={p: 0 for p in (LEFT, RIGHT) if not summand_options(g, p, 0)},
    )


def from_list(heads: Sequence[Summand], tail: SequenceSpec, name: Optional[str] = None) -> SequenceSpec:
    heads = tuple(heads)
    k = len(heads)
    hv = [K.number_value(summand_game(h)) if summand_game(h) is not None else None for h in heads]
    dy = None
    total = None
    tail_abs = None
    if tail.dyadic_values is not None and None not in hv:
        dy = lambda i: hv[i] if i < k else tail.dyadic_values(i - k)
        if tail.classical_sum is not None:
            total = sum(hv, Fraction(0)) + tail.classical_sum
        if tail.tail_abs is not None:
            def tail_abs(n: int) -> Fraction:
                if n >= k - 1:
                    return tail.tail_abs(n - k)
                return sum((abs(v) for v in hv[n + 1:]), Fraction(0)) + tail.tail_abs(-1)
    hord = [summand_ordinal(h) for h in heads]
    ordv = None
    if tail.ordinal_values is not None and None not in hord:
        ordv = lambda i: hord[i] if i < k else tail.ordinal_values(i - k)
    nof = {}
    for p, kk in tail.no_option_from.items():
        last = max((i + 1 for i, h in enumerate(heads) if summand_options(h, p, 0)), default=0)
        nof[p] = max(last, k + kk)
    if name is None:
        name = "list([" + ",".join(show_summand(h) for h in heads) + f"],tail={tail.name})"
    return SequenceSpec(
        name=name,
        generator=lambda i: heads[i] if i < k else tail(i - k),
        dyadic_values=dy,
        classical_sum=total,
        tail_abs=tail_abs,
        ordinal_values=ordv,
        zero_tail_from=None if tail.zero_tail_from is None else k + tail.zero_tail_from,
        constant_from=None if tail.constant_from is None else k + tail.constant_from,
        no_option_from=nof,
    )


def interleave(a: SequenceSpec, b: SequenceSpec, name: Optional[str] = None) -> SequenceSpec:
    both = a.dyadic_values is not None and b.dyadic_values is not None
    nof = {p: max(2 * a.no_option_from[p], 2 * b.no_option_from[p] + 1)
           for p in (LEFT, RIGHT) if p in a.no_option_from and p in b.no_option_from}
    zt = None
    if a.zero_tail_from is not None and b.zero_tail_from is not None:
        zt = max(2 * a.zero_tail_from, 2 * b.zero_tail_from + 1)
    return SequenceSpec(
        name=name or f"interleave({a.name},{b.name})",
        generator=lambda i: a(i // 2) if i % 2 == 0 else b(i // 2),
        dyadic_values=(lambda i: a.dyadic_values(i // 2) if i % 2 == 0 else b.dyadic_values(i // 2)) if both else None,
        classical_sum=a.classical_sum + b.classical_sum if both and a.classical_sum is not None and b.classical_sum is not None else None,
        tail_abs=(lambda n: a.tail_abs(n // 2) + b.tail_abs((n - 1) // 2)) if a.tail_abs and b.tail_abs else None,
        ordinal_values=(lambda i: a.ordinal_values(i // 2) if i % 2 == 0 else b.ordinal_values(i // 2))
        if a.ordinal_values and b.ordinal_values else None,
        zero_tail_from=zt,
        no_option_from=nof,
    )


class NonzeroReindex(SequenceSpec):
    """The subsequence of summands that are not second-winner, order kept."""


def nonzero(spec: SequenceSpec, name: Optional[str] = None) -> SequenceSpec:
    positions: list[int] = []

    def source(k: int) -> int:
        while len(positions) <= k:
            positions.append(spec.nonzero_index_after(positions[-1] if positions else -1))
        return positions[k]

    out = NonzeroReindex(name=name or f"nonzero({spec.name})", generator=lambda k: spec(source(k)))
    out.source_index = source  # type: ignore[attr-defined]
    out.parent = spec  # type: ignore[attr-defined]
    return out


def diff(spec: SequenceSpec, name: Optional[str] = None) -> SequenceSpec:
    """i -> H_i - H_{i-1}, H_{-1} = 0; its series is the induced limit of (H_i)."""

    def gen(i: int) -> Game:
        h = summand_game(spec(i))
        prev = summand_game(spec(i - 1)) if i > 0 else K.ZERO
        if h is None or prev is None:
            raise OracleError("diff() needs finite summands")
        return K.add(h, K.negate(prev))

    return SequenceSpec(
        name=name or f"diff({spec.name})",
        generator=gen,
        zero_tail_from=None if spec.constant_from is None else spec.constant_from + 1,
    )


def _geom(offset: int, name: str) -> SequenceSpec:
    return SequenceSpec(
        name=name,
        generator=lambda i: dyadic_form(Fraction(1, 2 ** (i + offset))),
        dyadic_values=lambda i: Fraction(1, 2 ** (i + offset)),
        classical_sum=Fraction(2, 2 ** offset),
        tail_abs=lambda n: Fraction(2, 2 ** (n + 1 + offset)),
    )


def _builtins() -> dict[str, Callable[[], SequenceSpec]]:
    one, zero = K.ONE, K.ZERO
    two = K.integer(2)
    return {
        "ones": lambda: const(one, "ones"),
        "twos": lambda: const(two, "twos"),
        "zeros": lambda: const(zero, "zeros"),
        "stars": lambda: const(K.STAR, "stars"),
        "ups": lambda: const(K.UP, "ups"),
        "pm_one": lambda: SequenceSpec(
            name="pm_one",
            generator=lambda i: one if i % 2 == 0 else K.NEG_ONE,
            dyadic_values=lambda i: Fraction(1 if i % 2 == 0 else -1),
        ),
        "geom_half": lambda: _geom(1, "geom_half"),
        "quarter_geom": lambda: _geom(2, "quarter_geom"),
        "ordpowers": lambda: SequenceSpec(
            name="ordpowers",
            generator=lambda i: OrdinalGame(omega_power(i)),
            ordinal_values=lambda i: omega_power(i),
            no_option_from={RIGHT: 0},
        ),
        "minusone_then_ones": lambda: from_list([K.NEG_ONE], const(one, "ones"), "minusone_then_ones"),
        "zerozero_then_ones": lambda: from_list([zero, zero], const(one, "ones"), "zerozero_then_ones"),
        "sumform_zero_then_ones": lambda: from_list(
            [K.add(K.NEG_ONE, one)], const(one, "ones"), "sumform_zero_then_ones"),
        "zeroform_then_ones": lambda: from_list([zero], const(one, "ones"), "zeroform_then_ones"),
    }


BUILTINS = _builtins()
_instances: dict[str, SequenceSpec] = {}


def builtin(name: str) -> SequenceSpec:
    if name not in BUILTINS:
        raise KeyError(f"unknown sequence {name!r}; known: {', '.join(sorted(BUILTINS))}")
    if name not in _instances:
        _instances[name] = BUILTINS[name]()
    return _instances[name]
