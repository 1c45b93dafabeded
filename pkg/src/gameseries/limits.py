"""String limits of transfinite strings, natural/monotone limit arenas, series-induced limits."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import kernel as K
from .kernel import Game, Player, LEFT, RIGHT
from .ordinals import OMEGA, Ordinal, SignSeq, natural_sum, realize_as_game
from .sequences import SequenceSpec, diff
from .arena import IllegalMove, LimitMove, FiniteGame

END = "$"   # marker: the strings eventually end at this position


# --------------------------------------------------------------- strings

@dataclass(frozen=True)
class TString:
    """head, then period repeated omega times, then `after` from position omega on."""

    head: str
    period: Optional[str] = None
    after: str = ""

    def __post_init__(self):
        if self.period == "":
            raise ValueError("empty period")
        if self.after and self.period is None:
            raise ValueError("content at omega needs an omega-length prefix")

    @property
    def is_finite(self) -> bool:
        return self.period is None

    def length(self) -> Ordinal:
        if self.period is None:
            return Ordinal.of(len(self.head))
        return natural_sum(OMEGA, Ordinal.of(len(self.after)))

    def at(self, p: int) -> Optional[str]:
        """Symbol at finite position p (None past the end)."""
        if p < len(self.head):
            return self.head[p]
        if self.period is None:
            return None
        q = p - len(self.head)
        return self.period[q % len(self.period)]

    def omega_part(self) -> "TString":
        return TString(self.head, self.period)

    def prefix(self, n: int) -> "TString":
        return TString("".join(self.at(p) for p in range(n) if self.at(p) is not None))

    def same_omega_word(self, other: "TString") -> bool:
        if self.period is None or other.period is None:
            return False
        span = max(len(self.head), len(other.head)) + len(self.period) * len(other.period)
        return all(self.at(p) == other.at(p) for p in range(span))

    def to_sign_seq(self) -> Optional[SignSeq]:
        if self.after or (self.period is not None and len(set(self.period)) > 1):
            return None
        txt = self.head + (f"({self.period[0]})^w" if self.period else "")
        return SignSeq.from_string(txt)

    def __str__(self) -> str:
        if self.period is None:
            return self.head or "(empty)"
        per = self.period if len(self.period) == 1 else f"({self.period})"
        return f"{self.head}{per}^w" + (f"@w{self.after}" if self.after else "")

    @classmethod
    def parse(cls, text: str) -> "TString":
        text = text.strip().replace(" ", "")
        if text in ("", "(empty)", "e"):
            return cls("")
        after = ""
        if "@w" in text:
            text, after = text.split("@w", 1)
        m = re.fullmatch(r"([^()^@]*?)(?:\(([^()]+)\)\^w|(.)\^w)?", text)
        if m is None:
            raise ValueError(f"malformed transfinite string {text!r}")
        head, per_group, per_single = m.group(1), m.group(2), m.group(3)
        period = per_group or per_single
        return cls(head, period, after)


class Family:
    """A symbolic sequence (s_i) of transfinite strings."""

    name = "family"

    def string(self, i: int) -> TString:
        raise NotImplementedError

    def position(self, p: int):
        """(symbol | END, threshold) if position p is eventually constant, else None."""
        raise NotImplementedError

    def omega_word(self) -> Optional[TString]:
        """The pointwise limit when every finite position stabilizes, else None."""
        raise NotImplementedError

    def omega_prefix_from(self, word: TString) -> Optional[int]:
        """n with s_m's first omega symbols equal to word for all m >= n, if any."""
        raise NotImplementedError

    def after_position(self, k: int):
        """Like position(), for position omega + k (only asked when omega_prefix_from holds)."""
        raise NotImplementedError


@dataclass
class Const(Family):
    word: TString

    @property
    def name(self):
        return f"const({self.word})"

    def string(self, i):
        return self.word

    def position(self, p):
        s = self.word.at(p)
        return (END if s is None else s, 0)

    def omega_word(self):
        return self.word

    def omega_prefix_from(self, word):
        return 0 if self.word.same_omega_word(word) else None

    def after_position(self, k):
        a = self.word.after
        return (a[k] if k < len(a) else END, 0)


@dataclass
class PrefixesOf(Family):
    """s_i = the first i+1 symbols of a fixed word."""

    word: TString

    @property
    def name(self):
        return f"prefixes({self.word})"

    def string(self, i):
        return self.word.prefix(i + 1)

    def position(self, p):
        s = self.word.at(p)
        return (END, p) if s is None else (s, p)

    def omega_word(self):
        return self.word.omega_part()

    def omega_prefix_from(self, word):
        return None if not self.word.is_finite else 0

    def after_position(self, k):
        return (END, 0)


@dataclass
class Boundary(Family):
    """s_i = a^i b^omega, then `after` at position omega."""

    a: str
    b: str
    after: str = ""

    @property
    def name(self):
        return f"boundary({self.a},{self.b},{self.after})"

    def string(self, i):
        return TString(self.a * i, self.b, self.after)

    def position(self, p):
        return (self.a, p + 1)

    def omega_word(self):
        return TString("", self.a)

    def omega_prefix_from(self, word):
        return None if self.a != self.b else 0

    def after_position(self, k):
        return (self.after[k] if k < len(self.after) else END, 0)


@dataclass
class Interleave(Family):
    first: Family
    second: Family

    @property
    def name(self):
        return f"interleave({self.first.name},{self.second.name})"

    def string(self, i):
        return (self.first if i % 2 == 0 else self.second).string(i // 2)

    def position(self, p):
        a, b = self.first.position(p), self.second.position(p)
        if a is None or b is None or a[0] != b[0]:
            return None
        return a[0], 2 * max(a[1], b[1]) + 1

    def omega_word(self):
        a, b = self.first.omega_word(), self.second.omega_word()
        if a is None or b is None:
            return None
        if a.is_finite or b.is_finite:
            return a if a == b else None
        return a if a.same_omega_word(b) else None

    def omega_prefix_from(self, word):
        a, b = self.first.omega_prefix_from(word), self.second.omega_prefix_from(word)
        return None if a is None or b is None else 2 * max(a, b) + 1

    def after_position(self, k):
        a, b = self.first.after_position(k), self.second.after_position(k)
        if a is None or b is None or a[0] != b[0]:
            return None
        return a[0], 2 * max(a[1], b[1]) + 1


@dataclass
class WithHead(Family):
    """Finitely many explicit strings, then a family."""

    heads: tuple
    tail: Family

    @property
    def name(self):
        return "withhead([" + ",".join(map(str, self.heads)) + f"],{self.tail.name})"

    def string(self, i):
        return self.heads[i] if i < len(self.heads) else self.tail.string(i - len(self.heads))

    def _shift(self, r):
        return None if r is None else (r[0], r[1] + len(self.heads))

    def position(self, p):
        return self._shift(self.tail.position(p))

    def omega_word(self):
        return self.tail.omega_word()

    def omega_prefix_from(self, word):
        r = self.tail.omega_prefix_from(word)
        return None if r is None else r + len(self.heads)

    def after_position(self, k):
        return self._shift(self.tail.after_position(k))


@dataclass(frozen=True)
class LimitResult:
    string: TString
    authoritative: bool = True
    note: str = ""

    def __str__(self):
        return str(self.string) + ("" if self.authoritative else f" [empirical: {self.note}]")


SCAN_CAP = 10_000


def string_limit(fam: Family) -> LimitResult:
    """Longest string that is eventually an initial segment of the family's strings."""
    word = fam.omega_word()
    if word is None or word.is_finite:
        out = []
        for p in range(SCAN_CAP):
            r = fam.position(p)
            if r is None or r[0] == END:
                return LimitResult(TString("".join(out)))
            out.append(r[0])
        raise RuntimeError(f"{fam.name}: no finite limit found within {SCAN_CAP} positions")
    if fam.omega_prefix_from(word) is None:
        return LimitResult(word.omega_part())
    after = []
    for k in range(SCAN_CAP):
        r = fam.after_position(k)
        if r is None or r[0] == END:
            break
        after.append(r[0])
    return LimitResult(TString(word.head, word.period, "".join(after)))


def empirical_string_limit(strings: Sequence[TString], window: int) -> LimitResult:
    """Positionwise agreement over the last `window` strings; an approximation only."""
    tail = list(strings)[-window:]
    out = []
    for p in range(SCAN_CAP):
        syms = {s.at(p) for s in tail}
        if len(syms) != 1 or None in syms:
            break
        out.append(syms.pop())
    return LimitResult(TString("".join(out)), False, f"K={len(strings)}, W={window}")


# ------------------------------------------------------ nlim / mlim arenas

@dataclass(eq=False)
class GameSequenceTemplate:
    name: str
    generator: Callable[[int], Game]
    common: Callable[[int, Player], list]        # options in every G_i, i >= n
    dominated: Callable[[int, Player], list]     # options of G_n with witnesses for all i >= n
    never: dict = field(default_factory=dict)    # kind -> players with no move at any n
    _neg: Optional["GameSequenceTemplate"] = None

    def allowed(self, kind: str, n: int, player: Player) -> list:
        return (self.common if kind == "nlim" else self.dominated)(n, player)

    def negated(self) -> "GameSequenceTemplate":
        if self._neg is None:
            t = self
            neg = GameSequenceTemplate(
                name=t.name[4:-1] if t.name.startswith("neg(") else f"neg({t.name})",
                generator=lambda i: K.negate(t.generator(i)),
                common=lambda n, p: [K.negate(o) for o in t.common(n, p.opponent)],
                dominated=lambda n, p: [K.negate(o) for o in t.dominated(n, p.opponent)],
                never={k: {p.opponent for p in v} for k, v in t.never.items()},
            )
            neg._neg = self
            self._neg = neg
        return self._neg

    def spot_check(self, kind: str, n_max: int = 6, span: int = 8) -> None:
        """Re-verify the certificates against the generator; raises on a lie."""
        for n in range(n_max + 1):
            for p in (LEFT, RIGHT):
                for o in self.allowed(kind, n, p):
                    for i in range(n, n + span):
                        opts = self.generator(i).options(p)
                        if kind == "nlim":
                            ok = any(o is x for x in opts)
                        else:
                            ok = any(o is x for x in self.generator(n).options(p)) and any(
                                (K.leq(o, x) if p is LEFT else K.leq(x, o)) for x in opts)
                        if not ok:
                            raise ValueError(f"{self.name}: {kind} certificate fails at n={n}, i={i}")
            for p in self.never.get(kind, ()):
                if self.allowed(kind, n, p):
                    raise ValueError(f"{self.name}: claims {p} never moves but lists options")


def canon_naturals() -> GameSequenceTemplate:
    """G_n = n in canonical form ({n-1|})."""
    return GameSequenceTemplate(
        name="canon_naturals",
        generator=K.integer,
        common=lambda n, p: [],
        dominated=lambda n, p: [K.integer(n - 1)] if p is LEFT and n >= 1 else [],
        never={"nlim": {LEFT, RIGHT}, "mlim": {RIGHT}},
    )


def sign_naturals() -> GameSequenceTemplate:
    """G_n = {0, 1, ..., n-1 |} (sign-expansion forms)."""
    return GameSequenceTemplate(
        name="sign_naturals",
        generator=lambda n: realize_as_game("+" * n),
        common=lambda n, p: [realize_as_game("+" * k) for k in range(n)] if p is LEFT else [],
        dominated=lambda n, p: [realize_as_game("+" * k) for k in range(n)] if p is LEFT else [],
        never={"nlim": {RIGHT}, "mlim": {RIGHT}},
    )


def const_template(g: Game) -> GameSequenceTemplate:
    return GameSequenceTemplate(
        name=f"const({K.show(g)})",
        generator=lambda n: g,
        common=lambda n, p: list(g.options(p)),
        dominated=lambda n, p: list(g.options(p)),
        never={k: {p for p in (LEFT, RIGHT) if not g.options(p)} for k in ("nlim", "mlim")},
    )


def halving_dyadics() -> GameSequenceTemplate:
    """G_n = 2^-n as a sign form: 1, 1/2, 1/4, ..."""
    form = lambda n: realize_as_game("+" + "-" * n)
    return GameSequenceTemplate(
        name="halving_dyadics",
        generator=form,
        common=lambda n, p: list(form(n).options(p)) if p is LEFT else [form(k) for k in range(n)],
        dominated=lambda n, p: list(form(n).options(p)),
        never={},
    )


TEMPLATES = {
    "canon_naturals": canon_naturals,
    "sign_naturals": sign_naturals,
    "halving_dyadics": halving_dyadics,
}


@dataclass(frozen=True, eq=False)
class LimitArena:
    """First mover picks n and an admissible option; play continues on that option."""

    kind: str                      # "nlim" | "mlim"
    template: GameSequenceTemplate
    rank = 1

    def __post_init__(self):
        if self.kind not in ("nlim", "mlim"):
            raise ValueError(self.kind)

    def moves(self, c, player, bound):
        return [LimitMove(c, n, o) for n in range(bound + 1) for o in self.template.allowed(self.kind, n, player)]

    def apply(self, mv, player):
        if not isinstance(mv, LimitMove):
            raise IllegalMove("limit arena takes a (n, option) choice")
        if not any(mv.option is o for o in self.template.allowed(self.kind, mv.n, player)):
            rule = "present in every G_i, i >= n" if self.kind == "nlim" else "dominated by an option of every later G_i"
            raise IllegalMove(f"option is not {rule}")
        return FiniteGame(mv.option)

    def empty_is_final(self, player, bound):
        return player in self.template.never.get(self.kind, ())

    def finite_value(self):
        return None

    def negated(self):
        return LimitArena(self.kind, self.template.negated())

    def key(self):
        return ("lim", self.kind, self.template.name)

    def __eq__(self, other):
        return isinstance(other, LimitArena) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        return f"{self.kind}({self.template.name})"


def nlim_arena(t: GameSequenceTemplate) -> LimitArena:
    t.spot_check("nlim")
    return LimitArena("nlim", t)


def mlim_arena(t: GameSequenceTemplate) -> LimitArena:
    t.spot_check("mlim")
    return LimitArena("mlim", t)


def series_limit_transform(spec: SequenceSpec) -> SequenceSpec:
    """(H_i) -> the series of differences H_i - H_{i-1} with H_{-1} = 0."""
    return diff(spec)
