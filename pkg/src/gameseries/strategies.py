"""Constructive strategies for series compounds, plus a bounded-search strategist.

Every strategy here is written for a Left certifier playing second; a Right
certifier runs the same logic on the negated compound (see LeftStrategy).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from . import kernel as K
from .kernel import Game, LEFT, RIGHT
from .ordinals import (
    Ordinal, min_natural_complement, natural_sum, natural_sum_all, sign_form_string,
)
from .sequences import (
    OracleError, OrdinalGame, SequenceSpec, negate_summand, summand_game, summand_ordinal,
)
from .arena import (
    Close, Closed, CompoundState, FiniteGame, HalfOpened, Open, OptionMove,
    OrdinalComponent, OrdinalMove, PlayWithin, Series, SubsetClose, SubsetOpen,
    Unopened, apply_move, legal_moves, max_fixed_index,
)
from .verifier import Ctx, LeftStrategy, Strategy, StrategyError, solver_for

PRECHECK_DEPTH = 24


# ---------------------------------------------------------------- helpers

def _nonneg(parts: list) -> bool:
    if all(K.is_number(p) for p in parts):
        return sum((K.number_value(p) for p in parts), Fraction(0)) >= 0
    return K.leq(K.ZERO, K.canonical_sum(parts))


def left_replies(parts: list, order=None):
    """Yield (slot, option) with the sum >= 0 after Left moves there."""
    for idx in (order if order is not None else range(len(parts))):
        for o in parts[idx].left:
            trial = list(parts)
            trial[idx] = o
            if _nonneg(trial):
                yield idx, o


def _find(state: CompoundState, kind) -> list:
    return [c for c, comp in enumerate(state.components) if isinstance(comp, kind)]


def _single(state: CompoundState, kind, what: str) -> int:
    found = _find(state, kind)
    if len(found) != 1:
        raise StrategyError(f"expected exactly one {what}, found {len(found)}")
    return found[0]


def _value(x) -> Fraction:
    g = summand_game(x)
    v = None if g is None else K.number_value(g)
    if v is None:
        raise StrategyError("summand is not a number")
    return v


def slot_of(mv) -> tuple:
    if isinstance(mv, OptionMove):
        return ("f", mv.comp)
    if isinstance(mv, (Open, PlayWithin, SubsetOpen)):
        return ("s", mv.comp, mv.i)
    if isinstance(mv, (Close, SubsetClose)):
        return ("s", mv.comp, mv.j)
    raise StrategyError(f"unsupported adversary move {mv}")


def realize(state: CompoundState, slot: tuple, option, cover: int = 0, subset_set=None):
    """Turn a local Left reply into a protocol move, or None if the protocol forbids it."""
    if slot[0] == "f":
        return OptionMove(slot[1], option)
    _, c, i = slot
    s: Series = state.components[c]
    ph = s.phase
    if isinstance(ph, Unopened):
        n = max(i, cover)
        if s.variant == "subset":
            return SubsetOpen(c, subset_set or tuple(range(n + 1)), i, option)
        return Open(c, n, i, option)
    if isinstance(ph, Closed) or ph.owner is LEFT:
        return PlayWithin(c, i, option) if i in ph.indices else None
    if s.variant == "bullet" and i in ph.indices:
        return PlayWithin(c, i, option)
    m = max(i, cover, max(ph.indices))
    if s.variant == "subset":
        return SubsetClose(c, subset_set or tuple(range(m + 1)), i, option)
    return Close(c, m, i, option)


def _cost(mv) -> int:
    if mv is None:
        return 9
    return {OptionMove: 0, PlayWithin: 0, Open: 1, SubsetOpen: 1, Close: 2, SubsetClose: 2}[type(mv)]


# ------------------------------------------------------- unit engine

class UnitEngine(LeftStrategy):
    """Second-player play as a sum of local units, each kept >= 0 for Left.

    A unit is a set of slots (finite components or series entries). After the
    adversary moves in some slot, Left answers inside that slot's unit with a
    kernel reply, then realizes it under the series protocol. Series indices
    not yet fixed are read from the generator.
    """

    def __init__(self, name: str, pairs=(), block=None, zero_check=True):
        self.name = name
        self.pairs = tuple(pairs)          # (comp_a, comp_b, "identity" | "nonzero")
        self.block = block                 # None | (comp, "head" | "tail")
        self.zero_check = zero_check
        self.log: list = []

    # ---- unit structure
    def _nz_source(self, state, cb):
        spec = state.components[cb].spec
        src = getattr(spec, "source_index", None)
        if src is None and spec.name.startswith("neg("):
            src = getattr(spec.negated(), "source_index", None)
        if src is None:
            raise StrategyError("nonzero pairing needs a reindexed partner series")
        return src

    def _inverse(self, src, i: int) -> Optional[int]:
        k = 0
        while True:
            s = src(k)
            if s == i:
                return k
            if s > i:
                return None
            k += 1

    def _block_M(self, state) -> int:
        c, kind = self.block
        s = state.components[c]
        if kind == "head":
            return -1 if isinstance(s.phase, Unopened) else max(s.phase.indices)
        z = s.spec.zero_tail_from
        if z is None:
            raise StrategyError("finite reduction needs an eventually-zero tail")
        return max(z - 1, 0)

    def unit_of(self, state, slot):
        if self.block is not None:
            if slot[0] == "f":
                return ("block",)
            if slot[1] == self.block[0] and slot[2] <= self._block_M(state):
                return ("block",)
        if slot[0] == "f":
            return slot
        _, c, i = slot
        for pi, (ca, cb, kind) in enumerate(self.pairs):
            if c == ca:
                if kind == "identity":
                    return ("p", pi, i)
                return ("p", pi, i) if not state.components[ca].spec.is_zero_at(i) else ("z", c, i)
            if c == cb:
                return ("p", pi, i if kind == "identity" else self._nz_source(state, cb)(i))
        return ("z", c, i)

    def slots_of(self, state, unit) -> list:
        if unit[0] == "block":
            c = self.block[0]
            fins = [("f", k) for k, comp in enumerate(state.components) if isinstance(comp, FiniteGame)]
            return fins + [("s", c, i) for i in range(self._block_M(state) + 1)]
        if unit[0] == "p":
            _, pi, i = unit
            ca, cb, kind = self.pairs[pi]
            k = i if kind == "identity" else self._inverse(self._nz_source(state, cb), i)
            return [("s", ca, i)] + ([("s", cb, k)] if k is not None else [])
        return [unit]

    def entry(self, state, slot) -> Game:
        comp = state.components[slot[1]]
        if slot[0] == "f":
            return comp.game
        g = summand_game(comp.entry(slot[2]))
        if g is None:
            raise StrategyError("unit engine needs finite summands")
        return g

    def cover(self, state, c: int) -> int:
        if self.block is not None and c == self.block[0]:
            return max(self._block_M(state), 0)
        for ca, cb, kind in self.pairs:
            if c in (ca, cb):
                other = state.components[cb if c == ca else ca]
                if isinstance(other.phase, Unopened):
                    return 0
                r = max(other.phase.indices)
                if kind == "identity":
                    return r
                src = self._nz_source(state, cb)
                if c == ca:
                    return src(r)
                k = 0
                while src(k + 1) <= r:
                    k += 1
                return k if src(0) <= r else 0
        return 0

    # ---- checks and play
    def precheck_left(self, state, role):
        if role != "second":
            raise StrategyError(f"{self.name} plays second only")
        for ca, cb, kind in self.pairs:
            a, b = state.components[ca], state.components[cb]
            if not (isinstance(a, Series) and isinstance(b, Series)):
                raise StrategyError("pairs must join two series")
            for i in range(PRECHECK_DEPTH):
                if kind == "identity":
                    parts = [summand_game(a.spec(i)), summand_game(b.spec(i))]
                    if K.finite_outcome(parts) is not K.Outcome.SECOND_WINS:
                        raise StrategyError(f"paired summands at index {i} are not equivalent")
                elif not a.spec.is_zero_at(i):
                    self.unit_of(state, ("s", ca, i))
        if self.zero_check:
            for k, comp in enumerate(state.components):
                if isinstance(comp, FiniteGame) and self.block is None:
                    if K.outcome(comp.game) is not K.Outcome.SECOND_WINS:
                        raise StrategyError(f"finite component {k} is not a zero game")
        if self.block is not None:
            slots = self.slots_of(state, ("block",))
            if not _nonneg([self.entry(state, s) for s in slots]):
                raise StrategyError("the finite block is not >= 0 for Left")

    def choose_left(self, state, scratch, ctx: Ctx):
        if ctx.last_move is None:
            raise StrategyError(f"{self.name} plays second only")
        unit = self.unit_of(state, slot_of(ctx.last_move))
        slots = self.slots_of(state, unit)
        parts = [self.entry(state, s) for s in slots]
        best = None
        for idx, o in left_replies(parts):
            slot = slots[idx]
            mv = realize(state, slot, o, self.cover(state, slot[1]) if slot[0] == "s" else 0)
            if best is None or _cost(mv) < _cost(best):
                best = mv
            if _cost(best) == 0:
                break
        if best is not None:
            self.log.append((self._label(state, best), str(best)))
        return best

    def _label(self, state, mv) -> str:
        if isinstance(mv, (OptionMove,)):
            return "zero"
        comp = state.components[mv.comp]
        if isinstance(mv, (Open, SubsetOpen)):
            return "b"
        if isinstance(mv, (Close, SubsetClose)):
            return "b2"
        if isinstance(comp.phase, HalfOpened) and comp.phase.owner is RIGHT:
            return "a"
        return "b1"


def mirror_strategy(pairs=((0, 1),)) -> UnitEngine:
    return UnitEngine("mirror", [(a, b, "identity") for a, b in pairs])


def bullet_invariance_strategy(pairs=((0, 1),)) -> UnitEngine:
    return UnitEngine("bullet_invariance", [(a, b, "identity") for a, b in pairs])


def zero_removal_strategy(pair=(0, 1)) -> UnitEngine:
    return UnitEngine("zero_removal", [(pair[0], pair[1], "nonzero")])


def finite_reduction_strategy(series_comp: int = 0) -> UnitEngine:
    return UnitEngine("finite_reduction", block=(series_comp, "tail"), zero_check=False)


# --------------------------------------------------- partial-sum signs

class PartialSumSignStrategy(LeftStrategy):
    def __init__(self, side=LEFT):
        self.side = side
        self.name = f"partial_sum_sign_{side}"

    def precheck_left(self, state, role):
        if role != "second":
            raise StrategyError("partial-sum strategy plays second")
        if len(state.components) != 1 or not isinstance(state.components[0], Series):
            raise StrategyError("compound must be a single series")

    def choose_left(self, state, scratch, ctx):
        s: Series = state.components[0]
        ph = s.phase
        if not isinstance(ph, HalfOpened) or ph.owner is not RIGHT:
            raise StrategyError("expected the adversary to have opened the series")
        try:
            w = s.spec.partial_sum_sign_witness(ph.n, "+")
        except OracleError as e:
            raise StrategyError(str(e))
        if not K.leq(K.ZERO, s.spec.partial_sum(w)):
            raise StrategyError(f"sign witness {w} failed its kernel re-check")
        for m in range(w, w + 64):
            parts = [summand_game(s.entry(j)) for j in range(m + 1)]
            for j, o in left_replies(parts):
                return Close(0, m, j, o)
        return None


def partial_sum_sign_strategy(side=LEFT) -> PartialSumSignStrategy:
    return PartialSumSignStrategy(side)


# ----------------------------------------------------------- impartial

class ImpartialSecondStrategy(LeftStrategy):
    name = "impartial_second"

    def precheck_left(self, state, role):
        if role != "second" or len(state.components) != 1:
            raise StrategyError("impartial strategy plays second on a single series")
        s = state.components[0]
        if not isinstance(s, Series) or s.variant == "subset":
            raise StrategyError("needs a plain or bullet series")
        for i in range(PRECHECK_DEPTH):
            g = summand_game(s.spec(i))
            if g is None or not K.classify(g).is_impartial:
                raise StrategyError(f"summand {i} is not impartial")

    def choose_left(self, state, scratch, ctx):
        s: Series = state.components[0]
        ph = s.phase
        if not isinstance(ph, HalfOpened) or ph.owner is not RIGHT:
            raise StrategyError("expected the adversary to have opened the series")
        head = [summand_game(x) for x in ph.head]
        total = 0
        for g in head:
            total ^= K.grundy(g)
        if total:
            for j, g in enumerate(head):
                want = K.grundy(g) ^ total
                for o in g.left:
                    if K.grundy(o) == want and want < K.grundy(g):
                        return Close(0, ph.n, j, o)
            return None
        try:
            m = s.spec.first_winner_index_after(ph.n)
        except OracleError as e:
            raise StrategyError(str(e))
        for k in range(ph.n + 1, m):
            if K.grundy(summand_game(s.spec(k))) != 0:
                raise StrategyError(f"first-winner oracle skipped index {k}")
        g = summand_game(s.spec(m))
        for o in g.left:
            if K.grundy(o) == 0:
                return Close(0, m, m, o)
        return None


def impartial_second_strategy() -> ImpartialSecondStrategy:
    return ImpartialSecondStrategy()


# ------------------------------------------------------------- ordinals

def _ord_of_left(x) -> Optional[Ordinal]:
    return summand_ordinal(x)


def _ord_of_right(x) -> Optional[Ordinal]:
    return summand_ordinal(negate_summand(x))


def ordinal_move(entries, target: Ordinal):
    """(index, option) moving a head of Left ordinals to a natural sum >= target."""
    vals = [_ord_of_left(x) for x in entries]
    for idx, x in enumerate(entries):
        others = natural_sum_all(v for k, v in enumerate(vals) if k != idx)
        if isinstance(x, OrdinalGame):
            beta = min_natural_complement(others, target)
            if beta < x.alpha:
                return idx, OrdinalGame(beta)
        else:
            best = None
            for o in x.left:
                v = _ord_of_left(o)
                if v is not None and not natural_sum(others, v) < target:
                    if best is None or v < best[0]:
                        best = (v, o)
            if best is not None:
                return idx, best[1]
    return None


class OrdinalSeriesStrategy(LeftStrategy):
    def __init__(self, side=LEFT):
        self.side = side
        self.name = f"ordinal_series_{side}"

    def _parts(self, state):
        cs = _single(state, Series, "series")
        co = _single(state, OrdinalComponent, "ordinal component")
        if len(state.components) != 2:
            raise StrategyError("compound must be a series plus one ordinal")
        return cs, co

    def precheck_left(self, state, role):
        if role != "second":
            raise StrategyError("ordinal strategy plays second")
        cs, co = self._parts(state)
        s = state.components[cs]
        if s.variant == "subset":
            raise StrategyError("ordinal strategy covers plain and bullet series")
        neg = not state.components[co].positive
        read = _ord_of_left if neg else _ord_of_right
        for i in range(PRECHECK_DEPTH):
            if read(s.spec(i)) is None:
                raise StrategyError(f"summand {i} is not ordinal-valued")

    def choose_left(self, state, scratch, ctx):
        cs, co = self._parts(state)
        s: Series = state.components[cs]
        gamma: OrdinalComponent = state.components[co]
        ph = s.phase
        if not gamma.positive:
            target = gamma.alpha
            if isinstance(ph, Unopened):
                for n in range(0, 4096):
                    hit = ordinal_move([s.spec(i) for i in range(n + 1)], target)
                    if hit is not None:
                        return Open(cs, n, hit[0], hit[1])
                return None
            hit = ordinal_move(list(ph.head), target)
            return None if hit is None else PlayWithin(cs, ph.indices[hit[0]], hit[1])
        if isinstance(ph, Unopened):
            return None
        y = natural_sum_all(_ord_of_right(x) for x in ph.head)
        if not y < gamma.alpha:
            return None
        return OrdinalMove(co, y)


def ordinal_series_strategy(side=LEFT) -> OrdinalSeriesStrategy:
    return OrdinalSeriesStrategy(side)


# ------------------------------------------------------ real series

class RealSeriesSecondStrategy(LeftStrategy):
    """Second-player win on realize(-r) + series of dyadics summing to r."""

    name = "real_series_second"

    def __init__(self):
        self.commitments: list = []

    def _parts(self, state):
        cf = _single(state, FiniteGame, "finite component")
        cs = _single(state, Series, "series")
        return cf, cs

    def precheck_left(self, state, role):
        if role != "second":
            raise StrategyError("real-series strategy plays second")
        cf, cs = self._parts(state)
        s: Series = state.components[cs]
        spec = s.spec
        if s.variant == "bullet":
            raise StrategyError("real-series strategy covers plain and subset series")
        if spec.zero_tail_from is not None:
            raise StrategyError("series is eventually zero; reduce it to a finite sum first")
        if spec.dyadic_values is None or spec.classical_sum is None or spec.tail_abs is None:
            raise StrategyError("needs dyadic values, classical sum and tail bounds")
        v = K.number_value(state.components[cf].game)
        if v is None or v != -spec.classical_sum:
            raise StrategyError("finite component must be the negated classical sum")

    @staticmethod
    def _set_value(s: Series, indices) -> Fraction:
        return sum((_value(s.entry(i)) for i in indices), Fraction(0))

    def choose_left(self, state, scratch, ctx):
        cf, cs = self._parts(state)
        s: Series = state.components[cs]
        if "mode" not in scratch:
            scratch["mode"] = "a" if slot_of(ctx.last_move)[0] == "s" else "b"
        if scratch["mode"] == "a":
            return self._case_a(state, scratch, cf, cs)
        return self._case_b(state, scratch, cf, cs)

    # the adversary touched the series first: close beyond r, then kernel play
    def _case_a(self, state, scratch, cf, cs):
        s: Series = state.components[cs]
        r = s.spec.classical_sum
        if "closure" not in scratch:
            fixed = set(s.phase.indices)
            lo = 0 if s.variant == "subset" else max(fixed)
            for m in range(lo, lo + 4096):
                idx = tuple(sorted(fixed | set(range(m + 1))))
                if self._set_value(s, idx) > r:
                    scratch["closure"] = idx
                    break
            else:
                return None
        idx = scratch["closure"]
        slots = [("s", cs, i) for i in idx] + [("f", cf)]
        parts = [summand_game(s.entry(i)) for i in idx] + [state.components[cf].game]
        for k, o in left_replies(parts):
            mv = realize(state, slots[k], o, cover=idx[-1], subset_set=idx)
            if mv is not None:
                return mv
        return None

    # the adversary moved on -r first: commit p, h, n', n'' and spend l_0..l_h
    def _case_b(self, state, scratch, cf, cs):
        s: Series = state.components[cs]
        spec: SequenceSpec = s.spec
        if "commit" not in scratch:
            commit = self._commit(state.components[cf].game, spec)
            scratch["commit"] = commit
            scratch["next"] = 1
            p, h, n1, n2, ells, n = commit
            o = self._cheap_move(spec(ells[0]), p)
            if s.variant == "subset":
                return SubsetOpen(cs, tuple(range(n + 1)), ells[0], o)
            return Open(cs, n, ells[0], o)
        p, h, n1, n2, ells, n = scratch["commit"]
        k = scratch["next"]
        if k >= len(ells):
            return None
        scratch["next"] = k + 1
        return PlayWithin(cs, ells[k], self._cheap_move(s.entry(ells[k]), p))

    def _commit(self, neg_s: Game, spec: SequenceSpec):
        r = spec.classical_sum
        s_val = -K.number_value(neg_s)
        if not s_val < r:
            raise StrategyError("adversary's move on -r did not lower r")
        h = neg_s.birthday
        gap = (r - s_val) / (2 * (h + 1))
        p = 0
        while not Fraction(1, 2 ** p) < gap:
            p += 1
        eps = Fraction(1, 2 ** p)
        n2 = 0
        while not spec.tail_abs(n2 - 1) < eps:
            n2 += 1
        mid = (r + s_val) / 2
        partial = Fraction(0)
        n1 = 0
        while True:
            partial += spec.dyadic_values(n1)
            if partial - spec.tail_abs(n1) > mid:
                break
            n1 += 1
        ells, i = [], n2
        while len(ells) < h + 1:
            if spec.dyadic_values(i) != 0:
                ells.append(i)
            i += 1
        n = max(n1, n2, ells[-1])
        # the inequalities the argument needs, checked exactly
        assert eps < gap, (eps, gap)
        running = sum((spec.dyadic_values(i) for i in range(n1)), Fraction(0))
        for k in range(n1, n1 + 64):
            running += spec.dyadic_values(k)
            assert running > mid, (k, running, mid)
        for l in range(n2, n2 + 64):
            assert abs(spec.dyadic_values(l)) < eps, (l, eps)
        commit = (p, h, n1, n2, tuple(ells), n)
        self.commitments.append(dict(p=p, h=h, n1=n1, n2=n2, ells=tuple(ells), n=n,
                                     r=r, s=s_val, eps=eps, gap=gap, mid=mid))
        return commit

    @staticmethod
    def _cheap_move(x, p: int) -> Game:
        g = summand_game(x)
        v = K.number_value(g)
        if v > 0:
            for o in g.left:
                if o is K.ZERO:
                    return o
            raise StrategyError("positive summand without a move to 0")
        sign = sign_form_string(g)
        if sign is None:
            raise StrategyError("negative summand is not in sign form")
        pluses = [k for k, c in enumerate(sign) if c == "+"]
        if len(pluses) <= p:
            raise StrategyError("negative summand has too few plus signs")
        cut = sign[:pluses[p]]
        for o in g.left:
            if sign_form_string(o) == cut:
                return o
        raise StrategyError("truncated sign form is not a Left option")


def real_series_second_strategy() -> RealSeriesSecondStrategy:
    return RealSeriesSecondStrategy()


# ------------------------------------------------------ bullet vs 1

class BulletLowerBound(LeftStrategy):
    """Left second on bullet(G) + (-1) when every G_i > 0."""

    name = "bullet_bound_one_geq"

    def precheck_left(self, state, role):
        if role != "second":
            raise StrategyError("plays second")
        cs = _single(state, Series, "series")
        _single(state, FiniteGame, "finite component")
        s = state.components[cs]
        if s.variant != "bullet":
            raise StrategyError("inapplicable: the lower bound needs the bullet protocol")
        for i in range(PRECHECK_DEPTH):
            if not K.lt(K.ZERO, summand_game(s.spec(i))):
                raise StrategyError(f"summand {i} is not > 0")

    def choose_left(self, state, scratch, ctx):
        cs = _single(state, Series, "series")
        s: Series = state.components[cs]
        slot = slot_of(ctx.last_move)
        if slot[0] == "s":
            x = summand_game(s.entry(slot[2]))
            for o in x.left:
                if K.leq(K.ZERO, o):
                    return PlayWithin(cs, slot[2], o)
            return None
        ph = s.phase
        fresh = 0 if isinstance(ph, Unopened) else max(ph.indices) + 1
        g = summand_game(s.spec(fresh))
        opt = next((o for o in g.left if K.leq(K.ZERO, o)), None)
        if opt is None:
            return None
        if isinstance(ph, Unopened):
            return Open(cs, 0, 0, opt)
        if isinstance(ph, HalfOpened) and ph.owner is RIGHT:
            return Close(cs, fresh, fresh, opt)
        return None


class BulletUpperBound(UnitEngine):
    """Right second on series + (-1) when every partial sum is < 1 (run negated)."""

    def __init__(self, cs: int = 0):
        super().__init__("bullet_bound_one_leq", block=(cs, "head"), zero_check=False)

    def precheck_left(self, state, role):
        if role != "second":
            raise StrategyError("plays second")
        cs = _single(state, Series, "series")
        s = state.components[cs]
        if s.variant == "subset":
            raise StrategyError("covers plain and bullet series")
        fins = [c.game for c in state.components if isinstance(c, FiniteGame)]
        for n in range(PRECHECK_DEPTH):
            if not _nonneg([s.spec.partial_sum(n)] + fins):
                raise StrategyError(f"partial sum {n} violates the bound")


def bullet_bound_one_strategy(direction: str = "geq", cs: int = 0):
    if direction == "geq":
        return BulletLowerBound()
    if direction == "leq":
        return BulletUpperBound(cs)
    raise ValueError(direction)


# ------------------------------------------------------------- oracle

class OracleStrategy(Strategy):
    """Minimax over the truncated game, own index choices up to own_index_bound."""

    def __init__(self, own_index_bound: int):
        self.own = own_index_bound
        self.name = f"oracle({own_index_bound})"

    def choose(self, state, scratch, ctx):
        me = ctx.certifier
        sv = solver_for(*((self.own, ctx.bound) if me is LEFT else (ctx.bound, self.own)), relative=True)
        fixed = max_fixed_index(state)
        for mv in sv.moves(CompoundState(state.components, me), fixed):
            if not sv.wins(apply_move(state, mv), fixed):
                return mv
        return None


def oracle_strategy(own_index_bound: int) -> OracleStrategy:
    return OracleStrategy(own_index_bound)
