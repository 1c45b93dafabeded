"""Bounded certification of strategies and truncated minimax."""
from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernel as K
from .kernel import Outcome, Player, LEFT, RIGHT
from .arena import (
    BoundDependent, CompoundState, FiniteGame, IllegalMove, Series, Closed,
    apply_move, legal_moves, max_fixed_index, negate_move, negate_state,
    relative_bound, terminal_loser,
)
from .sequences import summand_game

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class StrategyError(RuntimeError):
    """A strategy's precondition does not hold on the compound it was given."""


@dataclass
class Ctx:
    certifier: Player
    bound: int
    last_move: Optional[object] = None


class Strategy:
    """Deterministic move chooser with scratch memory; subclasses implement choose."""

    name = "strategy"

    def precheck(self, state: CompoundState, certifier: Player, role: str) -> None:
        pass

    def choose(self, state: CompoundState, scratch: dict, ctx: Ctx):
        raise NotImplementedError


class LeftStrategy(Strategy):
    """Written for a Left certifier; a Right certifier plays it on the negated compound."""

    def precheck_left(self, state: CompoundState, role: str) -> None:
        pass

    def choose_left(self, state: CompoundState, scratch: dict, ctx: Ctx):
        raise NotImplementedError

    def precheck(self, state, certifier, role):
        self.precheck_left(state if certifier is LEFT else negate_state(state), role)

    def choose(self, state, scratch, ctx):
        if ctx.certifier is LEFT:
            return self.choose_left(state, scratch, ctx)
        last = negate_move(ctx.last_move) if ctx.last_move is not None else None
        mv = self.choose_left(negate_state(state), scratch, Ctx(LEFT, ctx.bound, last))
        return None if mv is None else negate_move(mv)


# ------------------------------------------------------------- verdicts

@dataclass
class Verdict:
    kind: str                      # CERTIFIED | REFUTED | INCONCLUSIVE
    nodes: int = 0
    counterplay: tuple = ()
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.kind == "CERTIFIED"


@dataclass
class CertificationTask:
    compound: CompoundState
    certifier: Player
    role: str                      # "first" | "second"
    strategy: Strategy
    adversary_index_bound: int
    case: str = "-"

    def initial_state(self) -> CompoundState:
        mover = self.certifier if self.role == "first" else self.certifier.opponent
        return CompoundState(self.compound.components, mover)


def finite_parts(state: CompoundState) -> Optional[list]:
    parts = []
    for comp in state.components:
        if isinstance(comp, Series):
            if not isinstance(comp.phase, Closed):
                return None
            gs = [summand_game(x) for x in comp.phase.head]
            if any(g is None for g in gs):
                return None
            parts.extend(gs)
            continue
        v = comp.finite_value()
        if v is None:
            return None
        parts.append(v)
    return parts


def _scratch_key(scratch: dict):
    return tuple(sorted(scratch.items()))


def adversary_moves(state: CompoundState, bound: int, fixed: Optional[int] = None) -> list:
    """Truncated adversary options: the window reaches bound indices past every fixed index.

    Subset index sets stay inside the absolute universe {0..bound}.
    """
    wide = relative_bound(state, bound) if fixed is None else bound + max(fixed, 0)
    if wide == bound:
        return legal_moves(state, bound)
    out = []
    for c, comp in enumerate(state.components):
        out += comp.moves(c, state.mover, bound if getattr(comp, "variant", None) == "subset" else wide)
    return out


class _Failure(Exception):
    def __init__(self, kind: str, moves: list, reason: str):
        self.kind, self.moves, self.reason = kind, moves, reason


class _Certifier:
    def __init__(self, task: CertificationTask):
        self.task = task
        self.me = task.certifier
        self.bound = task.adversary_index_bound
        self.nodes = 0
        self.memo: set = set()

    def run(self) -> Verdict:
        try:
            self.task.strategy.precheck(self.task.initial_state(), self.me, self.task.role)
        except StrategyError as e:
            return Verdict("INCONCLUSIVE", 0, (), f"precondition: {e}")
        try:
            self.explore(self.task.initial_state(), {}, None)
        except _Failure as f:
            return Verdict(f.kind, self.nodes, tuple(reversed(f.moves)), f.reason)
        return Verdict("CERTIFIED", self.nodes)

    def explore(self, state: CompoundState, scratch: dict, last) -> None:
        mine = state.mover is self.me
        key = (state.key(), _scratch_key(scratch), str(last) if mine else None)
        if key in self.memo:
            return
        self.nodes += 1
        parts = finite_parts(state)
        if parts is not None:
            if K.finite_outcome(parts).winner(state.mover) is not self.me:
                raise _Failure("REFUTED", [], "certifier loses the finite remainder")
            self.memo.add(key)
            return
        if mine:
            self._certifier_turn(state, scratch, last)
        else:
            self._adversary_turn(state, scratch)
        self.memo.add(key)

    def _certifier_turn(self, state, scratch, last):
        scratch = dict(scratch)
        try:
            mv = self.task.strategy.choose(state, scratch, Ctx(self.me, self.bound, last))
        except StrategyError as e:
            raise _Failure("INCONCLUSIVE", [], f"strategy precondition: {e}")
        if mv is None:
            raise _Failure("REFUTED", [], "strategy has no move")
        try:
            nxt = apply_move(state, mv)
        except IllegalMove as e:
            raise _Failure("REFUTED", [], f"strategy chose an illegal move {mv}: {e}")
        try:
            self.explore(nxt, scratch, mv)
        except _Failure as f:
            f.moves.append(mv)
            raise

    def _adversary_turn(self, state, scratch):
        moves = adversary_moves(state, self.bound)
        if not moves:
            try:
                terminal_loser(state, self.bound)
                return
            except BoundDependent as e:
                # the truncation hid every adversary option: reopen a window past the fixed indices
                wider = max(self.bound, max_fixed_index(state) + 1 + self.bound)
                moves = legal_moves(state, wider)
                if not moves:
                    try:
                        terminal_loser(state, wider)
                        return
                    except BoundDependent:
                        raise _Failure("INCONCLUSIVE", [], str(e))
        for mv in moves:
            try:
                self.explore(apply_move(state, mv), scratch, mv)
            except _Failure as f:
                f.moves.append(mv)
                raise


def certify(task: CertificationTask) -> Verdict:
    return _Certifier(task).run()


def replay(task: CertificationTask, moves) -> CompoundState:
    s = task.initial_state()
    for mv in moves:
        s = apply_move(s, mv)
    return s


# ------------------------------------------------------- truncated solver

def normalize(state: CompoundState) -> CompoundState:
    """Merge all finite parts into one canonical game; infinite parts keep their order."""
    finite, rest = [], []
    for comp in state.components:
        if isinstance(comp, Series) and isinstance(comp.phase, Closed):
            parts = finite_parts(CompoundState((comp,), state.mover))
            if parts is not None:
                finite.extend(parts)
                continue
        v = comp.finite_value() if not isinstance(comp, Series) else None
        if v is not None:
            finite.append(v)
        else:
            rest.append(comp)
    comps = tuple(rest)
    if finite:
        if all(K.is_number(p) for p in finite):
            g = K.number_form(sum((K.number_value(p) for p in finite), Fraction(0)))
        else:
            g = K.canonical_sum(finite)
        if g is not K.ZERO:
            comps = (FiniteGame(g),) + comps
    return CompoundState(comps, state.mover)


class Solver:
    """Exact minimax of the truncated game; each player has its own index bound.

    With relative=True each bound is measured past the largest fixed index.
    """

    def __init__(self, left_bound: int, right_bound: int, relative: bool = False):
        self.bounds = {LEFT: left_bound, RIGHT: right_bound}
        self.relative = relative
        self.memo: dict = {}

    def moves(self, s: CompoundState, fixed: Optional[int] = None) -> list:
        b = self.bounds[s.mover]
        return adversary_moves(s, b, fixed) if self.relative else legal_moves(s, b)

    def wins(self, state: CompoundState, fixed: int = -1) -> bool:
        """Does the mover win the truncated game?

        Merging closed series into one finite part forgets their indices, so the
        largest index fixed so far is carried along for the relative windows.
        """
        fixed = max(fixed, max_fixed_index(state))
        s = normalize(state)
        key = (s.key(), fixed if self.relative else None)
        r = self.memo.get(key)
        if r is not None:
            return r
        parts = finite_parts(s)
        if parts is not None:
            r = K.finite_outcome(parts).winner(s.mover) is s.mover
        else:
            r = any(not self.wins(apply_move(s, mv), fixed) for mv in self.moves(s, fixed))
        self.memo[key] = r
        return r


_solvers: dict = {}


def solver_for(left_bound: int, right_bound: int, relative: bool = False) -> Solver:
    k = (left_bound, right_bound, relative)
    if k not in _solvers:
        _solvers[k] = Solver(left_bound, right_bound, relative)
    return _solvers[k]


def solve_bounded(compound: CompoundState, index_bound: int, right_bound: Optional[int] = None) -> Outcome:
    """Outcome of the truncated game (all index choices <= bound); not a value claim."""
    sv = solver_for(index_bound, index_bound if right_bound is None else right_bound)
    left_first = LEFT if sv.wins(CompoundState(compound.components, LEFT)) else RIGHT
    right_first = RIGHT if sv.wins(CompoundState(compound.components, RIGHT)) else LEFT
    return Outcome.from_winners(left_first, right_first)


def solve_profile(compound: CompoundState, max_bound: int) -> list:
    return [(b, solve_bounded(compound, b)) for b in range(1, max_bound + 1)]


# ---------------------------------------------------------------- reports

def variant_of(compound: CompoundState) -> str:
    vs = sorted({getattr(c, "variant", None) or c.kind for c in compound.components
                 if hasattr(c, "variant") or hasattr(c, "kind")})
    return "+".join(vs) if vs else "none"


def render_report(task: CertificationTask, verdict: Verdict) -> str:
    cp = ";".join(str(m) for m in verdict.counterplay) or "-"
    line = (
        f"case={task.case} variant={variant_of(task.compound)} certifier={task.certifier} "
        f"role={task.role} strategy={task.strategy.name} bound={task.adversary_index_bound} "
        f"verdict={verdict.kind} nodes={verdict.nodes} counterplay={cp}"
    )
    if verdict.reason and verdict.kind != "CERTIFIED":
        line += f" reason={verdict.reason.replace(' ', '_')}"
    return line
