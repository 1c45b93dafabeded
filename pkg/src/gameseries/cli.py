"""Command-line driver: eval, series verify/solve, limits, hackenbush, play."""
from __future__ import annotations

import argparse
import os
import sys
from typing import Callable, Optional

from . import kernel as K
from .kernel import LEFT, RIGHT, Player
from .arena import (
    BoundDependent, Close, CompoundState, IllegalMove, LimitMove, Open, OptionMove, OrdinalMove,
    PlayWithin, SubsetClose, SubsetOpen, apply_move, legal_moves, terminal_loser,
)
from .ordinals import parse_ordinal
from .sequences import OrdinalGame
from .parsing import ParseError, parse_family, parse_game, parse_series_spec, parse_template
from .verifier import Ctx, solve_profile
from . import cases as C

EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64


def default_bound() -> int:
    return int(os.environ.get("GAMESERIES_DEFAULT_BOUND", "6"))


def alias(g: K.Game) -> Optional[str]:
    if g is K.UP:
        return "^"
    if g is K.DOWN:
        return "v"
    return None


# ------------------------------------------------------------- commands

def cmd_eval(args) -> int:
    g = parse_game(args.expr)
    c = K.canonical_form(g)
    line = f"canonical={K.show(c)} outcome={K.outcome(g)} number={str(K.is_number(g)).lower()}"
    v = K.number_value(c) if K.is_number(c) else None
    if v is not None and K.show(c) != K._fmt_fraction(v):
        line += f" value={K._fmt_fraction(v)}"
    print(line)
    return EXIT_OK


def _status(results) -> int:
    bad = [r for r in results if not r.as_expected]
    if not bad:
        return EXIT_OK
    return EXIT_REFUTED if any(r.verdict.kind == "REFUTED" for r in bad) else EXIT_INCONCLUSIVE


def _emit(lines: list[str], out: Optional[str]) -> None:
    for ln in lines:
        print(ln)
    if out:
        with open(out, "w") as fh:
            fh.write("\n".join(lines) + "\n")


def cmd_verify(args) -> int:
    results = C.run_case(C.get_case(args.case_id), args.bound)
    _emit([r.report() for r in results], args.out)
    return _status(results)


def cmd_verify_all(args) -> int:
    results = []
    for case in C.registry().values():
        results += C.run_case(case)
    lines = [r.report() for r in results]
    ok = sum(r.as_expected for r in results)
    lines.append(f"summary lines={len(results)} as_expected={ok} registry_version={C.REGISTRY_VERSION}")
    _emit(lines, args.out)
    return _status(results)


def cmd_solve(args) -> int:
    comp = parse_series_spec(args.spec)
    for b, o in solve_profile(comp, args.bound):
        print(f"bound={b} truncated_outcome={o}")
    print("note: outcomes of the index-truncated game, not value claims")
    return EXIT_OK


def cmd_limit(args) -> int:
    from .limits import LimitArena, string_limit, empirical_string_limit
    from .parsing import _tstring_list
    if args.kind == "string":
        if args.spec.startswith("empirical("):
            inner = args.spec[len("empirical("):-1]
            lst, _, w = inner.rpartition(",")
            res = empirical_string_limit(_tstring_list(lst), int(w))
        else:
            res = string_limit(parse_family(args.spec))
        print(f"limit={res}")
        return EXIT_OK
    kind = "nlim" if args.kind == "natural" else "mlim"
    t = parse_template(args.spec)
    t.spot_check(kind)
    arena = LimitArena(kind, t)
    b = args.bound
    for p in (LEFT, RIGHT):
        opts = [f"n={n}:{K.show(o)}" for n in range(b + 1) for o in t.allowed(kind, n, p)]
        never = p in t.never.get(kind, ())
        print(f"{p}: " + (" ".join(opts) if opts else "no moves") + (" (never moves)" if never else ""))
    for bb, o in solve_profile(CompoundState((arena,)), b):
        print(f"bound={bb} truncated_outcome={o}")
    return EXIT_OK


def cmd_hackenbush(args) -> int:
    from .hackenbush import parse_stack, stack_to_game
    c = K.canonical_form(stack_to_game(parse_stack(args.stack)))
    a = alias(c)
    print(f"canonical={K.show(c)}" + (f" (= {a})" if a else ""))
    return EXIT_OK


# ----------------------------------------------------------------- play

def parse_move(text: str, state: CompoundState):
    """'<comp> option <g>' | '<comp> to <ord>' | '<comp> open <n> <i> <x>' |
    '<comp> within <i> <x>' | '<comp> close <m> <j> <x>' | '<comp> limit <n> <g>'."""
    parts = text.split(None, 2)
    if len(parts) < 3:
        raise ValueError("expected: <component> <kind> <arguments>")
    c, kind, rest = int(parts[0].lstrip("c")), parts[1], parts[2]
    nums = rest.split(None, 2)

    def summand(txt: str, positive: bool):
        try:
            return parse_game(txt)
        except ParseError:
            return OrdinalGame(parse_ordinal(txt), positive)

    pos = state.mover is LEFT
    if kind == "option":
        return OptionMove(c, parse_game(rest))
    if kind == "to":
        return OrdinalMove(c, parse_ordinal(rest))
    if kind == "limit":
        return LimitMove(c, int(nums[0]), parse_game(rest.split(None, 1)[1]))
    if kind == "within":
        i, x = rest.split(None, 1)
        return PlayWithin(c, int(i), summand(x, pos))
    if kind in ("open", "close"):
        a, b, x = nums
        cls = Open if kind == "open" else Close
        return cls(c, int(a), int(b), summand(x, pos))
    raise ValueError(f"unknown move kind {kind!r}")


def play_repl(state: CompoundState, human: Player, bound: int,
              inp: Callable[[str], str] = input, out: Callable[[str], None] = print) -> list[str]:
    from .strategies import oracle_strategy
    engine = oracle_strategy(bound)
    log: list[str] = []

    def say(s: str):
        log.append(s)
        out(s)

    last = None
    while True:
        say(f"position: {state}")
        moves = legal_moves(state, bound)
        if not moves:
            try:
                loser = terminal_loser(state, bound)
                say(f"{loser} has no move and loses")
                return log
            except BoundDependent:
                if state.mover is not human:
                    say(f"engine ({state.mover}) has no move inside the bound; stopping")
                    return log
        if state.mover is human:
            for k, mv in enumerate(moves):
                say(f"  [{k}] {mv}")
            while True:
                try:
                    raw = inp(f"{human}> ").strip()
                except EOFError:
                    say("input closed")
                    return log
                if raw in ("q", "quit"):
                    say("quit")
                    return log
                try:
                    mv = moves[int(raw)] if raw.isdigit() else parse_move(raw, state)
                    nxt = apply_move(state, mv)
                    break
                except (IllegalMove, ValueError, IndexError) as e:
                    say(f"illegal: {e}")
        else:
            mv = engine.choose(state, {}, Ctx(state.mover, bound, last))
            if mv is None:
                mv = moves[0]
            nxt = apply_move(state, mv)
            say(f"engine plays {mv}")
        last, state = mv, nxt


def cmd_play(args) -> int:
    human = LEFT if args.as_ == "left" else RIGHT
    first = human if args.first is None else (LEFT if args.first == "left" else RIGHT)
    comp = parse_series_spec(args.spec)
    play_repl(CompoundState(comp.components, first), human, args.bound)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gameseries", description="Infinite game series arenas and certification.")
    sub = p.add_subparsers(dest="cmd", required=True)

    e = sub.add_parser("eval", help="canonical form and outcome of a finite game")
    e.add_argument("expr")
    e.set_defaults(fn=cmd_eval)

    s = sub.add_parser("series", help="certify registry cases or solve truncated arenas")
    ss = s.add_subparsers(dest="sub", required=True)
    v = ss.add_parser("verify")
    v.add_argument("case_id")
    v.add_argument("--bound", type=int, default=None)
    v.add_argument("--out")
    v.set_defaults(fn=cmd_verify)
    va = ss.add_parser("verify-all")
    va.add_argument("--out")
    va.set_defaults(fn=cmd_verify_all)
    so = ss.add_parser("solve")
    so.add_argument("spec")
    so.add_argument("--bound", type=int, default=default_bound())
    so.set_defaults(fn=cmd_solve)
    ls = ss.add_parser("list")
    ls.set_defaults(fn=lambda a: [print(f"{c.id}  [{c.criterion}] {c.description}") for c in C.registry().values()] and 0)

    lim = sub.add_parser("limit", help="string, natural (nlim) and monotone (mlim) limits")
    lim.add_argument("kind", choices=["string", "natural", "monotone"])
    lim.add_argument("spec")
    lim.add_argument("--bound", type=int, default=default_bound())
    lim.set_defaults(fn=cmd_limit)

    h = sub.add_parser("hackenbush", help="single-stack Hackenbush")
    hs = h.add_subparsers(dest="sub", required=True)
    he = hs.add_parser("eval")
    he.add_argument("stack")
    he.set_defaults(fn=cmd_hackenbush)

    pl = sub.add_parser("play", help="play against the engine")
    pl.add_argument("spec")
    pl.add_argument("--as", dest="as_", choices=["left", "right"], default="left")
    pl.add_argument("--first", choices=["left", "right"], default=None)
    pl.add_argument("--bound", type=int, default=default_bound())
    pl.set_defaults(fn=cmd_play)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
