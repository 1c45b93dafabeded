"""Text front ends: game expressions and the series DSL."""
from __future__ import annotations

import re
from fractions import Fraction

from . import kernel as K
from .kernel import Game
from .ordinals import dyadic_form, parse_ordinal
from .sequences import (
    OrdinalGame, SequenceSpec, builtin, const, diff, from_list, interleave, nonzero, BUILTINS,
)
from .arena import CompoundState, NimberGame, OrdinalComponent, Series, compound, lift

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z0-9_]*|[{}|,+\-*^()\[\]=/])")


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<<HERE>>{text[pos:]}")
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # ---------------------------------------------------------- tokens
    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        return m.group(1) if m else None

    def next(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            if self.text[self.pos:].strip():
                self.fail("unexpected character")
            self.fail("unexpected end of input")
        self.pos = m.end()
        return m.group(1)

    def expect(self, tok: str):
        start = self.pos
        got = self.next()
        if got != tok:
            self.pos = start
            self.fail(f"expected {tok!r}, got {got!r}")

    def fail(self, msg: str):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        raise ParseError(self.text, self.pos, msg)

    def done(self):
        if self.text[self.pos:].strip():
            self.fail("trailing input")

    def raw_until_close(self) -> str:
        """Raw text up to the matching ')' (consumed)."""
        depth, start = 0, self.pos
        for k in range(self.pos, len(self.text)):
            c = self.text[k]
            if c == "(":
                depth += 1
            elif c == ")":
                if depth == 0:
                    self.pos = k + 1
                    return self.text[start:k]
                depth -= 1
        self.pos = len(self.text)
        self.fail("missing ')'")

    # ----------------------------------------------------------- games
    def game(self) -> Game:
        g = self.unary()
        while self.peek() in ("+", "-"):
            op = self.next()
            h = self.unary()
            g = K.add(g, h if op == "+" else K.negate(h))
        return g

    def unary(self) -> Game:
        if self.peek() == "-":
            self.next()
            return K.negate(self.unary())
        return self.atom()

    def atom(self) -> Game:
        start = self.pos
        t = self.next()
        if t == "{":
            left = self.game_list("|")
            self.expect("|")
            right = self.game_list("}")
            self.expect("}")
            return Game(left, right)
        if t == "(":
            g = self.game()
            self.expect(")")
            return g
        if t == "*":
            if self.peek() is not None and self.peek().isdigit():
                return K.nimber(int(self.next()))
            return K.STAR
        if t == "^":
            return K.UP
        if t == "v":
            return K.DOWN
        if t.isdigit():
            if self.peek() == "/":
                self.next()
                d = self.next()
                if not d.isdigit() or int(d) & (int(d) - 1) or int(d) == 0:
                    self.pos = start
                    self.fail("denominator must be a power of two")
                return dyadic_form(Fraction(int(t), int(d)))
            return dyadic_form(int(t))
        self.pos = start
        self.fail(f"unexpected token {t!r}")

    def game_list(self, stop: str) -> list:
        out = []
        if self.peek() == stop:
            return out
        out.append(self.game())
        while self.peek() == ",":
            self.next()
            out.append(self.game())
        return out

    # -------------------------------------------------------- sequences
    def sequence(self) -> SequenceSpec:
        start = self.pos
        name = self.next()
        if self.peek() != "(":
            if name in BUILTINS:
                return builtin(name)
            self.pos = start
            self.fail(f"unknown built-in sequence {name!r} (known: {', '.join(sorted(BUILTINS))})")
        self.next()
        if name == "neg":
            s = self.sequence().negated()
        elif name == "const":
            s = const(self.game())
        elif name == "diff":
            s = diff(self.sequence())
        elif name == "nonzero":
            s = nonzero(self.sequence())
        elif name == "interleave":
            a = self.sequence()
            self.expect(",")
            s = interleave(a, self.sequence())
        elif name == "list":
            self.expect("[")
            heads = self.game_list("]")
            self.expect("]")
            self.expect(",")
            if self.peek() == "tail":
                self.next()
                self.expect("=")
            s = from_list(heads, self.sequence())
        else:
            self.pos = start
            self.fail(f"unknown sequence constructor {name!r}")
        self.expect(")")
        return s

    # --------------------------------------------------------- compound
    def component(self):
        start = self.pos
        name = self.next()
        if self.peek() != "(":
            self.pos = start
            self.fail("expected a component such as plain(...), game(...), ord(...)")
        self.next()
        if name in ("plain", "bullet", "subset"):
            c = Series(name, self.sequence())
        elif name == "neg":
            return self._close(self.component().negated())
        elif name == "game":
            c = lift(self.game())
        elif name in ("ord", "nim"):
            raw = self.raw_until_close()
            try:
                a = parse_ordinal(raw)
            except ValueError as e:
                self.pos = start
                self.fail(f"bad ordinal: {e}")
            return OrdinalComponent(a) if name == "ord" else NimberGame(a)
        else:
            self.pos = start
            self.fail(f"unknown component {name!r}")
        return self._close(c)

    def _close(self, c):
        self.expect(")")
        return c

    def compound(self) -> CompoundState:
        comps = [self.component()]
        while self.peek() == "+":
            self.next()
            comps.append(self.component())
        self.done()
        return compound(*comps)


def parse_game(text: str) -> Game:
    p = _Parser(text)
    g = p.game()
    p.done()
    return g


def parse_sequence(text: str) -> SequenceSpec:
    p = _Parser(text)
    s = p.sequence()
    p.done()
    return s


def parse_series_spec(text: str) -> CompoundState:
    return _Parser(text).compound()


# ------------------------------------------------------- limit families

def _split_args(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for c in text:
        if c in "([{":
            depth += 1
        elif c in ")]}":
            depth -= 1
        if c == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(c)
    if "".join(cur).strip():
        out.append("".join(cur).strip())
    return out


def _call(text: str):
    text = text.strip()
    m = re.fullmatch(r"([a-z_]+)\((.*)\)", text, re.S)
    if not m:
        return None, None
    return m.group(1), _split_args(m.group(2))


def _tstring_list(text: str) -> list:
    from .limits import TString
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"expected [s1, s2, ...], got {text!r}")
    return [TString.parse(s) for s in _split_args(text[1:-1])]


def parse_family(text: str):
    """prefixes(w) | boundary(a,b[,after]) | const(w) | interleave(F,F) | withhead([w,...],F)."""
    from .limits import Boundary, Const, Interleave, PrefixesOf, TString, WithHead
    name, args = _call(text)
    arity = {"prefixes": 1, "const": 1, "interleave": 2, "withhead": 2}
    if name in arity and len(args) != arity[name]:
        raise ValueError(f"{name} takes {arity[name]} argument(s), got {len(args)}")
    if name == "prefixes":
        return PrefixesOf(TString.parse(args[0]))
    if name == "const":
        return Const(TString.parse(args[0]))
    if name == "boundary":
        if len(args) not in (2, 3):
            raise ValueError("boundary takes 2 or 3 arguments")
        return Boundary(args[0], args[1], args[2] if len(args) == 3 else "")
    if name == "interleave":
        return Interleave(parse_family(args[0]), parse_family(args[1]))
    if name == "withhead":
        return WithHead(tuple(_tstring_list(args[0])), parse_family(args[1]))
    raise ValueError(f"unknown string family {text!r}")


def parse_template(text: str):
    """canon_naturals | sign_naturals | halving_dyadics | const(<game>)."""
    from .limits import TEMPLATES, const_template
    text = text.strip()
    if text in TEMPLATES:
        return TEMPLATES[text]()
    name, args = _call(text)
    if name == "const" and len(args) == 1:
        return const_template(parse_game(args[0]))
    raise ValueError(f"unknown game sequence {text!r}; known: {', '.join(TEMPLATES)}, const(<game>)")
