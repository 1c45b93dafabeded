"""Dyadic rationals, ordinals below epsilon_0 and sign sequences."""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .kernel import Game, ZERO


# ------------------------------------------------------------------ dyadics

@functools.total_ordering
@dataclass(frozen=True)
class Dyadic:
    """numerator / 2**exponent, kept reduced."""

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponent must be >= 0")
        n, e = self.numerator, self.exponent
        while e > 0 and n % 2 == 0:
            n //= 2
            e -= 1
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def from_fraction(cls, x: Union[Fraction, int]) -> "Dyadic":
        x = Fraction(x)
        d = x.denominator
        e = d.bit_length() - 1
        if d != 1 << e:
            raise ValueError(f"{x} is not dyadic")
        return cls(x.numerator, e)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:/\s*(?:2\^(\d+)|(\d+)))?\s*", text)
        if not m:
            raise ValueError(f"bad dyadic {text!r}")
        num = int(m.group(1))
        if m.group(2) is not None:
            return cls(num, int(m.group(2)))
        if m.group(3) is not None:
            return cls.from_fraction(Fraction(num, int(m.group(3))))
        return cls(num)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __add__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic.from_fraction(self.to_fraction() + other.to_fraction())

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic.from_fraction(self.to_fraction() - other.to_fraction())

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.numerator, self.exponent)

    def __lt__(self, other: "Dyadic") -> bool:
        return self.to_fraction() < other.to_fraction()

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"


def dyadic_arith(op: str, a: Dyadic, b: Dyadic):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "compare":
        return (a > b) - (a < b)
    raise ValueError(f"unknown op {op!r}")


# ----------------------------------------------------------------- ordinals

@functools.total_ordering
class Ordinal:
    """Cantor normal form: terms ((exponent, coefficient), ...) strictly decreasing."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        terms = tuple((e if isinstance(e, Ordinal) else Ordinal.of(e), int(c)) for e, c in terms)
        for i, (e, c) in enumerate(terms):
            if c < 1:
                raise ValueError("CNF coefficients must be >= 1")
            if i and not terms[i - 1][0] > e:
                raise ValueError("CNF exponents must strictly decrease")
        self.terms = terms
        self._hash = hash(terms)

    @classmethod
    def of(cls, n: Union[int, "Ordinal"]) -> "Ordinal":
        if isinstance(n, Ordinal):
            return n
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return _finite(n)

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    def to_int(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self) -> dict["Ordinal", int]:
        return dict(self.terms)

    @classmethod
    def from_coefficients(cls, coeffs: dict["Ordinal", int]) -> "Ordinal":
        return cls(sorted(((e, c) for e, c in coeffs.items() if c > 0), key=lambda t: t[0], reverse=True))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Ordinal.of(other)
        return isinstance(other, Ordinal) and self.terms == other.terms

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other) -> bool:
        return ordinal_compare(self, Ordinal.of(other)) < 0

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if not e.terms:
                parts.append(str(c))
                continue
            if e == _ONE:
                base = "w"
            elif e.is_finite():
                base = f"w^{e.to_int()}"
            else:
                base = f"w^({e})"
            parts.append(base if c == 1 else f"{base}*{c}")
        return "+".join(parts)

    __repr__ = __str__


@functools.lru_cache(maxsize=None)
def _finite(n: int) -> Ordinal:
    return Ordinal(()) if n == 0 else Ordinal(((Ordinal(()), n),))


_ONE = Ordinal(((Ordinal(()), 1),))
OMEGA = Ordinal(((_ONE, 1),))


def omega_power(e: Union[int, Ordinal], coeff: int = 1) -> Ordinal:
    return Ordinal(((Ordinal.of(e), coeff),))


def ordinal_compare(a: Ordinal, b: Ordinal) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = ordinal_compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def natural_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    coeffs = a.coefficients()
    for e, c in b.terms:
        coeffs[e] = coeffs.get(e, 0) + c
    return Ordinal.from_coefficients(coeffs)


def natural_sum_all(xs) -> Ordinal:
    total = Ordinal.of(0)
    for x in xs:
        total = natural_sum(total, Ordinal.of(x))
    return total


def min_natural_complement(others: Ordinal, target: Ordinal) -> Ordinal:
    """Least gamma with natural_sum(others, gamma) >= target."""
    oc, tc = others.coefficients(), target.coefficients()
    exps = sorted(set(oc) | set(tc), reverse=True)
    need: dict[Ordinal, int] = {}
    for e in exps:
        o, t = oc.get(e, 0), tc.get(e, 0)
        if o > t:
            break
        if o < t:
            need[e] = t - o
    return Ordinal.from_coefficients(need)


def natural_difference(a: Ordinal, b: Ordinal) -> Optional[Ordinal]:
    """gamma with natural_sum(b, gamma) == a, when it exists."""
    ac, bc = a.coefficients(), b.coefficients()
    out = {}
    for e, c in ac.items():
        out[e] = c - bc.get(e, 0)
    if any(v < 0 for v in out.values()) or any(e not in ac for e in bc):
        return None
    return Ordinal.from_coefficients(out)


def descent_samples(alpha: Ordinal, bound: int) -> list[Ordinal]:
    """Canonical sample of ordinals below alpha: 0..bound plus CNF truncations."""
    out = {Ordinal.of(k) for k in range(bound + 1)}
    terms = alpha.terms
    for j, (e, c) in enumerate(terms):
        prefix = terms[:j]
        for c2 in range(c):
            base = prefix + (((e, c2),) if c2 else ())
            out.add(Ordinal(base))
            if e.terms:
                out.add(natural_sum(Ordinal(base), Ordinal.of(bound)))
                if not e.is_finite() or e.to_int() >= 2:
                    out.add(natural_sum(Ordinal(base), omega_power(1, bound)))
                    if e.is_finite():
                        out.add(natural_sum(Ordinal(base), omega_power(e.to_int() - 1, bound)))
    return sorted((b for b in out if b < alpha), key=functools.cmp_to_key(ordinal_compare))


_ORD_TOKEN = re.compile(r"\s*(w|\d+|[()^*+])")


def parse_ordinal(text: str) -> Ordinal:
    toks = _ORD_TOKEN.findall(text)
    if "".join(toks) != re.sub(r"\s+", "", text):
        raise ValueError(f"bad ordinal {text!r}")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(t=None):
        nonlocal pos
        tok = peek()
        if tok is None or (t is not None and tok != t):
            raise ValueError(f"bad ordinal {text!r}: expected {t or 'token'} at token {pos}")
        pos += 1
        return tok

    def expr() -> Ordinal:
        terms = [term()]
        while peek() == "+":
            take("+")
            terms.append(term())
        total = Ordinal.of(0)
        for t in terms:
            total = ordinal_plus(total, t)
        return total

    def term() -> Ordinal:
        tok = take()
        if tok.isdigit():
            return Ordinal.of(int(tok))
        if tok != "w":
            raise ValueError(f"bad ordinal {text!r}")
        exp = Ordinal.of(1)
        if peek() == "^":
            take("^")
            if peek() == "(":
                take("(")
                exp = expr()
                take(")")
            else:
                t = take()
                exp = OMEGA if t == "w" else Ordinal.of(int(t))
        coeff = 1
        if peek() == "*":
            take("*")
            coeff = int(take())
        return omega_power(exp, coeff) if coeff else Ordinal.of(0)

    out = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in ordinal {text!r}")
    return out


def ordinal_plus(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinary (non-commutative) ordinal addition; used only by the parser."""
    if b.is_zero():
        return a
    lead = b.terms[0][0]
    kept = [t for t in a.terms if ordinal_compare(t[0], lead) > 0]
    same = [c for e, c in a.terms if e == lead]
    first = (lead, b.terms[0][1] + (same[0] if same else 0))
    return Ordinal(tuple(kept) + (first,) + b.terms[1:])


# ------------------------------------------------------------ sign sequences

@dataclass(frozen=True)
class SignSeq:
    runs: tuple[tuple[str, Ordinal], ...] = ()

    def __post_init__(self):
        merged: list[tuple[str, Ordinal]] = []
        for s, n in self.runs:
            n = Ordinal.of(n)
            if s not in "+-":
                raise ValueError(f"bad sign {s!r}")
            if n.is_zero():
                continue
            if merged and merged[-1][0] == s:
                merged[-1] = (s, ordinal_plus(merged[-1][1], n))
            else:
                merged.append((s, n))
        object.__setattr__(self, "runs", tuple(merged))

    @classmethod
    def from_string(cls, text: str) -> "SignSeq":
        """'+-+' or run syntax '(+)^w-'."""
        runs = []
        for m in re.finditer(r"\(([+-])\)\^(\w+|\([^)]*\))|([+-])", text.replace(" ", "")):
            if m.group(3):
                runs.append((m.group(3), 1))
            else:
                runs.append((m.group(1), parse_ordinal(m.group(2).strip("()"))))
        if "".join(m.group(0) for m in re.finditer(r"\(([+-])\)\^(\w+|\([^)]*\))|([+-])", text.replace(" ", ""))) != text.replace(" ", ""):
            raise ValueError(f"bad sign sequence {text!r}")
        return cls(tuple(runs))

    def length(self) -> Ordinal:
        total = Ordinal.of(0)
        for _, n in self.runs:
            total = ordinal_plus(total, n)
        return total

    def is_finite(self) -> bool:
        return all(n.is_finite() for _, n in self.runs)

    def to_string(self) -> str:
        out = []
        for s, n in self.runs:
            out.append(s * n.to_int() if n.is_finite() else f"({s})^{n if n == OMEGA else '(' + str(n) + ')'}")
        return "".join(out)

    def flat(self) -> str:
        if not self.is_finite():
            raise ValueError("transfinite sign sequence has no flat form")
        return "".join(s * n.to_int() for s, n in self.runs)

    def __str__(self) -> str:
        return self.to_string()


def sign_expansion(d: Union[Dyadic, Fraction, int]) -> SignSeq:
    x = d.to_fraction() if isinstance(d, Dyadic) else Fraction(d)
    Dyadic.from_fraction(x)
    return SignSeq.from_string(_sign_string(x))


def _sign_string(x: Fraction) -> str:
    if x < 0:
        return _sign_string(-x).translate(str.maketrans("+-", "-+"))
    k = x.numerator // x.denominator
    f = x - k
    if f == 0:
        return "+" * k
    out = "+" * (k + 1) + "-"
    bits = []
    while f:
        f *= 2
        bits.append(int(f >= 1))
        f -= int(f >= 1)
    out += "".join("+" if b else "-" for b in bits[:-1])
    return out


def sign_seq_value(s: Union[SignSeq, str]) -> Fraction:
    flat = s if isinstance(s, str) else s.flat()
    x = Fraction(0)
    lo = hi = None
    for c in flat:
        if c == "+":
            lo = x
            x = x + 1 if hi is None else (x + hi) / 2
        else:
            hi = x
            x = x - 1 if lo is None else (lo + x) / 2
    return x


def compare_sign_seqs(a: str, b: str) -> int:
    """Lexicographic with + > end-of-word > -."""
    rank = {"+": 1, "": 0, "-": -1}
    for i in range(max(len(a), len(b))):
        ca = a[i] if i < len(a) else ""
        cb = b[i] if i < len(b) else ""
        if ca != cb:
            return (rank[ca] > rank[cb]) - (rank[ca] < rank[cb])
    return 0


@functools.lru_cache(maxsize=None)
def _realize_flat(flat: str) -> Game:
    left = [_realize_flat(flat[:k]) for k, c in enumerate(flat) if c == "+"]
    right = [_realize_flat(flat[:k]) for k, c in enumerate(flat) if c == "-"]
    return Game(left, right)


_sign_of_form: dict[int, str] = {ZERO.uid: ""}


def realize_as_game(s: Union[SignSeq, str]) -> Game:
    """The Hackenbush-stack form of a finite sign sequence."""
    if isinstance(s, SignSeq):
        if not s.is_finite():
            raise ValueError(f"cannot realize transfinite sign sequence {s} as a finite form")
        s = s.flat()
    g = _realize_flat(s)
    _sign_of_form[g.uid] = s
    return g


def dyadic_form(x: Union[Dyadic, Fraction, int]) -> Game:
    return realize_as_game(sign_expansion(x))


def sign_form_string(g: Game) -> Optional[str]:
    """The sign string s with realize_as_game(s) is g, if any."""
    if g.uid in _sign_of_form:
        return _sign_of_form[g.uid]
    opts = g.left + g.right
    strs = [sign_form_string(o) for o in opts]
    result = None
    if None not in strs:
        longest = max(strs, key=len)
        cand = longest + ("+" if any(o is _realize_flat(longest) for o in g.left) else "-")
        if _realize_flat(cand) is g:
            result = cand
    _sign_of_form[g.uid] = result
    return result


def sign_form_value(g: Game) -> Optional[Fraction]:
    s = sign_form_string(g)
    return None if s is None else sign_seq_value(s)
