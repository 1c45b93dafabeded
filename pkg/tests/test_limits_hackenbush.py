import random

import pytest
from hypothesis import given, settings, strategies as st

from gameseries import kernel as K
from gameseries.kernel import LEFT, RIGHT
from gameseries.ordinals import OMEGA, realize_as_game
from gameseries.arena import FiniteGame, NimberGame, OrdinalComponent, compound, legal_moves, terminal_loser
from gameseries.limits import (
    Boundary, Const, Interleave, LimitArena, PrefixesOf, TString, WithHead, canon_naturals,
    const_template, empirical_string_limit, halving_dyadics, mlim_arena, nlim_arena, sign_naturals,
    series_limit_transform, string_limit,
)
from gameseries.hackenbush import (
    Edge, grundy, negate_stack, parse_stack, show_stack, stack_moves, stack_string_limit, stack_to_game,
)
from gameseries.sequences import builtin, const

T = TString.parse

PAPER_INTERMEDIATE = [T(s) for s in ["+", "+-", "+++", "+-", "+-++", "++++", "+-", "+-++++"]]

FAMILIES = [
    PrefixesOf(T("(+-)^w")),
    Interleave(PrefixesOf(T("(+-)^w")), PrefixesOf(T("(-+)^w"))),
    WithHead(tuple(PAPER_INTERMEDIATE), Interleave(PrefixesOf(T("+^w")), Const(T("+-")))),
    Boundary("+", "-", "-"),
    Const(T("+^w@w-+")),
    Boundary("+", "+", "-"),
]


def test_string_limit_examples():
    assert str(string_limit(FAMILIES[0]).string) == "(+-)^w"
    assert string_limit(FAMILIES[1]).string == T("")
    assert string_limit(FAMILIES[2]).string == T("+")
    lim = string_limit(FAMILIES[3]).string
    assert lim == TString("", "+") and not lim.after      # the omega-position minus is excluded


def test_string_limit_keeps_content_at_omega_when_prefix_stabilizes():
    assert str(string_limit(FAMILIES[4]).string) == "+^w@w-+"
    assert str(string_limit(FAMILIES[5]).string) == "+^w@w-"


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(FAMILIES), st.lists(st.text("+-", max_size=5), max_size=6))
def test_tail_property(fam, heads):
    assert string_limit(WithHead(tuple(T(h) for h in heads), fam)).string == string_limit(fam).string


@pytest.mark.parametrize("fam", FAMILIES)
def test_limit_is_eventual_prefix(fam):
    lim = string_limit(fam).string
    n = 40
    for k in range(min(n, 12)):
        for m in range(60, 64):
            s = fam.string(m)
            assert lim.at(k) is None or s.at(k) == lim.at(k)


def test_empirical_mode_is_labelled():
    res = empirical_string_limit([FAMILIES[0].string(i) for i in range(12)], 4)
    assert not res.authoritative and "empirical" in str(res)


def test_nlim_examples():
    canon = nlim_arena(canon_naturals())
    for p in (LEFT, RIGHT):
        s = compound(canon, mover=p)
        assert legal_moves(s, 8) == [] and terminal_loser(s, 8) is p
    sign = nlim_arena(sign_naturals())
    picks = {K.number_value(m.option) for m in legal_moves(compound(sign), 5)}
    assert picks == set(range(5))
    g = K.Game([K.ZERO, K.STAR], [K.UP])
    c = nlim_arena(const_template(g))
    assert {m.option for m in legal_moves(compound(c), 3)} == set(g.left)


def test_mlim_examples():
    m = mlim_arena(canon_naturals())
    assert terminal_loser(compound(m, mover=RIGHT), 6) is RIGHT
    assert {K.number_value(x.option) for x in legal_moves(compound(m), 5)} == set(range(5))
    halving_dyadics().spot_check("mlim", n_max=5, span=6)


def test_bad_certificate_is_caught():
    t = canon_naturals()
    t.common = lambda n, p: [K.integer(n)] if p is LEFT else []
    with pytest.raises(ValueError):
        nlim_arena(t)


def test_series_limit_transform():
    h = builtin("zeros")
    d = series_limit_transform(h)
    assert all(K.conway_eq(d(i), K.ZERO) for i in range(5))
    assert d.zero_tail_from == 1


# ---------------------------------------------------------------- hackenbush

def test_magic_edge_moves():
    assert stack_moves(parse_stack("BS"), RIGHT) == [(1, (Edge.GREEN,))]
    assert stack_moves(parse_stack("QR"), RIGHT) == [(1, (Edge.GREENISH_BLUE,))]
    assert [k for k, _ in stack_moves(parse_stack("QR"), LEFT)] == [0]
    for p in (LEFT, RIGHT):
        assert stack_moves(parse_stack("gg"), p) == [(1, (Edge.DARK_GREEN,))]


def test_up_realizations():
    assert K.canonical_form(stack_to_game(parse_stack("QR"))) is K.UP
    assert K.canonical_form(stack_to_game(parse_stack("BS"))) is K.UP


def test_green_and_dark_green_grundy():
    assert [grundy(parse_stack("G" * n)) for n in range(7)] == list(range(7))
    assert [grundy(parse_stack("g" * n)) for n in range(1, 9)] == [1, 0, 1, 0, 1, 0, 1, 0]


def test_ordinary_stacks_match_sign_forms():
    rng = random.Random(2)
    for _ in range(200):
        s = "".join(rng.choice("BR") for _ in range(rng.randint(0, 8)))
        assert stack_to_game(parse_stack(s)) is realize_as_game(s.replace("B", "+").replace("R", "-"))


def test_negation_commutes_without_magic_edges():
    rng = random.Random(4)
    for _ in range(200):
        st = parse_stack("".join(rng.choice("BRGbrg") for _ in range(rng.randint(0, 6))))
        assert stack_to_game(negate_stack(st)) is K.negate(stack_to_game(st))
    assert negate_stack(parse_stack("QR")) is None


def test_stack_limits():
    assert isinstance(stack_string_limit(PrefixesOf(TString("", "G")))[1], NimberGame)
    comp = stack_string_limit(PrefixesOf(TString("", "B")))[1]
    assert comp == OrdinalComponent(OMEGA, True)
    res, comp = stack_string_limit(Const(TString("BRG")))
    assert show_stack(parse_stack(res.string.head)) == "BRG" and comp == FiniteGame(stack_to_game(parse_stack("BRG")))


def test_bad_letter():
    with pytest.raises(ValueError, match="edge letter"):
        parse_stack("BX")
