import random
from fractions import Fraction

import pytest

from gameseries import kernel as K
from gameseries.kernel import LEFT, RIGHT
from gameseries.ordinals import OMEGA, Ordinal
from gameseries.sequences import OracleError, OrdinalGame, builtin, from_list, nonzero, interleave
from gameseries.arena import (
    BoundDependent, Close, Closed, CompoundState, HalfOpened, IllegalMove, Open, OrdinalMove,
    PlayWithin, Series, SubsetClose, SubsetOpen, apply_move, birthday_measure, compound,
    legal_moves, negate_state, terminal_loser,
)
from gameseries.verifier import finite_parts, solve_bounded
import playouts


def test_builtin_generators():
    assert builtin("ones")(7) is K.ONE
    m = builtin("minusone_then_ones")
    assert [K.number_value(m.partial_sum(k)) for k in range(4)] == [-1, 0, 1, 2]
    g = builtin("geom_half")
    assert [g.dyadic_values(i) for i in range(3)] == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]
    assert g.classical_sum == 1
    for n in range(6):
        assert K.number_value(g.partial_sum(n)) == 1 - Fraction(1, 2 ** (n + 1))
        assert g.tail_abs(n) == Fraction(1, 2 ** (n + 1))


def test_negated_specs():
    n1 = builtin("ones").negated()
    assert all(n1(i) is K.NEG_ONE for i in range(5))
    s = builtin("geom_half")
    assert s.negated().negated() is s
    assert all(s.negated().negated()(i) is s(i) for i in range(51))
    assert s.negated().classical_sum == -1
    assert s.negated().name == "neg(geom_half)"


def test_partial_sum_witness_and_nonzero():
    pm = builtin("pm_one")
    assert pm.partial_sum_sign_witness(0, "+") == 0
    assert pm.partial_sum_sign_witness(0, "-") == 1
    assert pm.partial_sum_sign_witness(2, "-") == 3
    seq = from_list([K.STAR, K.Game([K.STAR], [K.STAR]), K.STAR], interleave(builtin("stars"), builtin("zeros")))
    nz = nonzero(seq)
    assert [nz.source_index(k) for k in range(4)] == [0, 2, 3, 5]
    with pytest.raises(OracleError):
        builtin("zeros").nonzero_index_after(0)


def test_legal_moves_rule_examples():
    ones = compound(Series("plain", builtin("ones")))
    assert legal_moves(CompoundState(ones.components, RIGHT), 5) == []
    mv = legal_moves(ones, 2)
    assert {(m.n, m.i) for m in mv} == {(n, i) for n in range(3) for i in range(n + 1)}
    assert all(m.option is K.ZERO for m in mv)
    ph = HalfOpened(RIGHT, 1, (0, 1), (K.ONE, K.ZERO))
    s = CompoundState((Series("bullet", builtin("ones"), ph),), LEFT)
    got = legal_moves(s, 2)
    within = [m for m in got if isinstance(m, PlayWithin)]
    closes = [m for m in got if isinstance(m, Close)]
    assert [(m.i, m.option) for m in within] == [(0, K.ZERO)]
    assert {m.m for m in closes} == {1, 2}


def test_plain_owner_and_non_owner_constraints():
    st = compound(Series("plain", builtin("stars")))
    for mv in legal_moves(st, 3):
        s1 = apply_move(st, mv)
        first = legal_moves(s1, 4)
        assert first and all(isinstance(m, Close) and m.m >= mv.n for m in first)
        with pytest.raises(IllegalMove, match="must close"):
            apply_move(s1, PlayWithin(0, mv.i, K.ZERO) if mv.i else PlayWithin(0, 0, K.ZERO))


def test_apply_examples():
    s = apply_move(compound(Series("plain", builtin("ones"))), Open(0, 2, 1, K.ZERO))
    ph = s.components[0].phase
    assert ph == HalfOpened(LEFT, 2, (0, 1, 2), (K.ONE, K.ZERO, K.ONE))
    # Right has no option on 1, so the closing move of the textual example is rejected
    with pytest.raises(IllegalMove, match="not a right option"):
        apply_move(s, Close(0, 3, 3, K.ZERO))
    t = apply_move(compound(Series("plain", builtin("stars"))), Open(0, 2, 1, K.ZERO))
    t = apply_move(t, Close(0, 3, 3, K.ZERO))
    assert t.components[0].phase == Closed((0, 1, 2, 3), (K.STAR, K.ZERO, K.STAR, K.ZERO))
    with pytest.raises(IllegalMove, match="m >= n"):
        apply_move(apply_move(compound(Series("plain", builtin("stars"))), Open(0, 2, 0, K.ZERO)),
                   Close(0, 1, 0, K.ZERO))
    o = apply_move(compound(OrdinalGame(OMEGA, False), mover=RIGHT), OrdinalMove(0, Ordinal.of(5)))
    assert o.components[0].alpha == Ordinal.of(5) and not o.components[0].positive


def test_subset_moves():
    s = compound(Series("subset", builtin("pm_one")))
    s1 = apply_move(s, SubsetOpen(0, (0, 3), 0, K.ZERO))
    s2 = apply_move(s1, SubsetClose(0, (1,), 1, K.ZERO))
    ph = s2.components[0].phase
    assert ph.indices == (0, 1, 3) and finite_parts(s2) is not None
    assert K.number_value(K.canonical_sum(finite_parts(s2))) == -1


def test_terminal_loser():
    ones = compound(Series("plain", builtin("ones")), mover=RIGHT)
    assert terminal_loser(ones, 4) is RIGHT
    assert terminal_loser(compound(K.ZERO), 0) is LEFT
    assert terminal_loser(compound(Series("plain", builtin("stars"))), 3) is None
    with pytest.raises(BoundDependent):
        terminal_loser(compound(Series("plain", builtin("pm_one")), mover=RIGHT), 0)


def test_birthday_measure():
    c = Series("plain", builtin("ones"), Closed((0, 1), (K.ONE, K.ZERO)))
    assert birthday_measure(CompoundState((c,), LEFT)) == Ordinal.of(1)
    h = Series("plain", builtin("ones"), HalfOpened(LEFT, 2, (0, 1, 2), (K.ONE, K.ZERO, K.ONE)))
    assert birthday_measure(CompoundState((h,), LEFT)) == Ordinal.of(2)
    with pytest.raises(ValueError):
        birthday_measure(compound(Series("plain", builtin("ones"))))


def test_negate_state_involution():
    s = apply_move(compound(Series("bullet", builtin("ups")), K.NEG_ONE), Open(0, 1, 1, K.ZERO))
    assert negate_state(negate_state(s)).key() == s.key()


def test_random_playouts_terminate():
    rng = random.Random(5)
    for comp in playouts.compounds():
        for _ in range(60):
            playouts.random_playout(rng, comp)


def test_closed_series_matches_disjunctive_sum():
    rng = random.Random(9)
    specs = ["stars", "ups", "pm_one", "geom_half"]
    for _ in range(200):
        spec = builtin(rng.choice(specs))
        m = rng.randint(0, 3)
        head = tuple(spec(i) for i in range(m + 1))
        closed = compound(Series("plain", spec, Closed(tuple(range(m + 1)), head)))
        assert solve_bounded(closed, 2) is K.outcome(K.disjunctive_sum(list(head)))
