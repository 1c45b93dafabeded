import random

import pytest

from gameseries import kernel as K
from gameseries.kernel import LEFT, RIGHT
from gameseries.ordinals import dyadic_form, sign_expansion, realize_as_game
from gameseries.arena import CompoundState
from gameseries.parsing import ParseError, parse_game, parse_series_spec
from gameseries.cli import main, play_repl
import oracle


def _random_forms(rng, n):
    base = oracle.forms_upto_day(2) + oracle.random_day3(rng, 200)
    out = list(base)
    while len(out) < n:
        a, b = rng.choice(base), rng.choice(base)
        out.append(rng.choice([K.add(a, b), K.negate(a), K.canonical_form(K.add(a, b)),
                                dyadic_form(rng.randint(-20, 20) / 2 ** rng.randint(0, 3))]))
    return out[:n]


def test_print_parse_round_trip():
    rng = random.Random(1)
    for g in _random_forms(rng, 1000):
        assert parse_game(K.show(g)) is g


def test_grammar_examples():
    assert parse_game("{0|*}") is K.UP
    assert parse_game("^") is K.UP and parse_game("v") is K.DOWN
    assert parse_game("3/8") is realize_as_game(sign_expansion(__import__("fractions").Fraction(3, 8)))
    assert parse_game("{0,*|}") is K.Game([K.ZERO, K.STAR], [])
    assert parse_game("*3") is K.nimber(3)
    with pytest.raises(ParseError, match="position"):
        parse_game("{0|*")
    with pytest.raises(ParseError, match="power of two"):
        parse_game("1/3")


def test_series_dsl():
    assert len(parse_series_spec("plain(ones) + neg(ord(w))").components) == 2
    assert parse_series_spec("subset(pm_one)").components[0].variant == "subset"
    with pytest.raises(ParseError, match="unknown built-in"):
        parse_series_spec("plain(nope)")
    for text in ["plain(ones) + neg(ord(w))", "bullet(ups) + game(-1)",
                 "bullet(list([*,{*|*},*],tail=interleave(stars,zeros)))", "plain(neg(stars)) + nim(w+1)"]:
        s = parse_series_spec(text)
        again = parse_series_spec(" + ".join(str(c) for c in s.components))
        assert again.key() == s.key()


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_eval_and_hackenbush(capsys):
    assert run(capsys, "eval", "{0|*}") == (0, "canonical={0|*} outcome=LeftWins number=false\n")
    assert run(capsys, "hackenbush", "eval", "QR") == (0, "canonical={0|*} (= ^)\n")
    code, out = run(capsys, "eval", "{0|")
    assert code == 64


def test_verify_and_out_file_is_stable(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    code, out = run(capsys, "series", "verify", "real_geom_half", "--bound", "8", "--out", str(a))
    assert code == 0 and out.count("verdict=CERTIFIED") == 2
    run(capsys, "series", "verify", "real_geom_half", "--bound", "8", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_verify_expected_failures_pass(capsys):
    code, out = run(capsys, "series", "verify", "plain_quarter_bounds")
    assert code == 0 and "expected=INCONCLUSIVE" in out


def test_limit_commands(capsys):
    assert run(capsys, "limit", "string", "boundary(+,-,-)")[1] == "limit=+^w\n"
    code, out = run(capsys, "limit", "natural", "canon_naturals", "--bound", "3")
    assert "never moves" in out and "truncated_outcome=SecondWins" in out


def test_default_bound_env(capsys, monkeypatch):
    monkeypatch.setenv("GAMESERIES_DEFAULT_BOUND", "2")
    from gameseries.cli import build_parser
    assert build_parser().parse_args(["series", "solve", "subset(pm_one)"]).bound == 2


def scripted(lines):
    it = iter(lines)

    def inp(prompt):
        try:
            return next(it)
        except StopIteration:
            raise EOFError
    return inp


def test_play_right_on_ones_loses_immediately():
    s = parse_series_spec("plain(ones)")
    log = play_repl(CompoundState(s.components, RIGHT), RIGHT, 4, scripted([]), lambda s: None)
    assert log[-1] == "right has no move and loses"


def test_play_rejects_illegal_and_names_clause():
    s = parse_series_spec("plain(ones) + game(-1)")
    log = play_repl(CompoundState(s.components, LEFT), LEFT, 4,
                    scripted(["c0 open 1 3 0", "c0 open 0 0 0"]), lambda s: None)
    assert any("i <= n" in ln for ln in log)
    assert any(ln.startswith("engine plays") for ln in log)


def test_play_accepts_indices_beyond_display_bound():
    s = parse_series_spec("plain(ones) + game(-1)")
    log = play_repl(CompoundState(s.components, LEFT), LEFT, 2,
                    scripted(["c0 open 9 9 0"]), lambda s: None)
    assert any("n=9" in ln or "I={0,1,2,3,4,5,6,7,8,9}" in ln for ln in log)


def test_engine_wins_bullet_stars_as_second():
    s = parse_series_spec("bullet(stars)")
    rng = random.Random(0)
    for _ in range(5):
        moves = [str(rng.randint(0, 2)) for _ in range(40)]
        log = play_repl(CompoundState(s.components, LEFT), LEFT, 3, scripted(moves), lambda s: None)
        assert log[-1] == "left has no move and loses"
