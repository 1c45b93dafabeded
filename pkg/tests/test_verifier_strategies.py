import re
from fractions import Fraction

import pytest

from gameseries import kernel as K
from gameseries.kernel import LEFT, RIGHT
from gameseries.ordinals import OMEGA
from gameseries.sequences import OrdinalGame, builtin, from_list
from gameseries.arena import Series, compound, legal_moves, terminal_loser
from gameseries import strategies as ST
from gameseries.verifier import (
    CertificationTask, Ctx, Strategy, StrategyError, certify, render_report, replay, solve_bounded,
)
from gameseries.parsing import parse_series_spec

REPORT = re.compile(
    r"case=\S+ variant=\S+ certifier=(left|right) role=(first|second) strategy=\S+ bound=\d+ "
    r"verdict=(CERTIFIED|REFUTED|INCONCLUSIVE) nodes=\d+ counterplay=\S+( reason=\S+)?$")


def task(spec, cert, strat, bound, role="second"):
    return CertificationTask(parse_series_spec(spec), cert, role, strat, bound, "t")


def test_small_certifications_and_report_format():
    for cert in (LEFT, RIGHT):
        t = task("plain(pm_one)", cert, ST.partial_sum_sign_strategy(cert), 4)
        v = certify(t)
        assert v.certified
        assert REPORT.match(render_report(t, v))


class Passive(Strategy):
    name = "first_legal"

    def choose(self, state, scratch, ctx):
        ms = legal_moves(state, ctx.bound)
        return ms[0] if ms else None


def test_refutation_counterplay_replays_to_a_loss():
    t = task("plain(ones) + neg(ord(w))", LEFT, Passive(), 4)
    v = certify(t)
    assert v.kind == "REFUTED"
    assert REPORT.match(render_report(t, v))
    end = replay(t, v.counterplay)
    # the last position is lost for the certifier, or the certifier has no move
    mover_loses = not legal_moves(end, 4) and terminal_loser(end, 4) is LEFT
    from gameseries.verifier import finite_parts
    parts = finite_parts(end)
    assert mover_loses or (parts is not None and K.finite_outcome(parts).winner(end.mover) is RIGHT)


def test_precondition_failure_is_inconclusive():
    t = task("bullet(quarter_geom) + game(-1)", LEFT, ST.real_series_second_strategy(), 4)
    v = certify(t)
    assert v.kind == "INCONCLUSIVE" and "precondition" in v.reason


def test_raising_strategy_is_inconclusive():
    class Grumpy(Strategy):
        name = "grumpy"

        def choose(self, state, scratch, ctx):
            raise StrategyError("no idea")

    v = certify(task("plain(stars)", LEFT, Grumpy(), 3))
    assert v.kind == "INCONCLUSIVE"


def test_real_series_commitments_satisfy_inequalities():
    st = ST.real_series_second_strategy()
    v = certify(task("game(-1) + plain(geom_half)", LEFT, st, 8))
    assert v.certified and st.commitments
    spec = builtin("geom_half")
    for c in st.commitments:
        assert c["eps"] == Fraction(1, 2 ** c["p"]) and c["eps"] < c["gap"]
        assert c["gap"] == (c["r"] - c["s"]) / (2 * (c["h"] + 1))
        assert sum(spec.dyadic_values(i) for i in range(c["n1"] + 1)) - spec.tail_abs(c["n1"]) > c["mid"]
        assert spec.tail_abs(c["n2"] - 1) < c["eps"]
        assert len(c["ells"]) == c["h"] + 1 and min(c["ells"]) >= c["n2"]
        assert c["n"] == max(c["n1"], c["n2"], c["ells"][-1])


def test_ordinal_strategy_names_exact_targets():
    v = certify(task("plain(ones) + neg(ord(w))", RIGHT, ST.ordinal_series_strategy(RIGHT), 5))
    assert v.certified


def test_certify_is_deterministic():
    a = certify(task("plain(stars) + plain(neg(stars))", LEFT, ST.mirror_strategy(), 3))
    b = certify(task("plain(stars) + plain(neg(stars))", LEFT, ST.mirror_strategy(), 3))
    assert (a.kind, a.nodes) == (b.kind, b.nodes)


def test_oracle_agrees_with_known_values():
    for cert in (LEFT, RIGHT):
        assert certify(task("plain(zerozero_then_ones) + neg(ord(w))", cert, ST.oracle_strategy(10), 4)).certified


def test_solve_bounded_is_not_a_value_claim():
    # the opener can pick n at the bound and leave the closer no room, so the truncated
    # game of the (value 0) compound is not a second-player win
    comp = parse_series_spec("plain(geom_half) + game(-1)")
    assert solve_bounded(comp, 3) is not K.Outcome.SECOND_WINS


def test_bullet_lower_bound_refuses_plain():
    v = certify(task("plain(quarter_geom) + game(-1)", LEFT, ST.bullet_bound_one_strategy("geq"), 4))
    assert v.kind == "INCONCLUSIVE" and "bullet" in v.reason
