"""Acceptance suite: one check per criterion, summarised as PASS/FAIL lines.

Run with ``pytest tests/test_acceptance.py -v`` or directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from gameseries import kernel as K
from gameseries.kernel import LEFT, RIGHT
from gameseries.arena import compound, legal_moves, terminal_loser
from gameseries.cases import registry, run_case
from gameseries.hackenbush import grundy, parse_stack, stack_to_game
from gameseries.limits import (
    Boundary, Const, Interleave, PrefixesOf, TString, WithHead, canon_naturals, mlim_arena, string_limit,
)
from gameseries.verifier import CertificationTask, certify
import oracle
import playouts

RESULTS: dict[int, tuple[bool, str]] = {}
_REPORTS: dict[str, list[str]] = {}

TITLES = {
    1: "kernel agrees with the play-out oracle; canonical forms idempotent",
    2: "1-1+1-... is a second-player win (both colours)",
    3: "1+1+... and 2+2+... equal omega; 1+w+w^2+... >= w^3",
    4: "mirror strategy, plain and with interleaved zero summands",
    5: "plain and bullet sums of stars are second-player wins",
    6: "-r + dyadic series with sum r is a second-player win (inequalities checked in-run)",
    7: "tail property fails: -1+1+1+... = w-1 and 0+0+1+1+... = w",
    8: "sum-form vs zero-form head under plain and bullet sums",
    9: "bullet invariance pairs certified; plain refutation where it applies",
    10: "second-winner summands can be dropped from a bullet sum",
    11: "bullet 1/4+1/8+... = 1 both ways; ups >= 1; plain lower bound inapplicable",
    12: "subset sum of 1/2+1/4+... equals 1",
    13: "string, natural and monotone limit examples",
    14: "series limit of an eventually constant sequence",
    15: "Hackenbush magic edges and stack grundy values",
    16: "playout termination, bound monotonicity, report byte-stability",
}


def record(n: int, ok: bool, detail: str = "") -> None:
    RESULTS[n] = (ok, detail)
    assert ok, f"criterion {n}: {detail}"


def summary_lines() -> list[str]:
    out = []
    for n in sorted(TITLES):
        if n in RESULTS:
            ok, detail = RESULTS[n]
            tag = "PASS" if ok else "FAIL"
        else:
            tag, detail = "FAIL", "not run"
        out.append(f"criterion {n:2d}: {tag}  {TITLES[n]}" + (f"  [{detail}]" if detail and tag == "FAIL" else ""))
    return out


def _run_criterion_cases(n: int) -> tuple[bool, str]:
    bad = []
    for case in registry().values():
        if case.criterion != n:
            continue
        res = run_case(case)
        _REPORTS[case.id] = [r.report() for r in res]
        bad += [r.report() for r in res if not r.as_expected]
    return not bad, "; ".join(bad)[:300]


# ------------------------------------------------------------------ criteria

def test_criterion_01_kernel():
    try:
        day2 = oracle.forms_upto_day(2)
        day3 = oracle.random_day3(random.Random(2024), 400)
        tup = {g.uid: oracle.to_tuple(g) for g in day2 + day3}
        for g in day2 + day3:
            assert str(K.outcome(g)) == oracle.outcome(tup[g.uid]), f"outcome {g}"
            c = K.canonical_form(g)
            assert K.canonical_form(c) is c and K.conway_eq(c, g), f"canonical {g}"
        for a in day2:
            for b in day2:
                assert K.leq(a, b) == oracle.leq(tup[a.uid], tup[b.uid]), f"leq {a} {b}"
        rng = random.Random(5)
        pool = day2 + day3
        for _ in range(4000):
            a, b = rng.choice(pool), rng.choice(pool)
            assert K.leq(a, b) == oracle.leq(tup[a.uid], tup[b.uid]), f"leq {a} {b}"
        ok, detail = True, ""
    except AssertionError as e:
        ok, detail = False, str(e)
    record(1, ok, detail)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7, 8, 9, 10, 11, 12, 14])
def test_criterion_registry(n):
    record(n, *_run_criterion_cases(n))


def test_criterion_06_real_series():
    bad, commits = [], 0
    for cid in ("real_geom_half", "real_quarter_geom"):
        lines = []
        for t, ln in registry()[cid].tasks():
            v = certify(t)      # the strategy asserts its inequalities while committing
            lines.append((t, v))
            commits += len(t.strategy.commitments)
            for c in t.strategy.commitments:
                if not (c["eps"] < c["gap"] and c["n"] >= max(c["n1"], c["n2"])):
                    bad.append(f"{cid}: commitment {c}")
            if not v.certified:
                bad.append(f"{cid}: {v.kind}")
    if commits == 0:
        bad.append("no commitments were made")
    record(6, not bad, "; ".join(bad))


def test_criterion_13_limits():
    T = TString.parse
    bad = []
    checks = [
        (PrefixesOf(T("(+-)^w")), "(+-)^w"),
        (Interleave(PrefixesOf(T("(+-)^w")), PrefixesOf(T("(-+)^w"))), "(empty)"),
        (WithHead(tuple(T(s) for s in ["+", "+-", "+++", "+-", "+-++", "++++", "+-", "+-++++"]),
                  Interleave(PrefixesOf(T("+^w")), Const(T("+-")))), "+"),
        (Boundary("+", "-", "-"), "+^w"),
    ]
    for fam, want in checks:
        got = str(string_limit(fam).string)
        if got != want:
            bad.append(f"{fam.name}: {got} != {want}")
    ok, detail = _run_criterion_cases(13)
    if not ok:
        bad.append(detail)
    m = compound(mlim_arena(canon_naturals()), mover=RIGHT)
    if legal_moves(m, 10) or terminal_loser(m, 10) is not RIGHT:
        bad.append("Right can move first on mlim of canonical naturals")
    record(13, not bad, "; ".join(bad))


def test_criterion_15_hackenbush():
    bad = []
    for s in ("QR", "BS"):
        if K.canonical_form(stack_to_game(parse_stack(s))) is not K.UP:
            bad.append(f"{s} is not up")
    if [grundy(parse_stack("G" * n)) for n in range(7)] != list(range(7)):
        bad.append("green stack grundy")
    if [grundy(parse_stack("g" * n)) for n in range(1, 9)] != [1, 0] * 4:
        bad.append("dark green grundy")
    record(15, not bad, "; ".join(bad))


def test_criterion_16_properties():
    bad = []
    rng = random.Random(16)
    comps = playouts.compounds()
    try:
        for k in range(10_000):
            playouts.random_playout(rng, comps[k % len(comps)])
    except AssertionError as e:
        bad.append(f"playout: {e}")
    for case in registry().values():
        for t, ln in case.tasks():
            if ln.bound != 6 or ln.expect != "CERTIFIED":
                continue
            for b in (3, 4, 5):
                t2 = CertificationTask(t.compound, t.certifier, t.role, ln.strategy(), b, t.case)
                v = certify(t2)
                if not v.certified:
                    bad.append(f"{case.id} at bound {b}: {v.kind}")
    for case in registry().values():
        again = [r.report() for r in run_case(case)]
        first = _REPORTS.get(case.id) or [r.report() for r in run_case(case)]
        if again != first:
            bad.append(f"{case.id}: report changed between runs")
    record(16, not bad, "; ".join(bad)[:300])


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
