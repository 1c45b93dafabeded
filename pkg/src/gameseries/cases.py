"""Registry of named certification cases with their expected verdicts."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import kernel as K
from .kernel import LEFT, RIGHT, Player
from .ordinals import OMEGA, omega_power
from .sequences import OrdinalGame, builtin, const, diff, from_list, interleave, nonzero
from .arena import CompoundState, Series, compound
from .limits import canon_naturals, mlim_arena, nlim_arena, sign_naturals
from . import strategies as ST
from .verifier import CertificationTask, Verdict, certify, render_report

REGISTRY_VERSION = 1
NEG_OMEGA = OrdinalGame(OMEGA, False)


@dataclass
class Line:
    build: Callable[[], CompoundState]
    certifier: Player
    strategy: Callable[[], ST.Strategy]
    bound: int
    role: str = "second"
    expect: str = "CERTIFIED"


@dataclass
class Case:
    id: str
    criterion: int
    description: str
    lines: list = field(default_factory=list)

    def tasks(self, bound: Optional[int] = None):
        for ln in self.lines:
            yield CertificationTask(ln.build(), ln.certifier, ln.role, ln.strategy(),
                                    ln.bound if bound is None else bound, self.id), ln


@dataclass
class LineResult:
    task: CertificationTask
    verdict: Verdict
    expect: str

    @property
    def as_expected(self) -> bool:
        return self.verdict.kind == self.expect

    def report(self) -> str:
        line = render_report(self.task, self.verdict)
        return line if self.expect == "CERTIFIED" else f"{line} expected={self.expect}"


def run_case(case: Case, bound: Optional[int] = None) -> list[LineResult]:
    return [LineResult(t, certify(t), ln.expect) for t, ln in case.tasks(bound)]


def both(build, strategy, bound, expect="CERTIFIED") -> list:
    """The two second-player certifications that establish a value."""
    return [Line(build, LEFT, strategy, bound, expect=expect),
            Line(build, RIGHT, strategy, bound, expect=expect)]


def sided(build, factory, bound) -> list:
    return [Line(build, LEFT, lambda: factory(LEFT), bound), Line(build, RIGHT, lambda: factory(RIGHT), bound)]


def _S(variant, name_or_spec):
    spec = builtin(name_or_spec) if isinstance(name_or_spec, str) else name_or_spec
    return Series(variant, spec)


def _diff_pair(variant, a, b):
    return lambda: compound(_S(variant, a), _S(variant, b.negated()))


def _c10_seq():
    return from_list([K.STAR, K.Game([K.STAR], [K.STAR]), K.STAR], interleave(builtin("stars"), builtin("zeros")))


def _cases() -> list[Case]:
    ones = builtin("ones")
    starstar = K.Game([K.STAR], [K.STAR])
    one_alt = K.Game([K.ZERO, K.STAR], [])
    c10 = _c10_seq()
    eventually_up = from_list([K.ONE, K.STAR], const(K.UP))
    cs = []
    add = lambda *a: cs.append(Case(*a))

    add("pm_one_second", 2, "1 - 1 + 1 - 1 + ... is a second-player win",
        sided(lambda: compound(_S("plain", "pm_one")), ST.partial_sum_sign_strategy, 6))
    add("ones_omega", 3, "1 + 1 + 1 + ... equals omega",
        sided(lambda: compound(_S("plain", "ones"), NEG_OMEGA), ST.ordinal_series_strategy, 6))
    add("twos_omega", 3, "2 + 2 + 2 + ... also equals omega",
        sided(lambda: compound(_S("plain", "twos"), NEG_OMEGA), ST.ordinal_series_strategy, 6))
    add("ordpowers_geq_w3", 3, "1 + w + w^2 + ... is at least w^3",
        [Line(lambda: compound(_S("plain", "ordpowers"), OrdinalGame(omega_power(3), False)),
              LEFT, lambda: ST.ordinal_series_strategy(LEFT), 5)])
    add("mirror_stars", 4, "a series minus itself is zero (mirror play)",
        both(lambda: compound(_S("plain", "stars"), _S("plain", builtin("stars").negated())), ST.mirror_strategy, 6))
    add("mirror_interleaved", 4, "mirror play survives interleaved second-winner summands",
        both(lambda: compound(_S("plain", "stars"), starstar, _S("plain", builtin("stars").negated()),
                              K.add(K.STAR, K.STAR)),
             lambda: ST.mirror_strategy(((0, 2),)), 6))
    add("stars_plain", 5, "* + * + * + ... is a second-player win",
        both(lambda: compound(_S("plain", "stars")), ST.impartial_second_strategy, 6))
    add("stars_bullet", 5, "the bullet sum of stars is a second-player win",
        both(lambda: compound(_S("bullet", "stars")), ST.impartial_second_strategy, 6))
    add("real_geom_half", 6, "-1 + (1/2 + 1/4 + ...) is a second-player win",
        both(lambda: compound(K.NEG_ONE, _S("plain", "geom_half")), ST.real_series_second_strategy, 8))
    add("real_quarter_geom", 6, "-1/2 + (1/4 + 1/8 + ...) is a second-player win",
        both(lambda: compound(K.number_form(Fraction(-1, 2)), _S("plain", "quarter_geom")),
             ST.real_series_second_strategy, 8))
    add("tail_minusone", 7, "-1 + 1 + 1 + ... equals omega - 1",
        both(lambda: compound(_S("plain", "minusone_then_ones"), K.ONE, NEG_OMEGA), lambda: ST.oracle_strategy(14), 6))
    add("tail_zerozero", 7, "0 + 0 + 1 + 1 + ... equals omega",
        both(lambda: compound(_S("plain", "zerozero_then_ones"), NEG_OMEGA), lambda: ST.oracle_strategy(14), 6))
    add("plain_sumform", 8, "(-1+1) + 1 + 1 + ... equals omega - 1 under the plain sum",
        both(lambda: compound(_S("plain", "sumform_zero_then_ones"), K.ONE, NEG_OMEGA),
             lambda: ST.oracle_strategy(14), 6))
    add("plain_zeroform", 8, "0 + 1 + 1 + ... equals omega under the plain sum",
        both(lambda: compound(_S("plain", "zeroform_then_ones"), NEG_OMEGA), lambda: ST.oracle_strategy(14), 6))
    add("bullet_sumform", 8, "under the bullet sum, (-1+1) + 1 + ... equals 0 + 1 + ... which equals omega",
        both(_diff_pair("bullet", builtin("sumform_zero_then_ones"), builtin("zeroform_then_ones")),
             ST.bullet_invariance_strategy, 6)
        + sided(lambda: compound(_S("bullet", "zeroform_then_ones"), NEG_OMEGA), ST.ordinal_series_strategy, 6))
    add("invariance_zero_pair", 9, "replacing a summand 0 by {*|*} keeps the bullet sum",
        both(_diff_pair("bullet", from_list([K.ZERO], ones), from_list([starstar], ones)),
             ST.bullet_invariance_strategy, 5))
    add("invariance_one_pair", 9, "replacing a summand 1 by {0,*|} keeps the bullet sum",
        both(_diff_pair("bullet", from_list([K.ONE], ones), from_list([one_alt], ones)),
             ST.bullet_invariance_strategy, 5))
    add("plain_zero_pair", 9, "under the plain sum, replacing 0 by {*|*} changes the value",
        [Line(_diff_pair("plain", from_list([K.ZERO], ones), from_list([starstar], ones)), LEFT,
              ST.bullet_invariance_strategy, 5),
         Line(_diff_pair("plain", from_list([K.ZERO], ones), from_list([starstar], ones)), RIGHT,
              ST.bullet_invariance_strategy, 5, expect="REFUTED"),
         Line(_diff_pair("plain", from_list([K.ZERO], ones), from_list([starstar], ones)), RIGHT,
              lambda: ST.oracle_strategy(8), 4, expect="REFUTED")])
    add("plain_one_pair", 9, "under the plain sum, 1 and {0,*|} in front of ones still agree",
        both(_diff_pair("plain", from_list([K.ONE], ones), from_list([one_alt], ones)),
             ST.bullet_invariance_strategy, 5))
    add("plain_sumform_vs_zeroform", 9, "the plain sums of (-1+1),1,1,... and 0,1,1,... differ",
        [Line(_diff_pair("plain", builtin("sumform_zero_then_ones"), builtin("zeroform_then_ones")), LEFT,
              ST.bullet_invariance_strategy, 5, expect="REFUTED"),
         Line(_diff_pair("plain", builtin("sumform_zero_then_ones"), builtin("zeroform_then_ones")), LEFT,
              lambda: ST.oracle_strategy(12), 5, expect="REFUTED")])
    add("zero_removal", 10, "dropping second-winner summands keeps the bullet sum",
        both(lambda: compound(_S("bullet", c10), _S("bullet", nonzero(c10).negated())), ST.zero_removal_strategy, 5))
    add("bullet_quarter_one", 11, "the bullet sum 1/4 + 1/8 + ... equals 1",
        [Line(lambda: compound(_S("bullet", "quarter_geom"), K.NEG_ONE), LEFT,
              lambda: ST.bullet_bound_one_strategy("geq"), 6),
         Line(lambda: compound(_S("bullet", "quarter_geom"), K.NEG_ONE), RIGHT,
              lambda: ST.bullet_bound_one_strategy("leq"), 6)])
    add("bullet_ups_geq_one", 11, "the bullet sum of ups is at least 1",
        [Line(lambda: compound(_S("bullet", "ups"), K.NEG_ONE), LEFT, lambda: ST.bullet_bound_one_strategy("geq"), 6)])
    add("plain_quarter_bounds", 11, "under the plain sum only the upper bound argument applies",
        [Line(lambda: compound(_S("plain", "quarter_geom"), K.NEG_ONE), RIGHT,
              lambda: ST.bullet_bound_one_strategy("leq"), 6),
         Line(lambda: compound(_S("plain", "quarter_geom"), K.NEG_ONE), LEFT,
              lambda: ST.bullet_bound_one_strategy("geq"), 6, expect="INCONCLUSIVE")])
    add("subset_geom_one", 12, "the subset sum of 1/2 + 1/4 + ... equals 1",
        both(lambda: compound(K.NEG_ONE, _S("subset", "geom_half")), ST.real_series_second_strategy, 8))
    add("nlim_canon_zero", 13, "nlim of canonical naturals is 0",
        both(lambda: compound(nlim_arena(canon_naturals())), lambda: ST.oracle_strategy(6), 6))
    add("nlim_sign_omega", 13, "nlim of sign-expansion naturals is at least every k",
        [Line(lambda k=k: compound(nlim_arena(sign_naturals()), K.integer(-k)), LEFT,
              lambda: ST.oracle_strategy(6), 6) for k in range(6)])
    add("mlim_canon_omega", 13, "mlim of canonical naturals: Left moving first reaches any k",
        [Line(lambda k=k: compound(mlim_arena(canon_naturals()), K.integer(-k)), LEFT,
              lambda: ST.oracle_strategy(6), 6, role="first") for k in range(6)])
    add("series_limit_const", 14, "the series limit of 1, *, ^, ^, ^, ... equals ^",
        both(lambda: compound(_S("plain", diff(eventually_up)), K.DOWN), ST.finite_reduction_strategy, 5))
    return cs


_registry: Optional[dict] = None


def registry() -> dict[str, Case]:
    global _registry
    if _registry is None:
        _registry = {c.id: c for c in _cases()}
    return _registry


def get_case(case_id: str) -> Case:
    reg = registry()
    if case_id not in reg:
        raise KeyError(f"unknown case {case_id!r}; known: {', '.join(reg)}")
    return reg[case_id]
