from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gameseries import kernel as K
from gameseries.ordinals import (
    OMEGA, Dyadic, Ordinal, SignSeq, descent_samples, dyadic_form, min_natural_complement,
    natural_sum, omega_power, ordinal_compare, parse_ordinal, realize_as_game, sign_expansion,
    sign_form_value, sign_seq_value,
)

dyadics = st.builds(lambda n, e: Fraction(n, 2 ** e), st.integers(-40, 40), st.integers(0, 5))
small_ords = st.builds(
    lambda a, b, c: Ordinal.from_coefficients({Ordinal.of(2): a, Ordinal.of(1): b, Ordinal.of(0): c}),
    st.integers(0, 3), st.integers(0, 3), st.integers(0, 5))


def test_parse_and_print():
    a = parse_ordinal("w^2*3+w+1")
    assert str(a) == "w^2*3+w+1"
    assert parse_ordinal("w^w") == omega_power(OMEGA)
    assert parse_ordinal("1+w") == OMEGA      # ordinary sum absorbs the finite prefix
    with pytest.raises(ValueError):
        parse_ordinal("w^")


def test_natural_sum_is_commutative_not_ordinary():
    a, b = Ordinal.of(1), OMEGA
    assert natural_sum(a, b) == natural_sum(b, a)
    assert str(natural_sum(a, b)) == "w+1"


@settings(max_examples=200, deadline=None)
@given(small_ords, small_ords, small_ords)
def test_natural_sum_laws(a, b, c):
    assert natural_sum(a, b) == natural_sum(b, a)
    assert natural_sum(natural_sum(a, b), c) == natural_sum(a, natural_sum(b, c))
    if ordinal_compare(a, b) < 0:
        assert ordinal_compare(natural_sum(a, c), natural_sum(b, c)) < 0


@settings(max_examples=200, deadline=None)
@given(small_ords, small_ords)
def test_min_natural_complement(others, target):
    g = min_natural_complement(others, target)
    assert not natural_sum(others, g) < target
    for smaller in descent_samples(g, 3):
        assert natural_sum(others, smaller) < target


def test_descent_samples_are_below():
    a = parse_ordinal("w^2+w*2")
    s = descent_samples(a, 4)
    assert all(x < a for x in s)
    assert parse_ordinal("w^2+w+4") in s and Ordinal.of(0) in s


@pytest.mark.parametrize("x,s", [(0, ""), (3, "+++"), (-2, "--"), (Fraction(1, 2), "+-"),
                                 (Fraction(3, 8), "+--+"), (Fraction(-5, 4), "--++")])
def test_sign_expansion_examples(x, s):
    assert sign_expansion(x).to_string() == s
    assert sign_seq_value(s) == x


@settings(max_examples=200, deadline=None)
@given(dyadics)
def test_sign_round_trip(x):
    g = dyadic_form(x)
    assert sign_form_value(g) == x
    assert K.number_value(g) == x
    assert K.canonical_form(g) is K.number_form(x)


def test_transfinite_sign_sequences():
    s = SignSeq.from_string("(+)^w-")
    assert str(s.length()) == "w+1"
    with pytest.raises(ValueError):
        realize_as_game(s)


def test_dyadic_parse():
    assert Dyadic.parse("3/2^3").to_fraction() == Fraction(3, 8)
    assert Dyadic.parse("6/16") == Dyadic(3, 3)
    with pytest.raises(ValueError):
        Dyadic.parse("1/3")
