from fractions import Fraction

import pytest

from holocert import catalog
from holocert.parsing import (
    ParseError,
    format_recurrence,
    parse_expansion,
    parse_expression,
    parse_rational,
    parse_recurrence,
)
from holocert.ratfunc import RationalFunction
from holocert.recurrence import SequenceCache

n = RationalFunction.n()


@pytest.mark.parametrize(
    "text, expected",
    [
        ("2*n + 3", 2 * n + 3),
        ("3*(n+1)/(n+4)", 3 * (n + 1) / (n + 4)),
        ("n^2 - 1", n * n - 1),
        ("-n^2", -(n * n)),
        ("n^-2", 1 / (n * n)),
        ("1/2 + n/3", Fraction(1, 2) + n / 3),
        ("(n+1)*(n+2)", (n + 1) * (n + 2)),
        ("2^3", RationalFunction.const(8)),
    ],
)
def test_expressions(text, expected):
    assert parse_expression(text) == expected


@pytest.mark.parametrize("text", ["n +", "(n + 1", "n $ 2", "n^n", "1/0", "x + 1", ""])
def test_expression_errors(text):
    with pytest.raises(ParseError):
        parse_expression(text)


def test_error_position_points_at_token():
    with pytest.raises(ParseError) as info:
        parse_expression("n + $")
    assert info.value.position == 4
    assert info.value.pretty().splitlines()[-1].index("^") == 2 + 4


def test_roundtrip_to_str():
    for r in [(2 * n + 5) / (n + 4), 3 * (n + 1) / (n + 4), 1 / (n + 1), n * n / 7 - Fraction(3, 2)]:
        assert parse_expression(r.to_str("n")) == r


def test_rationals():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("7") == 7
    with pytest.raises(ParseError):
        parse_rational("n")


def test_expansion_basic():
    e = parse_expansion("1 - (2)/n^2 + O(n^-4)")
    assert e.alphas == [2]
    assert e.beta == 4
    assert e.r1 == RationalFunction.const(-2)


def test_expansion_log_and_padding():
    e = parse_expansion("1 + (L)/n + 0/n^2 + O(n^-3)")
    assert e.alphas == [1, 2]
    assert e.padded
    assert e.r1 == RationalFunction.n()  # L is the variable of the coefficient


def test_expansion_default_remainder():
    e = parse_expansion("1 + 3/(2*n)")
    assert e.beta == 2


@pytest.mark.parametrize("text", ["2 + 1/n", "1 + n", "1 + O(n^-2)", "1 + 1/n + O(n^-1)", "1 + 1/n + O(n^-2) + O(n^-3)"])
def test_expansion_errors(text):
    with pytest.raises(ParseError):
        parse_expansion(text)


TRINOMIAL = """\
# comment
name: trinomial
order: 2
lhs: n + 2
coeff[1]: 2*n + 3
coeff[2]: 3*(n + 1)
initial: 1, 1
"""


def test_recurrence_file_matches_catalog():
    rec = parse_recurrence(TRINOMIAL)
    ref = catalog.trinomial()
    assert rec.coeffs == ref.coeffs
    assert [SequenceCache(rec).term(k) for k in range(12)] == [SequenceCache(ref).term(k) for k in range(12)]


def test_recurrence_scale_is_kept():
    rec = parse_recurrence(TRINOMIAL + "scale: 1/(n + 1)\n")
    assert rec.scale == 1 / (n + 1)
    assert SequenceCache(rec).term(3) == Fraction(7, 6)


def test_format_roundtrip():
    rec = catalog.motzkin_over_factorial()
    back = parse_recurrence(format_recurrence(rec))
    assert back.coeffs == rec.coeffs and back.scale == rec.scale and back.initials == rec.initials


@pytest.mark.parametrize(
    "extra, message",
    [
        ("colour: red\n", "unknown key"),
        ("order: 3\n", "duplicate key"),
        ("coeff[3]: 1\n", "coefficients"),
        ("lhs: 0\n", None),
    ],
)
def test_recurrence_errors(extra, message):
    text = TRINOMIAL + extra
    if extra.startswith("lhs"):
        text = TRINOMIAL.replace("lhs: n + 2\n", extra)
    with pytest.raises(ParseError) as info:
        parse_recurrence(text, "t.rec")
    if message:
        assert message in str(info.value)


def test_recurrence_missing_initial():
    with pytest.raises(ParseError, match="initial"):
        parse_recurrence(TRINOMIAL.replace("initial: 1, 1\n", ""))


def test_recurrence_bad_coefficient_has_line():
    with pytest.raises(ParseError, match=r"t\.rec:5"):
        parse_recurrence(TRINOMIAL.replace("2*n + 3", "2*n +"), "t.rec")
