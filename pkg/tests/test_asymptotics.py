import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holocert import catalog
from holocert.asymptotics import (
    Expansion,
    ExpansionError,
    classify_laguerre2,
    classify_logmono,
    laguerre2_asymptotic,
    laguerre2_t_terms,
    xi_estimate_leading,
    xi_estimate_ratio,
    xi_estimate_value,
    numeric_eval,
    phi_leading_term,
    pochhammer,
    shift_expand,
)
from holocert.ratfunc import RationalFunction, derivative
from holocert.recurrence import SequenceCache

L = RationalFunction.n()
one = RationalFunction.const(1)


def test_expansion_validation():
    with pytest.raises(ExpansionError):
        Expansion(((2, 1), (1, 1)), 3)
    with pytest.raises(ExpansionError):
        Expansion(((1, 1),), 1)
    with pytest.raises(ExpansionError):
        Expansion(((1, 0), (2, 1)), 3)
    with pytest.raises(ExpansionError):
        Expansion(((0, 1),), 1)


def test_pochhammer():
    assert pochhammer(Fraction(3), 0) == 1
    assert pochhammer(Fraction(1), 4) == 24
    assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)


def test_shift_expand_identities_exact():
    r = L**3 - 2 * L
    for direction in (1, -1):
        c = shift_expand(r, 3, direction)
        assert c[0] == derivative(r) * direction
        assert c[1] == (derivative(derivative(r)) - derivative(r)) / 2


def test_shift_expand_numeric():
    r = (L**2 + 1) / (L + 3)
    c = shift_expand(r, 4, 1)
    k = 10**4
    with mpmath.workdps(40):
        f = lambda x: (x**2 + 1) / (x + 3)  # noqa: E731
        exact = f(mpmath.log(k + 1)) - f(mpmath.log(k))
        Lk = mpmath.log(k)
        approx = 0
        for i, ci in enumerate(c, start=1):
            approx += (_mp(ci.num, Lk) / _mp(ci.den, Lk)) / mpmath.mpf(k) ** i
        assert abs(exact - approx) < mpmath.mpf(10) ** -18


def _mp(p, x):
    acc = mpmath.mpf(0)
    for cf in reversed(p.coeffs):
        acc = acc * x + mpmath.mpf(cf.numerator) / cf.denominator
    return acc


def test_xi_estimate_examples():
    assert xi_estimate_leading(1, 1, Fraction(1, 2), "A") == (Fraction(-3, 2), RationalFunction.const(Fraction(3, 2)))
    # B: (alpha + gamma)(alpha + gamma + 1) = 6 with exponent 2a - g - 2 = -1
    assert xi_estimate_leading(1, 1, 1, "B") == (-1, RationalFunction.const(6))
    # C: exponent 2a - 2g - 2 = -2, coefficient (a + g) r^2 = 4 L^2
    assert xi_estimate_leading(L, 2, 2, "C") == (-2, 4 * L**2)


def test_xi_estimate_b_closed_form():
    # xi(n) = 1/n, alpha = 1: B = (6n^2 - 2)/(n^3 - n)
    for k in (5, 50, 500):
        with mpmath.workdps(50):
            v = xi_estimate_value(1, 1, 1, "B", k)
            assert abs(v - mpmath.mpf(6 * k * k - 2) / (k**3 - k)) < mpmath.mpf(10) ** -40


def test_xi_estimate_log_growing_r_converges_slowly():
    # with r = L the relative error decays like 1/log n
    errs = [abs(float(xi_estimate_ratio(L, 1, 1, "A", 10**e)) - 1) for e in (3, 6, 12)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 0.05


def test_classify_logmono_examples():
    v = classify_logmono(Expansion(((1, 1), (2, 0), (3, 0)), Fraction(7, 2)))
    assert v.holds and v.ell == 3 and v.relies_on_padding
    v = classify_logmono(Expansion(((2, 2), (3, 0)), Fraction(7, 2)))
    assert v.holds and v.ell == 1
    assert not classify_logmono(Expansion(((1, -1),), Fraction(3, 2))).holds


def test_phi_leading_term_examples():
    e = Expansion(((1, 1), (2, 0), (3, 0)), 4)
    assert phi_leading_term(e, 0) == (1, 1, one)
    assert phi_leading_term(e, 1) == (-1, 2, one)
    e2 = Expansion(((2, 2), (3, 0)), 4)
    assert phi_leading_term(e2, 1) == (-1, 3, 4 * one)
    with pytest.raises(ExpansionError):
        phi_leading_term(e, 3)


def test_phi_leading_term_against_factorial():
    # u_{n+1}/u_n = 1 - 1/(n+1)^2 for n!
    from holocert.recurrence import phi_ratio

    c = SequenceCache(catalog.factorial())
    for k in (10, 100):
        assert phi_ratio(c, 1, k) == 1 - Fraction(1, (k + 1) ** 2)


def test_classify_laguerre2_examples():
    pad = lambda *t: Expansion(tuple(t) + ((3, 0),), 4)  # noqa: E731
    assert classify_laguerre2(pad((2, -2))).branch == "iii"
    assert classify_laguerre2(pad((2, -L))).branch == "iii"
    assert classify_laguerre2(pad((2, -1))).decision == "inconclusive"
    assert classify_laguerre2(Expansion(((1, 1),), 2)).decision == "inconclusive"


def test_laguerre2_asymptotic_examples():
    assert laguerre2_asymptotic(Expansion(((1, 1), (2, 0)), 3)) == (2, 6 * one)
    assert laguerre2_asymptotic(Expansion(((1, -1), (2, 1)), 3)) == (2, 6 * one)
    assert laguerre2_asymptotic(Expansion(((2, -2), (3, 0)), 4)) == (4, 12 * one)
    assert laguerre2_asymptotic(Expansion(((3, 1), (4, 0)), 5)) == (5, 12 * one)
    with pytest.raises(ExpansionError):
        laguerre2_asymptotic(Expansion(((2, -1), (3, 0)), 4))


@pytest.mark.parametrize(
    "terms, beta",
    [
        (((1, 1), (2, 0)), 3),
        (((1, -1), (2, 1)), 3),
        (((2, -2), (3, 0)), 4),
        (((Fraction(5, 2), 3), (4, 1)), 5),
        (((Fraction(1, 2), -1), (2, 0)), 3),
    ],
)
def test_laguerre2_leading_term_numeric(terms, beta):
    e = Expansion(terms, beta)
    expo, coeff = laguerre2_asymptotic(e)
    k = 10**6
    with mpmath.workdps(80):
        t = laguerre2_t_terms(e, k, dps=80)
        pred = mpmath.mpf(coeff.const_value().numerator) / coeff.const_value().denominator
        pred /= mpmath.power(k, mpmath.mpf(expo.numerator) / expo.denominator)
        assert abs(t["f"] / pred - 1) < 0.01
        a = mpmath.mpf(e.alpha1.numerator) / e.alpha1.denominator
        total = (t["t1"] + t["t2"] + t["t3"] + t["t4"]) / ((k - 1) ** a * mpmath.mpf(k) ** (2 * a) * (k + 1) ** a)
        assert abs(total - t["f"]) < mpmath.mpf(10) ** -60


def test_numeric_eval():
    e = Expansion(((1, 1),), 2)
    with mpmath.workdps(50):
        assert abs(numeric_eval(e, 10) - mpmath.mpf("1.1")) < mpmath.mpf(10) ** -20
    pair = catalog.trinomial_bounds()
    g_exp = Expansion(((2, Fraction(1, 2)), (3, Fraction(-3, 8)), (4, Fraction(9, 32)), (5, Fraction(-355, 256))), 6)
    exact = pair.g(100)
    with mpmath.workdps(50):
        assert abs(numeric_eval(g_exp, 100) - mpmath.mpf(exact.numerator) / exact.denominator) < mpmath.mpf(10) ** -20
    with pytest.raises(ValueError):
        numeric_eval(e, 1)


coeffs = st.fractions(min_value=-5, max_value=5).filter(lambda q: q != 0)


@settings(max_examples=60)
@given(coeffs, st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)]), st.fractions(min_value=Fraction(1, 10), max_value=10))
def test_positive_rescaling_keeps_verdicts(r1, a1, c):
    e = Expansion(((a1, r1), (a1 + 1, 0)), a1 + 2)
    for clf in (classify_logmono, classify_laguerre2):
        v, w = clf(e), clf(e.scaled(c))
        if clf is classify_laguerre2 and a1 == 2:
            continue  # branch (iii) compares r_1 with -1, not scale invariant
        assert (v.decision, v.branch, v.ell) == (w.decision, w.branch, w.ell)


@settings(max_examples=60)
@given(coeffs, st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5, 2)]))
def test_padding_never_flips_laguerre_holds(r1, a1):
    e = Expansion(((a1, r1), (a1 + 1, 0)), a1 + 3)
    more = Expansion(((a1, r1), (a1 + 1, 0), (a1 + 2, 0)), a1 + 3)
    if classify_laguerre2(e).holds:
        assert classify_laguerre2(more).holds
    assert classify_logmono(more).ell is None or classify_logmono(more).ell >= (classify_logmono(e).ell or 0)


def test_with_padding():
    e = Expansion(((2, -2),), 4)
    p = e.with_padding()
    assert p.span_ok() and p.padded and p.alphas == [2, 3]
    assert Expansion(((2, 1),), 3).with_padding().span_ok() is False
