"""Formal expansions ``u_n = 1 + sum r_i(log n) / n^alpha_i + o(n^-beta)``.

Coefficients ``r_i`` are rational functions of ``L = log n`` and are stored
as :class:`~holocert.ratfunc.RationalFunction` objects in that variable.
Exponents are exact rationals.

The classifiers are sufficient conditions only: a verdict of
``"inconclusive"`` says nothing about the sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, floor
from typing import Optional, Sequence

import mpmath

from .ratfunc import RationalFunction, eventual_sign

__all__ = [
    "LogRat",
    "Expansion",
    "ClassifierVerdict",
    "ExpansionError",
    "shift_expand",
    "xi_estimate_leading",
    "classify_logmono",
    "phi_leading_term",
    "classify_laguerre2",
    "laguerre2_asymptotic",
    "laguerre2_t_terms",
    "numeric_eval",
    "xi_estimate_value",
    "xi_estimate_ratio",
    "pochhammer",
]

LogRat = RationalFunction
"""A rational function of ``L`` standing for ``log n``."""


class ExpansionError(ValueError):
    pass


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _lr(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction.const(_q(x))


@dataclass(frozen=True)
class Expansion:
    """Terms ``(alpha_i, r_i)`` with strictly increasing exponents below ``beta``.

    Zero coefficients are allowed; they pad the expansion so that the
    exponent range hypothesis ``alpha_m - alpha_1 >= 1`` can be met.
    """

    terms: tuple[tuple[Fraction, RationalFunction], ...]
    beta: Fraction

    def __post_init__(self):
        terms = tuple((_q(a), _lr(r)) for a, r in self.terms)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "beta", _q(self.beta))
        alphas = [a for a, _ in terms]
        if not terms:
            raise ExpansionError("expansion needs at least one term")
        if alphas[0] <= 0:
            raise ExpansionError("exponents must be positive")
        if any(b <= a for a, b in zip(alphas, alphas[1:])):
            raise ExpansionError("exponents must be strictly increasing")
        if self.beta <= alphas[-1]:
            raise ExpansionError("remainder exponent must exceed every term exponent")
        if terms[0][1].is_zero():
            raise ExpansionError("the leading coefficient r_1 must be nonzero")

    @classmethod
    def of(cls, pairs: Sequence[tuple], beta) -> "Expansion":
        return cls(tuple(pairs), beta)

    @property
    def alphas(self) -> list[Fraction]:
        return [a for a, _ in self.terms]

    @property
    def alpha1(self) -> Fraction:
        return self.terms[0][0]

    @property
    def r1(self) -> RationalFunction:
        return self.terms[0][1]

    @property
    def padded(self) -> bool:
        """True when the last exponent belongs to a zero-coefficient term."""
        return self.terms[-1][1].is_zero()

    def span_ok(self) -> bool:
        return self.alphas[-1] - self.alpha1 >= 1

    def with_padding(self) -> "Expansion":
        """Append a zero term at alpha_1 + 1 when that meets the span hypothesis.

        The remainder ``o(n^-beta)`` already says the coefficient of
        ``n^-(alpha_1+1)`` is zero whenever ``alpha_1 + 1 < beta``.
        """
        if self.span_ok() or self.alpha1 + 1 >= self.beta:
            return self
        zero = RationalFunction.const(0)
        return Expansion(self.terms + ((self.alpha1 + 1, zero),), self.beta)

    def scaled(self, c) -> "Expansion":
        c = _q(c)
        return Expansion(tuple((a, r * c) for a, r in self.terms), self.beta)

    def __str__(self) -> str:
        out = "1"
        for a, r in self.terms:
            exp = str(a) if a.denominator == 1 else f"({a})"
            out += f" + ({r.to_str('L')})/n^{exp}"
        b = str(self.beta) if self.beta.denominator == 1 else f"({self.beta})"
        return out + f" + O(n^-{b})"


@dataclass(frozen=True)
class ClassifierVerdict:
    decision: str  # "holds" or "inconclusive"
    branch: str = ""
    ell: Optional[int] = None
    leading: Optional[tuple[int, Fraction, RationalFunction]] = None
    relies_on_padding: bool = False
    reason: str = ""

    @property
    def holds(self) -> bool:
        return self.decision == "holds"

    def to_dict(self) -> dict:
        lead = None
        if self.leading is not None:
            s, e, c = self.leading
            lead = {"sign": s, "exponent": str(e), "coefficient": c.to_str("L")}
        return {
            "decision": self.decision,
            "branch": self.branch,
            "ell": self.ell,
            "leading_term": lead,
            "relies_on_padding": self.relies_on_padding,
            "reason": self.reason,
        }


def pochhammer(a: Fraction, k: int) -> Fraction:
    """Rising factorial a (a+1) ... (a+k-1); 1 for k = 0."""
    out = Fraction(1)
    for j in range(k):
        out *= a + j
    return out


# shift expansion ------------------------------------------------------------


def _series_mul(a: list, b: list, K: int) -> list:
    out = [Fraction(0)] * (K + 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j in range(0, K + 1 - i):
            out[i + j] += x * b[j]
    return out


def shift_expand(r: RationalFunction, K: int, direction: int = 1) -> list[RationalFunction]:
    """Coefficients of ``r(log(n +- 1)) - r(log n) = sum_{i<=K} c_i(log n) / n^i``.

    Taylor expansion of ``r(L + log(1 + direction/n))`` with the exact series
    of the logarithm truncated at order K.
    """
    if K < 1:
        raise ValueError("K must be positive")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    r = _lr(r)
    # log(1 + s t) = sum_j (-1)^(j+1) s^j t^j / j, t = 1/n
    delta = [Fraction(0)] + [Fraction((-1) ** (j + 1) * direction ** j, j) for j in range(1, K + 1)]
    derivs = []
    d = r
    for _ in range(K):
        d = d.derivative()
        derivs.append(d)
    out = [RationalFunction.const(0) for _ in range(K)]
    power = [Fraction(1)] + [Fraction(0)] * K
    for m in range(1, K + 1):
        power = _series_mul(power, delta, K)
        dm = derivs[m - 1]
        if dm.is_zero():
            continue
        scale = Fraction(1, factorial(m))
        for i in range(m, K + 1):
            if power[i]:
                out[i - 1] = out[i - 1] + dm * (power[i] * scale)
    return out


# power-weighted estimates ---------------------------------------------


def xi_estimate_leading(r, gamma, alpha, which: str) -> tuple[Fraction, RationalFunction]:
    """Leading term (exponent, coefficient) of one of three estimates for xi(n) = r(log n)/n^gamma.

    ``A``: ``(n+1)^a xi(n) - n^a xi(n+1)``;
    ``B``: ``xi(n+1)(n-1)^a n^a + xi(n-1)(n+1)^a n^a - 2 xi(n)(n-1)^a(n+1)^a``;
    ``C``: ``xi(n-1)xi(n+1)n^{2a} - xi(n)^2 (n+1)^a (n-1)^a``.
    """
    r = _lr(r)
    g, a = _q(gamma), _q(alpha)
    if g <= 0 or a <= 0:
        raise ValueError("gamma and alpha must be positive")
    s = a + g
    if which == "A":
        return a - g - 1, r * s
    if which == "B":
        return 2 * a - g - 2, r * (s * (s + 1))
    if which == "C":
        return 2 * a - 2 * g - 2, r * r * s
    raise ValueError(f"unknown estimate {which!r}")


def xi_estimate_value(r, gamma, alpha, which: str, n: int, dps: int = 60):
    """High-precision value of estimate A, B or C at n, for cross-checks only."""
    r = _lr(r)
    with mpmath.workdps(dps):
        g = mpmath.mpf(_q(gamma).numerator) / _q(gamma).denominator
        a = mpmath.mpf(_q(alpha).numerator) / _q(alpha).denominator

        def xi(k):
            L = mpmath.log(k)
            return _mp_poly(r.num, L) / _mp_poly(r.den, L) / mpmath.power(k, g)

        pm, p0, pp = (mpmath.power(n + d, a) for d in (-1, 0, 1))
        if which == "A":
            v = pp * xi(n) - p0 * xi(n + 1)
        elif which == "B":
            v = xi(n + 1) * pm * p0 + xi(n - 1) * pp * p0 - 2 * xi(n) * pm * pp
        elif which == "C":
            v = xi(n - 1) * xi(n + 1) * p0 ** 2 - xi(n) ** 2 * pp * pm
        else:
            raise ValueError(f"unknown estimate {which!r}")
        return +v


def xi_estimate_ratio(r, gamma, alpha, which: str, n: int, dps: int = 60):
    """Value of the estimate divided by its predicted leading term at n."""
    e, c = xi_estimate_leading(r, gamma, alpha, which)
    with mpmath.workdps(dps):
        L = mpmath.log(n)
        lead = _mp_poly(c.num, L) / _mp_poly(c.den, L) * mpmath.power(n, mpmath.mpf(e.numerator) / e.denominator)
        return xi_estimate_value(r, gamma, alpha, which, n, dps) / lead


# log-monotonicity --------------------------------------------------------


def classify_logmono(e: Expansion) -> ClassifierVerdict:
    """Asymptotic ell-log-monotonicity with ell = floor(alpha_m / alpha_1)."""
    if not e.span_ok():
        return ClassifierVerdict("inconclusive", reason="alpha_m - alpha_1 < 1")
    if eventual_sign(e.r1) <= 0:
        return ClassifierVerdict("inconclusive", reason="r_1 is not eventually positive")
    ell = floor(e.alphas[-1] / e.alpha1)
    return ClassifierVerdict(
        "holds",
        branch="r1>0",
        ell=ell,
        leading=(1, e.alpha1, e.r1),
        relies_on_padding=e.padded,
    )


def phi_leading_term(e: Expansion, k: int) -> tuple[int, Fraction, RationalFunction]:
    """Predicted leading deviation from 1 of the k-th iterated ratio quotient.

    Returns ``((-1)^k, alpha_1 + k, (alpha_1)_k * r_1)``.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if e.alpha1 + k >= e.beta:
        raise ExpansionError(f"k={k} exceeds the precision of the expansion (beta={e.beta})")
    return (-1) ** k, e.alpha1 + k, e.r1 * pochhammer(e.alpha1, k)


# Laguerre inequality of order two ------------------------------------------


def classify_laguerre2(e: Expansion) -> ClassifierVerdict:
    if not e.span_ok():
        return ClassifierVerdict("inconclusive", reason="alpha_m - alpha_1 < 1")
    a1, r1 = e.alpha1, e.r1
    s = eventual_sign(r1)
    if s > 0:
        branch = "i"
    elif s < 0 and a1 < 2:
        branch = "ii"
    elif s < 0 and a1 == 2 and eventual_sign(r1 + 1) < 0:
        branch = "iii"
    else:
        return ClassifierVerdict("inconclusive", reason="no sufficient condition applies")
    exp, coeff = _laguerre2_leading(a1, r1)
    return ClassifierVerdict(
        "holds", branch=branch, leading=(1, exp, coeff), relies_on_padding=e.padded
    )


def _laguerre2_leading(a1: Fraction, r1: RationalFunction) -> tuple[Fraction, RationalFunction]:
    if a1 > 2:
        return a1 + 2, r1 * (a1 * a1 + a1)
    if a1 < 2:
        return 2 * a1, r1 * r1 * 6
    return Fraction(4), r1 * (r1 + 1) * 6


def laguerre2_asymptotic(e: Expansion) -> tuple[Fraction, RationalFunction]:
    """Leading term of ``u_{n-1} u_n^2 u_{n+1} - 4 u_n + 3`` as (exponent, coefficient)."""
    v = classify_laguerre2(e)
    if not v.holds:
        raise ExpansionError(f"expansion is inconclusive for the order-two Laguerre inequality ({v.reason})")
    return _laguerre2_leading(e.alpha1, e.r1)


def numeric_eval(e: Expansion, n: int, dps: int = 50):
    """Evaluate the truncated expansion at an integer n >= 2 with mpmath."""
    if int(n) != n or n < 2:
        raise ValueError("n must be an integer >= 2")
    with mpmath.workdps(dps):
        L = mpmath.log(n)
        total = mpmath.mpf(1)
        for a, r in e.terms:
            if r.is_zero():
                continue
            num = _mp_poly(r.num, L)
            den = _mp_poly(r.den, L)
            if den == 0:
                raise ZeroDivisionError("coefficient has a pole at log n")
            total += num / den / mpmath.power(n, mpmath.mpf(a.numerator) / a.denominator)
        return +total


def _mp_poly(p, x):
    acc = mpmath.mpf(0)
    for c in reversed(p.coeffs):
        acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
    return acc


def _xi(e: Expansion, n, dps: int):
    """n^alpha_1 (u_n - 1) from the truncated expansion."""
    a1 = mpmath.mpf(e.alpha1.numerator) / e.alpha1.denominator
    return (numeric_eval(e, n, dps) - 1) * mpmath.power(n, a1)


def laguerre2_t_terms(e: Expansion, n: int, dps: int = 60) -> dict:
    """The four pieces t1..t4 of the order-two Laguerre quotient at n.

    With ``xi(n) = n^a (u_n - 1)`` and ``a = alpha_1``:
    ``u_{n-1}u_n^2u_{n+1} - 4u_n + 3 = (t1+t2+t3+t4) / ((n-1)^a n^{2a} (n+1)^a)``.
    Returned values are mpmath numbers; ``f`` is the quotient itself.
    """
    with mpmath.workdps(dps):
        a = mpmath.mpf(e.alpha1.numerator) / e.alpha1.denominator
        xm, x0, xp = (_xi(e, n - 1, dps), _xi(e, n, dps), _xi(e, n + 1, dps))
        pm, p0, pp = (mpmath.power(n - 1, a), mpmath.power(n, a), mpmath.power(n + 1, a))
        t1 = (xp * pm * p0 + xm * pp * p0 - 2 * x0 * pm * pp) * p0
        t2 = xm * xp * p0 ** 2 + x0 ** 2 * pm * pp + 2 * xm * x0 * pp * p0 + 2 * xp * x0 * pm * p0
        t3 = (2 * xm * xp * p0 + xp * x0 * pm + xm * x0 * pp) * x0
        t4 = xm * x0 ** 2 * xp
        f = (t1 + t2 + t3 + t4) / (pm * p0 ** 2 * pp)
        return {"t1": t1, "t2": t2, "t3": t3, "t4": t4, "f": f}
